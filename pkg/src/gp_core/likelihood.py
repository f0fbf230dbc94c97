import math
from typing import Sequence

import numpy as np

from utils.errors import ArgumentError, NumericalError
from utils.logger import setup_logger
from .model import GpModel, History
from .posterior import fit_posterior

logger = setup_logger(__name__)


def log_marginal_likelihood(model: GpModel, history: History) -> float:
    """log p(y | X) under the model; exact noiseless duplicates are collapsed first"""
    if len(history) < 1:
        raise ArgumentError("log marginal likelihood needs at least one observation")
    post = fit_posterior(model, history)
    residuals = post.history.values - model.mean(post.history.points)
    n = residuals.shape[0]
    return float(
        -0.5 * residuals @ post.weights
        - np.sum(np.log(np.diag(post.chol)))
        - 0.5 * n * math.log(2.0 * math.pi)
    )


def refit_hyperparameters(model: GpModel, history: History,
                          lengthscales: Sequence[float], signal_stds: Sequence[float]) -> GpModel:
    """Exhaustive grid search over (lengthscale, signal_std); first maximizer wins"""
    if not lengthscales or not signal_stds:
        raise ArgumentError("refit grids must be non-empty")
    best, best_lml = None, -math.inf
    for ell in lengthscales:
        for sf in signal_stds:
            candidate = model.with_kernel(lengthscale=float(ell), signal_std=float(sf))
            try:
                lml = log_marginal_likelihood(candidate, history)
            except NumericalError as e:
                logger.warning(f"Skipping lengthscale={ell}, signal_std={sf}: {e}")
                continue
            if lml > best_lml:
                best, best_lml = candidate, lml
    if best is None:
        raise NumericalError("no hyperparameter candidate could be factorized")
    logger.debug(f"Refit selected lengthscale={best.kernel.lengthscale}, signal_std={best.kernel.signal_std} (lml={best_lml:.4f})")
    return best
