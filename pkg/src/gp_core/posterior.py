"""
Exact GP posterior inference.

Nonzero prior means are handled by regressing on the residuals y - m(x) and
adding m back at prediction time. The Cholesky factor of K + sigma^2 I (plus
any jitter the factorization needed) and the weight vector are cached on the
immutable Posterior, so every prediction is a pair of triangular solves.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from config.settings import settings
from utils.errors import ArgumentError
from utils.logger import setup_logger
from utils.validators import as_points
from .grid import CandidateGrid
from .linalg import stable_cholesky
from .model import GpModel, History

logger = setup_logger(__name__)


def _grid_points(xs) -> np.ndarray:
    if isinstance(xs, CandidateGrid):
        return xs.points
    return as_points(xs, "xs")


@dataclass(frozen=True)
class Posterior:
    model: GpModel
    history: History
    chol: Optional[np.ndarray]
    weights: np.ndarray
    jitter: float = 0.0

    @property
    def is_prior(self) -> bool:
        return self.chol is None

    def _check_dim(self, points: np.ndarray):
        if len(self.history) and points.shape[1] != self.history.dim:
            raise ArgumentError(f"inputs have dimension {points.shape[1]}, model was fit in dimension {self.history.dim}")

    def _projections(self, points: np.ndarray) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        """Prior mean at points and L^{-1} k_t(points), or None for the prior"""
        prior_mean = self.model.mean(points)
        if self.is_prior:
            return prior_mean, None
        cross = self.model.kernel.gram(self.history.points, points)
        return prior_mean + cross.T @ self.weights, solve_triangular(self.chol, cross, lower=True, check_finite=False)

    def mean_and_variance(self, xs) -> Tuple[np.ndarray, np.ndarray]:
        """Posterior mean and unfloored variance"""
        points = _grid_points(xs)
        self._check_dim(points)
        means, v = self._projections(points)
        variances = self.model.kernel.diag(points)
        if v is not None:
            variances = variances - np.einsum('ij,ij->j', v, v)
        return means, variances

    def predict(self, xs) -> Tuple[np.ndarray, np.ndarray]:
        means, variances = self.mean_and_variance(xs)
        return means, np.sqrt(np.maximum(variances, settings.VAR_FLOOR))

    def cov(self, xs) -> np.ndarray:
        points = _grid_points(xs)
        self._check_dim(points)
        prior = self.model.kernel.gram(points)
        if self.is_prior:
            return prior
        _, v = self._projections(points)
        cov = prior - v.T @ v
        return 0.5 * (cov + cov.T)


def fit_posterior(model: GpModel, history: History) -> Posterior:
    """Factorize K_t + sigma^2 I for the observed data and cache the weights"""
    effective = history.deduplicated() if model.noise_var == 0 else history
    if len(effective) == 0:
        return Posterior(model, effective, None, np.zeros(0))

    gram = model.kernel.gram(effective.points)
    gram[np.diag_indices_from(gram)] += model.noise_var
    factor = stable_cholesky(gram, model.kernel.variance, exact_first=True, pivot_floor=settings.PIVOT_FLOOR)
    if factor.jitter > 0:
        logger.warning(f"Posterior fit on {len(effective)} points needed jitter {factor.jitter:.3g}")

    residuals = effective.values - model.mean(effective.points)
    weights = cho_solve((factor.chol, True), residuals, check_finite=False)
    return Posterior(model, effective, factor.chol, weights, factor.jitter)


def predict(post: Posterior, xs) -> Tuple[np.ndarray, np.ndarray]:
    """(means, stds) at every grid point, stds floored at sqrt(var_floor)"""
    return post.predict(xs)


def posterior_cov(post: Posterior, xs) -> np.ndarray:
    return post.cov(xs)
