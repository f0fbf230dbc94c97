from typing import Optional

import numpy as np

from .grid import CandidateGrid
from .linalg import stable_cholesky
from .model import GpModel, History
from .posterior import _grid_points, fit_posterior


def sample_function(model: GpModel, grid, seed: int, size: Optional[int] = None,
                    history: Optional[History] = None) -> np.ndarray:
    """
    Joint draw of f on the grid from the prior (or the posterior given history).

    Returns a vector, or a (size, n) matrix of independent draws when size is given.
    Deterministic in seed.
    """
    points = _grid_points(grid)
    if history is not None and len(history):
        post = fit_posterior(model, history)
        mean, _ = post.mean_and_variance(points)
        cov = post.cov(points)
    else:
        mean = model.mean(points)
        cov = model.kernel.gram(points)
    factor = stable_cholesky(cov, model.kernel.variance, exact_first=False)

    rng = np.random.default_rng(seed)
    shape = (points.shape[0],) if size is None else (int(size), points.shape[0])
    z = rng.standard_normal(shape)
    return mean + z @ factor.chol.T
