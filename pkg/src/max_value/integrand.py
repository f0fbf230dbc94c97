"""
The improvement-mass integrand g(w) = 1 - prod_x Phi((w - margin - mu(x)) / sigma(x)).

The product is the CDF of the maximum of independent normals, accumulated as a
sum of log Phi terms so thousands of candidates never underflow.
"""

import numpy as np

from utils.normal import log_cdf
from utils.validators import require_stats

# Bound on (nodes x candidates) held in memory at once
CHUNK_CELLS = 4_000_000


def log_max_cdf(means: np.ndarray, stds: np.ndarray, ws, margin: float = 0.0) -> np.ndarray:
    """log prod_x Phi((w - margin - mu)/sigma) for each w in ws"""
    ws = np.atleast_1d(np.asarray(ws, dtype=float))
    out = np.empty(ws.shape[0])
    step = max(1, CHUNK_CELLS // max(1, means.shape[0]))
    shifted = means + margin
    for start in range(0, ws.shape[0], step):
        block = ws[start:start + step, None]
        out[start:start + step] = log_cdf((block - shifted[None, :]) / stds[None, :]).sum(axis=1)
    return out


def g_curve(means: np.ndarray, stds: np.ndarray, ws, margin: float = 0.0) -> np.ndarray:
    return -np.expm1(log_max_cdf(means, stds, ws, margin))


def g_integrand(means, stds, w: float, margin: float = 0.0) -> float:
    mu, sd = require_stats(means, stds)
    return float(g_curve(mu, sd, [w], margin)[0])
