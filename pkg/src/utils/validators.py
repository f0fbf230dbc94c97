from typing import Sequence

import numpy as np

from .errors import ArgumentError


def as_points(points, name: str = "points") -> np.ndarray:
    """Coerce to a 2-D float array of shape (n, d)"""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1) if arr.size else arr.reshape(0, 1)
    if arr.ndim != 2:
        raise ArgumentError(f"{name} must be a list of d-vectors, got shape {arr.shape}")
    return arr


def as_vector(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ArgumentError(f"{name} must be a 1-D vector, got shape {arr.shape}")
    return arr


def require_positive(value: float, name: str) -> float:
    if not np.isfinite(value) or value <= 0:
        raise ArgumentError(f"{name} must be positive, got {value}")
    return float(value)


def require_nonnegative(value: float, name: str) -> float:
    if not np.isfinite(value) or value < 0:
        raise ArgumentError(f"{name} must be nonnegative, got {value}")
    return float(value)


def require_probability(value: float, name: str) -> float:
    if not (0.0 < value < 1.0):
        raise ArgumentError(f"{name} must lie in (0, 1), got {value}")
    return float(value)


def require_finite(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(f"{name} contains non-finite values")
    return arr


def require_stats(means, stds) -> Sequence[np.ndarray]:
    """Validate a (means, stds) pair of posterior statistics"""
    mu = require_finite(np.atleast_1d(np.asarray(means, dtype=float)), "means")
    sd = require_finite(np.atleast_1d(np.asarray(stds, dtype=float)), "stds")
    if mu.ndim != 1 or mu.shape != sd.shape:
        raise ArgumentError(f"means and stds must be vectors of equal length, got {mu.shape} and {sd.shape}")
    if mu.size == 0:
        raise ArgumentError("posterior statistics are empty")
    if np.any(sd <= 0):
        raise ArgumentError("stds must be strictly positive")
    return mu, sd

