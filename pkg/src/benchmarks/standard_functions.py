"""Standard test functions in maximization orientation."""

import math

import numpy as np

from config.benchmark_config import benchmark_config
from utils.errors import ArgumentError
from utils.validators import as_points, as_vector

HARTMANN3_ALPHA = np.array([1.0, 1.2, 3.0, 3.2])
HARTMANN3_A = np.array([
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
])
HARTMANN3_P = 1e-4 * np.array([
    [3689.0, 1170.0, 2673.0],
    [4699.0, 4387.0, 7470.0],
    [1091.0, 8732.0, 5547.0],
    [381.0, 5743.0, 8828.0],
])

BRANIN_A = 1.0
BRANIN_B = 5.1 / (4.0 * math.pi ** 2)
BRANIN_C = 5.0 / math.pi
BRANIN_R = 6.0
BRANIN_S = 10.0
BRANIN_T = 1.0 / (8.0 * math.pi)

_TOL = 1e-12


def _check_box(points: np.ndarray, box, name: str):
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    if points.shape[1] != lo.shape[0]:
        raise ArgumentError(f"{name} takes {lo.shape[0]}-vectors, got dimension {points.shape[1]}")
    if not np.all(np.isfinite(points)) or np.any(points < lo - _TOL) or np.any(points > hi + _TOL):
        raise ArgumentError(f"{name} is defined on {[list(b) for b in box]}; point outside the domain")


def hartmann3_batch(xs) -> np.ndarray:
    points = as_points(xs)
    _check_box(points, ((0.0, 1.0),) * 3, "hartmann3")
    sq = (points[:, None, :] - HARTMANN3_P[None, :, :]) ** 2
    return np.exp(-np.sum(HARTMANN3_A[None, :, :] * sq, axis=2)) @ HARTMANN3_ALPHA


def hartmann3(x) -> float:
    return float(hartmann3_batch(as_vector(x)[None, :])[0])


def branin_batch(xs) -> np.ndarray:
    points = as_points(xs)
    _check_box(points, benchmark_config.BRANIN_BOX, "branin")
    x1, x2 = points[:, 0], points[:, 1]
    value = (BRANIN_A * (x2 - BRANIN_B * x1 ** 2 + BRANIN_C * x1 - BRANIN_R) ** 2
             + BRANIN_S * (1.0 - BRANIN_T) * np.cos(x1) + BRANIN_S)
    return -value


def branin(x) -> float:
    return float(branin_batch(as_vector(x)[None, :])[0])


def unit_to_branin_box(us) -> np.ndarray:
    points = as_points(us)
    lo = np.array([b[0] for b in benchmark_config.BRANIN_BOX])
    hi = np.array([b[1] for b in benchmark_config.BRANIN_BOX])
    return lo + np.clip(points, 0.0, 1.0) * (hi - lo)
