"""
Selection rules over a finite candidate set.

Every rule reduces with np.argmax / np.argmin, so ties go to the lowest index.
Scores are computed from the standardized gap gamma(x) = (theta - mu(x)) / sigma(x).
"""

import math
from typing import Tuple

import numpy as np

from max_value import MaxEstimate
from utils.errors import ArgumentError
from utils.normal import log_cdf, log_sf, pdf, sf
from utils.validators import require_positive, require_probability, require_stats
from .kinds import Selection

Stats = Tuple[np.ndarray, np.ndarray]


def ucb_lambda(t: int, grid_size: int, delta: float) -> float:
    """lambda_t = sqrt(2 log(|X| pi^2 t^2 / (6 delta)))"""
    if t < 1 or grid_size < 1:
        raise ArgumentError(f"need t >= 1 and grid_size >= 1, got t={t}, grid_size={grid_size}")
    require_probability(delta, "delta")
    return math.sqrt(2.0 * math.log(grid_size * math.pi ** 2 * t * t / (6.0 * delta)))


def ucb_variant_select(stats: Stats, lam: float) -> Selection:
    """argmax mu + lam * sigma for an arbitrary exploration weight"""
    mu, sd = require_stats(*stats)
    scores = mu + lam * sd
    index = int(np.argmax(scores))
    return Selection(index, float(scores[index]), lambda_equiv=float(lam))


def ucb_select(stats: Stats, t: int, grid_size: int, delta: float) -> Selection:
    return ucb_variant_select(stats, ucb_lambda(t, grid_size, delta))


def gamma(stats: Stats, theta: float) -> np.ndarray:
    mu, sd = require_stats(*stats)
    if not math.isfinite(theta):
        raise ArgumentError(f"threshold must be finite, got {theta}")
    return (theta - mu) / sd


def ei_scores(stats: Stats, theta: float) -> np.ndarray:
    """EI(x) = (phi(gamma) - gamma Q(gamma)) sigma, clamped at zero against rounding"""
    g = gamma(stats, theta)
    return np.maximum((pdf(g) - g * sf(g)) * stats[1], 0.0)


def ei_select(stats: Stats, theta: float) -> Selection:
    scores = ei_scores(stats, theta)
    index = int(np.argmax(scores))
    return Selection(index, float(scores[index]), theta_equiv=float(theta))


def pi_probabilities(stats: Stats, theta: float) -> np.ndarray:
    return sf(gamma(stats, theta))


def pi_select(stats: Stats, theta: float) -> Selection:
    g = gamma(stats, theta)
    index = int(np.argmin(g))
    return Selection(index, float(g[index]), theta_equiv=float(theta))


def est_select(stats: Stats, m_hat) -> Selection:
    """
    argmin (m_hat - mu)/sigma; the minimum is nu_t, the UCB weight this choice implies.
    """
    estimate = m_hat if isinstance(m_hat, MaxEstimate) else None
    value = estimate.value if estimate is not None else float(m_hat)
    g = gamma(stats, value)
    index = int(np.argmin(g))
    nu = float(g[index])
    return Selection(index, nu, m_hat=value, nu_t=nu, lambda_equiv=nu, theta_equiv=value, estimate=estimate)


def est_prob_exact(stats: Stats, m_hat: float) -> np.ndarray:
    """
    log of Q(gamma_x) prod_{x' != x} Phi(gamma_x'), the probability that x alone exceeds m_hat.
    """
    g = gamma(stats, float(m_hat))
    log_phi = log_cdf(g)
    return (log_sf(g) - log_phi) + np.sum(log_phi)


def random_select(grid_size: int, rng: np.random.Generator) -> Selection:
    require_positive(grid_size, "grid_size")
    index = int(rng.integers(int(grid_size)))
    return Selection(index, float('nan'))
