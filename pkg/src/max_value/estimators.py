"""
Estimators of max f under the independent-candidates approximation.

m_hat_numeric integrates g from the best observation m0 upward, m_hat_exact_noisy
integrates the full expectation of the maximum from zero, and m_hat_laplace fits a
half-Gaussian to two evaluations of g.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

import numpy as np
from scipy.integrate import trapezoid

from config.settings import settings
from utils.errors import ArgumentError
from utils.logger import setup_logger
from utils.validators import require_nonnegative, require_stats
from .integrand import g_curve, log_max_cdf

logger = setup_logger(__name__)

# Phi(8.3) is 1 to double precision
SATURATED_Z = 8.3
# Refinement nodes per sharp candidate, spanning +-QUAD_TAIL_SIGMAS
REFINE_NODES = 33
MAX_REFINED_CANDIDATES = 200
MAX_TAIL_EXTENSIONS = 64


class MaxMethod(str, Enum):
    NUMERIC = 'numeric'
    LAPLACE = 'laplace'
    EXACT_NOISY = 'exact_noisy'


@dataclass(frozen=True)
class MaxEstimate:
    value: float
    m0: float
    method: MaxMethod
    integral_mass: float
    n_quadrature_points: int
    diagnostics: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class LipschitzSpec:
    L: float
    rho: float

    def __post_init__(self):
        require_nonnegative(self.L, "Lipschitz constant")
        require_nonnegative(self.rho, "covering radius")

    @property
    def margin(self) -> float:
        return self.L * self.rho


def _margin(lip: Optional[LipschitzSpec]) -> float:
    return lip.margin if lip is not None else 0.0


def _require_anchor(m0: float, name: str = "m0") -> float:
    if m0 is None or not math.isfinite(m0):
        raise ArgumentError(f"{name} must be finite, got {m0}")
    return float(m0)


def prior_anchor(means, stds) -> float:
    """Lower anchor used before any observation: below it the max-CDF is negligible"""
    mu, sd = require_stats(means, stds)
    return float(np.max(mu - settings.QUAD_TAIL_SIGMAS * sd))


def _quadrature_nodes(lo: float, hi: float, centers: np.ndarray, scales: np.ndarray) -> np.ndarray:
    """Uniform nodes on [lo, hi] plus local nodes around step-like terms the uniform step cannot resolve"""
    if hi <= lo:
        return np.array([lo])
    step = max(float(np.median(scales)) * settings.QUAD_STEP_FRACTION, (hi - lo) / (settings.QUAD_MAX_POINTS - 1))
    n = min(settings.QUAD_MAX_POINTS, int(math.ceil((hi - lo) / step)) + 1)
    nodes = [np.linspace(lo, hi, max(n, 2))]

    sharp = np.flatnonzero(scales * settings.QUAD_STEP_FRACTION < step)
    if sharp.size:
        # the highest centers carry the mass of the max-CDF
        sharp = sharp[np.argsort(-centers[sharp], kind='stable')][:MAX_REFINED_CANDIDATES]
        offsets = np.linspace(-settings.QUAD_TAIL_SIGMAS, settings.QUAD_TAIL_SIGMAS, REFINE_NODES)
        local = (centers[sharp, None] + scales[sharp, None] * offsets[None, :]).reshape(-1)
        nodes.append(local[(local > lo) & (local < hi)])
    return np.unique(np.concatenate(nodes))


def m_hat_numeric(means, stds, m0: float, lip: Optional[LipschitzSpec] = None) -> MaxEstimate:
    """m_hat = m0 + integral over [m0, W] of g(w) dw, trapezoid rule on adaptive nodes"""
    mu, sd = require_stats(means, stds)
    m0 = _require_anchor(m0)
    margin = _margin(lip)
    shifted = mu + margin

    active = (m0 - shifted) / sd <= SATURATED_Z
    if not np.any(active):
        return MaxEstimate(m0, m0, MaxMethod.NUMERIC, 0.0, 0, {'n_active': 0, 'margin': margin})

    mu_a, sd_a, shifted_a = mu[active], sd[active], shifted[active]
    upper = max(m0, float(np.max(shifted_a + settings.QUAD_TAIL_SIGMAS * sd_a)))
    tail = float(g_curve(mu_a, sd_a, [upper], margin)[0])
    extensions = 0
    while tail >= settings.TAIL_EPS and extensions < MAX_TAIL_EXTENSIONS:
        upper += 2.0 * float(np.max(sd_a))
        tail = float(g_curve(mu_a, sd_a, [upper], margin)[0])
        extensions += 1

    nodes = _quadrature_nodes(m0, upper, shifted_a, sd_a)
    mass = float(trapezoid(g_curve(mu_a, sd_a, nodes, margin), nodes)) if nodes.size > 1 else 0.0
    mass = max(mass, 0.0)
    logger.debug(f"Numeric m_hat: {int(active.sum())} active candidates, {nodes.size} nodes on [{m0:.6g}, {upper:.6g}]")
    return MaxEstimate(
        m0 + mass, m0, MaxMethod.NUMERIC, mass, int(nodes.size),
        {'n_active': int(active.sum()), 'upper_limit': upper, 'tail_g': tail, 'margin': margin},
    )


def m_hat_exact_noisy(means, stds, m0_hint: Optional[float] = None) -> MaxEstimate:
    """
    E[max] as integral over [0, W] of (1 - F(y)) - F(-y), F the max-CDF.

    Not anchored at the best observation, so the value may lie below m0_hint.
    """
    mu, sd = require_stats(means, stds)
    m0 = float(m0_hint) if m0_hint is not None and math.isfinite(m0_hint) else float('nan')
    k = settings.QUAD_TAIL_SIGMAS
    upper = max(0.0, float(np.max(mu + k * sd)), float(np.min(k * sd - mu)))

    centers = np.concatenate([mu, -mu])
    scales = np.concatenate([sd, sd])
    nodes = _quadrature_nodes(0.0, upper, centers, scales)
    if nodes.size < 2:
        value = 0.0
    else:
        upper_tail = -np.expm1(log_max_cdf(mu, sd, nodes))
        lower_tail = np.exp(log_max_cdf(mu, sd, -nodes))
        value = float(trapezoid(upper_tail - lower_tail, nodes))
    return MaxEstimate(value, m0, MaxMethod.EXACT_NOISY, abs(value), int(nodes.size), {'upper_limit': upper})


def m_hat_laplace(means, stds, m0: float, lip: Optional[LipschitzSpec] = None) -> MaxEstimate:
    """
    Two-point fit of g(w) ~ a exp(-(w - m0)^2 / 2b^2) integrated over [m0, inf).

    a = g(m0) exactly; the second evaluation sits one median posterior std above m0.
    """
    mu, sd = require_stats(means, stds)
    m0 = _require_anchor(m0)
    margin = _margin(lip)

    a = float(g_curve(mu, sd, [m0], margin)[0])
    if a <= settings.LAPLACE_G_EPS:
        return MaxEstimate(m0, m0, MaxMethod.LAPLACE, 0.0, 0, {'a': a, 'degenerate': 1.0})

    probe = max(float(np.median(sd)), settings.LAPLACE_PROBE_FLOOR)
    g1 = float(g_curve(mu, sd, [m0 + probe], margin)[0])
    if g1 >= a or g1 <= 0.0:
        logger.warning(f"Laplace fit degenerate (a={a:.3g}, g1={g1:.3g}); falling back to quadrature")
        numeric = m_hat_numeric(mu, sd, m0, lip)
        return MaxEstimate(
            numeric.value, m0, MaxMethod.LAPLACE, numeric.integral_mass, numeric.n_quadrature_points,
            {'a': a, 'g_probe': g1, 'probe': probe, 'fallback': 1.0},
        )

    b = math.sqrt(-probe * probe / (2.0 * math.log(g1 / a)))
    mass = a * b * math.sqrt(math.pi / 2.0)
    return MaxEstimate(m0 + mass, m0, MaxMethod.LAPLACE, mass, 2, {'a': a, 'b': b, 'g_probe': g1, 'probe': probe})
