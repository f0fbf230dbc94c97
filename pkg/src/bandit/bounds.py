"""Regret-bound diagnostics for EST runs: confidence multipliers, information gain and bound right-hand sides."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

import numpy as np

from gp_core import GpModel
from gp_core.linalg import stable_cholesky
from utils.errors import ArgumentError
from utils.logger import setup_logger
from utils.validators import as_points, require_positive, require_probability

logger = setup_logger(__name__)


class ZetaSchedule(str, Enum):
    PI_SQUARED = 'pi_squared'
    HORIZON = 'horizon'


def zeta_schedule(t: int, T: int, delta: float, schedule: ZetaSchedule = ZetaSchedule.PI_SQUARED) -> float:
    """
    Deviation multiplier zeta = sqrt(2 log(pi_t / (2 delta))) with pi_t = pi^2 t^2 / 6 or pi_t = T.

    The log argument can fall below 1 for large delta; zeta is then 0.
    """
    if t < 1:
        raise ArgumentError(f"t must be >= 1, got {t}")
    require_probability(delta, "delta")
    if ZetaSchedule(schedule) == ZetaSchedule.HORIZON:
        if T < 1:
            raise ArgumentError(f"T must be >= 1, got {T}")
        arg = T / (2.0 * delta)
    else:
        arg = math.pi ** 2 * t * t / (12.0 * delta)
    return math.sqrt(max(0.0, 2.0 * math.log(arg)))


def regret_constant(noise_var: float) -> float:
    """C = 2 / log(1 + sigma^-2)"""
    require_positive(noise_var, "noise_var")
    return 2.0 / math.log1p(1.0 / noise_var)


def information_gain(model: GpModel, points) -> float:
    """1/2 log det(I + sigma^-2 K) over the given points"""
    require_positive(model.noise_var, "noise_var")
    points = as_points(points, "points")
    if points.shape[0] == 0:
        return 0.0
    matrix = np.eye(points.shape[0]) + model.kernel.gram(points) / model.noise_var
    factor = stable_cholesky(matrix, 1.0, exact_first=True)
    return float(np.sum(np.log(np.diag(factor.chol))))


@dataclass
class BoundReport:
    margins: np.ndarray
    fraction_nonnegative: float
    cumulative_regret: float
    information_gain: float
    C: float
    nu_star: float
    zeta_T: float
    rounds: int
    high_probability_rhs: float
    expected_rhs: float
    uncovered_rounds: List[int] = field(default_factory=list)
    kernel_bounded: bool = True

    def trial_bound(self, epsilon: float) -> Tuple[float, float]:
        """Rounds after which regret epsilon is reached: (in expectation, with probability 1 - delta)"""
        require_positive(epsilon, "epsilon")
        expected = self.C * self.nu_star * self.information_gain / epsilon ** 2
        nz = self.nu_star + self.zeta_T + 2.0 * math.sqrt(max(self.nu_star, 0.0) * self.zeta_T)
        return expected, self.C * nz * self.information_gain / epsilon ** 2

    def to_dict(self) -> dict:
        return {
            'fraction_nonnegative_margin': self.fraction_nonnegative,
            'cumulative_regret': self.cumulative_regret,
            'information_gain_realized': self.information_gain,
            'C': self.C,
            'nu_star': self.nu_star,
            'zeta_T': self.zeta_T,
            'rounds': self.rounds,
            'high_probability_rhs': self.high_probability_rhs,
            'expected_rhs': self.expected_rhs,
            'uncovered_rounds': list(self.uncovered_rounds),
            'kernel_bounded': self.kernel_bounded,
        }


def bound_report(result, model: GpModel, delta: float) -> BoundReport:
    """
    Compare an EST run against its regret bounds.

    The realized information gain of the chosen points stands in for the maximal
    gain over subsets, so the right-hand sides are diagnostics rather than guarantees.
    """
    records = result.records
    if not records:
        raise ArgumentError("run has no records")
    if any(r.nu_t is None for r in records):
        raise ArgumentError("bound report needs nu_t on every round (run an EST acquisition)")
    require_probability(delta, "delta")

    T = len(records)
    nu = np.array([r.nu_t for r in records])
    zeta = np.array([zeta_schedule(r.t, T, delta, ZetaSchedule.PI_SQUARED) for r in records])
    sigma = np.array([r.sigma_at_choice for r in records])
    regret = np.array([r.instantaneous_regret for r in records])
    margins = (nu + zeta) * sigma - regret

    gain = information_gain(model, result.chosen_points)
    C = regret_constant(model.noise_var)
    nu_star = float(np.max(nu))
    zeta_T = zeta_schedule(T, T, delta, ZetaSchedule.HORIZON)
    root = math.sqrt(C * T * gain)
    uncovered = [r.t for r in records if r.m_hat is not None and r.m_hat < result.f_max]
    if uncovered:
        logger.warning(f"m_hat fell below the true maximum in {len(uncovered)} of {T} rounds; bound assumption violated there")

    return BoundReport(
        margins=margins,
        fraction_nonnegative=float(np.mean(margins >= 0)),
        cumulative_regret=float(regret.sum()),
        information_gain=gain,
        C=C,
        nu_star=nu_star,
        zeta_T=zeta_T,
        rounds=T,
        high_probability_rhs=(nu_star + zeta_T) * root,
        expected_rhs=nu_star * root,
        uncovered_rounds=uncovered,
        kernel_bounded=model.kernel.signal_std <= 1.0,
    )
