from typing import Optional

import numpy as np

from max_value import (LipschitzSpec, MaxEstimate, m_hat_exact_noisy, m_hat_laplace, m_hat_numeric,
                       prior_anchor)
from utils.errors import ArgumentError
from utils.logger import setup_logger
from .kinds import AcquisitionKind, AcquisitionName, Selection
from .selectors import Stats, ei_select, est_select, pi_select, random_select, ucb_select

logger = setup_logger(__name__)


def estimate_max(kind: AcquisitionKind, stats: Stats, best_observed: Optional[float],
                 lipschitz: Optional[LipschitzSpec] = None) -> MaxEstimate:
    """m_hat for an EST kind; without observations the integral is anchored at the prior anchor"""
    means, stds = stats
    m0 = best_observed if best_observed is not None else prior_anchor(means, stds)
    if kind.name == AcquisitionName.EST_NUMERIC:
        return m_hat_numeric(means, stds, m0, lipschitz)
    if kind.name == AcquisitionName.EST_LAPLACE:
        return m_hat_laplace(means, stds, m0, lipschitz)
    if kind.name == AcquisitionName.EST_EXACT:
        return m_hat_exact_noisy(means, stds, best_observed)
    raise ArgumentError(f"{kind.label} does not estimate the maximum")


def select(kind: AcquisitionKind, stats: Stats, *, t: int, best_observed: Optional[float] = None,
           rng: Optional[np.random.Generator] = None,
           lipschitz: Optional[LipschitzSpec] = None) -> Selection:
    """Pick the next grid index for round t given posterior (means, stds) on the grid"""
    means, stds = stats
    name = kind.name

    if name == AcquisitionName.UCB:
        return ucb_select(stats, t, len(means), kind.delta)

    if name in (AcquisitionName.EI, AcquisitionName.PI):
        base = best_observed if best_observed is not None else float(np.max(means))
        theta = base + kind.threshold_offset()
        return ei_select(stats, theta) if name == AcquisitionName.EI else pi_select(stats, theta)

    if kind.is_est:
        return est_select(stats, estimate_max(kind, stats, best_observed, lipschitz))

    if name == AcquisitionName.RANDOM:
        if rng is None:
            raise ArgumentError("random selection needs a generator")
        return random_select(len(means), rng)

    raise ArgumentError(f"unsupported acquisition {name}")
