from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
from scipy.linalg import LinAlgError, cholesky

from config.settings import settings
from utils.errors import NumericalError
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class Factor:
    chol: np.ndarray
    jitter: float


def jitter_ladder(scale: float, exact_first: bool) -> Iterator[float]:
    """0 (optionally), then JITTER_START*scale growing by JITTER_GROWTH up to JITTER_MAX*scale"""
    if exact_first:
        yield 0.0
    jitter = settings.JITTER_START * scale
    ceiling = settings.JITTER_MAX * scale * (1.0 + 1e-9)
    while jitter <= ceiling:
        yield jitter
        jitter *= settings.JITTER_GROWTH


def stable_cholesky(matrix: np.ndarray, scale: float, exact_first: bool = True,
                    pivot_floor: Optional[float] = None) -> Factor:
    """
    Lower Cholesky factor of matrix + jitter*I, escalating jitter on failure.

    A factor whose smallest squared pivot falls below pivot_floor*scale counts
    as a failure, so a numerically singular matrix is never accepted silently.
    """
    n = matrix.shape[0]
    last_error = None
    for jitter in jitter_ladder(scale, exact_first):
        try:
            chol = cholesky(matrix + jitter * np.eye(n), lower=True, check_finite=False)
        except LinAlgError as e:
            last_error = e
            continue
        if not np.all(np.isfinite(chol)):
            continue
        if pivot_floor is not None and n and np.min(np.diag(chol)) ** 2 < pivot_floor * scale:
            continue
        if jitter > 0:
            logger.debug(f"Cholesky succeeded with jitter {jitter:.3g} (n={n})")
        return Factor(chol, jitter)

    try:
        cond = float(np.linalg.cond(matrix))
    except np.linalg.LinAlgError:
        cond = float('inf')
    logger.warning(f"Factorization failed for {n}x{n} matrix, condition number {cond:.3g}")
    raise NumericalError(f"Cholesky factorization failed: {last_error or 'degenerate pivots'}",
                         jitter=settings.JITTER_MAX * scale, condition_number=cond)
