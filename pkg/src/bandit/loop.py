"""
Sequential select / observe / update driver.

Each round fits the posterior from scratch, scores the grid with the configured
acquisition, evaluates the oracle at the chosen point and appends the noisy
observation. Ground-truth grid values are held by the runner only for regret
accounting; the acquisition sees nothing but the history.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from acquisition import AcquisitionKind, AcquisitionName, Selection, select
from config.settings import settings
from gp_core import CandidateGrid, GpModel, History, fit_posterior, refit_hyperparameters
from max_value import LipschitzSpec
from utils.errors import ArgumentError, OracleError
from utils.helpers import derive_rng
from utils.logger import setup_logger
from utils.validators import as_points, require_probability
from .bounds import ZetaSchedule, zeta_schedule

logger = setup_logger(__name__)

Oracle = Callable[[np.ndarray], float]

DEFAULT_REFIT_LENGTHSCALES = (0.025, 0.05, 0.1, 0.2, 0.4)
DEFAULT_REFIT_SIGNAL_STDS = (0.5, 1.0, 2.0)

# Sub-streams of the run seed
NOISE_STREAM = 1


@dataclass(frozen=True)
class RefitPolicy:
    every: int
    lengthscales: Tuple[float, ...] = DEFAULT_REFIT_LENGTHSCALES
    signal_stds: Tuple[float, ...] = DEFAULT_REFIT_SIGNAL_STDS

    def __post_init__(self):
        if self.every < 1:
            raise ArgumentError(f"refit interval must be >= 1, got {self.every}")

    def last_refit_round(self, t: int) -> Optional[int]:
        """Latest round r <= t at which a refit happens (r > 1 and (r - 1) % every == 0)"""
        if t < 2:
            return None
        r = 1 + ((t - 1) // self.every) * self.every
        return r if r > 1 else None

    def to_dict(self) -> dict:
        return {'every': self.every, 'lengthscales': list(self.lengthscales), 'signal_stds': list(self.signal_stds)}


@dataclass(frozen=True)
class RunConfig:
    model: GpModel
    grid: CandidateGrid
    acquisition: AcquisitionKind
    max_rounds: int
    observation_noise_std: float = 0.0
    seed: int = 0
    refit: Optional[RefitPolicy] = None
    lipschitz: Optional[LipschitzSpec] = None
    delta: float = settings.ZETA_DELTA
    warm_start: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.max_rounds < 1:
            raise ArgumentError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if not (self.observation_noise_std >= 0 and math.isfinite(self.observation_noise_std)):
            raise ArgumentError(f"observation_noise_std must be nonnegative, got {self.observation_noise_std}")
        require_probability(self.delta, "delta")
        if self.warm_start is not None:
            warm = as_points(self.warm_start, "warm_start")
            if warm.shape[0] and warm.shape[1] != self.grid.dim:
                raise ArgumentError(f"warm-start points have dimension {warm.shape[1]}, grid has {self.grid.dim}")
            object.__setattr__(self, 'warm_start', warm)

    @property
    def n_warm(self) -> int:
        return 0 if self.warm_start is None else self.warm_start.shape[0]


@dataclass(frozen=True)
class RoundRecord:
    t: int
    x: np.ndarray
    y: float
    m_hat: Optional[float]
    nu_t: Optional[float]
    zeta_t: float
    simple_regret: float
    instantaneous_regret: float
    cumulative_regret: float
    sigma_at_choice: float
    mu_at_choice: float
    f_at_choice: float
    lambda_equiv: Optional[float] = None
    theta_equiv: Optional[float] = None
    m_hat_covers_max: Optional[bool] = None


@dataclass
class RunResult:
    label: str
    records: List[RoundRecord]
    f_max: float
    model: GpModel
    elapsed_seconds: float = 0.0
    selection_seconds: float = 0.0
    history: Optional[History] = field(default=None, repr=False)

    @property
    def rounds(self) -> int:
        return len(self.records)

    @property
    def instantaneous(self) -> np.ndarray:
        return np.array([r.instantaneous_regret for r in self.records])

    @property
    def r_min(self) -> float:
        return float(np.min(self.instantaneous))

    @property
    def T_min(self) -> int:
        """First round attaining r_min"""
        return int(np.argmin(self.instantaneous)) + 1

    @property
    def simple_curve(self) -> np.ndarray:
        return np.array([r.simple_regret for r in self.records])

    @property
    def cumulative_curve(self) -> np.ndarray:
        """Average cumulative regret R_t = (sum of instantaneous regrets) / t"""
        sums = np.array([r.cumulative_regret for r in self.records])
        return sums / np.arange(1, sums.size + 1)

    @property
    def chosen_points(self) -> np.ndarray:
        return np.vstack([r.x for r in self.records])


def model_for_round(config: RunConfig, history: History, t: int) -> GpModel:
    """Model in force at round t: the configured one, or the refit from the most recent refit round"""
    if config.refit is None:
        return config.model
    r = config.refit.last_refit_round(t)
    if r is None:
        return config.model
    prefix = history.prefix(config.n_warm + r - 1)
    return refit_hyperparameters(config.model, prefix, config.refit.lengthscales, config.refit.signal_stds)


def choose(config: RunConfig, model: GpModel, history: History, t: int) -> Tuple[Selection, np.ndarray, np.ndarray]:
    """One acquisition step on the grid; returns the selection and the posterior (means, stds)"""
    post = fit_posterior(model, history)
    means, stds = post.predict(config.grid)
    rng = None
    if config.acquisition.name == AcquisitionName.RANDOM:
        rng = derive_rng(config.seed, config.acquisition.seed, t)
    selection = select(config.acquisition, (means, stds), t=t, best_observed=history.best_value(),
                       rng=rng, lipschitz=config.lipschitz)
    return selection, means, stds


def _evaluate(oracle: Oracle, x: np.ndarray, t: int) -> float:
    try:
        value = float(oracle(x))
    except Exception as e:
        raise OracleError(f"{type(e).__name__}: {e}", t) from e
    if not math.isfinite(value):
        raise OracleError(f"oracle returned non-finite value {value}", t)
    return value


def run(config: RunConfig, oracle: Oracle, true_values: Optional[Sequence[float]] = None) -> RunResult:
    """Execute config.max_rounds rounds; deterministic given config.seed"""
    started = time.perf_counter()
    grid = config.grid
    if true_values is None:
        truth = np.array([_evaluate(oracle, x, 0) for x in grid.points])
    else:
        truth = np.asarray(true_values, dtype=float).reshape(-1)
        if truth.shape[0] != len(grid):
            raise ArgumentError(f"{truth.shape[0]} true values for a grid of {len(grid)} points")
    f_max = float(np.max(truth))

    noise_rng = derive_rng(config.seed, NOISE_STREAM)
    noise_std = config.observation_noise_std
    history = History.empty(grid.dim)
    for x in (config.warm_start if config.warm_start is not None else []):
        y = _evaluate(oracle, x, 0) + noise_std * noise_rng.standard_normal()
        history = history.append(x, y)

    label = config.acquisition.label
    logger.debug(f"Starting {label} run: {config.max_rounds} rounds on {len(grid)} candidates, seed {config.seed}")

    model = config.model
    records: List[RoundRecord] = []
    simple = math.inf
    cumulative = 0.0
    selection_time = 0.0
    for t in range(1, config.max_rounds + 1):
        if config.refit is not None and config.refit.last_refit_round(t) == t:
            model = model_for_round(config, history, t)

        tick = time.perf_counter()
        selection, means, stds = choose(config, model, history, t)
        selection_time += time.perf_counter() - tick

        x = grid.points[selection.index].copy()
        f_value = _evaluate(oracle, x, t)
        y = f_value + noise_std * noise_rng.standard_normal()
        history = history.append(x, y)

        f_at = float(truth[selection.index])
        instantaneous = max(f_max - f_at, 0.0)
        simple = min(simple, instantaneous)
        cumulative += instantaneous
        covers = None if selection.m_hat is None else bool(selection.m_hat >= f_max)
        records.append(RoundRecord(
            t=t, x=x, y=float(y), m_hat=selection.m_hat, nu_t=selection.nu_t,
            zeta_t=zeta_schedule(t, config.max_rounds, config.delta, ZetaSchedule.PI_SQUARED),
            simple_regret=simple, instantaneous_regret=instantaneous, cumulative_regret=cumulative,
            sigma_at_choice=float(stds[selection.index]), mu_at_choice=float(means[selection.index]),
            f_at_choice=f_at, lambda_equiv=selection.lambda_equiv, theta_equiv=selection.theta_equiv,
            m_hat_covers_max=covers,
        ))
        logger.debug(f"{label} round {t}: index {selection.index}, y={y:.6g}, simple regret {simple:.6g}")

    elapsed = time.perf_counter() - started
    logger.debug(f"{label} run finished in {elapsed:.2f}s, r_min={simple:.6g}")
    return RunResult(label, records, f_max, model, elapsed, selection_time / config.max_rounds, history)
