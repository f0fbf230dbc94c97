"""
Suite runner: every acquisition on every objective, with matched seeds.

For a given function index all acquisitions see the same objective draw, the
same warm-start points and the same observation-noise stream. Runs are
independent, so they may execute in a process pool; results are reduced in
(function_id, acquisition) order, which keeps the statistics identical for any
worker count.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from itertools import repeat
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from acquisition import AcquisitionKind
from bandit import RefitPolicy, RunConfig, RunResult, run
from config.benchmark_config import benchmark_config
from config.settings import settings
from max_value import LipschitzSpec
from utils.errors import ArgumentError
from utils.helpers import derive_rng, derive_seed, lower_median
from utils.logger import setup_logger
from .gp_objectives import GridObjective, make_branin_objective, make_gp_objective, make_hartmann3_objective

logger = setup_logger(__name__)

WARM_START_STREAM = 2


class FunctionFamily(str, Enum):
    GP_SAMPLE_1D = 'gp_sample_1d'
    GP_SAMPLE_2D = 'gp_sample_2d'
    GP_SAMPLE_3D = 'gp_sample_3d'
    HARTMANN3 = 'hartmann3'
    BRANIN = 'branin'

    @property
    def dim(self) -> int:
        return {'gp_sample_1d': 1, 'gp_sample_2d': 2, 'gp_sample_3d': 3, 'hartmann3': 3, 'branin': 2}[self.value]

    @property
    def is_sampled(self) -> bool:
        return self.value.startswith('gp_sample')


@dataclass(frozen=True)
class SuiteSpec:
    family: FunctionFamily
    n_functions: int
    max_rounds: int
    acquisitions: Tuple[AcquisitionKind, ...]
    resolution: Optional[int] = None
    base_seed: int = 0
    noise_std: float = benchmark_config.NOISE_STD
    warm_start: int = benchmark_config.WARM_START_POINTS
    refit: Optional[RefitPolicy] = None
    lipschitz_L: Optional[float] = None
    delta: float = settings.ZETA_DELTA
    lengthscale: Optional[float] = None
    signal_std: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'family', FunctionFamily(self.family))
        object.__setattr__(self, 'acquisitions', tuple(self.acquisitions))
        if self.n_functions < 1:
            raise ArgumentError(f"n_functions must be >= 1, got {self.n_functions}")
        if self.max_rounds < 1:
            raise ArgumentError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if not self.acquisitions:
            raise ArgumentError("suite needs at least one acquisition")
        if self.warm_start < 0:
            raise ArgumentError(f"warm_start must be >= 0, got {self.warm_start}")
        if not (self.noise_std >= 0 and math.isfinite(self.noise_std)):
            raise ArgumentError(f"noise_std must be nonnegative, got {self.noise_std}")

    @property
    def labels(self) -> List[str]:
        """Acquisition labels, suffixed _2, _3, ... when a kind is listed more than once"""
        seen: Dict[str, int] = {}
        labels = []
        for kind in self.acquisitions:
            seen[kind.label] = seen.get(kind.label, 0) + 1
            labels.append(kind.label if seen[kind.label] == 1 else f"{kind.label}_{seen[kind.label]}")
        return labels

    def to_dict(self) -> dict:
        return {
            'family': self.family.value,
            'n_functions': self.n_functions,
            'max_rounds': self.max_rounds,
            'acquisitions': [k.to_dict() for k in self.acquisitions],
            'resolution': self.resolution,
            'seed': self.base_seed,
            'noise_std': self.noise_std,
            'warm_start': self.warm_start,
            'refit': self.refit.to_dict() if self.refit else None,
            'lipschitz': self.lipschitz_L,
            'delta': self.delta,
            'lengthscale': self.lengthscale,
            'signal_std': self.signal_std,
        }


@dataclass
class SuiteRun:
    function_id: int
    label: str
    result: RunResult


@dataclass
class AcquisitionStats:
    label: str
    n_runs: int
    T_min_mean: float
    T_min_median: float
    r_min_mean: float
    r_min_median: float
    simple_mean: np.ndarray
    simple_std: np.ndarray
    cumulative_mean: np.ndarray
    cumulative_std: np.ndarray
    mean_selection_seconds: float = 0.0


@dataclass
class SuiteStats:
    spec: SuiteSpec
    acquisitions: List[AcquisitionStats]
    runs: List[SuiteRun] = field(default_factory=list)
    n_failed: int = 0

    def by_label(self, label: str) -> AcquisitionStats:
        for stats in self.acquisitions:
            if stats.label == label:
                return stats
        raise KeyError(label)


def minima_summary(t_mins: Sequence[float], r_mins: Sequence[float]) -> Dict[str, float]:
    """Mean and lower median of T_min and r_min; shared by bench and report so both agree exactly"""
    t_arr = np.asarray(t_mins, dtype=float)
    r_arr = np.asarray(r_mins, dtype=float)
    return {
        'T_min_mean': float(np.mean(t_arr)) if t_arr.size else math.nan,
        'T_min_median': lower_median(list(t_arr)),
        'r_min_mean': float(np.mean(r_arr)) if r_arr.size else math.nan,
        'r_min_median': lower_median(list(r_arr)),
        'n_runs': int(t_arr.size),
    }


def curve_summary(curves: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    stacked = np.vstack(curves)
    return stacked.mean(axis=0), stacked.std(axis=0)


@lru_cache(maxsize=4)
def _objective(family: FunctionFamily, resolution: Optional[int], function_seed: int,
               lengthscale: Optional[float], signal_std: Optional[float]) -> GridObjective:
    if family == FunctionFamily.HARTMANN3:
        return make_hartmann3_objective(resolution)
    if family == FunctionFamily.BRANIN:
        return make_branin_objective(resolution)
    return make_gp_objective(family.dim, function_seed, resolution, lengthscale, signal_std)


def build_run(spec: SuiteSpec, function_id: int, acq_index: int) -> Tuple[RunConfig, GridObjective]:
    """Objective and run configuration for one (function, acquisition) pair"""
    function_seed = derive_seed(spec.base_seed, function_id, 0)
    run_seed = derive_seed(spec.base_seed, function_id, 1)
    objective = _objective(spec.family, spec.resolution, function_seed, spec.lengthscale, spec.signal_std)
    grid = objective.grid

    n_warm = min(spec.warm_start, len(grid))
    warm_idx = derive_rng(run_seed, WARM_START_STREAM).choice(len(grid), size=n_warm, replace=False)
    lipschitz = LipschitzSpec(spec.lipschitz_L, grid.rho) if spec.lipschitz_L is not None else None
    model = replace(objective.model, noise_var=spec.noise_std ** 2)

    config = RunConfig(
        model=model,
        grid=grid,
        acquisition=spec.acquisitions[acq_index],
        max_rounds=spec.max_rounds,
        observation_noise_std=spec.noise_std,
        seed=run_seed,
        refit=spec.refit,
        lipschitz=lipschitz,
        delta=spec.delta,
        warm_start=grid.points[np.sort(warm_idx)],
    )
    return config, objective


def _run_task(spec: SuiteSpec, function_id: int, acq_index: int) -> Tuple[Optional[RunResult], Optional[str]]:
    try:
        config, objective = build_run(spec, function_id, acq_index)
        return run(config, objective, objective.values), None
    except Exception as e:
        return None, f"{type(e).__name__}: {e}"


def run_suite(spec: SuiteSpec, jobs: int = 1) -> SuiteStats:
    """Run every acquisition on every function and aggregate minima and regret curves"""
    started = time.perf_counter()
    labels = spec.labels
    tasks = [(fid, a) for fid in range(spec.n_functions) for a in range(len(spec.acquisitions))]
    logger.info(f"Running {spec.family.value} suite: {spec.n_functions} function(s) x "
                f"{len(labels)} acquisition(s), {spec.max_rounds} rounds, {jobs} worker(s)")

    fids = [fid for fid, _ in tasks]
    acq_idx = [a for _, a in tasks]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(_run_task, repeat(spec), fids, acq_idx))
    else:
        outcomes = [_run_task(spec, fid, a) for fid, a in tasks]

    runs: List[SuiteRun] = []
    n_failed = 0
    for (fid, a), (result, error) in zip(tasks, outcomes):
        if result is None:
            n_failed += 1
            logger.warning(f"Run excluded: function {fid}, {labels[a]}: {error}")
            continue
        runs.append(SuiteRun(fid, labels[a], result))

    stats = []
    for label in labels:
        mine = [r.result for r in runs if r.label == label]
        if not mine:
            logger.warning(f"No successful runs for {label}")
            continue
        summary = minima_summary([r.T_min for r in mine], [r.r_min for r in mine])
        simple_mean, simple_std = curve_summary([r.simple_curve for r in mine])
        cum_mean, cum_std = curve_summary([r.cumulative_curve for r in mine])
        stats.append(AcquisitionStats(
            label=label, n_runs=summary['n_runs'],
            T_min_mean=summary['T_min_mean'], T_min_median=summary['T_min_median'],
            r_min_mean=summary['r_min_mean'], r_min_median=summary['r_min_median'],
            simple_mean=simple_mean, simple_std=simple_std,
            cumulative_mean=cum_mean, cumulative_std=cum_std,
            mean_selection_seconds=float(np.mean([r.selection_seconds for r in mine])),
        ))
        logger.info(f"{label}: median r_min={summary['r_min_median']:.4g}, median T_min={summary['T_min_median']:.0f}, "
                    f"{1e3 * stats[-1].mean_selection_seconds:.1f} ms/selection")

    if n_failed:
        logger.warning(f"{n_failed} run(s) failed and were excluded from the statistics")
    logger.info(f"Suite finished in {time.perf_counter() - started:.1f}s")
    return SuiteStats(spec, stats, runs, n_failed)
