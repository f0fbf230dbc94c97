"""
JSON configuration files for the bench and suggest commands.

Every omitted field takes its documented default; unknown keys are rejected
with their dotted path. GPEST_SEED, when set, replaces the file's seed.
"""

import json
import os
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional

import numpy as np

from acquisition import AcquisitionKind
from bandit import RefitPolicy, RunConfig
from bandit.loop import DEFAULT_REFIT_LENGTHSCALES, DEFAULT_REFIT_SIGNAL_STDS
from benchmarks import FunctionFamily, SuiteSpec
from config.benchmark_config import benchmark_config
from config.settings import settings
from gp_core import CandidateGrid, GpModel, KernelSpec, MeanSpec
from max_value import LipschitzSpec
from .errors import ArgumentError, ConfigError
from .logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_ACQUISITIONS = ('est_numeric', 'est_laplace', 'ucb', 'ei', 'pi', 'random')

SUITE_KEYS = {'family', 'n_functions', 'max_rounds', 'acquisitions', 'resolution', 'seed', 'noise_std',
              'warm_start', 'refit', 'lipschitz', 'delta', 'prior'}
SUGGEST_KEYS = {'grid', 'model', 'acquisition', 'seed', 'warm_start', 'lipschitz', 'delta', 'refit'}


def load_config_file(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return data


def reject_unknown(data: Dict[str, Any], allowed: Iterable[str], path: str = ''):
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key '{path + '.' if path else ''}{unknown[0]}'")


def _section(data: Dict[str, Any], key: str, path: str = '') -> Dict[str, Any]:
    value = data.get(key) or {}
    if not isinstance(value, dict):
        raise ConfigError(f"'{path + key}' must be an object")
    return value


def _number(value: Any, path: str, kind=float):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{path}' must be a number, got {value!r}")
    if kind is int and float(value) != int(value):
        raise ConfigError(f"'{path}' must be an integer, got {value!r}")
    return kind(value)


def _optional(data: Dict[str, Any], key: str, default, path: str = '', kind=float):
    value = data.get(key, default)
    return None if value is None else _number(value, path + key, kind)


def resolve_seed(data: Dict[str, Any]) -> int:
    try:
        override = settings.seed_override()
    except ValueError as e:
        raise ConfigError(str(e))
    if override is not None:
        logger.info(f"GPEST_SEED overrides config seed: {override}")
        return override
    return _number(data.get('seed', 0), 'seed', int)


def parse_refit(value: Any) -> Optional[RefitPolicy]:
    if value is None:
        return None
    if not isinstance(value, dict):
        raise ConfigError("'refit' must be an object or null")
    reject_unknown(value, {'every', 'lengthscales', 'signal_stds'}, 'refit')
    try:
        return RefitPolicy(
            every=_number(value.get('every', 5), 'refit.every', int),
            lengthscales=tuple(_number(v, 'refit.lengthscales', float)
                               for v in value.get('lengthscales', DEFAULT_REFIT_LENGTHSCALES)),
            signal_stds=tuple(_number(v, 'refit.signal_stds', float)
                              for v in value.get('signal_stds', DEFAULT_REFIT_SIGNAL_STDS)),
        )
    except ArgumentError as e:
        raise ConfigError(f"refit: {e}")


def parse_acquisitions(value: Any) -> tuple:
    if not isinstance(value, list) or not value:
        raise ConfigError("'acquisitions' must be a non-empty list")
    return tuple(AcquisitionKind.from_dict(item, f"acquisitions[{i}]") for i, item in enumerate(value))


def parse_suite_spec(data: Dict[str, Any]) -> SuiteSpec:
    reject_unknown(data, SUITE_KEYS)
    try:
        family = FunctionFamily(data.get('family', FunctionFamily.GP_SAMPLE_1D.value))
    except ValueError:
        raise ConfigError(f"'family' must be one of {[f.value for f in FunctionFamily]}, got {data.get('family')!r}")
    prior = _section(data, 'prior')
    reject_unknown(prior, {'lengthscale', 'signal_std'}, 'prior')

    dim = family.dim
    default_n = benchmark_config.DEFAULT_FUNCTION_COUNTS[dim] if family.is_sampled else 1
    default_rounds = benchmark_config.MAX_ROUNDS[dim] if family.is_sampled else benchmark_config.TEST_FUNCTION_ROUNDS
    try:
        return SuiteSpec(
            family=family,
            n_functions=_number(data.get('n_functions', default_n), 'n_functions', int),
            max_rounds=_number(data.get('max_rounds', default_rounds), 'max_rounds', int),
            acquisitions=parse_acquisitions(data.get('acquisitions', list(DEFAULT_ACQUISITIONS))),
            resolution=_optional(data, 'resolution', None, kind=int),
            base_seed=resolve_seed(data),
            noise_std=_number(data.get('noise_std', benchmark_config.NOISE_STD), 'noise_std'),
            warm_start=_number(data.get('warm_start', benchmark_config.WARM_START_POINTS), 'warm_start', int),
            refit=parse_refit(data.get('refit')),
            lipschitz_L=_optional(data, 'lipschitz', None),
            delta=_number(data.get('delta', settings.ZETA_DELTA), 'delta'),
            lengthscale=_optional(prior, 'lengthscale', None, 'prior.'),
            signal_std=_optional(prior, 'signal_std', None, 'prior.'),
        )
    except ArgumentError as e:
        raise ConfigError(str(e))


def load_suite_spec(path: str) -> SuiteSpec:
    return parse_suite_spec(load_config_file(path))


@dataclass(frozen=True)
class SuggestConfig:
    model: GpModel
    grid: CandidateGrid
    acquisition: AcquisitionKind
    seed: int = 0
    warm_start: int = 0
    lipschitz: Optional[LipschitzSpec] = None
    delta: float = settings.ZETA_DELTA
    refit: Optional[RefitPolicy] = None

    def run_config(self, max_rounds: int, noise_std: float = 0.0, warm_start_points=None) -> RunConfig:
        """Equivalent in-process run configuration"""
        return RunConfig(
            model=self.model, grid=self.grid, acquisition=self.acquisition, max_rounds=max_rounds,
            observation_noise_std=noise_std, seed=self.seed, refit=self.refit, lipschitz=self.lipschitz,
            delta=self.delta, warm_start=warm_start_points,
        )


def parse_grid(data: Dict[str, Any]) -> CandidateGrid:
    if not data:
        raise ConfigError("'grid' is required")
    reject_unknown(data, {'axes', 'points', 'bounds'}, 'grid')
    try:
        if 'axes' in data:
            if 'points' in data:
                raise ConfigError("'grid' takes either 'axes' or 'points', not both")
            axes = data['axes']
            if not isinstance(axes, list) or not axes:
                raise ConfigError("'grid.axes' must be a non-empty list")
            bounds, sizes = [], []
            for i, axis in enumerate(axes):
                path = f"grid.axes[{i}]"
                if not isinstance(axis, dict):
                    raise ConfigError(f"'{path}' must be an object")
                reject_unknown(axis, {'lo', 'hi', 'n'}, path)
                bounds.append((_number(axis.get('lo', 0.0), f"{path}.lo"), _number(axis.get('hi', 1.0), f"{path}.hi")))
                sizes.append(_number(axis.get('n', 100), f"{path}.n", int))
            return CandidateGrid.from_axes(bounds, sizes)
        if 'points' in data:
            bounds = data.get('bounds')
            return CandidateGrid.from_points(np.asarray(data['points'], dtype=float),
                                             None if bounds is None else [tuple(b) for b in bounds])
    except (ArgumentError, TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"grid: {e}")
    raise ConfigError("'grid' needs 'axes' or 'points'")


def parse_model(data: Dict[str, Any], dim: int) -> GpModel:
    reject_unknown(data, {'kernel', 'mean', 'noise_var'}, 'model')
    kernel = _section(data, 'kernel', 'model.')
    reject_unknown(kernel, {'family', 'nu', 'lengthscale', 'signal_std'}, 'model.kernel')
    mean = _section(data, 'mean', 'model.')
    reject_unknown(mean, {'kind', 'slope', 'intercept'}, 'model.mean')
    try:
        kernel_spec = KernelSpec(
            family=kernel.get('family', 'matern'),
            lengthscale=_number(kernel.get('lengthscale', 0.1), 'model.kernel.lengthscale'),
            signal_std=_number(kernel.get('signal_std', 1.0), 'model.kernel.signal_std'),
            nu=_number(kernel.get('nu', settings.MATERN_NU), 'model.kernel.nu'),
        )
        if mean.get('kind', 'zero') == 'linear':
            slope = mean.get('slope', [0.0] * dim)
            if not isinstance(slope, list) or len(slope) != dim:
                raise ConfigError(f"'model.mean.slope' must list {dim} numbers")
            mean_spec = MeanSpec.linear([_number(s, 'model.mean.slope') for s in slope],
                                        _number(mean.get('intercept', 0.0), 'model.mean.intercept'))
        else:
            mean_spec = MeanSpec(mean.get('kind', 'zero'))
        return GpModel(kernel_spec, mean_spec, _number(data.get('noise_var', 0.0), 'model.noise_var'))
    except (ArgumentError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"model: {e}")


def parse_suggest_config(data: Dict[str, Any]) -> SuggestConfig:
    reject_unknown(data, SUGGEST_KEYS)
    grid = parse_grid(_section(data, 'grid'))
    model = parse_model(_section(data, 'model'), grid.dim)
    acquisition = AcquisitionKind.from_dict(data.get('acquisition', 'est_numeric'))
    lip = _optional(data, 'lipschitz', None)
    try:
        return SuggestConfig(
            model=model,
            grid=grid,
            acquisition=acquisition,
            seed=resolve_seed(data),
            warm_start=_number(data.get('warm_start', 0), 'warm_start', int),
            lipschitz=LipschitzSpec(lip, grid.rho) if lip is not None else None,
            delta=_number(data.get('delta', settings.ZETA_DELTA), 'delta'),
            refit=parse_refit(data.get('refit')),
        )
    except ArgumentError as e:
        raise ConfigError(str(e))


def load_suggest_config(path: str) -> SuggestConfig:
    return parse_suggest_config(load_config_file(path))
