"""Objectives tabulated on a candidate grid: GP prior draws and the fixed test functions."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from config.benchmark_config import benchmark_config
from gp_core import CandidateGrid, GpModel, KernelSpec, MeanSpec, sample_function
from utils.errors import ArgumentError
from utils.helpers import derive_rng, derive_seed
from utils.logger import setup_logger
from .standard_functions import branin_batch, hartmann3_batch, unit_to_branin_box

logger = setup_logger(__name__)


@dataclass(frozen=True)
class GridObjective:
    name: str
    grid: CandidateGrid
    values: np.ndarray
    model: GpModel
    slope: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def f_max(self) -> float:
        return float(np.max(self.values))

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.values))

    def __call__(self, x) -> float:
        return float(self.values[self.grid.nearest_index(x)])


def unit_grid(dim: int, resolution: Optional[int] = None) -> CandidateGrid:
    n = resolution or benchmark_config.GRID_RESOLUTION.get(dim)
    if n is None:
        raise ArgumentError(f"no default grid resolution for dimension {dim}")
    return CandidateGrid.from_axes([(0.0, 1.0)] * dim, n)


def benchmark_model(dim: int, slope=None, lengthscale: Optional[float] = None,
                    signal_std: Optional[float] = None) -> GpModel:
    prior = benchmark_config.GP_PRIOR
    kernel = KernelSpec(
        family=prior['kernel'],
        lengthscale=lengthscale if lengthscale is not None else prior['lengthscale'],
        signal_std=signal_std if signal_std is not None else prior['signal_std'],
        nu=prior['nu'],
    )
    mean = MeanSpec.zero() if slope is None else MeanSpec.linear(slope, prior['intercept'])
    return GpModel(kernel, mean, 0.0)


def make_gp_objective(dim: int, seed: int, resolution: Optional[int] = None,
                      lengthscale: Optional[float] = None, signal_std: Optional[float] = None) -> GridObjective:
    """Draw f on the unit grid from the Matern prior with a random linear mean"""
    if dim not in (1, 2, 3):
        raise ArgumentError(f"GP objectives are available in 1, 2 or 3 dimensions, got {dim}")
    low, high = benchmark_config.GP_PRIOR['slope_range']
    slope = tuple(derive_rng(seed, 0).uniform(low, high, size=dim))
    model = benchmark_model(dim, slope, lengthscale, signal_std)
    grid = unit_grid(dim, resolution)
    values = sample_function(model, grid, derive_seed(seed, 1))
    values.setflags(write=False)
    return GridObjective(f"gp_sample_{dim}d", grid, values, model, slope)


def make_hartmann3_objective(resolution: Optional[int] = None) -> GridObjective:
    grid = unit_grid(3, resolution)
    values = hartmann3_batch(grid.points)
    values.setflags(write=False)
    return GridObjective('hartmann3', grid, values, benchmark_model(3))


def make_branin_objective(resolution: Optional[int] = None) -> GridObjective:
    """Branin on the unit square mapped to its box, standardized by the grid mean and std"""
    grid = unit_grid(2, resolution)
    raw = branin_batch(unit_to_branin_box(grid.points))
    values = (raw - raw.mean()) / raw.std()
    values.setflags(write=False)
    return GridObjective('branin', grid, values, benchmark_model(2))
