from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from utils.errors import ArgumentError
from utils.validators import as_points, as_vector
from .kernels import KernelSpec
from .means import MeanSpec


@dataclass(frozen=True)
class GpModel:
    kernel: KernelSpec = field(default_factory=KernelSpec)
    mean: MeanSpec = field(default_factory=MeanSpec)
    noise_var: float = 0.0

    def __post_init__(self):
        if not (self.noise_var >= 0 and np.isfinite(self.noise_var)):
            raise ArgumentError(f"noise_var must be nonnegative, got {self.noise_var}")

    def with_kernel(self, lengthscale: Optional[float] = None, signal_std: Optional[float] = None) -> 'GpModel':
        kernel = replace(
            self.kernel,
            lengthscale=self.kernel.lengthscale if lengthscale is None else lengthscale,
            signal_std=self.kernel.signal_std if signal_std is None else signal_std,
        )
        return replace(self, kernel=kernel)


@dataclass(frozen=True)
class History:
    """Observed pairs (x_tau, y_tau); immutable, append returns a new History"""
    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        points = as_points(self.points, "history points")
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if points.shape[0] != values.shape[0]:
            raise ArgumentError(f"history has {points.shape[0]} points but {values.shape[0]} values")
        if not np.all(np.isfinite(points)) or not np.all(np.isfinite(values)):
            raise ArgumentError("history contains non-finite entries")
        points.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, 'points', points)
        object.__setattr__(self, 'values', values)

    @classmethod
    def empty(cls, dim: int) -> 'History':
        return cls(np.zeros((0, dim)), np.zeros(0))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.values.shape[0]

    def append(self, x, y: float) -> 'History':
        x = as_vector(x, "x")
        if x.shape[0] != self.dim:
            raise ArgumentError(f"point has dimension {x.shape[0]}, history has {self.dim}")
        return History(np.vstack([self.points, x[None, :]]), np.append(self.values, float(y)))

    def prefix(self, n: int) -> 'History':
        return History(self.points[:n], self.values[:n])

    def best_value(self) -> Optional[float]:
        return float(np.max(self.values)) if len(self) else None

    def deduplicated(self) -> 'History':
        """Drop exact repeats of an (x, y) row, keeping first occurrences"""
        if len(self) < 2:
            return self
        rows = np.column_stack([self.points, self.values])
        _, first = np.unique(rows, axis=0, return_index=True)
        if first.size == len(self):
            return self
        keep = np.sort(first)
        return History(self.points[keep], self.values[keep])
