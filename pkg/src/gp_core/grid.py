"""Finite candidate sets and their covering radius."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from utils.errors import ArgumentError
from utils.validators import as_points, require_finite

PROBE_BUDGET = 4096


@dataclass(frozen=True)
class CandidateGrid:
    points: np.ndarray
    bounds: Tuple[Tuple[float, float], ...]
    rho: float

    def __post_init__(self):
        points = require_finite(as_points(self.points, "grid points"), "grid points")
        if points.shape[0] == 0:
            raise ArgumentError("candidate grid is empty")
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) != points.shape[1]:
            raise ArgumentError(f"grid has dimension {points.shape[1]} but {len(bounds)} bounds")
        lo = np.array([b[0] for b in bounds])
        hi = np.array([b[1] for b in bounds])
        if np.any(lo > hi):
            raise ArgumentError("grid bounds must satisfy lo <= hi")
        tol = 1e-12 * np.maximum(1.0, np.abs(hi - lo))
        if np.any(points < lo - tol) or np.any(points > hi + tol):
            raise ArgumentError("grid points lie outside the grid bounds")
        points.setflags(write=False)
        object.__setattr__(self, 'points', points)
        object.__setattr__(self, 'bounds', bounds)

    @classmethod
    def from_axes(cls, bounds: Sequence[Tuple[float, float]], n_per_dim) -> 'CandidateGrid':
        """Cartesian product of linspace axes, last dimension varying fastest"""
        bounds = [tuple(b) for b in bounds]
        if np.ndim(n_per_dim) == 0:
            n_per_dim = [int(n_per_dim)] * len(bounds)
        if len(n_per_dim) != len(bounds):
            raise ArgumentError("one resolution per dimension is required")
        axes, half_steps = [], []
        for (lo, hi), n in zip(bounds, n_per_dim):
            if int(n) < 1:
                raise ArgumentError(f"axis resolution must be >= 1, got {n}")
            axes.append(np.linspace(lo, hi, int(n)))
            # a lone axis point sits at lo, so the far end is a full width away
            half_steps.append((hi - lo) / (2.0 * (int(n) - 1)) if int(n) > 1 else float(hi - lo))
        mesh = np.meshgrid(*axes, indexing='ij')
        points = np.column_stack([m.reshape(-1) for m in mesh])
        return cls(points, tuple(bounds), float(math.sqrt(sum(s * s for s in half_steps))))

    @classmethod
    def from_points(cls, points, bounds: Optional[Sequence[Tuple[float, float]]] = None) -> 'CandidateGrid':
        points = as_points(points, "grid points")
        if points.shape[0] == 0:
            raise ArgumentError("candidate grid is empty")
        if bounds is None:
            bounds = tuple(zip(points.min(axis=0), points.max(axis=0)))
        bounds = tuple((float(lo), float(hi)) for lo, hi in bounds)
        return cls(points, bounds, covering_radius(points, bounds))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def nearest_index(self, x) -> int:
        x = np.asarray(x, dtype=float).reshape(1, -1)
        if x.shape[1] != self.dim:
            raise ArgumentError(f"point has dimension {x.shape[1]}, grid has {self.dim}")
        return int(np.argmin(cdist(x, self.points)[0]))


def covering_radius(points: np.ndarray, bounds) -> float:
    """Max distance from the box to its nearest grid point; exact in 1-D, probe-lattice estimate otherwise"""
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    if points.shape[1] == 1:
        xs = np.unique(points[:, 0])
        gaps = [xs[0] - lo[0], hi[0] - xs[-1]]
        if xs.size > 1:
            gaps.append(float(np.max(np.diff(xs))) / 2.0)
        return float(max(0.0, *gaps))
    per_dim = max(2, int(round(PROBE_BUDGET ** (1.0 / points.shape[1]))))
    axes = [np.linspace(l, h, per_dim) for l, h in zip(lo, hi)]
    probes = np.column_stack([m.reshape(-1) for m in np.meshgrid(*axes, indexing='ij')])
    return float(np.max(cdist(probes, points).min(axis=1)))
