from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np

from utils.errors import ArgumentError
from utils.validators import as_points


class MeanKind(str, Enum):
    ZERO = 'zero'
    LINEAR = 'linear'


@dataclass(frozen=True)
class MeanSpec:
    kind: MeanKind = MeanKind.ZERO
    slope: Tuple[float, ...] = field(default_factory=tuple)
    intercept: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'kind', MeanKind(self.kind))
        object.__setattr__(self, 'slope', tuple(float(s) for s in self.slope))

    @classmethod
    def zero(cls) -> 'MeanSpec':
        return cls(MeanKind.ZERO)

    @classmethod
    def linear(cls, slope, intercept: float = 0.0) -> 'MeanSpec':
        return cls(MeanKind.LINEAR, tuple(np.atleast_1d(slope)), float(intercept))

    def __call__(self, xs) -> np.ndarray:
        xs = as_points(xs)
        if self.kind == MeanKind.ZERO:
            return np.zeros(xs.shape[0])
        if len(self.slope) != xs.shape[1]:
            raise ArgumentError(f"linear mean has {len(self.slope)} slope components, inputs have dimension {xs.shape[1]}")
        return xs @ np.asarray(self.slope) + self.intercept
