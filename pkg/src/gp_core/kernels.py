"""Isotropic stationary kernels: Matern (nu = 3/2, 5/2) and squared exponential."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial.distance import cdist

from config.settings import settings
from utils.errors import ArgumentError
from utils.validators import as_points, as_vector

SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)


class KernelFamily(str, Enum):
    MATERN = 'matern'
    SQUARED_EXPONENTIAL = 'squared_exponential'


@dataclass(frozen=True)
class KernelSpec:
    family: KernelFamily = KernelFamily.MATERN
    lengthscale: float = 0.1
    signal_std: float = 1.0
    nu: float = settings.MATERN_NU

    def __post_init__(self):
        object.__setattr__(self, 'family', KernelFamily(self.family))
        if not (self.lengthscale > 0 and math.isfinite(self.lengthscale)):
            raise ArgumentError(f"lengthscale must be positive, got {self.lengthscale}")
        if not (self.signal_std > 0 and math.isfinite(self.signal_std)):
            raise ArgumentError(f"signal_std must be positive, got {self.signal_std}")
        if self.family == KernelFamily.MATERN and self.nu not in (1.5, 2.5):
            raise ArgumentError(f"Matern smoothness must be 1.5 or 2.5, got {self.nu}")

    @property
    def variance(self) -> float:
        return self.signal_std ** 2

    def profile(self, r: np.ndarray) -> np.ndarray:
        """Kernel value as a function of scaled distance r = |x - x'| / lengthscale"""
        if self.family == KernelFamily.SQUARED_EXPONENTIAL:
            return self.variance * np.exp(-0.5 * r * r)
        if self.nu == 1.5:
            s = SQRT3 * r
            return self.variance * (1.0 + s) * np.exp(-s)
        s = SQRT5 * r
        return self.variance * (1.0 + s + s * s / 3.0) * np.exp(-s)

    def gram(self, xa, xb=None) -> np.ndarray:
        """Cross-covariance matrix K(xa, xb)"""
        xa = as_points(xa, "xa")
        xb = xa if xb is None else as_points(xb, "xb")
        if xa.shape[1] != xb.shape[1]:
            raise ArgumentError(f"dimension mismatch: {xa.shape[1]} vs {xb.shape[1]}")
        if xa.shape[0] == 0 or xb.shape[0] == 0:
            return np.zeros((xa.shape[0], xb.shape[0]))
        return self.profile(cdist(xa, xb) / self.lengthscale)

    def diag(self, xs) -> np.ndarray:
        return np.full(as_points(xs).shape[0], self.variance)


def kernel_eval(k: KernelSpec, x, x_prime) -> float:
    """k(x, x') for two d-vectors"""
    x = as_vector(x, "x")
    x_prime = as_vector(x_prime, "x_prime")
    if x.shape != x_prime.shape:
        raise ArgumentError(f"dimension mismatch: {x.shape[0]} vs {x_prime.shape[0]}")
    r = float(np.linalg.norm(x - x_prime)) / k.lengthscale
    return float(k.profile(np.asarray(r)))
