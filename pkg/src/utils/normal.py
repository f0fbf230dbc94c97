"""
Standard normal helpers that stay finite deep in the tails.

log Phi uses scipy's log_ndtr, which switches to the asymptotic Mills-ratio
series for large negative arguments, so products of thousands of CDF factors
can be accumulated as sums of logs without underflow.
"""

import math

import numpy as np
from scipy.special import log_ndtr, ndtr

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def log_cdf(z):
    """log Phi(z)"""
    return log_ndtr(z)


def log_sf(z):
    """log Q(z) = log(1 - Phi(z))"""
    return log_ndtr(-np.asarray(z, dtype=float))


def cdf(z):
    return ndtr(z)


def sf(z):
    return ndtr(-np.asarray(z, dtype=float))


def pdf(z):
    z = np.asarray(z, dtype=float)
    return INV_SQRT_2PI * np.exp(-0.5 * z * z)
