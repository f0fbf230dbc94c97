import os
import sys

import numpy as np
import pytest

# Match the entry point's import convention: src/ and the repository root on sys.path
TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
SRC_DIR = os.path.dirname(TESTS_DIR)
ROOT_DIR = os.path.dirname(SRC_DIR)
for path in (SRC_DIR, ROOT_DIR):
    if path not in sys.path:
        sys.path.insert(0, path)

os.environ.setdefault('GPEST_LOG_TO_FILE', 'false')

from gp_core import CandidateGrid, GpModel, KernelSpec, MeanSpec  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running statistical reproduction tests")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def grid_1d():
    return CandidateGrid.from_axes([(0.0, 1.0)], 50)


@pytest.fixture
def matern_model():
    return GpModel(KernelSpec('matern', lengthscale=0.2, signal_std=1.0, nu=2.5), MeanSpec.zero(), 0.01)


def random_stats(rng, n, mean_scale=1.0, std_low=0.05, std_high=1.0):
    """Random posterior (means, stds) pair"""
    return rng.normal(0.0, mean_scale, size=n), rng.uniform(std_low, std_high, size=n)


@pytest.fixture
def make_stats(rng):
    def factory(n, **kwargs):
        return random_stats(rng, n, **kwargs)
    return factory
