"""Shared fixtures and the --runslow switch."""

import math

import numpy as np
import pytest

from oscint.core.models import BlockVector, FrequencySystem, OscState
from oscint.core.potential import zero_potential
from oscint.experiments.catalog import experiment1, fpu, harmonic, multifreq


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run long integrations and full scans")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long integrations and full scans (enable with --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    """Seeded generator for randomized checks."""
    return np.random.default_rng(20240611)


@pytest.fixture
def single_freq():
    """One fast block with omega = 10, no slow block."""
    return FrequencySystem(block_dims=(0, 1), omegas=(0.0, 10.0))


@pytest.fixture
def two_freq():
    """Two fast blocks with omega = (100, 100 sqrt 2), no slow block."""
    return FrequencySystem(block_dims=(0, 1, 1), omegas=(0.0, 100.0, 100.0 * math.sqrt(2.0)))


@pytest.fixture
def free_potential():
    return zero_potential()


@pytest.fixture
def harmonic_state():
    """q = 1, p = 0 on a single fast block."""
    return OscState(0.0, BlockVector.from_blocks([[], [1.0]]), BlockVector.from_blocks([[], [0.0]]))


@pytest.fixture
def exp1_problem():
    return experiment1(100.0)


@pytest.fixture
def fpu_problem():
    return fpu(50.0)


@pytest.fixture
def multifreq_problem():
    return multifreq(100.0)


@pytest.fixture
def harmonic_problem():
    return harmonic(100.0)
