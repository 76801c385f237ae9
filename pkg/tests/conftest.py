import time

import pytest

from spinlogic import encoding, noise


@pytest.fixture(scope="session")
def frame_a():
    return encoding.qubit_frame("A")


@pytest.fixture(scope="session")
def frame_b():
    return encoding.qubit_frame("B")


@pytest.fixture(scope="session")
def frame_ab():
    return encoding.pair_frame()


@pytest.fixture(scope="session")
def default_sweep():
    """Full default sweep plus its wall-clock time; shared by the slow tests."""
    start = time.perf_counter()
    points = noise.sweep()
    elapsed = time.perf_counter() - start
    return points, elapsed


@pytest.fixture(scope="session")
def millinoise_point():
    """One high-statistics point at eps = 1e-3 for spot checks off the log grid."""
    return noise.sweep([1e-3], n_runs=1000)[0]
