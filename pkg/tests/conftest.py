import numpy as np
import pytest

from gaborgrid.grid import PeriodicGrid, GridSignal, sample_gaussian


@pytest.fixture(scope="session")
def ref_grid():
    """Reference configuration grid: 1-d, period 16, 256 points."""
    return PeriodicGrid(1, 16.0, 256)


@pytest.fixture(scope="session")
def ref_window(ref_grid):
    return sample_gaussian(ref_grid)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_signal(grid, rng):
    vals = rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size)
    return GridSignal(grid, vals)
