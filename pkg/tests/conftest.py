"""
pytest configuration file
"""

import sys
import os
import pytest
import numpy as np


# Add the project root directory to Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from temporal_gauge_lab.fields.mode_space import ModeGrid, TestFunction, gradient  # noqa: E402


@pytest.fixture
def grid():
    """L = 2 pi, N = 1: 26 dynamical modes with |k| in {1, sqrt 2, sqrt 3}"""
    return ModeGrid(2.0 * np.pi, 1)


@pytest.fixture
def u(grid):
    """Unit transverse mode: fhat_1(+-e3) = 1/sqrt(2 L^3), so (u, u) = 1"""
    return TestFunction.from_modes(grid, {(0, 0, 1): [1.0 / np.sqrt(2.0 * grid.volume), 0.0, 0.0]})


@pytest.fixture
def h(grid):
    """Scalar with hhat(+-e3) = 1"""
    return TestFunction.from_modes(grid, {(0, 0, 1): 1.0}, vector=False)


@pytest.fixture
def grad_h(h):
    return gradient(h)


@pytest.fixture
def rng():
    """Seeded generator for reproducible random inputs"""
    return np.random.default_rng(42)
