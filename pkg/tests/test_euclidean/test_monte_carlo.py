"""
Tests for Monte Carlo module
"""

import pytest
import numpy as np
from temporal_gauge_lab.exceptions import MeanModeUnsupported
from temporal_gauge_lab.experiments.presets import normalized
from temporal_gauge_lab.fields.mode_space import TestFunction
from temporal_gauge_lab.euclidean.sampler import EuclideanConfig
from temporal_gauge_lab.euclidean.schwinger import gaussian_variance, schwinger_two_point
from temporal_gauge_lab.euclidean.monte_carlo import (
    sample_rng, batch_ranges, run_batches, mc_moment, mc_moments, mc_exponential,
    mc_exponentials, schwinger_wick, sigmas
)


# generous bound so a fixed seed does not make the suite flaky
MAX_SIGMAS = 4.0


@pytest.fixture
def config(grid):
    return EuclideanConfig(grid, (0.0, 0.5, 1.5), samples=2000, seed=12345, batches=20)


def test_batch_ranges():
    """Test contiguous batches and dropping of empty ranges"""
    assert batch_ranges(10, 3) == [(0, 3), (3, 6), (6, 10)]
    assert batch_ranges(2, 5) == [(0, 1), (1, 2)]


def test_sample_rng_streams():
    """Test per-sample streams are reproducible and distinct"""
    a = sample_rng(1, 0).standard_normal(4)
    np.testing.assert_array_equal(a, sample_rng(1, 0).standard_normal(4))
    assert not np.array_equal(a, sample_rng(1, 1).standard_normal(4))
    assert not np.array_equal(a, sample_rng(2, 0).standard_normal(4))


def test_thread_count_does_not_change_results(grid, u):
    """Test bitwise identical estimates for 1 and 4 threads"""
    config = EuclideanConfig(grid, (0.0, 1.0), samples=200, seed=99, batches=8)
    labels = [(u, 0.0), (u, 1.0)]
    single = mc_moment(config, labels, threads=1)
    parallel = mc_moment(config, labels, threads=4)
    assert single == parallel


def test_run_batches_array_integrand(grid):
    """Test array-valued integrands give aligned arrays"""
    config = EuclideanConfig(grid, (0.0,), samples=40, batches=4)
    estimate, stderr = run_batches(config, lambda sample: np.array([1.0, 2.0j]))
    np.testing.assert_allclose(estimate, [1.0, 2.0j])
    np.testing.assert_allclose(stderr, 0.0, atol=1e-15)


def test_transverse_two_point(config, u):
    """Test <A(u, 0) A(u, 0.5)> = exp(-1/2)/2"""
    estimate, stderr = mc_moment(config, [(u, 0.0), (u, 0.5)])
    assert sigmas(estimate, stderr, np.exp(-0.5) / 2) < MAX_SIGMAS
    assert stderr < 0.05


def test_longitudinal_two_point(config, grad_h):
    """Test the composite field reproduces -|dtau|/2 on a normalized gradient"""
    f = normalized(grad_h)
    labels = [(f, 0.5), (f, 1.5)]
    assert abs(schwinger_two_point(f, 0.5, f, 1.5) + 0.5) < 1e-12
    estimate, stderr = mc_moment(config, labels)
    assert sigmas(estimate, stderr, -0.5) < MAX_SIGMAS


def test_four_point_wick(config, u, grad_h):
    """Test a mixed four-point function against its Wick value"""
    f = normalized(grad_h)
    labels = [(u, 0.0), (f, 0.5), (u, 0.5), (f, 1.5)]
    estimate, stderr = mc_moment(config, labels)
    assert sigmas(estimate, stderr, schwinger_wick(labels)) < MAX_SIGMAS


def test_shared_ensemble(config, u):
    """Test mc_moments matches individual mc_moment calls"""
    sets = [[(u, 0.0), (u, 0.5)], [(u, 0.5), (u, 1.5)]]
    estimates, stderrs = mc_moments(config, sets)
    assert estimates.shape == (2,)
    for labels, estimate in zip(sets, estimates):
        assert abs(mc_moment(config, labels)[0] - estimate) < 1e-12


def test_moment_limits(config, grid, u):
    """Test mean smearings and overlong products are rejected"""
    m = TestFunction.constant(grid, [1.0, 0.0, 0.0])
    with pytest.raises(MeanModeUnsupported):
        mc_moment(config, [(m, 0.0)])
    with pytest.raises(ValueError):
        mc_moment(config, [(u, 0.0)] * 9)
    with pytest.raises(ValueError):
        mc_moment(config, [(u, 0.25)])


def test_neutral_exponential(config, grad_h, u):
    """Test the pre-ergodic exponential against exp(-Var/2)"""
    f = normalized(grad_h)
    factors = [(f, 0.5), (-f, 1.5), (u, 0.0)]
    estimate, stderr = mc_exponential(config, factors)
    analytic = np.exp(-0.5 * gaussian_variance(factors))
    assert sigmas(estimate, stderr, analytic) < MAX_SIGMAS


def test_shared_exponentials(config, u):
    """Test mc_exponentials matches mc_exponential"""
    sets = [[(u, 0.0)], [(u, 0.5), (u, 1.5)]]
    estimates, _ = mc_exponentials(config, sets)
    for factors, estimate in zip(sets, estimates):
        assert abs(mc_exponential(config, factors)[0] - estimate) < 1e-12


def test_schwinger_wick(u):
    """Test Wick values of small products"""
    assert schwinger_wick([]) == 1.0
    assert schwinger_wick([(u, 0.0)]) == 0
    assert abs(schwinger_wick([(u, 0.0), (u, 0.0)]) - 0.5) < 1e-14


def test_sigmas():
    """Test deviation in standard errors"""
    assert sigmas(1.0, 0.5, 2.0) == 2.0
    assert sigmas(1.0, 0.0, 1.0) == 0.0
    assert sigmas(1.0, 0.0, 2.0) == float("inf")
