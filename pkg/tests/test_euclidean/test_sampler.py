"""
Tests for Euclidean field sampler module
"""

import pytest
import numpy as np
from temporal_gauge_lab.experiments.presets import random_function
from temporal_gauge_lab.euclidean.sampler import (
    EuclideanConfig, polarizations, stationary_ou, two_sided_brownian, draw_sample
)


TAUS = (-1.0, 0.0, 0.5, 2.0)


def test_config_validation(grid):
    """Test ensemble configuration checks"""
    with pytest.raises(ValueError):
        EuclideanConfig(grid, (), 10)
    with pytest.raises(ValueError):
        EuclideanConfig(grid, (0.0, 0.0), 10)
    with pytest.raises(ValueError):
        EuclideanConfig(grid, (0.0,), 0)
    with pytest.raises(ValueError):
        EuclideanConfig(grid, (0.0,), 10, batches=1)
    with pytest.raises(ValueError):
        EuclideanConfig(grid, (0.0,), 10, seed=-1)


def test_config_sorts_times(grid):
    """Test times are stored sorted and looked up by value"""
    config = EuclideanConfig(grid, (2.0, -1.0, 0.5), 10)
    assert config.taus == (-1.0, 0.5, 2.0)
    assert config.tau_index(0.5) == 1
    with pytest.raises(ValueError):
        config.tau_index(0.25)


def test_polarizations(grid):
    """Test the two polarizations are orthonormal and perpendicular to k"""
    e1, e2 = polarizations(grid.k)
    np.testing.assert_allclose(np.sum(e1 * grid.k, axis=1), 0.0, atol=1e-14)
    np.testing.assert_allclose(np.sum(e2 * grid.k, axis=1), 0.0, atol=1e-14)
    np.testing.assert_allclose(np.sum(e1 * e2, axis=1), 0.0, atol=1e-14)
    np.testing.assert_allclose(np.linalg.norm(e2, axis=1), 1.0)


def test_ou_covariance():
    """Test the stationary OU covariance exp(-w|dt|)/(2w) empirically"""
    rng = np.random.default_rng(7)
    taus = np.array([0.0, 0.5])
    omega = np.array([1.0, 2.0])
    paths = stationary_ou(taus, omega, rng, width=100000)
    variance = np.mean(np.abs(paths[1]) ** 2, axis=1)
    cross = np.mean(paths[1] * np.conj(paths[0]), axis=1)
    np.testing.assert_allclose(variance, 1 / (2 * omega), rtol=0.05)
    np.testing.assert_allclose(cross.real, np.exp(-0.5 * omega) / (2 * omega), rtol=0.05)


def test_brownian_pinned_and_two_sided():
    """Test xi(0) = 0 and E|xi(t)|^2 = rate |t|"""
    rng = np.random.default_rng(8)
    taus = np.array([-2.0, 0.0, 1.0])
    rate = np.full(20000, 0.5)
    values = two_sided_brownian(taus, rate, rng)
    np.testing.assert_array_equal(values[1], 0.0)
    assert np.mean(np.abs(values[0]) ** 2) == pytest.approx(1.0, rel=0.05)
    assert np.mean(np.abs(values[2]) ** 2) == pytest.approx(0.5, rel=0.05)
    assert abs(np.mean(values[0] * np.conj(values[2]))) < 0.05


def test_sample_reality(grid):
    """Test the value at -k is the conjugate of the value at k"""
    sample = draw_sample(grid, TAUS, np.random.default_rng(1))
    np.testing.assert_allclose(sample.a_tr[:, grid.neg], np.conj(sample.a_tr), atol=0)
    np.testing.assert_allclose(sample.xi[:, grid.neg], np.conj(sample.xi), atol=0)
    np.testing.assert_allclose(sample.z[grid.neg], np.conj(sample.zbar), atol=0)


def test_sample_transverse(grid):
    """Test k . A_tr = 0 mode by mode"""
    sample = draw_sample(grid, TAUS, np.random.default_rng(2))
    np.testing.assert_allclose(np.sum(sample.a_tr * grid.k, axis=2), 0.0, atol=1e-14)


def test_sample_shapes_and_pinning(grid):
    """Test array shapes and xi(0) = 0"""
    sample = draw_sample(grid, TAUS, np.random.default_rng(3))
    assert sample.a_tr.shape == (4, grid.size, 3)
    assert sample.xi.shape == (4, grid.size)
    assert sample.z1.shape == (grid.size,)
    np.testing.assert_array_equal(sample.xi[1], 0.0)


def test_smear_real_without_z(grid, rng):
    """Test real smearings of the positive-case field are real"""
    sample = draw_sample(grid, TAUS, np.random.default_rng(4))
    f = random_function(grid, rng)
    for j in range(len(TAUS)):
        assert abs(sample.smear(f, j, include_z=False).imag) < 1e-12


def test_draw_is_deterministic(grid):
    """Test the same generator state yields the same configuration"""
    first = draw_sample(grid, TAUS, np.random.default_rng(5))
    second = draw_sample(grid, TAUS, np.random.default_rng(5))
    np.testing.assert_array_equal(first.a_tr, second.a_tr)
    np.testing.assert_array_equal(first.z2, second.z2)


def _within_standard_errors(samples, expected, sigmas=4.0):
    """Mean of complex samples within `sigmas` standard errors of expected, part by part"""
    for part in (np.real, np.imag):
        values = part(samples)
        standard_error = np.std(values) / np.sqrt(values.size)
        assert abs(np.mean(values) - part(expected)) <= sigmas * max(standard_error, 1e-15)


def test_brownian_disjoint_increments_uncorrelated():
    """Test disjoint same-side increments are uncorrelated with variance rate * dt"""
    rng = np.random.default_rng(9)
    taus = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    rate = np.full(20000, 0.5)
    values = two_sided_brownian(taus, rate, rng)
    for inner_index, outer_index in ((3, 4), (1, 0)):
        near = values[inner_index] - values[2]
        far = values[outer_index] - values[inner_index]
        _within_standard_errors(far * np.conj(near), 0.0)
        _within_standard_errors(far * near, 0.0)
        _within_standard_errors(np.abs(far) ** 2, 0.25)
        _within_standard_errors(np.abs(near) ** 2, 0.25)


def test_z_covariance(grid):
    """Test <z_k z_k> = 0 and <z_k conj(z_k)> = 1 / (2 |k|^2)"""
    rng = np.random.default_rng(10)
    half = np.flatnonzero(grid.half)
    draws = [draw_sample(grid, (0.0,), rng) for _ in range(3000)]
    z = np.array([sample.z[half] for sample in draws])
    weight = 2.0 * grid.k2[half]
    _within_standard_errors(weight * z * z, 0.0)
    _within_standard_errors(weight * np.abs(z) ** 2, 1.0)
