"""
Tests for correlation series module
"""

import pytest
import numpy as np
from temporal_gauge_lab.spectral.series import QuasiPolynomialSeries, SampledSeries


@pytest.fixture
def series():
    return QuasiPolynomialSeries(((1.0, 0.5, 1.0), (2.0, 0.25j, 2.0)), b0=0.1, b1=0.5j, linear_k=1.0)


def test_merge_equal_frequencies():
    """Test that terms with the same frequency are combined"""
    s = QuasiPolynomialSeries(((1.0, 0.5, 1.0), (1.0 + 1e-13, 0.5, 3.0), (2.0, 1.0, 2.0)))
    assert len(s.terms) == 2
    assert s.terms[0][1] == 1.0
    assert s.terms[0][2] == 3.0


def test_from_modes_drops_small():
    """Test dropping of cancelled coefficients"""
    s = QuasiPolynomialSeries.from_modes([1.0, 1.0, 2.0], [0.5, -0.5, 1e-20], [1.0, 1.0, 2.0], tol=1e-15)
    assert s.terms == ()
    assert s.is_zero()


def test_eval(series):
    """Test pointwise evaluation"""
    t = 0.8
    expected = 0.5 * np.exp(1j * t) + 0.25j * np.exp(2j * t) + 0.1 + 0.5j * t
    assert abs(series.eval(t) - expected) < 1e-15
    values = series.eval([0.0, t])
    assert values.shape == (2,)
    assert abs(values[1] - expected) < 1e-15


def test_derivative(series):
    """Test the exact derivative against central differences"""
    t, dt = 0.3, 1e-5
    numeric = (series.eval(t + dt) - series.eval(t - dt)) / (2 * dt)
    assert abs(series.derivative().eval(t) - numeric) < 1e-8
    assert series.derivative().b0 == series.b1


def test_shifted(series):
    """Test G(t + dt)"""
    assert abs(series.shifted(0.4).eval(1.1) - series.eval(1.5)) < 1e-14


def test_add_and_negate(series):
    """Test that G - G is zero"""
    assert (series + (-series)).is_zero(1e-15)
    assert abs((series + series).eval(0.2) - 2 * series.eval(0.2)) < 1e-14


def test_sampled_validation():
    """Test sampled series shape checks"""
    with pytest.raises(ValueError):
        SampledSeries(np.arange(3.0), np.zeros(3))
    with pytest.raises(ValueError):
        SampledSeries(np.arange(8.0), np.zeros(7))
    s = SampledSeries(np.arange(8) * 0.5, np.ones(8))
    assert s.dt == 0.5
    assert s.duration == 4.0
