"""
Tests for Schwinger functions module
"""

import pytest
import numpy as np
from temporal_gauge_lab.exceptions import MeanModeUnsupported
from temporal_gauge_lab.experiments.presets import normalized, random_function
from temporal_gauge_lab.fields.mode_space import TestFunction
from temporal_gauge_lab.states.evaluators import free_two_point
from temporal_gauge_lab.euclidean.schwinger import (
    transverse_kernel, longitudinal_kernel, schwinger_two_point, continued_two_point,
    total_charge, ergodic_mean, gaussian_variance, positive_exponential_correlation,
    indefinite_exponential_correlation, reflection_positivity_gram, longitudinal_form_gram
)


def test_transverse_kernel_unit_mode(u):
    """Test S(u, 0; u, tau) = exp(-tau)/2"""
    for tau in (0.0, 0.5, -1.5):
        assert abs(schwinger_two_point(u, 0.0, u, tau) - np.exp(-abs(tau)) / 2) < 1e-14


def test_longitudinal_kernel_linear(grad_h):
    """Test S(grad h, tau1; grad h, tau2) = -|dtau| (grad h, grad h)/2"""
    f = normalized(grad_h)
    assert abs(longitudinal_kernel(f, 0.0, f, 0.0)) < 1e-14
    assert abs(schwinger_two_point(f, 1.0, f, -0.5) - (-0.75)) < 1e-12
    assert abs(transverse_kernel(f, 0.0, f, 1.0)) < 1e-14


def test_continuation_matches_wightman(grid, rng):
    """Test dtau -> -i y0 reproduces the real-time kernel"""
    for kind in ("transverse", "generic"):
        for _ in range(25):
            f, g = random_function(grid, rng, kind), random_function(grid, rng, kind)
            y0 = rng.uniform(-4, 4)
            assert abs(continued_two_point(f, g, y0) - free_two_point(f, g, y0)) < 1e-12


def test_mean_rejected(grid, u):
    """Test Euclidean kernels reject the mean sector"""
    m = TestFunction.constant(grid, [1.0, 0.0, 0.0])
    with pytest.raises(MeanModeUnsupported):
        schwinger_two_point(m, 0.0, u, 0.0)
    with pytest.raises(MeanModeUnsupported):
        positive_exponential_correlation([(m, 0.0)])


def test_ergodic_mean(grad_h, u):
    """Test the charge rule: 1 for zero total charge, 0 otherwise"""
    assert ergodic_mean(total_charge([(u, 0.0)])) == 1.0
    assert ergodic_mean(total_charge([(grad_h, 0.0)]), reference=1.0) == 0.0
    assert ergodic_mean(total_charge([(grad_h, 0.0), (-grad_h, 1.0)])) == 1.0


def test_charged_exponential_vanishes(grad_h):
    """Test a single charged factor has zero correlation"""
    assert positive_exponential_correlation([(normalized(grad_h), 0.5)]) == 0


def test_neutral_exponential_matches_indefinite(grid, rng):
    """Test positive and indefinite exponentials agree on neutral products"""
    for _ in range(10):
        f = random_function(grid, rng)
        t = random_function(grid, rng, "transverse")
        factors = [(f, 0.3), (-f, 1.2), (t, -0.4)]
        positive = positive_exponential_correlation(factors)
        assert abs(positive) > 0
        assert abs(positive - indefinite_exponential_correlation(factors)) < 1e-12


def test_transverse_exponential(u):
    """Test <exp i A(u, tau)> = exp(-1/4)"""
    assert abs(positive_exponential_correlation([(u, 0.3)]) - np.exp(-0.25)) < 1e-14


def test_gaussian_variance_real(grid, rng):
    """Test Var of real smearings is real"""
    factors = [(random_function(grid, rng), tau) for tau in (0.1, 0.5, 2.0)]
    assert abs(gaussian_variance(factors).imag) < 1e-12


def test_reflection_positivity(grid, rng, grad_h):
    """Test M_ab = <conj(Theta F_a) F_b> is Hermitian PSD"""
    g = normalized(grad_h)
    families = [
        [(random_function(grid, rng, "transverse"), 0.5)],
        [(g, 0.3)],
        [(g, 0.3), (-g, 1.1)],
        [(random_function(grid, rng), 0.7), (random_function(grid, rng, "transverse"), 1.4)],
    ]
    gram = reflection_positivity_gram(families)
    np.testing.assert_allclose(gram, gram.conj().T, atol=1e-13)
    assert np.linalg.eigvalsh(gram)[0] >= -1e-12


def test_reflection_positivity_needs_positive_times(u):
    """Test rejection of non-positive times"""
    with pytest.raises(ValueError):
        reflection_positivity_gram([[(u, 0.0)]])


def test_longitudinal_form_indefinite(h, grid):
    """Test the longitudinal Gram matrix is nondegenerate and indefinite"""
    gram = longitudinal_form_gram(h, [0.0, 1.0])
    np.testing.assert_allclose(gram, [[0.0, -grid.volume], [-grid.volume, 0.0]], rtol=1e-12)
    eigenvalues = np.linalg.eigvalsh(longitudinal_form_gram(h, [0.0, 0.5, 1.5, 3.0]))
    assert eigenvalues[0] < 0 < eigenvalues[-1]
    assert np.min(np.abs(eigenvalues)) > 1e-6
