"""
Schwinger Functions Module
==========================

Analytic imaginary-time kernels on the mode lattice:

    S(f, tau1; g, tau2) = L^3 sum_k conj(fhat).P_tr.ghat exp(-|k| |dtau|) / (2|k|)
                          - L^3 sum_k conj(div fhat)(div ghat) |dtau| / (2|k|^2)

together with the covariances of the positive-case Gaussian measure
(transverse Ornstein-Uhlenbeck part plus two-sided Brownian xi), the charge
rule that replaces the ergodic mean, and the Gram matrices used for the
reflection-positivity and Krein checks.
"""

import numpy as np

from ..exceptions import MeanModeUnsupported
from ..fields.mode_space import ZERO_TOL, divergence, gradient


def _require_zero_mean(*functions):
    for f in functions:
        if f.has_mean():
            raise MeanModeUnsupported("Euclidean kernels are undefined on the mean sector")


def _mode_pairings(f, g):
    grid = f.grid
    fc = np.conj(f.coeffs)
    dot = np.sum(fc * g.coeffs, axis=1)
    kk = np.sum(grid.k * fc, axis=1) * np.sum(grid.k * g.coeffs, axis=1)
    return dot - kk / grid.k2, kk


def transverse_kernel(f, tau1, g, tau2):
    """Transverse (Ornstein-Uhlenbeck) part of the Schwinger function"""
    _require_zero_mean(f, g)
    grid = f.grid
    transverse, _ = _mode_pairings(f, g)
    decay = np.exp(-grid.omega * abs(tau1 - tau2)) / (2.0 * grid.omega)
    return complex(grid.volume * np.sum(transverse * decay))


def longitudinal_kernel(f, tau1, g, tau2):
    """Longitudinal part, linear in |tau1 - tau2| and negative on equal smearings"""
    _require_zero_mean(f, g)
    grid = f.grid
    _, kk = _mode_pairings(f, g)
    return complex(-grid.volume * np.sum(kk / grid.k2) * abs(tau1 - tau2) / 2.0)


def schwinger_two_point(f, tau1, g, tau2):
    """
    Euclidean two-point function of the composite field.

    Args:
        f (TestFunction): Zero-mean vector smearing
        tau1 (float): Imaginary time of f
        g (TestFunction): Zero-mean vector smearing
        tau2 (float): Imaginary time of g

    Returns:
        complex: S(f, tau1; g, tau2)

    Raises:
        MeanModeUnsupported: If f or g has a mean
    """
    return transverse_kernel(f, tau1, g, tau2) + longitudinal_kernel(f, tau1, g, tau2)


def continued_two_point(f, g, y0):
    """
    Per-mode continuation dtau = -i y0 of the Schwinger function.

    The modulus |dtau| is replaced by dtau itself on the dtau >= 0 branch
    before substituting, so the result is the Wightman kernel
    exp(+i |k| y0)/(2|k|) + (i/2) y0 k k/|k|^2.

    Args:
        f (TestFunction): Zero-mean vector smearing
        g (TestFunction): Zero-mean vector smearing
        y0 (float): Real time difference

    Returns:
        complex: Continued value
    """
    _require_zero_mean(f, g)
    grid = f.grid
    dtau = -1j * float(y0)
    transverse, kk = _mode_pairings(f, g)
    values = transverse * np.exp(-grid.omega * dtau) / (2.0 * grid.omega) - kk / grid.k2 * dtau / 2.0
    return complex(grid.volume * np.sum(values))


def xi_kernel(f, tau1, g, tau2):
    """
    Covariance of xi(-div f, tau1) and xi(-div g, tau2) for the two-sided
    Brownian field with per-mode kernel (-|t-s| + |t| + |s|) / (2|k|^2).
    """
    _require_zero_mean(f, g)
    grid = f.grid
    _, kk = _mode_pairings(f, g)
    brownian = (-abs(tau1 - tau2) + abs(tau1) + abs(tau2)) / 2.0
    return complex(grid.volume * np.sum(kk / grid.k2) * brownian)


def positive_covariance(f, tau1, g, tau2):
    """Covariance of A_tr(f) + xi(-div f) under the positive-case measure"""
    return transverse_kernel(f, tau1, g, tau2) + xi_kernel(f, tau1, g, tau2)


def total_charge(factors):
    """Sum of the divergences of the factor smearings, as a scalar function"""
    charge = divergence(factors[0][0])
    for f, _ in factors[1:]:
        charge = charge + divergence(f)
    return charge


def ergodic_mean(charge, tol=ZERO_TOL, reference=1.0):
    """
    Ergodic mean over the Bohr spectrum applied to the character of a charge:
    1 when the charge vanishes, 0 otherwise.

    Args:
        charge (TestFunction): Total charge density
        tol (float): Relative tolerance
        reference (float): Magnitude the tolerance is relative to

    Returns:
        float: 1.0 or 0.0
    """
    return 1.0 if charge.is_zero(tol, reference=reference) else 0.0


def _charge_reference(factors):
    kmax = float(np.max(factors[0][0].grid.omega))
    return max(f.magnitude() for f, _ in factors) * kmax


def gaussian_variance(factors, covariance=positive_covariance):
    """Var of sum_j X(f_j, tau_j) under a covariance function"""
    total = 0j
    for f, tau in factors:
        for g, sigma in factors:
            total += covariance(f, tau, g, sigma)
    return total


def positive_exponential_correlation(factors, tol=ZERO_TOL):
    """
    <prod_j exp i[A_tr(f_j, tau_j) + xi(-div f_j, tau_j)]> with the ergodic mean.

    Zero unless sum_j div f_j = 0; otherwise exp(-Var/2), which then equals
    the indefinite-case value.

    Args:
        factors (list): (f, tau) pairs with zero-mean vector smearings
        tol (float): Relative tolerance of the charge rule

    Returns:
        complex: The correlation

    Raises:
        MeanModeUnsupported: If any smearing has a mean
    """
    factors = list(factors)
    if not factors:
        return 1.0 + 0j
    _require_zero_mean(*(f for f, _ in factors))
    if ergodic_mean(total_charge(factors), tol, _charge_reference(factors)) == 0.0:
        return 0j
    return complex(np.exp(-0.5 * gaussian_variance(factors)))


def indefinite_exponential_correlation(factors):
    """exp(-1/2 sum_ij S(f_i, tau_i; f_j, tau_j)) from the Schwinger function alone"""
    factors = list(factors)
    _require_zero_mean(*(f for f, _ in factors))
    return complex(np.exp(-0.5 * gaussian_variance(factors, schwinger_two_point)))


def reflection_positivity_gram(families):
    """
    M_ab = <conj(Theta F_a) F_b> for F_a = exp(i sum_j X(f_aj, tau_aj)) under
    the transverse plus xi measure, Theta being tau -> -tau.

    Args:
        families (list): Each entry is a list of (f, tau) with tau > 0

    Returns:
        np.ndarray: Hermitian matrix, PSD when reflection positivity holds
    """
    for family in families:
        if any(tau <= 0 for _, tau in family):
            raise ValueError("Reflection-positivity families need strictly positive times")
    n = len(families)
    gram = np.zeros((n, n), dtype=complex)
    for a in range(n):
        reflected = [(-f, -tau) for f, tau in families[a]]
        for b in range(n):
            combined = reflected + list(families[b])
            gram[a, b] = np.exp(-0.5 * gaussian_variance(combined))
    return gram


def longitudinal_form_gram(h, taus):
    """
    Gram matrix of the Euclidean longitudinal form on (grad h, tau_i).

    Entries are -|tau_i - tau_j| (grad h, grad h)/2 restricted to one mode
    family; the matrix is nondegenerate for distinct times and indefinite.

    Args:
        h (TestFunction): Zero-mean scalar
        taus (list): Distinct times

    Returns:
        np.ndarray: Real symmetric matrix
    """
    f = gradient(h)
    n = len(taus)
    gram = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            gram[i, j] = np.real(longitudinal_kernel(f, taus[i], f, taus[j]))
    return gram
