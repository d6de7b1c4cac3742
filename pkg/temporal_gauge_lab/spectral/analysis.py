"""
Spectral Analysis Module
========================

Builds G(t) = Omega(X alpha_t(Y)) for field labels and Weyl elements and
reads off where its time Fourier transform is supported. Quasi-polynomial
series are classified exactly; anything else is sampled and analysed with
a Hann-windowed DFT.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import NotQuasiPolynomial
from ..fields.mode_space import TestFunction, inner, longitudinal_project, transverse_project
from ..fields.weyl_algebra import TimeShift, WeylElement, multiply, weyl
from ..states.evaluators import (
    FieldLabel,
    IndefiniteQuasiFree,
    PositiveNonRegular,
    ThetaComposed,
    base_state,
    eval_weyl,
    theta_of,
    two_point_series,
)
from .series import QuasiPolynomialSeries, SampledSeries


logger = logging.getLogger(__name__)

SUPPORT_TOL = 1e-9
DEFAULT_T_MAX = 64.0 * np.pi
DEFAULT_SAMPLES = 2048


@dataclass(frozen=True)
class SpectralVerdict:
    """
    Support of the time Fourier transform of a correlation.

    Attributes:
        support (tuple): (omega, weight, order) with order 0 for a delta and
            1 for a delta derivative
        energy_positive (bool): Every support point has omega >= -tol
        relativistic (bool): Every support point has omega >= |k| - tol for
            the modes it came from
        negative_mass_fraction (float): Share of the weight at omega < -tol
        resolution (float): Frequency resolution (0 for exact verdicts)
        exact (bool): Whether the verdict came from a quasi-polynomial
    """

    support: tuple
    energy_positive: bool
    relativistic: bool
    negative_mass_fraction: float = 0.0
    resolution: float = 0.0
    exact: bool = True
    kmax: tuple = field(default=())

    @property
    def frequencies(self):
        return [omega for omega, _, _ in self.support]


def correlation_series(state, X, Y, strict=False, t_max=DEFAULT_T_MAX, samples=DEFAULT_SAMPLES):
    """
    G(t) = Omega(X alpha_t(Y)).

    For field labels the two-point series is shifted by t_Y - t_X. For Weyl
    elements the series is exact when the transverse supports of X and Y do
    not overlap: then the Gaussian part is conserved and only the
    longitudinal and mean sectors contribute a linear phase in t.

    Args:
        state (StateSpec): State description
        X (FieldLabel or WeylElement): Left observable
        Y (FieldLabel or WeylElement): Right observable, evolved by alpha_t
        strict (bool): Raise instead of falling back to sampling
        t_max (float): Sampling window for the fallback
        samples (int): Number of fallback samples

    Returns:
        QuasiPolynomialSeries or SampledSeries: The correlation

    Raises:
        NotQuasiPolynomial: If strict and the correlation is not representable
    """
    if isinstance(X, FieldLabel) and isinstance(Y, FieldLabel):
        return two_point_series(state, X, Y).shifted(Y.t - X.t)
    if isinstance(X, WeylElement) and isinstance(Y, WeylElement):
        return _weyl_series(state, X, Y, strict, t_max, samples)
    raise ValueError("Correlation needs two field labels or two Weyl elements")


def direct_correlation(state, X, Y, t):
    """Omega(X alpha_t(Y)) evaluated without building a series"""
    return eval_weyl(state, multiply(X, TimeShift(t).apply(Y)))


def _active_modes(*functions):
    mask = np.zeros(functions[0].grid.size, dtype=bool)
    for f in functions:
        mask |= np.abs(f.coeffs).max(axis=1) > 0.0
    return mask


def _transverse_disjoint(X, Y, tol):
    parts_x = [transverse_project(X.f), transverse_project(X.g)]
    parts_y = [transverse_project(Y.f), transverse_project(Y.g)]
    scale = max(X.f.magnitude(), X.g.magnitude(), Y.f.magnitude(), Y.g.magnitude(), 1e-300)
    cleaned = []
    for part in parts_x + parts_y:
        coeffs = np.where(np.abs(part.coeffs) > tol * scale, part.coeffs, 0.0)
        cleaned.append(TestFunction(part.grid, coeffs, np.zeros(3)))
    overlap = _active_modes(*cleaned[:2]) & _active_modes(*cleaned[2:])
    return not overlap.any()


def _massless(state):
    base = base_state(state)
    if isinstance(base, IndefiniteQuasiFree):
        return all(m2 == 0.0 for m2, _ in base.measure.atoms)
    return True


def _weyl_series(state, X, Y, strict, t_max, samples):
    # massive atoms leak longitudinal weight into the Gaussian exponent
    if _massless(state) and _transverse_disjoint(X, Y, 1e-12):
        fx = longitudinal_project(X.f) + TestFunction.constant(X.grid, X.f.mean)
        fy = longitudinal_project(Y.f) + TestFunction.constant(Y.grid, Y.f.mean)
        nu = -0.5 * inner(fx, fy)
        if isinstance(state, ThetaComposed):
            nu += Y.grid.volume * float(theta_of(state) @ Y.f.mean)
        g0 = direct_correlation(state, X, Y, 0.0)
        if g0 == 0:
            return QuasiPolynomialSeries()
        return QuasiPolynomialSeries(((nu, g0, 0.0),))
    if strict:
        raise NotQuasiPolynomial("Correlation has a Gaussian envelope in t (overlapping transverse supports "
                                 "or massive spectral atoms)")
    logger.info("Falling back to sampled correlation on %d points over [0, %.3g)", samples, t_max)
    times = np.arange(samples) * (t_max / samples)
    values = np.array([direct_correlation(state, X, Y, t) for t in times])
    kmax = float(np.max(X.grid.omega[_active_modes(X.f, X.g, Y.f, Y.g)], initial=0.0))
    return SampledSeries(times, values, kmax, reason="gaussian envelope in t")


def support_analysis(series, tol=SUPPORT_TOL, peak_threshold=1e-3):
    """
    Support verdict for an exact or sampled series

    Args:
        series (QuasiPolynomialSeries or SampledSeries): Correlation
        tol (float): Tolerance on the exact path
        peak_threshold (float): Relative power threshold for sampled peaks

    Returns:
        SpectralVerdict: The verdict
    """
    if isinstance(series, SampledSeries):
        return _sampled_support(series, peak_threshold)
    support, kvals = [], []
    for omega, c, kmax in series.terms:
        support.append((omega, abs(c), 0))
        kvals.append(kmax)
    if series.b0 != 0:
        support.append((0.0, abs(series.b0), 0))
        kvals.append(series.linear_k)
    if series.b1 != 0:
        support.append((0.0, abs(series.b1), 1))
        kvals.append(series.linear_k)
    total = sum(weight for _, weight, _ in support)
    negative = sum(weight for omega, weight, _ in support if omega < -tol)
    return SpectralVerdict(
        support=tuple(support),
        energy_positive=all(omega >= -tol for omega, _, _ in support),
        relativistic=all(omega >= k - tol for (omega, _, _), k in zip(support, kvals)),
        negative_mass_fraction=negative / total if total > 0 else 0.0,
        exact=True,
        kmax=tuple(kvals),
    )


def windowed_spectrum(series):
    """
    Hann-windowed DFT of a sampled series, normalized so that a term
    c exp(i w t) on a bin center shows up with amplitude |c| at +w.

    Returns:
        tuple: (angular frequencies, complex amplitudes), frequency ascending
    """
    n = len(series.times)
    window = np.hanning(n)
    amplitudes = np.fft.fft(series.values * window) / np.sum(window)
    omegas = 2.0 * np.pi * np.fft.fftfreq(n, d=series.dt)
    return np.fft.fftshift(omegas), np.fft.fftshift(amplitudes)


def _sampled_support(series, peak_threshold):
    omegas, amplitudes = windowed_spectrum(series)
    power = np.abs(amplitudes) ** 2
    resolution = 2.0 * np.pi / series.duration
    cutoff = peak_threshold * power.max() if power.max() > 0 else np.inf
    support = []
    for i in range(len(power)):
        left = power[i - 1] if i > 0 else -np.inf
        right = power[i + 1] if i + 1 < len(power) else -np.inf
        if power[i] >= cutoff and power[i] > left and power[i] >= right:
            support.append((float(omegas[i]), float(np.abs(amplitudes[i])), 0))
    total = power.sum()
    negative = power[omegas < -resolution].sum()
    return SpectralVerdict(
        support=tuple(support),
        energy_positive=all(omega >= -resolution for omega, _, _ in support),
        relativistic=all(omega >= series.kmax - resolution for omega, _, _ in support),
        negative_mass_fraction=float(negative / total) if total > 0 else 0.0,
        resolution=resolution,
        exact=False,
        kmax=(series.kmax,) * len(support),
    )


def theta_violation_series(theta, u0):
    """
    G(t) = Omega_theta(W(u0, 0) alpha_t(W(-u0, 0))) for a mean-sector u0.

    Args:
        theta (array-like): Background field
        u0 (TestFunction): Constant vector A-smearing

    Returns:
        QuasiPolynomialSeries: Single-frequency series
    """
    state = ThetaComposed(PositiveNonRegular(), tuple(theta))
    return correlation_series(state, weyl(f=u0), weyl(f=-u0), strict=True)


def theta_violation_demo(theta, u0, tol=SUPPORT_TOL):
    """
    Energy support of the theta vacuum on a mean-sector pair.

    The frequency is (u0, u0)/2 - L^3 theta.m: nonnegative for theta = 0 and
    pushed below zero by a large enough theta along the mean of u0.

    Args:
        theta (array-like): Background field
        u0 (TestFunction): Constant vector A-smearing

    Returns:
        SpectralVerdict: The verdict
    """
    return support_analysis(theta_violation_series(theta, u0), tol)


def predicted_theta_frequency(theta, u0):
    """(u0, u0)/2 - L^3 theta.m_u0"""
    return 0.5 * inner(u0, u0) - u0.grid.volume * float(np.asarray(theta, dtype=float) @ u0.mean)
