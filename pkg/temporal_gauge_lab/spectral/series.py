"""
Correlation Series Module
=========================

Exact representation of time correlations as quasi-polynomials

    G(t) = sum_a c_a exp(+i w_a t) + b0 + b1 t

and a sampled fallback for correlations outside that class. Each oscillating
term remembers the largest |k| of the modes it came from, which is what the
relativistic spectral check compares against.
"""

from dataclasses import dataclass, field

import numpy as np


FREQ_DECIMALS = 10


def _merge_terms(terms, tol=0.0):
    merged = {}
    for omega, c, kmax in terms:
        key = round(float(omega), FREQ_DECIMALS)
        if key in merged:
            w0, c0, k0 = merged[key]
            merged[key] = (w0, c0 + complex(c), max(k0, float(kmax)))
        else:
            merged[key] = (float(omega), complex(c), float(kmax))
    kept = [merged[key] for key in sorted(merged) if abs(merged[key][1]) > tol]
    return tuple(kept)


@dataclass(frozen=True)
class QuasiPolynomialSeries:
    """
    Finite sum of exponentials plus a linear part.

    Attributes:
        terms (tuple): (omega, c, kmax) triples with distinct omega
        b0 (complex): Constant part
        b1 (complex): Coefficient of t
        linear_k (float): Largest |k| among modes feeding b0 and b1
    """

    terms: tuple = ()
    b0: complex = 0j
    b1: complex = 0j
    linear_k: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "terms", _merge_terms(self.terms))
        object.__setattr__(self, "b0", complex(self.b0))
        object.__setattr__(self, "b1", complex(self.b1))
        object.__setattr__(self, "linear_k", float(self.linear_k))

    @classmethod
    def from_modes(cls, omegas, coeffs, kvals, b0=0j, b1=0j, linear_k=0.0, tol=0.0):
        """
        Collect per-mode contributions into a series

        Args:
            omegas (array-like): Frequency of each contribution
            coeffs (array-like): Complex coefficient of each contribution
            kvals (array-like): |k| of the mode each contribution belongs to
            b0 (complex): Constant part
            b1 (complex): Linear coefficient
            linear_k (float): Largest |k| feeding the linear part
            tol (float): Merged coefficients at or below this size are dropped

        Returns:
            QuasiPolynomialSeries: The series
        """
        raw = list(zip(np.ravel(omegas), np.ravel(coeffs), np.ravel(kvals)))
        return cls(_merge_terms(raw, tol), b0, b1, linear_k)

    @property
    def frequencies(self):
        return np.array([w for w, _, _ in self.terms])

    @property
    def coefficients(self):
        return np.array([c for _, c, _ in self.terms], dtype=complex)

    def eval(self, t):
        """
        Evaluate at one or more times

        Args:
            t (float or array-like): Time(s)

        Returns:
            complex or np.ndarray: G(t)
        """
        t_arr = np.asarray(t, dtype=float)
        value = self.b0 + self.b1 * t_arr + 0j
        for omega, c, _ in self.terms:
            value = value + c * np.exp(1j * omega * t_arr)
        return complex(value) if np.ndim(value) == 0 else value

    def derivative(self):
        """Exact time derivative"""
        terms = [(w, 1j * w * c, k) for w, c, k in self.terms if w != 0.0]
        return QuasiPolynomialSeries(tuple(terms), self.b1, 0j, self.linear_k)

    def shifted(self, dt):
        """Series of t -> G(t + dt)"""
        dt = float(dt)
        terms = [(w, c * np.exp(1j * w * dt), k) for w, c, k in self.terms]
        return QuasiPolynomialSeries(tuple(terms), self.b0 + self.b1 * dt, self.b1, self.linear_k)

    def scaled(self, factor):
        factor = complex(factor)
        terms = [(w, factor * c, k) for w, c, k in self.terms]
        return QuasiPolynomialSeries(tuple(terms), factor * self.b0, factor * self.b1, self.linear_k)

    def __add__(self, other):
        return QuasiPolynomialSeries(
            self.terms + other.terms,
            self.b0 + other.b0,
            self.b1 + other.b1,
            max(self.linear_k, other.linear_k),
        )

    def __neg__(self):
        return self.scaled(-1.0)

    def is_zero(self, tol=0.0):
        parts = [abs(c) for _, c, _ in self.terms] + [abs(self.b0), abs(self.b1)]
        return max(parts) <= tol


@dataclass(frozen=True, eq=False)
class SampledSeries:
    """
    Correlation known only on a uniform time grid.

    Attributes:
        times (np.ndarray): Uniformly spaced sample times starting at 0
        values (np.ndarray): Complex G(t) at those times
        kmax (float): Largest |k| among the modes involved
    """

    times: np.ndarray
    values: np.ndarray
    kmax: float = 0.0
    reason: str = field(default="")

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if times.shape != values.shape or times.ndim != 1 or len(times) < 4:
            raise ValueError("Sampled series needs matching 1-D time and value arrays of length >= 4")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def dt(self):
        return float(self.times[1] - self.times[0])

    @property
    def duration(self):
        return self.dt * len(self.times)
