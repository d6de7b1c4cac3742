"""
Weyl Algebra Module
===================

Exact arithmetic on Weyl elements W(f, g) = exp i[A(f) + E(g)] and the
automorphisms acting on them: small and large gauge transformations, the
theta shift of the electric field and free time evolution.

Products follow W(f1,g1) W(f2,g2) = exp(-i sigma/2) W(f1+f2, g1+g2) with
sigma = (f1,g2) - (g1,f2); see conventions.LEDGER.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import MeanModeUnsupported
from .mode_space import (
    TestFunction,
    divergence,
    gradient,
    inner,
    laplacian,
    longitudinal_project,
    mean_part,
    transverse_project,
)


PHASE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WeylElement:
    """
    phase * exp i[A(f) + E(g)]

    Attributes:
        f (TestFunction): Vector smearing of the potential
        g (TestFunction): Vector smearing of the electric field
        phase (complex): Unit-modulus prefactor
    """

    f: TestFunction
    g: TestFunction
    phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        if not (self.f.is_vector and self.g.is_vector):
            raise ValueError("Weyl elements need vector smearings for A and E")
        if self.f.grid != self.g.grid:
            raise ValueError("A and E smearings must share one grid")
        phase = complex(self.phase)
        if abs(abs(phase) - 1.0) > PHASE_TOL:
            raise ValueError(f"Weyl phase must have unit modulus, got |phase| = {abs(phase)}")
        object.__setattr__(self, "phase", phase)

    @property
    def grid(self):
        return self.f.grid

    def __repr__(self):
        return f"<WeylElement(phase={self.phase:.6g}, f={self.f!r}, g={self.g!r})>"


def identity(grid):
    """The unit element W(0, 0)"""
    zero = TestFunction.zeros(grid)
    return WeylElement(zero, zero)


def weyl(f=None, g=None, phase=1.0, grid=None):
    """
    Convenience constructor where a missing smearing means zero

    Args:
        f (TestFunction): A-smearing (default: zero)
        g (TestFunction): E-smearing (default: zero)
        phase (complex): Prefactor
        grid (ModeGrid): Needed only when both smearings are omitted

    Returns:
        WeylElement: The element
    """
    if grid is None:
        grid = (f if f is not None else g).grid
    zero = TestFunction.zeros(grid)
    return WeylElement(zero if f is None else f, zero if g is None else g, phase)


def symplectic(f1, g1, f2, g2):
    """
    Symplectic form sigma = (f1, g2) - (g1, f2), mean sector included.

    Args:
        f1 (TestFunction): A-smearing of the first element
        g1 (TestFunction): E-smearing of the first element
        f2 (TestFunction): A-smearing of the second element
        g2 (TestFunction): E-smearing of the second element

    Returns:
        float: Antisymmetric real number
    """
    return inner(f1, g2) - inner(g1, f2)


def element_symplectic(W1, W2):
    return symplectic(W1.f, W1.g, W2.f, W2.g)


def multiply(W1, W2):
    """
    Weyl product with the CCR phase exp(-i sigma/2)

    Args:
        W1 (WeylElement): Left factor
        W2 (WeylElement): Right factor

    Returns:
        WeylElement: The product
    """
    sigma = element_symplectic(W1, W2)
    phase = W1.phase * W2.phase * np.exp(-0.5j * sigma)
    return WeylElement(W1.f + W2.f, W1.g + W2.g, phase)


def product(*elements):
    """Left-to-right product of one or more Weyl elements"""
    if not elements:
        raise ValueError("Need at least one Weyl element")
    result = elements[0]
    for W in elements[1:]:
        result = multiply(result, W)
    return result


def adjoint(W):
    """Adjoint, which is also the inverse: conj(phase) W(-f, -g)"""
    return WeylElement(-W.f, -W.g, np.conj(W.phase))


def conjugate_by(V, W):
    """V W V* computed through the product"""
    return multiply(multiply(V, W), adjoint(V))


def same_element(W1, W2, tol=1e-12, phase_tol=PHASE_TOL):
    """
    Coefficientwise comparison of two Weyl elements

    Args:
        W1 (WeylElement): First element
        W2 (WeylElement): Second element
        tol (float): Tolerance on smearing coefficients and means
        phase_tol (float): Tolerance on the phase

    Returns:
        bool: True if both elements agree
    """
    if W1.grid != W2.grid:
        return False
    df = (W1.f - W2.f).magnitude()
    dg = (W1.g - W2.g).magnitude()
    return df <= tol and dg <= tol and abs(W1.phase - W2.phase) <= phase_tol


class Automorphism:
    """
    Base class for automorphisms of the Weyl algebra
    """

    name = "automorphism"

    def apply(self, W):
        """
        Act on a Weyl element

        Args:
            W (WeylElement): Element to transform

        Returns:
            WeylElement: Transformed element
        """
        raise NotImplementedError("Subclasses must implement apply method")

    def then(self, other):
        """Composition: first self, then other"""
        return Composed((self, other))


@dataclass(frozen=True)
class Composed(Automorphism):
    steps: tuple

    name = "composed"

    def apply(self, W):
        for step in self.steps:
            W = step.apply(W)
        return W


@dataclass(frozen=True)
class SmallGauge(Automorphism):
    """Time independent gauge transformation with scalar generator Lambda"""

    Lambda: TestFunction

    name = "small_gauge"

    def apply(self, W):
        phase = np.exp(-1j * inner(self.Lambda, divergence(W.f)))
        return WeylElement(W.f, W.g, W.phase * phase)


@dataclass(frozen=True)
class LargeGauge(Automorphism):
    """Gauge transformation with Lambda = alpha.x; only its gradient enters"""

    alpha: tuple

    name = "large_gauge"

    def apply(self, W):
        alpha = np.asarray(self.alpha, dtype=float)
        phase = np.exp(1j * W.grid.volume * float(alpha @ W.f.mean))
        return WeylElement(W.f, W.g, W.phase * phase)


@dataclass(frozen=True)
class Theta(Automorphism):
    """Shift of E by a constant classical background field theta"""

    theta: tuple

    name = "theta"

    def apply(self, W):
        theta = np.asarray(self.theta, dtype=float)
        phase = np.exp(1j * W.grid.volume * float(theta @ W.g.mean))
        return WeylElement(W.f, W.g, W.phase * phase)


@dataclass(frozen=True)
class TimeShift(Automorphism):
    """Free time evolution by t"""

    t: float

    name = "time_shift"

    def apply(self, W):
        grid = W.grid
        t = float(self.t)
        ft, gt = transverse_project(W.f).dynamical(), transverse_project(W.g).dynamical()
        fl, gl = longitudinal_project(W.f), longitudinal_project(W.g)
        w = grid.omega[:, None]
        c, s = np.cos(w * t), np.sin(w * t)
        f_tr = c * ft.coeffs - w * s * gt.coeffs
        g_tr = s / w * ft.coeffs + c * gt.coeffs
        f_new = TestFunction(grid, f_tr + fl.coeffs, W.f.mean)
        g_new = TestFunction(grid, g_tr + gl.coeffs + t * fl.coeffs, W.g.mean + t * W.f.mean)
        return WeylElement(f_new, g_new, W.phase)


def apply_automorphism(spec, W):
    """
    Apply an automorphism to a Weyl element

    Args:
        spec (Automorphism): SmallGauge, LargeGauge, Theta, TimeShift or a composition
        W (WeylElement): Element to transform

    Returns:
        WeylElement: The image
    """
    if not isinstance(spec, Automorphism):
        raise ValueError(f"Unknown automorphism {spec!r}")
    return spec.apply(W)


def _require_zero_mean(*functions):
    for h in functions:
        if np.any(h.mean != 0.0):
            raise MeanModeUnsupported("Gauge generators must have zero mean")


def gauss_generator(g):
    """exp(i G(g)) with G = div E, i.e. W(0, -grad g)"""
    _require_zero_mean(g)
    return weyl(g=-gradient(g))


def gauss_conjugation_phase(h, g):
    """
    Phase picked up by exp(i A(grad h)) under conjugation with exp(i G(g)).

    Evaluated through the symplectic form, exp(-i sigma((0,-grad g),(grad h,0))).

    Args:
        h (TestFunction): Zero-mean scalar
        g (TestFunction): Zero-mean scalar

    Returns:
        complex: The phase

    Raises:
        MeanModeUnsupported: If either function has a mean
    """
    _require_zero_mean(h, g)
    zero = TestFunction.zeros(h.grid)
    sigma = symplectic(zero, -gradient(g), gradient(h), zero)
    return complex(np.exp(-1j * sigma))


def gauss_pairing_phase(h, g):
    """Same phase from the direct pairing exp(i (Lap h, g))"""
    _require_zero_mean(h, g)
    return complex(np.exp(1j * inner(laplacian(h), g)))


def gauge_implementer(Lambda):
    """
    Longitudinal Weyl element V = W(0, grad Lambda) whose conjugation
    reproduces SmallGauge(Lambda).

    Args:
        Lambda (TestFunction): Zero-mean scalar gauge function

    Returns:
        WeylElement: The implementer

    Raises:
        MeanModeUnsupported: If Lambda has a mean
    """
    _require_zero_mean(Lambda)
    return weyl(g=gradient(Lambda))


def bump_family(grid, widths):
    """
    Smoothed mean-sector bumps f_R: mean 1 and coefficients exp(-R^2 |k|^2 / 2).

    Wider bumps put less weight on the dynamical modes, which is the torus
    version of f(|x|/R) with R growing.

    Args:
        grid (ModeGrid): Lattice
        widths (list): Values of R

    Returns:
        list: Scalar TestFunction per width
    """
    family = []
    for R in widths:
        coeffs = np.exp(-0.5 * float(R) ** 2 * grid.k2).astype(complex)
        family.append(TestFunction(grid, coeffs, 1.0))
    return family


def local_charge(theta, bump):
    """Q_R = A(theta f_R) as the Weyl element exp(-i Q_R)"""
    theta = np.asarray(theta, dtype=float)
    smearing = TestFunction(bump.grid, np.outer(bump.coeffs, theta), float(bump.mean) * theta)
    return weyl(f=-smearing)


def local_charge_phase(theta, bump, W):
    """
    Phase of W under conjugation with exp(-i Q_R)

    Args:
        theta (array-like): Background field direction and size
        bump (TestFunction): Scalar bump f_R
        W (WeylElement): Element to conjugate

    Returns:
        complex: Phase ratio between the conjugated element and W
    """
    conjugated = conjugate_by(local_charge(theta, bump), W)
    return complex(conjugated.phase / W.phase)


def theta_phase(theta, W):
    """Phase the Theta automorphism attaches to W"""
    return complex(Theta(tuple(theta)).apply(W).phase / W.phase)


def sector_split(f):
    """Transverse, longitudinal and mean parts of a vector function"""
    return transverse_project(f).dynamical(), longitudinal_project(f), mean_part(f)
