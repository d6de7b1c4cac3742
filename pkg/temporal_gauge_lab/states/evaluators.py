"""
State Evaluators Module
=======================

The two quantizations of the temporal gauge on the mode lattice:

* ``PositiveNonRegular``: the positive state that vanishes on every Weyl
  element whose A-smearing is not divergence free. Only exponentials have
  expectations; field correlations do not exist.
* ``IndefiniteQuasiFree``: the regular quasi-free functional built from a
  Kallen-Lehmann kernel with a discrete spectral measure. Polynomial
  correlations exist but the functional is not positive.

Either can be composed with the theta shift of the electric field.
"""

from dataclasses import dataclass, field

import numpy as np

from ..exceptions import MeanModeUnsupported, UnsupportedState
from ..fields.mode_space import (
    ZERO_TOL,
    TestFunction,
    gradient,
    inner,
    is_divergence_free,
    omega_inner,
    transverse_project,
    translate,
)
from ..fields.weyl_algebra import WeylElement, adjoint, multiply, weyl
from ..spectral.series import QuasiPolynomialSeries

# relative size below which a mode sum is treated as round-off
PAIRING_TOL = 1e-13


@dataclass(frozen=True)
class SpectralMeasure:
    """
    Discrete spectral measure rho = sum_a w_a delta(m^2 - m_a^2) plus contact constant Z.

    Attributes:
        atoms (tuple): (m2, w) pairs with m2 >= 0 distinct and w > 0
        Z (float): Contact-term constant, Z >= 0
    """

    atoms: tuple
    Z: float = 0.0

    def __post_init__(self):
        atoms = tuple((float(m2), float(w)) for m2, w in self.atoms)
        if not atoms:
            raise ValueError("Spectral measure needs at least one atom")
        masses = [m2 for m2, _ in atoms]
        if len(set(masses)) != len(masses):
            raise ValueError("Spectral atoms must have distinct masses")
        if any(m2 < 0 for m2 in masses) or any(w <= 0 for _, w in atoms):
            raise ValueError("Spectral atoms need m2 >= 0 and w > 0")
        if self.Z < 0:
            raise ValueError("Contact constant Z must be non-negative")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "Z", float(self.Z))

    @classmethod
    def free_case(cls):
        """Massless single atom; w = 1 and Z = 0 give the canonical commutator"""
        return cls(((0.0, 1.0),), 0.0)

    @property
    def total_weight(self):
        return sum(w for _, w in self.atoms)


def canonical_defect(measure):
    """
    How far a measure is from reproducing [A(f), E(g)] = i(f, g).

    The equal-time commutator evaluates to i[(sum w) delta_ij + Z k_i k_j]
    paired with f and g, so both returned numbers must vanish.

    Args:
        measure (SpectralMeasure): Measure to check

    Returns:
        tuple: (sum of weights - 1, Z)
    """
    return measure.total_weight - 1.0, measure.Z


def is_admissible(measure, tol=1e-12):
    weight_defect, contact = canonical_defect(measure)
    return abs(weight_defect) <= tol and abs(contact) <= tol


class StateSpec:
    """Base class of the state descriptions"""

    kind = "state"


@dataclass(frozen=True)
class PositiveNonRegular(StateSpec):
    kind = "positive"


@dataclass(frozen=True)
class IndefiniteQuasiFree(StateSpec):
    measure: SpectralMeasure = field(default_factory=SpectralMeasure.free_case)

    kind = "indefinite"


@dataclass(frozen=True)
class ThetaComposed(StateSpec):
    inner: StateSpec
    theta: tuple = (0.0, 0.0, 0.0)

    kind = "theta"

    def __post_init__(self):
        if isinstance(self.inner, ThetaComposed):
            raise ValueError("Theta composition can only be applied once")
        if not isinstance(self.inner, StateSpec):
            raise ValueError(f"Unknown inner state {self.inner!r}")
        theta = tuple(float(v) for v in self.theta)
        if len(theta) != 3:
            raise ValueError("theta must be a real 3-vector")
        object.__setattr__(self, "theta", theta)


def base_state(state):
    return state.inner if isinstance(state, ThetaComposed) else state


def theta_of(state):
    if isinstance(state, ThetaComposed):
        return np.asarray(state.theta)
    return np.zeros(3)


@dataclass(frozen=True, eq=False)
class FieldLabel:
    """
    Field at a time: A(f, t) or E(f, t), with E = d/dt A.

    Attributes:
        species (str): 'A' or 'E'
        f (TestFunction): Vector smearing
        t (float): Time
    """

    species: str
    f: TestFunction
    t: float = 0.0

    def __post_init__(self):
        if self.species not in ("A", "E"):
            raise ValueError(f"Field species must be 'A' or 'E', got {self.species!r}")
        if not self.f.is_vector:
            raise ValueError("Field labels need a vector smearing")
        object.__setattr__(self, "t", float(self.t))


def eval_weyl(state, W, tol=ZERO_TOL):
    """
    Expectation of a Weyl element.

    Args:
        state (StateSpec): State description
        W (WeylElement): Element to evaluate
        tol (float): Relative tolerance for the divergence and mean tests

    Returns:
        complex: Omega(W); for the indefinite state this is the formal
        Gaussian of its complex quadratic form
    """
    if isinstance(state, ThetaComposed):
        character = np.exp(1j * W.grid.volume * float(theta_of(state) @ W.g.mean))
        return complex(eval_weyl(state.inner, W, tol) * character)
    if isinstance(state, PositiveNonRegular):
        return _positive_value(W, tol)
    if isinstance(state, IndefiniteQuasiFree):
        return _indefinite_value(state.measure, W)
    raise ValueError(f"Unknown state {state!r}")


def _positive_value(W, tol):
    if W.f.has_mean(tol) or not is_divergence_free(W.f, tol):
        return 0j
    ft = transverse_project(W.f).dynamical()
    gt = transverse_project(W.g).dynamical()
    exponent = -0.25 * (omega_inner(ft, ft, -1) + omega_inner(gt, gt, 1))
    return complex(W.phase * np.exp(exponent))


def _indefinite_value(measure, W):
    # mean sectors carry no dynamical fluctuation and are dropped from the form
    state = IndefiniteQuasiFree(measure)
    labels = [FieldLabel("A", W.f.dynamical()), FieldLabel("E", W.g.dynamical())]
    quadratic = sum(two_point(state, X, Y) for X in labels for Y in labels)
    return complex(W.phase * np.exp(-0.5 * quadratic))


def _pairing_scale(f, g):
    norms = np.linalg.norm(f.coeffs, axis=1) * np.linalg.norm(g.coeffs, axis=1)
    return f.grid.volume * float(np.sum(norms)), norms


def potential_series(measure, f, g):
    """
    <A(f, tX) A(g, tY)> as a quasi-polynomial in y0 = tY - tX.

    Args:
        measure (SpectralMeasure): Spectral measure of the indefinite state
        f (TestFunction): Zero-mean vector smearing of the left field
        g (TestFunction): Zero-mean vector smearing of the right field

    Returns:
        QuasiPolynomialSeries: Kernel series
    """
    grid = f.grid
    k, k2, volume = grid.k, grid.k2, grid.volume
    fc = np.conj(f.coeffs)
    dot = np.sum(fc * g.coeffs, axis=1)
    longitudinal = np.sum(k * fc, axis=1) * np.sum(k * g.coeffs, axis=1)

    scale, norms = _pairing_scale(f, g)
    tol = PAIRING_TOL * scale

    omegas, coeffs, kvals = [], [], []
    contact = np.full(grid.size, measure.Z)
    for m2, w in measure.atoms:
        denom = k2 + m2
        wa = np.sqrt(denom)
        omegas.append(wa)
        coeffs.append(volume * w * (dot - longitudinal / denom) / (2.0 * wa))
        kvals.append(grid.omega)
        contact = contact + w / denom

    b1 = 0.5j * volume * np.sum(longitudinal * contact)
    active = np.abs(longitudinal) > PAIRING_TOL * norms * k2
    if abs(b1) <= tol:
        b1, linear_k = 0j, 0.0
    else:
        linear_k = float(np.max(grid.omega[active], initial=0.0))
    return QuasiPolynomialSeries.from_modes(
        np.concatenate(omegas), np.concatenate(coeffs), np.concatenate(kvals),
        b0=0j, b1=b1, linear_k=linear_k, tol=tol,
    )


def _require_field_state(state):
    base = base_state(state)
    if isinstance(base, PositiveNonRegular):
        raise UnsupportedState("The positive non-regular state has no field correlation functions")
    if not isinstance(base, IndefiniteQuasiFree):
        raise ValueError(f"Unknown state {state!r}")
    return base


def _require_zero_mean(*labels):
    for label in labels:
        if label.f.has_mean():
            raise MeanModeUnsupported(
                f"Field label {label.species}(f, t={label.t}) has mean {label.f.mean.tolist()}; "
                "the massless kernel is undefined on the zero mode"
            )


def two_point_series(state, X, Y):
    """
    Two-point function as a quasi-polynomial in y0 = t_Y - t_X.

    E-labels are time derivatives of the A-kernel: <A E> = S', <E A> = -S',
    <E E> = -S''.

    Args:
        state (StateSpec): IndefiniteQuasiFree, possibly theta-composed
        X (FieldLabel): Left field
        Y (FieldLabel): Right field

    Returns:
        QuasiPolynomialSeries: Kernel series

    Raises:
        UnsupportedState: For the positive non-regular state
        MeanModeUnsupported: If a label has a nonzero mean
    """
    base = _require_field_state(state)
    _require_zero_mean(X, Y)
    series = potential_series(base.measure, X.f, Y.f)
    species = X.species + Y.species
    if species == "AE":
        return series.derivative()
    if species == "EA":
        return -series.derivative()
    if species == "EE":
        return -series.derivative().derivative()
    return series


def two_point(state, X, Y):
    """<X Y> at the label times"""
    return two_point_series(state, X, Y).eval(Y.t - X.t)


def free_two_point(f, g, y0):
    """
    Massless kernel written out directly:

        P_tr(k) exp(i |k| y0) / (2|k|) + (i/2) y0 k k / |k|^2

    paired with conj(fhat) and ghat and summed with weight L^3.
    """
    grid = f.grid
    k, k2 = grid.k, grid.k2
    fc = np.conj(f.coeffs)
    dot = np.sum(fc * g.coeffs, axis=1)
    kk = np.sum(k * fc, axis=1) * np.sum(k * g.coeffs, axis=1)
    transverse = (dot - kk / k2) * np.exp(1j * grid.omega * y0) / (2.0 * grid.omega)
    contact = 0.5j * y0 * kk / k2
    return complex(grid.volume * np.sum(transverse + contact))


def n_point_wick(state, labels):
    """
    Wick expansion of <X_1 ... X_n> over two_point.

    Odd products vanish except for the theta one-point shift of a single
    mean-carrying label: theta.m_f L^3 for E and t theta.m_f L^3 for A.

    Args:
        state (StateSpec): IndefiniteQuasiFree, possibly theta-composed
        labels (list): FieldLabel sequence in operator order

    Returns:
        complex: The n-point value
    """
    _require_field_state(state)
    labels = list(labels)
    if not labels:
        return 1.0 + 0j
    if any(label.f.has_mean() for label in labels):
        if len(labels) > 1:
            _require_zero_mean(*labels)
        label = labels[0]
        shift = label.f.grid.volume * float(theta_of(state) @ label.f.mean)
        return complex(shift if label.species == "E" else label.t * shift)
    if len(labels) % 2:
        return 0j
    pairs = {}
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            pairs[i, j] = two_point(state, labels[i], labels[j])
    return complex(_pairings(tuple(range(len(labels))), pairs))


def _pairings(indices, pairs):
    if not indices:
        return 1.0
    first, rest = indices[0], indices[1:]
    total = 0j
    for pos, partner in enumerate(rest):
        remaining = rest[:pos] + rest[pos + 1:]
        total += pairs[first, partner] * _pairings(remaining, pairs)
    return total


def equal_time_commutator(measure, f, g):
    """
    d/dy0 at 0 of <A(f,0) A(g,y0)> - <A(g,y0) A(f,0)>, which should be i(f, g).

    Args:
        measure (SpectralMeasure): Spectral measure
        f (TestFunction): Zero-mean vector smearing
        g (TestFunction): Zero-mean vector smearing

    Returns:
        complex: The commutator derivative
    """
    forward = potential_series(measure, f, g).derivative().eval(0.0)
    backward = potential_series(measure, g, f).derivative().eval(0.0)
    return complex(forward + backward)


def null_vector_products(state, f, g):
    """
    Equal-time products of div A and div E for scalar smearings f and g.

    Uses (div A)(f) = -A(grad f) and likewise for E.

    Returns:
        dict: 'AA' = <(div A(f))^2>, 'EE' = <(div E(f))^2>,
        'AE' = <div A(f) div E(g)>, 'expected_AE' = (i/2)(grad f, grad g)
    """
    df, dg = gradient(f), gradient(g)
    return {
        "AA": two_point(state, FieldLabel("A", df), FieldLabel("A", df)),
        "EE": two_point(state, FieldLabel("E", df), FieldLabel("E", df)),
        "AE": two_point(state, FieldLabel("A", df), FieldLabel("E", dg)),
        "expected_AE": 0.5j * inner(df, dg),
    }


def weyl_gram(state, elements):
    """
    Matrix M_ij = Omega(W_i* W_j); positive semidefinite for a positive state.

    Args:
        state (StateSpec): State description
        elements (list): Weyl elements

    Returns:
        np.ndarray: Hermitian matrix
    """
    n = len(elements)
    gram = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            gram[i, j] = eval_weyl(state, multiply(adjoint(elements[i]), elements[j]))
    return gram


def nonregular_profile(state, f, s_values):
    """s -> Omega(W(s f, 0)) for an A-smearing f"""
    return np.array([eval_weyl(state, weyl(f=f.scale(s))) for s in s_values])


def translation_overlap(state, h, shifts):
    """
    Overlap Omega(W(grad h, 0)* W(grad h_x, 0)) for each shift vector x.

    Args:
        state (StateSpec): State description
        h (TestFunction): Scalar function
        shifts (array-like): Shift vectors, shape (P, 3)

    Returns:
        np.ndarray: Complex overlaps
    """
    base = weyl(f=gradient(h))
    values = []
    for x in np.atleast_2d(np.asarray(shifts, dtype=float)):
        moved = weyl(f=gradient(translate(h, x)))
        values.append(eval_weyl(state, multiply(adjoint(base), moved)))
    return np.array(values)


def theta_character_probe(state, g, s_values):
    """
    s -> Omega(W(0, s g)) for an electric smearing g, typically a constant.

    Under a theta-composed state this is the character exp(i s theta.m_g L^3).
    """
    return np.array([eval_weyl(state, weyl(g=g.scale(s))) for s in s_values])


def gauge_shift_defect(state, W, automorphism):
    """|Omega(gamma W) - Omega(W)|; zero for gauge invariant states"""
    return abs(eval_weyl(state, automorphism.apply(W)) - eval_weyl(state, W))


def generator_second_moment(state, W, ds=1e-3):
    """
    -d^2/ds^2 Omega(W(s f, s g)) at s = 0 by central differences.

    For a regular state this is <(A(f) + E(g))^2>.

    Args:
        state (StateSpec): State description
        W (WeylElement): Direction (phase ignored)
        ds (float): Step size

    Returns:
        complex: Second-moment estimate
    """
    def value(s):
        return eval_weyl(state, WeylElement(W.f.scale(s), W.g.scale(s)))

    return complex(-(value(ds) - 2.0 * value(0.0) + value(-ds)) / ds ** 2)
