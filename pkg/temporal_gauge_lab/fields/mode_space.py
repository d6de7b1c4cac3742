"""
Mode Space Module
=================

Finite momentum lattice on a cubic 3-torus and the smearing functions that
live on it. A test function is stored as Fourier coefficients on the nonzero
modes plus a separate real mean sector (the k = 0 component), so that
f(x) = sum_k fhat(k) exp(i k.x) + m.

All operators here are momentum-space multipliers; every helper returns a new
immutable TestFunction.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..exceptions import MeanModeUnsupported


ZERO_TOL = 1e-12


@dataclass(frozen=True)
class ModeGrid:
    """
    Momentum lattice {k = (2 pi / L) n : 0 < max|n_i| <= N} on a torus of side L.

    Modes are enumerated in lexicographic order of n; since the set is
    symmetric under n -> -n, the partner of mode i is mode M - 1 - i.
    """

    L: float
    N: int

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError("Torus side length L must be positive")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("Mode cutoff N must be an integer >= 1")

    @cached_property
    def n(self):
        cells = [c for c in itertools.product(range(-self.N, self.N + 1), repeat=3) if any(c)]
        arr = np.array(cells, dtype=int)
        arr.setflags(write=False)
        return arr

    @cached_property
    def k(self):
        arr = (2.0 * np.pi / self.L) * self.n
        arr.setflags(write=False)
        return arr

    @cached_property
    def k2(self):
        arr = np.sum(self.k ** 2, axis=1)
        arr.setflags(write=False)
        return arr

    @cached_property
    def omega(self):
        arr = np.sqrt(self.k2)
        arr.setflags(write=False)
        return arr

    @cached_property
    def neg(self):
        """Index of -k for every mode"""
        arr = np.arange(self.size)[::-1].copy()
        arr.setflags(write=False)
        return arr

    @cached_property
    def half(self):
        """Boolean mask selecting one representative of each {k, -k} pair"""
        mask = np.arange(self.size) < self.neg
        mask.setflags(write=False)
        return mask

    @cached_property
    def index(self):
        return {tuple(int(v) for v in row): i for i, row in enumerate(self.n)}

    @property
    def size(self):
        return (2 * self.N + 1) ** 3 - 1

    @property
    def volume(self):
        return float(self.L) ** 3

    def mode_index(self, n):
        """
        Position of the lattice vector n in the mode list

        Args:
            n (tuple): Integer 3-vector

        Returns:
            int: Mode index
        """
        key = tuple(int(v) for v in n)
        if key not in self.index:
            raise ValueError(f"Mode {key} is not on the grid (N={self.N}, zero mode excluded)")
        return self.index[key]


@dataclass(frozen=True, eq=False)
class TestFunction:
    """
    Real smearing function on a ModeGrid.

    Attributes:
        grid (ModeGrid): Lattice the function lives on
        coeffs (np.ndarray): Complex coefficients, shape (M, 3) for vector
            functions and (M,) for scalar ones
        mean (np.ndarray): Real mean sector, shape (3,) or ()
    """

    __test__ = False

    grid: ModeGrid
    coeffs: np.ndarray
    mean: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        mean = np.array(self.mean, dtype=float)
        if coeffs.ndim not in (1, 2) or coeffs.shape[0] != self.grid.size:
            raise ValueError(f"Coefficient array of shape {coeffs.shape} does not match grid size {self.grid.size}")
        if coeffs.ndim == 2 and coeffs.shape[1] != 3:
            raise ValueError("Vector test functions need three components per mode")
        expected = (3,) if coeffs.ndim == 2 else ()
        if mean.shape != expected:
            raise ValueError(f"Mean sector must have shape {expected}, got {mean.shape}")
        coeffs.setflags(write=False)
        mean.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "mean", mean)

    @property
    def is_vector(self):
        return self.coeffs.ndim == 2

    @classmethod
    def zeros(cls, grid, vector=True):
        shape = (grid.size, 3) if vector else (grid.size,)
        return cls(grid, np.zeros(shape, dtype=complex), np.zeros(3 if vector else ()))

    @classmethod
    def constant(cls, grid, mean):
        """
        Pure mean-sector function

        Args:
            grid (ModeGrid): Lattice
            mean (float or array-like): Scalar or real 3-vector

        Returns:
            TestFunction: Function with no dynamical modes
        """
        mean = np.asarray(mean, dtype=float)
        vector = mean.ndim == 1
        return cls(grid, cls.zeros(grid, vector).coeffs, mean)

    @classmethod
    def from_modes(cls, grid, modes, mean=None, vector=True):
        """
        Build a real function from coefficients on selected modes.

        The partner coefficient at -n is filled with the complex conjugate
        unless it is listed explicitly.

        Args:
            grid (ModeGrid): Lattice
            modes (dict): Lattice vector n -> coefficient (complex 3-vector or scalar)
            mean (float or array-like): Mean sector (default: zero)
            vector (bool): Vector or scalar function

        Returns:
            TestFunction: The function
        """
        coeffs = np.array(cls.zeros(grid, vector).coeffs)
        explicit = set()
        for n, value in modes.items():
            i = grid.mode_index(n)
            coeffs[i] = value
            explicit.add(i)
        for i in sorted(explicit):
            j = grid.neg[i]
            if j not in explicit:
                coeffs[j] = np.conj(coeffs[i])
        if mean is None:
            mean = np.zeros(3) if vector else 0.0
        return cls(grid, coeffs, mean)

    def _check_compatible(self, other):
        if other.grid != self.grid:
            raise ValueError("Test functions live on different grids")
        if other.is_vector != self.is_vector:
            raise ValueError("Cannot combine scalar and vector test functions")

    def __add__(self, other):
        self._check_compatible(other)
        return TestFunction(self.grid, self.coeffs + other.coeffs, self.mean + other.mean)

    def __sub__(self, other):
        self._check_compatible(other)
        return TestFunction(self.grid, self.coeffs - other.coeffs, self.mean - other.mean)

    def __neg__(self):
        return TestFunction(self.grid, -self.coeffs, -self.mean)

    def scale(self, factor):
        """Multiply by a real number"""
        factor = float(factor)
        return TestFunction(self.grid, factor * self.coeffs, factor * self.mean)

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def with_mean(self, mean):
        return TestFunction(self.grid, self.coeffs, mean)

    def dynamical(self):
        """Same coefficients with the mean sector removed"""
        return TestFunction(self.grid, self.coeffs, np.zeros_like(self.mean))

    def magnitude(self):
        """Largest coefficient or mean-sector magnitude"""
        parts = [np.max(np.abs(self.coeffs), initial=0.0), np.max(np.abs(self.mean), initial=0.0)]
        return float(max(parts))

    def has_mean(self, tol=ZERO_TOL):
        """Whether the mean sector is non-negligible relative to the function"""
        return bool(np.max(np.abs(self.mean), initial=0.0) > tol * self.magnitude())

    def is_real(self, tol=ZERO_TOL):
        """Check fhat(-k) = conj(fhat(k)) for every mode"""
        diff = self.coeffs[self.grid.neg] - np.conj(self.coeffs)
        return bool(np.max(np.abs(diff), initial=0.0) <= tol * max(self.magnitude(), 1e-300))

    def is_zero(self, tol=ZERO_TOL, reference=None):
        """
        Whether every coefficient and the mean vanish

        Args:
            tol (float): Relative tolerance
            reference (float): Magnitude the tolerance is relative to
                (default: 1.0)

        Returns:
            bool: True if the function is zero to tolerance
        """
        scale = 1.0 if reference is None else max(float(reference), 1e-300)
        return self.magnitude() <= tol * scale

    def __repr__(self):
        kind = "vector" if self.is_vector else "scalar"
        active = int(np.count_nonzero(np.abs(self.coeffs).reshape(self.grid.size, -1).max(axis=1)))
        return f"<TestFunction({kind}, L={self.grid.L}, N={self.grid.N}, active_modes={active})>"


def _require_vector(f):
    if not f.is_vector:
        raise ValueError("Expected a vector test function")


def _require_scalar(h):
    if h.is_vector:
        raise ValueError("Expected a scalar test function")


def divergence(f):
    """
    Divergence, (div f)^(k) = i k . fhat(k); the mean sector maps to 0.

    Args:
        f (TestFunction): Vector test function

    Returns:
        TestFunction: Scalar test function
    """
    _require_vector(f)
    coeffs = 1j * np.einsum("mi,mi->m", f.grid.k, f.coeffs)
    return TestFunction(f.grid, coeffs, 0.0)


def gradient(h):
    """
    Gradient, (grad h)^(k) = i k hhat(k)

    Args:
        h (TestFunction): Scalar test function

    Returns:
        TestFunction: Vector test function with zero mean
    """
    _require_scalar(h)
    coeffs = 1j * h.grid.k * h.coeffs[:, None]
    return TestFunction(h.grid, coeffs, np.zeros(3))


def laplacian(h):
    """Laplacian, -|k|^2 hhat(k) componentwise; constants map to zero"""
    if h.is_vector:
        return TestFunction(h.grid, -h.grid.k2[:, None] * h.coeffs, np.zeros(3))
    return TestFunction(h.grid, -h.grid.k2 * h.coeffs, 0.0)


def inverse_laplacian(h):
    """
    Inverse Laplacian on zero-mean scalars, -hhat(k)/|k|^2

    Args:
        h (TestFunction): Scalar test function with zero mean

    Returns:
        TestFunction: Scalar test function

    Raises:
        MeanModeUnsupported: If h has a nonzero mean
    """
    _require_scalar(h)
    if float(h.mean) != 0.0:
        raise MeanModeUnsupported("Inverse Laplacian is undefined on the constant mode")
    return TestFunction(h.grid, -h.coeffs / h.grid.k2, 0.0)


def transverse_project(f):
    """
    Transverse projection P_ij = delta_ij - k_i k_j / |k|^2 on the dynamical
    modes. The mean sector is copied unchanged.
    """
    _require_vector(f)
    k = f.grid.k
    kf = np.einsum("mi,mi->m", k, f.coeffs)
    coeffs = f.coeffs - k * (kf / f.grid.k2)[:, None]
    return TestFunction(f.grid, coeffs, f.mean)


def longitudinal_project(f):
    """Longitudinal projection k_i k_j / |k|^2; the result has zero mean"""
    _require_vector(f)
    k = f.grid.k
    kf = np.einsum("mi,mi->m", k, f.coeffs)
    return TestFunction(f.grid, k * (kf / f.grid.k2)[:, None], np.zeros(3))


def mean_part(f):
    """The k = 0 component of f as a constant function"""
    return TestFunction.constant(f.grid, f.mean)


def translate(f, x):
    """
    Translated function f_x(y) = f(y - x)

    Args:
        f (TestFunction): Function to translate
        x (array-like): Real 3-vector

    Returns:
        TestFunction: Function with coefficients multiplied by exp(-i k.x)
    """
    x = np.asarray(x, dtype=float)
    phase = np.exp(-1j * (f.grid.k @ x))
    coeffs = f.coeffs * (phase[:, None] if f.is_vector else phase)
    return TestFunction(f.grid, coeffs, f.mean)


def _pair(f, g, weight=None):
    if f.grid != g.grid:
        raise ValueError("Test functions live on different grids")
    if f.is_vector != g.is_vector:
        raise ValueError("Cannot pair scalar and vector test functions")
    prod = np.conj(f.coeffs) * g.coeffs
    if f.is_vector:
        prod = prod.sum(axis=1)
    if weight is not None:
        prod = prod * weight
    return f.grid.volume * np.sum(prod)


def inner(f, g):
    """
    Parseval pairing (f, g) = L^3 sum_k conj(fhat).ghat + L^3 m_f.m_g

    Args:
        f (TestFunction): First function
        g (TestFunction): Second function of the same kind

    Returns:
        float: The pairing (real for real functions)
    """
    value = _pair(f, g) + f.grid.volume * np.sum(f.mean * g.mean)
    return float(np.real(value))


def omega_inner(f, g, p=0):
    """
    Weighted pairing (f, w^p g) on the dynamical modes only, w(k) = |k|

    Args:
        f (TestFunction): First function
        g (TestFunction): Second function
        p (int): Power of w, one of -1, 0, 1

    Returns:
        float: The pairing
    """
    if p not in (-1, 0, 1):
        raise ValueError("Omega power must be -1, 0 or 1")
    return float(np.real(_pair(f, g, f.grid.omega ** p)))


def collocation_points(grid):
    """Uniform (2N+1)^3 lattice; exact for products of two grid functions"""
    n = 2 * grid.N + 1
    axis = grid.L * np.arange(n) / n
    mesh = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1)
    return mesh.reshape(-1, 3)


def position_values(f, points):
    """
    Evaluate f at position-space points

    Args:
        f (TestFunction): Function to evaluate
        points (np.ndarray): Array of shape (P, 3)

    Returns:
        np.ndarray: Real values, shape (P, 3) or (P,)
    """
    points = np.asarray(points, dtype=float)
    waves = np.exp(1j * points @ f.grid.k.T)
    values = waves @ f.coeffs + f.mean
    return np.real(values)


def quadrature_inner(f, g):
    """Position-space integral of f.g on the collocation lattice"""
    points = collocation_points(f.grid)
    fv = position_values(f, points)
    gv = position_values(g, points)
    prod = fv * gv
    if prod.ndim == 2:
        prod = prod.sum(axis=1)
    return float(np.sum(prod) * f.grid.volume / len(points))


def is_divergence_free(f, tol=ZERO_TOL):
    """
    Whether div f vanishes relative to the size of f

    Args:
        f (TestFunction): Vector test function
        tol (float): Relative tolerance

    Returns:
        bool: True if every divergence coefficient is negligible
    """
    div = divergence(f)
    reference = f.magnitude() * float(np.max(f.grid.omega))
    return div.is_zero(tol, reference=reference)
