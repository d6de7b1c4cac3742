"""
Euclidean Field Sampler
=======================

Draws one configuration of the Gaussian processes behind the Euclidean
composite field

    A(x, tau) = A_tr(x, tau) + grad[xi(x, tau) + z(x) - zbar(x) |tau|]

per dynamical mode. Amplitudes are normalized so that their per-mode
covariance equals the kernel itself; smearing multiplies by L^(3/2).

* A_tr: two real polarizations orthogonal to k, each a stationary complex
  Ornstein-Uhlenbeck process with covariance exp(-|k||dtau|)/(2|k|).
* xi: two independent Brownian branches pinned at xi(0) = 0, variance
  |tau|/|k|^2.
* z = z1 + i z2, zbar = z1 - i z2 with z1, z2 real fields of variance
  1/(4|k|^2), so <z z> = 0 and <z zbar> = 1/(2|k|^2).

Every random field is real in position space: the value at -k is the
conjugate of the value at k, and for z this reads zbar_{-k} = conj(z_k).
"""

from dataclasses import dataclass

import numpy as np

from ..fields.mode_space import ModeGrid, divergence


@dataclass(frozen=True)
class EuclideanConfig:
    """
    Attributes:
        grid (ModeGrid): Mode lattice
        taus (tuple): Sorted distinct imaginary times, negatives allowed
        samples (int): Number of field configurations
        seed (int): Master seed
        batches (int): Batch count for batch-means error bars
        threads (int): Worker threads; results do not depend on it
    """

    grid: ModeGrid
    taus: tuple
    samples: int
    seed: int = 0
    batches: int = 20
    threads: int = 1

    def __post_init__(self):
        taus = tuple(float(t) for t in self.taus)
        if not taus:
            raise ValueError("EuclideanConfig needs at least one time")
        if len(set(taus)) != len(taus):
            raise ValueError("Euclidean times must be distinct")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.batches < 2:
            raise ValueError("batches must be >= 2 for batch-means error bars")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "taus", tuple(sorted(taus)))

    def tau_index(self, tau):
        matches = np.flatnonzero(np.isclose(self.taus, float(tau), rtol=0.0, atol=1e-12))
        if len(matches) == 0:
            raise ValueError(f"Time {tau} is not one of the sampled times {self.taus}")
        return int(matches[0])


@dataclass(frozen=True, eq=False)
class FieldSample:
    """
    One Euclidean configuration on all modes of the grid.

    Attributes:
        grid (ModeGrid): Mode lattice
        taus (np.ndarray): Sampled times, shape (T,)
        a_tr (np.ndarray): Transverse amplitudes, shape (T, M, 3)
        xi (np.ndarray): Brownian amplitudes, shape (T, M)
        z1 (np.ndarray): Real-field amplitudes, shape (M,)
        z2 (np.ndarray): Real-field amplitudes, shape (M,)
    """

    grid: ModeGrid
    taus: np.ndarray
    a_tr: np.ndarray
    xi: np.ndarray
    z1: np.ndarray
    z2: np.ndarray

    @property
    def z(self):
        return self.z1 + 1j * self.z2

    @property
    def zbar(self):
        return self.z1 - 1j * self.z2

    def phi(self, j):
        """Longitudinal potential xi + z - zbar |tau| at time index j"""
        return self.xi[j] + self.z - self.zbar * abs(self.taus[j])

    def smear(self, f, j, include_z=True):
        """
        Smeared composite field at time index j

        Args:
            f (TestFunction): Vector smearing
            j (int): Index into taus
            include_z (bool): Drop the z sector for the positive-case measure

        Returns:
            complex: Value of the smeared field
        """
        weights_a, weights_phi = smearing_weights(f)
        potential = self.phi(j) if include_z else self.xi[j]
        return complex(np.sum(weights_a * self.a_tr[j]) + np.sum(weights_phi * potential))


def smearing_weights(f):
    """L^(3/2) conj(fhat) and L^(3/2) conj((-div f)^) used to smear amplitudes"""
    norm = f.grid.volume ** 0.5
    return norm * np.conj(f.coeffs), norm * np.conj(-divergence(f).coeffs)


def polarizations(k):
    """
    Two real orthonormal vectors perpendicular to each k.

    e1 = k x r / |k x r| with r the coordinate axis least aligned with k,
    e2 = khat x e1.
    """
    khat = k / np.linalg.norm(k, axis=1, keepdims=True)
    ref = np.eye(3)[np.argmin(np.abs(khat), axis=1)]
    e1 = np.cross(khat, ref)
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)
    e2 = np.cross(khat, e1)
    return e1, e2


def _complex_normal(rng, shape):
    """CN(0, 1): E|x|^2 = 1 and E x^2 = 0"""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def stationary_ou(taus, omega, rng, width=1):
    """
    Complex stationary OU paths with covariance exp(-w|dt|)/(2w) on sorted times.

    Args:
        taus (np.ndarray): Sorted times, shape (T,)
        omega (np.ndarray): Decay rate per mode, shape (H,)
        rng (np.random.Generator): Random source
        width (int): Independent paths per mode

    Returns:
        np.ndarray: Paths of shape (T, H, width)
    """
    variance = (1.0 / (2.0 * omega))[:, None]
    noise = _complex_normal(rng, (len(taus), len(omega), width))
    paths = np.empty_like(noise)
    paths[0] = np.sqrt(variance) * noise[0]
    for j in range(1, len(taus)):
        rho = np.exp(-omega * (taus[j] - taus[j - 1]))[:, None]
        paths[j] = rho * paths[j - 1] + np.sqrt(variance * (1.0 - rho ** 2)) * noise[j]
    return paths


def two_sided_brownian(taus, rate, rng):
    """
    Complex Brownian values with E|xi(t)|^2 = rate |t|, independent for
    t > 0 and t < 0 and pinned at xi(0) = 0.

    Args:
        taus (np.ndarray): Sorted times, shape (T,)
        rate (np.ndarray): Variance per unit time for each mode, shape (H,)
        rng (np.random.Generator): Random source

    Returns:
        np.ndarray: Values of shape (T, H)
    """
    values = np.zeros((len(taus), len(rate)), dtype=complex)
    positive = np.flatnonzero(taus > 0)
    negative = np.flatnonzero(taus < 0)[::-1]
    for branch in (positive, negative):
        if len(branch) == 0:
            continue
        steps = np.diff(np.concatenate([[0.0], np.abs(taus[branch])]))
        increments = _complex_normal(rng, (len(branch), len(rate))) * np.sqrt(steps[:, None] * rate)
        values[branch] = np.cumsum(increments, axis=0)
    return values


def _fill(grid, half_values, axis=1):
    half = np.flatnonzero(grid.half)
    shape = list(half_values.shape)
    shape[axis] = grid.size
    full = np.zeros(shape, dtype=complex)
    index = [slice(None)] * len(shape)
    index[axis] = half
    full[tuple(index)] = half_values
    index[axis] = grid.neg[half]
    full[tuple(index)] = np.conj(half_values)
    return full


def draw_sample(grid, taus, rng):
    """
    Draw one FieldSample. The order of draws is fixed so a given generator
    state always yields the same configuration.

    Args:
        grid (ModeGrid): Mode lattice
        taus (array-like): Sorted times
        rng (np.random.Generator): Random source

    Returns:
        FieldSample: The configuration
    """
    taus = np.asarray(taus, dtype=float)
    half = np.flatnonzero(grid.half)
    k, omega, k2 = grid.k[half], grid.omega[half], grid.k2[half]

    e1, e2 = polarizations(k)
    ou = stationary_ou(taus, omega, rng, width=2)
    a_half = ou[..., 0, None] * e1 + ou[..., 1, None] * e2
    xi_half = two_sided_brownian(taus, 1.0 / k2, rng)
    z_scale = np.sqrt(1.0 / (4.0 * k2))
    z1_half = _complex_normal(rng, len(half)) * z_scale
    z2_half = _complex_normal(rng, len(half)) * z_scale

    return FieldSample(
        grid=grid,
        taus=taus,
        a_tr=_fill(grid, a_half, axis=1),
        xi=_fill(grid, xi_half, axis=1),
        z1=_fill(grid, z1_half, axis=0),
        z2=_fill(grid, z2_half, axis=0),
    )
