"""
Presets Module
==============

Named smearing functions used by the scenarios, and seeded random
generators of test functions, Weyl elements and spectral measures for the
property checks. Random functions are scaled to O(1) Parseval norm so phase
round-off stays well below the 1e-12 tolerances.
"""

import numpy as np

from ..exceptions import ConfigError
from ..fields.mode_space import TestFunction, gradient, inner, transverse_project
from ..fields.weyl_algebra import WeylElement
from ..states.evaluators import SpectralMeasure


def unit_transverse(grid):
    """u with fhat_1(+-e3) = 1/sqrt(2 L^3), so (u, u) = 1 and |k| = 2 pi / L"""
    amplitude = 1.0 / np.sqrt(2.0 * grid.volume)
    return TestFunction.from_modes(grid, {(0, 0, 1): [amplitude, 0.0, 0.0]})


def scalar_mode(grid, axes=(2,), amplitude=1.0):
    """
    Scalar h with hhat(+-e_axis) = amplitude for each listed axis

    Args:
        grid (ModeGrid): Lattice
        axes (tuple): Coordinate axes 0, 1, 2
        amplitude (float): Coefficient value

    Returns:
        TestFunction: Zero-mean scalar
    """
    modes = {}
    for axis in axes:
        n = [0, 0, 0]
        n[axis] = 1
        modes[tuple(n)] = amplitude
    return TestFunction.from_modes(grid, modes, vector=False)


def gradient_e3(grid):
    return gradient(scalar_mode(grid, (2,)))


def gradient_axes(grid):
    return gradient(scalar_mode(grid, (0, 1, 2)))


def mean_e1(grid):
    """Constant smearing along e1 with (u0, u0) = 2"""
    return TestFunction.constant(grid, [np.sqrt(2.0 / grid.volume), 0.0, 0.0])


def mixed(grid):
    """Unit transverse mode plus a small gradient on a different axis"""
    h = scalar_mode(grid, (0,), amplitude=1.0 / np.sqrt(grid.volume))
    return unit_transverse(grid) + gradient(h)


PRESETS = {
    "unit_transverse": unit_transverse,
    "gradient_e3": gradient_e3,
    "gradient_axes": gradient_axes,
    "mean_e1": mean_e1,
    "mixed": mixed,
}


def vector_preset(name, grid, scale=1.0):
    """
    Look up a named vector smearing

    Args:
        name (str): Preset name
        grid (ModeGrid): Lattice
        scale (float): Multiplier

    Returns:
        TestFunction: The smearing
    """
    if name not in PRESETS:
        raise ConfigError(f"Unknown input preset {name!r}; choose from {sorted(PRESETS)}")
    return PRESETS[name](grid).scale(scale)


def normalized(f):
    """f / sqrt((f, f))"""
    norm = np.sqrt(inner(f, f))
    if norm == 0:
        raise ValueError("Cannot normalize the zero function")
    return f.scale(1.0 / norm)


def _random_coeffs(grid, rng, shape):
    half = np.flatnonzero(grid.half)
    coeffs = np.zeros((grid.size,) + shape, dtype=complex)
    scale = 1.0 / np.sqrt(grid.volume * grid.size)
    draws = (rng.standard_normal((len(half),) + shape) + 1j * rng.standard_normal((len(half),) + shape)) * scale
    coeffs[half] = draws
    coeffs[grid.neg[half]] = np.conj(draws)
    return coeffs


def random_function(grid, rng, kind="generic", with_mean=False):
    """
    Random real test function

    Args:
        grid (ModeGrid): Lattice
        rng (np.random.Generator): Random source
        kind (str): 'generic', 'transverse', 'gradient' or 'scalar'
        with_mean (bool): Add a random mean sector

    Returns:
        TestFunction: The function
    """
    if kind == "scalar":
        mean = rng.standard_normal() / np.sqrt(grid.volume) if with_mean else 0.0
        return TestFunction(grid, _random_coeffs(grid, rng, ()), mean)
    if kind == "gradient":
        h = TestFunction(grid, _random_coeffs(grid, rng, ()) / np.sqrt(grid.k2), 0.0)
        f = gradient(h)
    else:
        f = TestFunction(grid, _random_coeffs(grid, rng, (3,)), np.zeros(3))
        if kind == "transverse":
            f = transverse_project(f)
        elif kind != "generic":
            raise ValueError(f"Unknown random function kind {kind!r}")
    if with_mean:
        f = f.with_mean(rng.standard_normal(3) / np.sqrt(grid.volume))
    return f


def random_weyl(grid, rng, kind="generic", with_mean=False):
    """Random Weyl element with a random unit phase"""
    f = random_function(grid, rng, kind, with_mean)
    g = random_function(grid, rng, "generic", with_mean)
    return WeylElement(f, g, np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))


def random_admissible_measure(rng, atoms=3):
    """Random discrete measure with total weight 1 and Z = 0"""
    masses = np.concatenate([[0.0], np.sort(rng.uniform(0.1, 4.0, atoms - 1))]) if atoms > 1 else np.array([0.0])
    weights = rng.uniform(0.2, 1.0, atoms)
    weights /= weights.sum()
    return SpectralMeasure(tuple(zip(masses.tolist(), weights.tolist())), 0.0)
