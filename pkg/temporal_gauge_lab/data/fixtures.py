"""
Fixture Codec Module
====================

JSON-ready dictionaries for the domain types: test functions, Weyl
elements, field labels, spectral measures, correlation series and spectral
verdicts. Every ``*_to_dict`` has a matching ``*_from_dict`` so result
records re-parse into the objects they were written from.
"""

import json

import numpy as np

from ..exceptions import ResultFormatError
from ..fields.mode_space import ModeGrid, TestFunction
from ..fields.weyl_algebra import WeylElement
from ..spectral.analysis import SpectralVerdict
from ..spectral.series import QuasiPolynomialSeries
from ..states.evaluators import FieldLabel, SpectralMeasure


def complex_to_pair(value):
    value = complex(value)
    return [value.real, value.imag]


def pair_to_complex(pair):
    return complex(float(pair[0]), float(pair[1]))


def function_to_dict(f):
    """
    {L, N, entries: [{n, re, im}], mean}; only nonzero coefficients are listed.
    Scalar functions use length-1 re/im/mean lists.
    """
    coeffs = f.coeffs if f.is_vector else f.coeffs[:, None]
    entries = []
    for i in np.flatnonzero(np.abs(coeffs).max(axis=1) > 0):
        entries.append({
            "n": [int(v) for v in f.grid.n[i]],
            "re": [float(v) for v in coeffs[i].real],
            "im": [float(v) for v in coeffs[i].imag],
        })
    mean = f.mean.tolist() if f.is_vector else [float(f.mean)]
    return {"L": float(f.grid.L), "N": int(f.grid.N), "entries": entries, "mean": mean}


def function_from_dict(data, grid=None):
    """
    Parse a test function

    Args:
        data (dict): Output of function_to_dict
        grid (ModeGrid): Grid to attach to (default: built from L and N)

    Returns:
        TestFunction: The function

    Raises:
        ResultFormatError: On missing keys, shape mismatch or non-real data
    """
    try:
        grid = grid or ModeGrid(float(data["L"]), int(data["N"]))
        mean = [float(v) for v in data["mean"]]
        vector = len(mean) == 3
        if len(mean) not in (1, 3):
            raise ResultFormatError("Mean sector must have 1 or 3 entries")
        coeffs = np.zeros((grid.size, 3 if vector else 1), dtype=complex)
        for entry in data["entries"]:
            coeffs[grid.mode_index(entry["n"])] = np.array(entry["re"]) + 1j * np.array(entry["im"])
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ResultFormatError):
            raise
        raise ResultFormatError(f"Malformed test function: {e}") from e
    f = TestFunction(grid, coeffs if vector else coeffs[:, 0], mean if vector else mean[0])
    if not f.is_real():
        raise ResultFormatError("Test function violates fhat(-k) = conj(fhat(k))")
    return f


def weyl_to_dict(W):
    return {"f": function_to_dict(W.f), "g": function_to_dict(W.g), "phase": complex_to_pair(W.phase)}


def weyl_from_dict(data, grid=None):
    try:
        f = function_from_dict(data["f"], grid)
        g = function_from_dict(data["g"], f.grid)
        return WeylElement(f, g, pair_to_complex(data["phase"]))
    except KeyError as e:
        raise ResultFormatError(f"Malformed Weyl element: missing {e}") from e


def label_to_dict(label):
    return {"species": label.species, "f": function_to_dict(label.f), "t": label.t}


def label_from_dict(data, grid=None):
    try:
        return FieldLabel(data["species"], function_from_dict(data["f"], grid), float(data["t"]))
    except KeyError as e:
        raise ResultFormatError(f"Malformed field label: missing {e}") from e


def measure_to_config(measure):
    """rho = [[m2, w], ...] and Z, as read from configuration files"""
    return {"rho": [[m2, w] for m2, w in measure.atoms], "Z": measure.Z}


def measure_from_config(rho, Z=0.0):
    return SpectralMeasure(tuple((float(m2), float(w)) for m2, w in rho), float(Z))


def series_to_dict(series):
    return {
        "terms": [{"omega": w, "c": complex_to_pair(c), "kmax": k} for w, c, k in series.terms],
        "b0": complex_to_pair(series.b0),
        "b1": complex_to_pair(series.b1),
        "linear_k": series.linear_k,
    }


def series_from_dict(data):
    try:
        terms = tuple((float(t["omega"]), pair_to_complex(t["c"]), float(t["kmax"])) for t in data["terms"])
        return QuasiPolynomialSeries(terms, pair_to_complex(data["b0"]), pair_to_complex(data["b1"]),
                                     float(data["linear_k"]))
    except (KeyError, TypeError, IndexError) as e:
        raise ResultFormatError(f"Malformed correlation series: {e}") from e


def verdict_to_dict(verdict):
    return {
        "support": [{"omega": w, "weight": m, "order": o} for w, m, o in verdict.support],
        "energy_positive": verdict.energy_positive,
        "relativistic": verdict.relativistic,
        "negative_mass_fraction": verdict.negative_mass_fraction,
        "resolution": verdict.resolution,
        "exact": verdict.exact,
        "kmax": list(verdict.kmax),
    }


def verdict_from_dict(data):
    try:
        support = tuple((float(s["omega"]), float(s["weight"]), int(s["order"])) for s in data["support"])
        return SpectralVerdict(
            support=support,
            energy_positive=bool(data["energy_positive"]),
            relativistic=bool(data["relativistic"]),
            negative_mass_fraction=float(data["negative_mass_fraction"]),
            resolution=float(data["resolution"]),
            exact=bool(data["exact"]),
            kmax=tuple(float(k) for k in data.get("kmax", ())),
        )
    except (KeyError, TypeError) as e:
        raise ResultFormatError(f"Malformed spectral verdict: {e}") from e


def load_fixture(path, grid=None):
    """
    Read a Weyl element or test function fixture file.

    A file with 'f' and 'g' keys is a Weyl element; one with 'entries' is a
    test function.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ResultFormatError(f"Fixture {path} is not valid JSON: {e}") from e
    if "f" in data and "g" in data:
        return weyl_from_dict(data, grid)
    return function_from_dict(data, grid)
