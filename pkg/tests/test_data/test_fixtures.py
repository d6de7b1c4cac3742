"""
Tests for fixture codec module
"""

import json
import pytest
import numpy as np
from temporal_gauge_lab.exceptions import ResultFormatError
from temporal_gauge_lab.fields.mode_space import TestFunction
from temporal_gauge_lab.fields.weyl_algebra import WeylElement, same_element
from temporal_gauge_lab.spectral.analysis import support_analysis
from temporal_gauge_lab.spectral.series import QuasiPolynomialSeries
from temporal_gauge_lab.states.evaluators import FieldLabel, SpectralMeasure
from temporal_gauge_lab.data.fixtures import (
    function_to_dict, function_from_dict, weyl_to_dict, weyl_from_dict, label_to_dict,
    label_from_dict, measure_to_config, measure_from_config, series_to_dict, series_from_dict,
    verdict_to_dict, verdict_from_dict, load_fixture
)


def test_function_dict_lists_nonzero_modes(u):
    """Test that only the two populated modes are written"""
    data = function_to_dict(u)
    assert sorted(tuple(e["n"]) for e in data["entries"]) == [(0, 0, -1), (0, 0, 1)]
    assert data["mean"] == [0.0, 0.0, 0.0]


def test_function_round_trip(grid, u, h):
    """Test vector and scalar functions re-parse exactly"""
    m = TestFunction.constant(grid, [0.1, 0.2, 0.3])
    for f in (u, h, u + m):
        parsed = function_from_dict(json.loads(json.dumps(function_to_dict(f))))
        np.testing.assert_array_equal(parsed.coeffs, f.coeffs)
        np.testing.assert_array_equal(parsed.mean, f.mean)
        assert parsed.grid == f.grid


def test_function_rejects_non_real(u):
    """Test that a lone +k entry without its conjugate partner is refused"""
    data = function_to_dict(u)
    data["entries"] = data["entries"][:1]
    with pytest.raises(ResultFormatError):
        function_from_dict(data)


def test_function_rejects_malformed(u):
    """Test missing keys and bad mean sizes"""
    with pytest.raises(ResultFormatError):
        function_from_dict({"L": 1.0, "N": 1})
    data = function_to_dict(u)
    data["mean"] = [0.0, 0.0]
    with pytest.raises(ResultFormatError):
        function_from_dict(data)


def test_weyl_and_label(u, grad_h):
    """Test Weyl elements and field labels"""
    W = WeylElement(u, grad_h, np.exp(0.3j))
    assert same_element(weyl_from_dict(weyl_to_dict(W)), W)
    label = label_from_dict(label_to_dict(FieldLabel("E", u, 1.5)))
    assert label.species == "E"
    assert label.t == 1.5
    with pytest.raises(ResultFormatError):
        weyl_from_dict({"f": function_to_dict(u)})


def test_measure_config():
    """Test rho/Z conversion"""
    measure = SpectralMeasure(((0.0, 0.25), (2.0, 0.75)), 0.5)
    config = measure_to_config(measure)
    assert config == {"rho": [[0.0, 0.25], [2.0, 0.75]], "Z": 0.5}
    assert measure_from_config(config["rho"], config["Z"]) == measure


def test_series_and_verdict():
    """Test series and verdict dictionaries"""
    series = QuasiPolynomialSeries(((1.0, 0.5 + 0.25j, 1.0),), b1=0.5j, linear_k=1.0)
    assert series_from_dict(series_to_dict(series)) == series
    verdict = support_analysis(series)
    assert verdict_from_dict(json.loads(json.dumps(verdict_to_dict(verdict)))) == verdict
    with pytest.raises(ResultFormatError):
        series_from_dict({"terms": []})
    with pytest.raises(ResultFormatError):
        verdict_from_dict({"support": []})


def test_load_fixture(tmp_path, u, grad_h):
    """Test fixture files for functions and Weyl elements"""
    function_path = tmp_path / "f.json"
    function_path.write_text(json.dumps(function_to_dict(u)))
    weyl_path = tmp_path / "w.json"
    weyl_path.write_text(json.dumps(weyl_to_dict(WeylElement(grad_h, u))))
    bad_path = tmp_path / "bad.json"
    bad_path.write_text("{not json")

    assert isinstance(load_fixture(str(function_path)), TestFunction)
    assert isinstance(load_fixture(str(weyl_path)), WeylElement)
    with pytest.raises(ResultFormatError):
        load_fixture(str(bad_path))
