"""
Tests for scenarios and presets modules
"""

import json
import pytest
import numpy as np
from temporal_gauge_lab.exceptions import ConfigError, UnsupportedState
from temporal_gauge_lab.data.fixtures import weyl_to_dict
from temporal_gauge_lab.experiments.presets import (
    PRESETS, vector_preset, normalized, random_function, random_weyl, random_admissible_measure
)
from temporal_gauge_lab.experiments.scenarios import build_state, get_scenario
from temporal_gauge_lab.fields.mode_space import inner, is_divergence_free
from temporal_gauge_lab.fields.weyl_algebra import weyl
from temporal_gauge_lab.states.evaluators import (
    IndefiniteQuasiFree, PositiveNonRegular, ThetaComposed, is_admissible
)
from temporal_gauge_lab.utils.config import defaults


def make_config(**values):
    config = defaults()
    config.update({key.replace("__", "."): value for key, value in values.items()})
    return config


def check_names(result):
    return {check["name"]: check["passed"] for check in result.checks}


def test_presets(grid):
    """Test the named smearings"""
    assert abs(inner(vector_preset("unit_transverse", grid), vector_preset("unit_transverse", grid)) - 1) < 1e-14
    assert not is_divergence_free(vector_preset("gradient_e3", grid))
    assert abs(inner(vector_preset("mean_e1", grid), vector_preset("mean_e1", grid)) - 2) < 1e-12
    assert vector_preset("mixed", grid, 2.0).is_vector
    assert set(PRESETS) == {"unit_transverse", "gradient_e3", "gradient_axes", "mean_e1", "mixed"}
    with pytest.raises(ConfigError):
        vector_preset("gaussian", grid)


def test_random_generators(grid, rng):
    """Test kinds of random functions and measures"""
    assert is_divergence_free(random_function(grid, rng, "transverse"))
    assert random_function(grid, rng, "generic", with_mean=True).has_mean()
    assert not random_function(grid, rng, "scalar").is_vector
    assert abs(abs(random_weyl(grid, rng).phase) - 1) < 1e-15
    assert is_admissible(random_admissible_measure(rng))
    with pytest.raises(ValueError):
        normalized(random_function(grid, rng).scale(0.0))


def test_build_state():
    """Test state names map onto state descriptions"""
    assert isinstance(build_state(make_config(state="positive")), PositiveNonRegular)
    assert isinstance(build_state(make_config(state="indefinite")), IndefiniteQuasiFree)
    theta = build_state(make_config(state="theta-indefinite", theta=[0.1, 0.0, 0.0]))
    assert isinstance(theta, ThetaComposed)
    assert theta.theta == (0.1, 0.0, 0.0)
    with pytest.raises(ConfigError):
        build_state(make_config(state="indefinite", rho=[[0.0, 0.5], [0.0, 0.5]]))


def test_unknown_scenario():
    """Test scenario lookup"""
    with pytest.raises(ConfigError):
        get_scenario("fourier", make_config())


def test_state_eval_gradient_positive():
    """Test Omega(W(grad h, 0)) = 0 with all invariance checks passing"""
    result = get_scenario("state-eval", make_config(input__preset="gradient_e3")).run()
    assert result.rows[0]["value_re"] == 0.0
    assert result.rows[0]["value_im"] == 0.0
    assert result.passed
    assert check_names(result)["vanishes_off_transverse_sector"]


def test_state_eval_transverse_positive():
    """Test the positive state on the unit transverse mode"""
    result = get_scenario("state-eval", make_config()).run()
    assert result.rows[0]["value_re"] == pytest.approx(np.exp(-0.25))
    assert result.passed
    assert "vanishes_off_transverse_sector" not in check_names(result)


def test_state_eval_indefinite_measure_check():
    """Test the admissibility check of the indefinite state"""
    good = get_scenario("state-eval", make_config(state="indefinite")).run()
    assert good.passed
    bad = get_scenario("state-eval", make_config(state="indefinite", rho=[[0.0, 2.0]])).run()
    assert not bad.passed


def test_state_eval_fixture(tmp_path, grid, u, grad_h):
    """Test a Weyl element fixture replaces the preset"""
    path = tmp_path / "w.json"
    path.write_text(json.dumps(weyl_to_dict(weyl(f=grad_h, g=u))))
    result = get_scenario("state-eval", make_config(input__fixture=str(path))).run()
    assert result.rows[0]["value_re"] == 0.0
    with pytest.raises(ConfigError):
        get_scenario("state-eval", make_config(input__fixture=str(tmp_path / "missing.json"))).run()


def test_spectral_longitudinal():
    """Test the gradient sector: exact series, positive energy, not relativistic"""
    config = make_config(state="indefinite", input__preset="gradient_e3")
    result = get_scenario("spectral", config).run()
    assert result.passed
    checks = check_names(result)
    assert checks["series_matches_direct_evaluation"]
    assert checks["longitudinal_energy_positive_not_relativistic"]
    assert result.headline["energy_positive"]
    assert not result.headline["relativistic"]
    assert result.spectral["series"] is not None


def test_spectral_positive_state_unsupported():
    """Test field correlations of the positive state are refused"""
    with pytest.raises(UnsupportedState):
        get_scenario("spectral", make_config(state="positive")).run()


def test_spectral_weyl_sampled():
    """Test the sampled fallback for overlapping Weyl elements"""
    config = make_config(spectral__kind="weyl", spectral__samples=256, spectral__t_max=16 * np.pi)
    result = get_scenario("spectral", config).run()
    assert result.spectral["series"] is None
    assert result.metadata["fallback"]
    assert not result.headline["exact"]


def test_theta_demo():
    """Test theta = 0.1 e1 pushes the support below zero"""
    config = make_config(input__preset="mean_e1", theta=[0.1, 0.0, 0.0])
    result = get_scenario("theta-demo", config).run()
    assert result.passed
    assert result.headline["omega"] <= -0.5
    assert not result.headline["energy_positive"]
    unshifted = get_scenario("theta-demo", make_config(input__preset="mean_e1")).run()
    assert unshifted.headline["omega"] == pytest.approx(1.0)
    assert unshifted.headline["energy_positive"]


def test_theta_demo_needs_mean():
    """Test inputs without a mean sector are rejected"""
    with pytest.raises(ConfigError):
        get_scenario("theta-demo", make_config()).run()


def test_gram_degree_one():
    """Test the degree-one Gram rows and checks"""
    result = get_scenario("gram", make_config()).run()
    assert result.passed
    assert len(result.rows) == 9
    assert result.headline["determinant"] == -0.25
    entries = {row["label"]: complex(row["value_re"], row["value_im"]) for row in result.rows}
    assert entries["<q, p>"] == 0.5j
    assert entries["<p, q>"] == -0.5j


@pytest.mark.parametrize("maxdeg", [2, 3])
def test_gram_higher_degrees(maxdeg):
    """Test higher degrees stay nondegenerate and indefinite"""
    result = get_scenario("gram", make_config(gram__maxdeg=maxdeg)).run()
    assert result.passed


def test_mc_schwinger_small_ensemble():
    """Test row layout and sigma checks on a small ensemble"""
    config = make_config(mc__samples=2000, taus=[0.0, 0.5])
    result = get_scenario("mc-schwinger", config).run()
    assert len(result.rows) == 6
    assert {row["n"] for row in result.rows} == {1, 2, 4}
    assert all(passed for name, passed in check_names(result).items() if name.startswith("within_sigmas"))
    assert result.columns[0] == "scenario"


def test_positive_exp():
    """Test charge rule, indefinite agreement, superselection and reflection positivity"""
    config = make_config(mc__samples=2000, taus=[0.0, 0.5, 1.5])
    result = get_scenario("positive-exp", config).run()
    assert result.passed
    assert result.headline["charged_zero"] == 2
    assert "reflection_positivity" in check_names(result)


def test_positive_exp_needs_two_times():
    """Test a single time is rejected"""
    with pytest.raises(ConfigError):
        get_scenario("positive-exp", make_config(taus=[0.5])).run()


def test_convention_audit():
    """Test every convention identity holds"""
    result = get_scenario("convention-audit", make_config()).run()
    failed = [name for name, passed in check_names(result).items() if not passed]
    assert failed == []
    assert result.headline["failed"] == 0


def test_convention_audit_records_dynamics_and_contact_term():
    """Test the audit covers the field equation, automorphism relations and Z contact term"""
    result = get_scenario("convention-audit", make_config()).run()
    checks = check_names(result)
    for name in ("time_field_equation", "time_field_equation_order", "automorphism_homomorphism",
                 "theta_commutes_with_small_gauge", "theta_time_shift_relation", "contact_term_commutator"):
        assert checks[name]
