"""
Configuration Module
====================

Flat text configuration: one ``dotted.key = <JSON value>`` per line, ``#``
starts a comment. Several files are merged left to right and command-line
overrides are applied last. Every key must appear in SCHEMA; see
docs/config.md for the documented schema.
"""

import json

from ..exceptions import ConfigError


SCENARIOS = (
    "state-eval",
    "spectral",
    "theta-demo",
    "gram",
    "mc-schwinger",
    "positive-exp",
    "convention-audit",
)


def _positive_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0


def _positive_int(value):
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


def _real_vector(value):
    return (isinstance(value, list) and len(value) == 3
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value))


def _real_list(value):
    return (isinstance(value, list) and len(value) >= 1
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value))


def _rho(value):
    return isinstance(value, list) and len(value) >= 1 and all(_real_list(a) and len(a) == 2 for a in value)


def _non_negative(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value >= 0


def _seed(value):
    return isinstance(value, int) and not isinstance(value, bool) and 0 <= value < 2 ** 64


def _one_of(*choices):
    return lambda value: value in choices


def _string(value):
    return isinstance(value, str)


# key -> (default, validator, description)
SCHEMA = {
    "scenario": (None, _one_of(*SCENARIOS), "Scenario to run"),
    "grid.L": (6.283185307179586, _positive_number, "Torus side length"),
    "grid.N": (1, _positive_int, "Per-axis mode cutoff"),
    "taus": ([0.0, 0.5, 1.0], _real_list, "Euclidean times"),
    "mc.samples": (20000, _positive_int, "Monte Carlo sample count"),
    "mc.seed": (20240601, _seed, "Master seed"),
    "mc.batches": (20, lambda v: _positive_int(v) and v >= 2, "Batches for batch-means error bars"),
    "mc.threads": (1, _positive_int, "Worker threads"),
    "rho": ([[0.0, 1.0]], _rho, "Spectral atoms [[m2, w], ...]"),
    "Z": (0.0, _non_negative, "Contact-term constant"),
    "theta": ([0.0, 0.0, 0.0], _real_vector, "Background electric field"),
    "state": ("positive", _one_of("positive", "indefinite", "theta-positive", "theta-indefinite"),
              "State the scenario evaluates"),
    "input.preset": ("unit_transverse", _string, "Named smearing preset"),
    "input.fixture": ("", _string, "Path to a JSON fixture (overrides the preset)"),
    "input.scale": (1.0, _positive_number, "Scale factor applied to the preset"),
    "spectral.kind": ("field", _one_of("field", "weyl"), "Correlate field labels or Weyl elements"),
    "spectral.species": ("AA", _one_of("AA", "AE", "EA", "EE"), "Field species of the two labels"),
    "spectral.strict": (False, lambda v: isinstance(v, bool), "Fail instead of sampling"),
    "spectral.t_max": (201.06192982974676, _positive_number, "Sampling window of the fallback"),
    "spectral.samples": (2048, _positive_int, "Fallback sample count"),
    "gram.maxdeg": (1, _positive_int, "Highest monomial degree"),
    "output.format": ("json", _one_of("json", "csv"), "Extra output format besides JSON"),
    "output.dir": ("results", _string, "Output directory"),
    "tol.exact": (1e-12, _positive_number, "Exact identity tolerance"),
    "tol.phase": (1e-12, _positive_number, "Phase tolerance"),
    "tol.commutator": (1e-10, _positive_number, "Canonical commutator tolerance"),
    "tol.sigmas": (4.0, _positive_number, "Monte Carlo acceptance in standard errors"),
    "tol.psd": (1e-10, _positive_number, "Allowed negative eigenvalue of positive Gram matrices"),
    "tol.spectral": (1e-9, _positive_number, "Spectral support tolerance"),
    "tol.series": (1e-10, _positive_number, "Relative agreement of a series with direct evaluation"),
    "log.level": ("WARNING", _one_of("DEBUG", "INFO", "WARNING", "ERROR"), "Logging level"),
}


def defaults():
    return {key: default for key, (default, _, _) in SCHEMA.items()}


def parse_config_text(text, source="<string>"):
    """
    Parse flat key = JSON-value text

    Args:
        text (str): File contents
        source (str): Name used in error messages

    Returns:
        dict: Raw key -> value mapping

    Raises:
        ConfigError: On syntax errors or duplicate keys
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = json.loads(value)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{source}:{lineno}: value of {key!r} is not valid JSON: {e.msg}") from e
    return values


def validate(values):
    """
    Check keys and values against SCHEMA

    Args:
        values (dict): Raw configuration

    Returns:
        dict: The same mapping

    Raises:
        ConfigError: On unknown keys or invalid values
    """
    unknown = sorted(set(values) - set(SCHEMA))
    if unknown:
        raise ConfigError(f"Unknown configuration key(s): {', '.join(unknown)}")
    for key, value in values.items():
        _, check, description = SCHEMA[key]
        if value is None and key == "scenario":
            continue
        if not check(value):
            raise ConfigError(f"Invalid value for {key} ({description}): {value!r}")
    return values


def load_config(paths=(), overrides=None):
    """
    Merge configuration files and overrides on top of the defaults

    Args:
        paths (list): Config file paths, later files win
        overrides (dict): Values applied last (e.g. from command-line flags)

    Returns:
        dict: Complete validated configuration
    """
    merged = defaults()
    for path in paths:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ConfigError(f"Cannot read config file {path}: {e}") from e
        merged.update(validate(parse_config_text(text, source=str(path))))
    if overrides:
        merged.update(validate({k: v for k, v in overrides.items() if v is not None}))
    if len(set(merged["taus"])) != len(merged["taus"]):
        raise ConfigError("taus must be distinct")
    return merged
