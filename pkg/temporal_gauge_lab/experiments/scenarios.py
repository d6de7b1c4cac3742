"""
Scenarios Module
================

One class per runnable scenario. A scenario reads the merged configuration,
computes its numbers, and records rows, named checks and a few headline
values; the engine turns that into a result record.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..conventions import LEDGER, ledger_hash
from ..data.fixtures import load_fixture, measure_from_config, series_to_dict, verdict_to_dict
from ..euclidean.monte_carlo import mc_exponentials, mc_moments, schwinger_wick, sigmas
from ..euclidean.sampler import EuclideanConfig
from ..euclidean.schwinger import (
    continued_two_point,
    gaussian_variance,
    indefinite_exponential_correlation,
    longitudinal_form_gram,
    positive_exponential_correlation,
    reflection_positivity_gram,
)
from ..exceptions import ConfigError
from ..fields.mode_space import (
    ModeGrid,
    TestFunction,
    divergence,
    gradient,
    inner,
    is_divergence_free,
    laplacian,
    transverse_project,
)
from ..fields.weyl_algebra import (
    LargeGauge,
    SmallGauge,
    Theta,
    TimeShift,
    WeylElement,
    adjoint,
    apply_automorphism,
    bump_family,
    conjugate_by,
    element_symplectic,
    gauge_implementer,
    gauss_conjugation_phase,
    gauss_pairing_phase,
    local_charge_phase,
    multiply,
    theta_phase,
    weyl,
)
from ..spectral.analysis import (
    correlation_series,
    direct_correlation,
    predicted_theta_frequency,
    support_analysis,
    theta_violation_series,
)
from ..spectral.series import QuasiPolynomialSeries
from ..states.evaluators import (
    FieldLabel,
    IndefiniteQuasiFree,
    PositiveNonRegular,
    SpectralMeasure,
    ThetaComposed,
    base_state,
    canonical_defect,
    equal_time_commutator,
    eval_weyl,
    free_two_point,
    is_admissible,
    nonregular_profile,
    null_vector_products,
    potential_series,
    theta_character_probe,
    translation_overlap,
    two_point,
    weyl_gram,
)
from ..states.longitudinal import gram_longitudinal_mode, gram_summary, monomial_basis
from ..utils.helpers import max_abs_error, to_jsonable
from .presets import (
    normalized,
    random_admissible_measure,
    random_function,
    random_weyl,
    scalar_mode,
    unit_transverse,
    vector_preset,
)


logger = logging.getLogger(__name__)


@dataclass
class ScenarioResult:
    """
    Output of one scenario run

    Attributes:
        rows (list): Numeric rows, one dict per row
        checks (list): {name, passed, value, tolerance, detail} dicts
        headline (dict): Key numbers for the report summary
        metadata (dict): Extra context (grid size, sample counts, ...)
        spectral (dict): Optional {verdict, series} for spectral scenarios
        columns (list): Column order of the CSV body (default: all keys)
    """

    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    headline: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    spectral: dict = None
    columns: list = None

    @property
    def passed(self):
        return all(check["passed"] for check in self.checks)


def build_state(config):
    """
    State description named by the 'state' key

    Args:
        config (dict): Merged configuration

    Returns:
        StateSpec: The state

    Raises:
        ConfigError: If rho or Z do not describe a valid spectral measure
    """
    try:
        measure = measure_from_config(config["rho"], config["Z"])
    except ValueError as e:
        raise ConfigError(f"Invalid spectral measure: {e}") from e
    kind = config["state"]
    base = PositiveNonRegular() if kind.endswith("positive") else IndefiniteQuasiFree(measure)
    if not isinstance(base, PositiveNonRegular) and not is_admissible(measure):
        logger.warning("Spectral measure %s misses the canonical commutator (defect %s)",
                       measure.atoms, canonical_defect(measure))
    if kind.startswith("theta-"):
        return ThetaComposed(base, tuple(config["theta"]))
    return base


def _complex_row(label, value, expected=None, **extra):
    row = {"label": label, "value_re": float(np.real(value)), "value_im": float(np.imag(value))}
    if expected is not None:
        row["expected_re"] = float(np.real(expected))
        row["expected_im"] = float(np.imag(expected))
        row["error"] = float(abs(complex(value) - complex(expected)))
    row.update(extra)
    return row


def _element_error(W1, W2):
    return max((W1.f - W2.f).magnitude(), (W1.g - W2.g).magnitude(), abs(W1.phase - W2.phase))


class Scenario:
    """
    Base scenario class
    """

    name = "scenario"
    columns = None

    def __init__(self, config):
        """
        Initialize the scenario

        Args:
            config (dict): Merged, validated configuration
        """
        self.config = config
        self.grid = ModeGrid(float(config["grid.L"]), int(config["grid.N"]))
        self.result = ScenarioResult(columns=self.columns)

    def execute(self):
        """
        Compute rows and checks into self.result
        """
        raise NotImplementedError("execute method must be implemented in subclass")

    def run(self):
        """
        Run the scenario

        Returns:
            ScenarioResult: Rows, checks and headline numbers
        """
        logger.info("Running scenario %s on L=%g N=%d", self.name, self.grid.L, self.grid.N)
        self.execute()
        self.result.metadata.setdefault("modes", self.grid.size)
        return self.result

    def check(self, name, passed, value=None, tolerance=None, detail=""):
        self.result.checks.append({
            "name": name,
            "passed": bool(passed),
            "value": to_jsonable(value),
            "tolerance": tolerance,
            "detail": detail,
        })
        if not passed:
            logger.warning("Check %s failed in %s: value=%s tolerance=%s", name, self.name, value, tolerance)

    def rng(self):
        return np.random.default_rng(int(self.config["mc.seed"]))

    def state(self):
        return build_state(self.config)

    def input_object(self):
        """
        The configured input: a fixture file if given, else the scaled preset

        Returns:
            TestFunction or WeylElement: The input
        """
        path = self.config["input.fixture"]
        if path:
            try:
                obj = load_fixture(path)
            except OSError as e:
                raise ConfigError(f"Cannot read fixture {path}: {e}") from e
            self.grid = obj.grid
            return obj
        return vector_preset(self.config["input.preset"], self.grid, float(self.config["input.scale"]))

    def input_weyl(self):
        obj = self.input_object()
        return obj if isinstance(obj, WeylElement) else weyl(f=obj)

    def input_function(self):
        obj = self.input_object()
        if isinstance(obj, WeylElement):
            return obj.f
        if not obj.is_vector:
            raise ConfigError("Input fixture must be a vector test function or a Weyl element")
        return obj


class StateEvalScenario(Scenario):
    """
    Evaluate the configured state on one Weyl element, then check positivity
    bound, time invariance, gauge invariance and Gauss-law invariance
    """

    name = "state-eval"

    def execute(self):
        W = self.input_weyl()
        state = self.state()
        tol = float(self.config["tol.exact"])
        value = eval_weyl(state, W, tol)
        formal = isinstance(base_state(state), IndefiniteQuasiFree)
        self.result.rows.append(_complex_row(
            "omega(W)", value,
            divergence_free=is_divergence_free(W.f), has_mean=W.f.has_mean(), formal=formal,
        ))
        self.result.headline = {"value": to_jsonable(value), "formal": formal}
        if formal:
            measure = base_state(state).measure
            weight_defect, contact = canonical_defect(measure)
            self.check("measure_admissible", is_admissible(measure),
                       value=[weight_defect, contact], tolerance=1e-12)
            return

        self.check("modulus_bound", abs(value) <= 1.0 + tol, value=abs(value), tolerance=1.0 + tol)
        if W.f.has_mean(tol) or not is_divergence_free(W.f, tol):
            self.check("vanishes_off_transverse_sector", value == 0, value=abs(value), tolerance=0.0)

        rng = self.rng()
        transforms = [(f"time_shift({t:g})", TimeShift(t)) for t in (0.37, 1.9, 2.0 * np.pi)]
        transforms.append(("small_gauge", SmallGauge(random_function(self.grid, rng, "scalar"))))
        transforms.append(("large_gauge", LargeGauge(tuple(rng.standard_normal(3)))))
        for label, automorphism in transforms:
            moved = eval_weyl(state, automorphism.apply(W), tol)
            self.result.rows.append(_complex_row(label, moved, value))
            self.check(f"invariant_under_{label}", abs(moved - value) <= tol, value=abs(moved - value), tolerance=tol)

        k = random_function(self.grid, rng, "scalar")
        shifted = eval_weyl(state, WeylElement(W.f, W.g + gradient(k), W.phase), tol)
        self.result.rows.append(_complex_row("gauss_shift(g + grad k)", shifted, value))
        self.check("gauss_law_invariance", abs(shifted - value) <= tol, value=abs(shifted - value), tolerance=tol)


class SpectralScenario(Scenario):
    """
    Correlation G(t) = Omega(X alpha_t(Y)) and the support of its Fourier transform
    """

    name = "spectral"

    def _observables(self):
        if self.config["spectral.kind"] == "field":
            f = self.input_function()
            species = self.config["spectral.species"]
            return FieldLabel(species[0], f, 0.0), FieldLabel(species[1], f, 0.0)
        W = self.input_weyl()
        return W, adjoint(W)

    def _direct(self, state, X, Y, t):
        if isinstance(X, FieldLabel):
            return two_point(state, X, FieldLabel(Y.species, Y.f, Y.t + t))
        return direct_correlation(state, X, Y, t)

    def execute(self):
        state = self.state()
        X, Y = self._observables()
        series = correlation_series(
            state, X, Y,
            strict=bool(self.config["spectral.strict"]),
            t_max=float(self.config["spectral.t_max"]),
            samples=int(self.config["spectral.samples"]),
        )
        verdict = support_analysis(series, float(self.config["tol.spectral"]))
        exact = isinstance(series, QuasiPolynomialSeries)
        self.result.spectral = {"verdict": verdict_to_dict(verdict), "series": series_to_dict(series) if exact else None}
        for omega, weight, order in verdict.support:
            self.result.rows.append({"label": f"support(order={order})", "omega": omega, "weight": weight,
                                     "order": order})
        self.result.headline = {
            "support_points": len(verdict.support),
            "energy_positive": verdict.energy_positive,
            "relativistic": verdict.relativistic,
            "exact": exact,
        }
        if not exact:
            self.result.metadata["fallback"] = series.reason
            self.result.metadata["resolution"] = verdict.resolution
            return

        times = np.linspace(0.0, 10.0, 21)
        direct = np.array([self._direct(state, X, Y, t) for t in times])
        error = max_abs_error(series.eval(times), direct)
        tol = float(self.config["tol.series"]) * max(1.0, float(np.max(np.abs(direct))))
        self.check("series_matches_direct_evaluation", error <= tol, value=error, tolerance=tol)

        if isinstance(X, FieldLabel):
            longitudinal = transverse_project(X.f).is_zero(reference=X.f.magnitude())
            if longitudinal and (series.b0 != 0 or series.b1 != 0):
                self.check("longitudinal_energy_positive_not_relativistic",
                           verdict.energy_positive and not verdict.relativistic,
                           value=[verdict.energy_positive, verdict.relativistic])


class ThetaDemoScenario(Scenario):
    """
    Spectral violation by a theta vacuum on a mean-sector pair, the
    disjointness of theta sectors and the local-charge generation of the shift
    """

    name = "theta-demo"

    S_VALUES = (0.5, 1.0, 2.0, 3.0)
    WIDTHS = (0.5, 1.0, 2.0, 4.0, 6.0)

    def execute(self):
        theta = np.asarray(self.config["theta"], dtype=float)
        u0 = self.input_function()
        if not u0.has_mean():
            raise ConfigError("theta-demo needs an input with a mean sector, e.g. input.preset = \"mean_e1\"")
        u0 = TestFunction.constant(self.grid, u0.mean)
        tol = float(self.config["tol.spectral"])

        series = theta_violation_series(theta, u0)
        verdict = support_analysis(series, tol)
        predicted = predicted_theta_frequency(theta, u0)
        self.result.spectral = {"verdict": verdict_to_dict(verdict), "series": series_to_dict(series)}
        omega = verdict.frequencies[0] if verdict.support else float("nan")
        self.result.rows.append({"label": "support", "omega": omega, "expected": predicted,
                                 "error": abs(omega - predicted)})
        self.check("support_matches_prediction",
                   len(verdict.support) == 1 and abs(omega - predicted) <= tol * max(1.0, abs(predicted)),
                   value=omega, tolerance=tol)
        self.check("energy_positive_iff_frequency_nonnegative",
                   verdict.energy_positive == (predicted >= -tol), value=verdict.energy_positive)

        exact = float(self.config["tol.exact"])
        positive = theta_character_probe(PositiveNonRegular(), u0, self.S_VALUES)
        shifted = theta_character_probe(ThetaComposed(PositiveNonRegular(), tuple(theta)), u0, self.S_VALUES)
        for s, a, b in zip(self.S_VALUES, positive, shifted):
            expected = abs(1.0 - np.exp(1j * s * self.grid.volume * float(theta @ u0.mean)))
            separation = abs(a - b)
            self.result.rows.append({"label": f"separation(s={s:g})", "value_re": separation, "value_im": 0.0,
                                     "expected_re": expected, "expected_im": 0.0,
                                     "error": abs(separation - expected)})
            self.check(f"character_separation(s={s:g})", abs(separation - expected) <= exact,
                       value=separation, tolerance=exact)

        W = WeylElement(unit_transverse(self.grid), u0 + unit_transverse(self.grid))
        target = theta_phase(theta, W)
        errors = []
        for R, bump in zip(self.WIDTHS, bump_family(self.grid, self.WIDTHS)):
            phase = local_charge_phase(theta, bump, W)
            errors.append(abs(phase - target))
            self.result.rows.append(_complex_row(f"local_charge_phase(R={R:g})", phase, target))
        self.check("local_charge_converges", errors[-1] <= 1e-6, value=errors[-1], tolerance=1e-6)

        self.result.headline = {"omega": omega, "predicted": predicted, "energy_positive": verdict.energy_positive}


class GramScenario(Scenario):
    """
    Exact Gram matrix of the longitudinal mode on the monomial basis, plus
    the Euclidean longitudinal form on the configured times
    """

    name = "gram"

    def execute(self):
        maxdeg = int(self.config["gram.maxdeg"])
        gram = gram_longitudinal_mode(maxdeg, "wick")
        summary = gram_summary(maxdeg)
        names = [_monomial_name(a, b) for a, b in monomial_basis(maxdeg)]
        for i in range(gram.shape[0]):
            for j in range(gram.shape[1]):
                entry = complex(gram[i, j])
                self.result.rows.append(_complex_row(f"<{names[i]}, {names[j]}>", entry, row=i, col=j))

        self.check("wick_and_ccr_agree", summary["methods_agree"])
        self.check("hermitian", summary["hermitian"])
        self.check("nondegenerate", abs(summary["determinant"]) > 0, value=summary["determinant"])
        self.check("indefinite", summary["negative_eigenvalues"] >= 1, value=summary["negative_eigenvalues"])
        if maxdeg == 1:
            expected = np.array([[1, 0, 0], [0, 0, 0.5j], [0, -0.5j, 0]])
            error = max_abs_error(np.array(gram.evalf(), dtype=complex), expected)
            self.check("degree_one_matrix", error == 0.0, value=error, tolerance=0.0)
            self.check("degree_one_determinant", summary["determinant"] == -0.25, value=summary["determinant"])

        taus = sorted(float(t) for t in self.config["taus"])
        if len(taus) >= 2:
            form = longitudinal_form_gram(scalar_mode(self.grid), taus)
            eigenvalues = np.linalg.eigvalsh(form)
            self.result.metadata["euclidean_form_eigenvalues"] = eigenvalues.tolist()
            self.check("euclidean_longitudinal_form_indefinite",
                       eigenvalues[0] < 0 < eigenvalues[-1] and np.min(np.abs(eigenvalues)) > 0,
                       value=eigenvalues.tolist())

        self.result.headline = {key: summary[key] for key in
                                ("size", "determinant", "negative_eigenvalues", "positive_eigenvalues")}


def _monomial_name(a, b):
    parts = [("q" if a == 1 else f"q^{a}") if a else "", ("p" if b == 1 else f"p^{b}") if b else ""]
    return "".join(parts) or "1"


class McSchwingerScenario(Scenario):
    """
    Monte Carlo estimates of Euclidean one-, two- and four-point functions of
    the composite field against their analytic (Wick) values
    """

    name = "mc-schwinger"
    columns = ["scenario", "n", "estimate_re", "estimate_im", "stderr", "analytic_re", "analytic_im", "sigmas"]

    def euclidean_config(self):
        return EuclideanConfig(
            grid=self.grid,
            taus=tuple(self.config["taus"]),
            samples=int(self.config["mc.samples"]),
            seed=int(self.config["mc.seed"]),
            batches=int(self.config["mc.batches"]),
            threads=int(self.config["mc.threads"]),
        )

    def label_sets(self, f, taus):
        sets = [[(f, taus[0])]]
        for i in range(len(taus)):
            for j in range(i, len(taus)):
                sets.append([(f, taus[i]), (f, taus[j])])
        sets.append([(f, taus[0]), (f, taus[0]), (f, taus[-1]), (f, taus[-1])])
        if len(taus) >= 2:
            sets.append([(f, taus[0]), (f, taus[1]), (f, taus[0]), (f, taus[1])])
        return sets

    def execute(self):
        f = normalized(self.input_function())
        config = self.euclidean_config()
        label_sets = self.label_sets(f, config.taus)
        estimates, stderrs = mc_moments(config, label_sets)
        limit = float(self.config["tol.sigmas"])
        worst_sigma, worst_relative = 0.0, 0.0
        for labels, estimate, stderr in zip(label_sets, estimates, stderrs):
            analytic = schwinger_wick(labels)
            deviation = sigmas(estimate, stderr, analytic)
            name = "".join(f"A({tau:g})" for _, tau in labels)
            self.result.rows.append({
                "scenario": self.name,
                "label": name,
                "n": len(labels),
                "estimate_re": float(np.real(estimate)),
                "estimate_im": float(np.imag(estimate)),
                "stderr": float(stderr),
                "analytic_re": float(np.real(analytic)),
                "analytic_im": float(np.imag(analytic)),
                "sigmas": deviation,
            })
            self.check(f"within_sigmas[{name}]", deviation <= limit, value=deviation, tolerance=limit)
            worst_sigma = max(worst_sigma, deviation)
            if len(labels) >= 2 and abs(analytic) >= 0.1:
                relative = float(stderr) / abs(analytic)
                worst_relative = max(worst_relative, relative)
                self.check(f"relative_stderr[{name}]", relative <= 0.05, value=relative, tolerance=0.05)
        self.result.headline = {"max_sigmas": worst_sigma, "max_relative_stderr": worst_relative,
                                "samples": config.samples}
        self.result.metadata.update({"samples": config.samples, "seed": config.seed, "batches": config.batches,
                                     "taus": list(config.taus)})


class PositiveExpScenario(McSchwingerScenario):
    """
    Exponential correlations of the positive Euclidean measure: the charge
    rule, agreement with the indefinite case on neutral lists, superselection
    invariance, a Monte Carlo cross-check and reflection positivity
    """

    name = "positive-exp"
    columns = None

    def factor_lists(self, taus):
        u = normalized(unit_transverse(self.grid))
        grad = normalized(gradient(scalar_mode(self.grid, (2,))))
        first, last = taus[0], taus[-1]
        return {
            "charged_single": [(grad, first)],
            "charged_pair": [(grad, first), (grad, last)],
            "neutral_pair": [(grad, first), (-grad, last)],
            "transverse_pair": [(u, first), (u, last)],
            "mixed_neutral": [(u, first), (grad, first), (-grad, last)],
        }

    def execute(self):
        config = self.euclidean_config()
        taus = config.taus
        if len(taus) < 2:
            raise ConfigError("positive-exp needs at least two distinct taus")
        lists = self.factor_lists(taus)
        tol = float(self.config["tol.exact"])
        agreement = float(self.config["tol.commutator"])
        limit = float(self.config["tol.sigmas"])
        compensator = normalized(gradient(scalar_mode(self.grid, (0,))))
        middle = taus[len(taus) // 2]

        estimates, stderrs = mc_exponentials(config, list(lists.values()))
        for (name, factors), estimate, stderr in zip(lists.items(), estimates, stderrs):
            positive = positive_exponential_correlation(factors, tol)
            indefinite = indefinite_exponential_correlation(factors)
            pre_ergodic = complex(np.exp(-0.5 * gaussian_variance(factors)))
            deviation = sigmas(estimate, stderr, pre_ergodic)
            charged = positive == 0
            self.result.rows.append(_complex_row(
                name, positive, indefinite,
                charged=charged,
                mc_re=float(np.real(estimate)), mc_im=float(np.imag(estimate)), stderr=float(stderr),
                pre_ergodic_re=float(np.real(pre_ergodic)), sigmas=deviation,
            ))
            if name.startswith("charged"):
                self.check(f"charge_rule_zero[{name}]", positive == 0j, value=abs(positive), tolerance=0.0)
            else:
                error = abs(positive - indefinite)
                self.check(f"matches_indefinite[{name}]", error <= agreement, value=error, tolerance=agreement)
            padded = factors + [(compensator, middle), (-compensator, middle)]
            drift = abs(positive_exponential_correlation(padded, tol) - positive)
            self.check(f"superselection_invariance[{name}]", drift <= agreement, value=drift, tolerance=agreement)
            self.check(f"mc_within_sigmas[{name}]", deviation <= limit, value=deviation, tolerance=limit)

        positive_taus = [t for t in taus if t > 0]
        if positive_taus:
            u, grad = lists["transverse_pair"][0][0], lists["neutral_pair"][0][0]
            families = [[(u, t)] for t in positive_taus] + [[(grad, t)] for t in positive_taus]
            families.append([(u, positive_taus[0]), (grad, positive_taus[-1])])
            eigenvalues = np.linalg.eigvalsh(reflection_positivity_gram(families))
            psd = float(self.config["tol.psd"])
            self.check("reflection_positivity", eigenvalues[0] >= -psd, value=float(eigenvalues[0]), tolerance=-psd)

        self.result.headline = {"lists": len(lists), "charged_zero": sum(1 for r in self.result.rows if r["charged"])}
        self.result.metadata.update({"samples": config.samples, "seed": config.seed, "taus": list(taus)})


class ConventionAuditScenario(Scenario):
    """
    Randomized identities that pin the sign and normalization ledger
    """

    name = "convention-audit"

    TRIPLES = 1000

    def record(self, name, error, tolerance, count):
        self.result.rows.append({"label": name, "error": float(error), "tolerance": tolerance, "count": count})
        self.check(name, error <= tolerance, value=float(error), tolerance=tolerance)

    def execute(self):
        rng = self.rng()
        grid = self.grid
        phase_tol = float(self.config["tol.phase"])
        exact = float(self.config["tol.exact"])
        commutator_tol = float(self.config["tol.commutator"])
        psd = float(self.config["tol.psd"])

        errors_assoc, errors_cocycle = [], []
        for _ in range(self.TRIPLES):
            W1, W2, W3 = (random_weyl(grid, rng, with_mean=True) for _ in range(3))
            left = multiply(multiply(W1, W2), W3)
            right = multiply(W1, multiply(W2, W3))
            errors_assoc.append(_element_error(left, right))
            swapped = multiply(W2, W1)
            sigma = element_symplectic(W1, W2)
            errors_cocycle.append(abs(multiply(W1, W2).phase - np.exp(-1j * sigma) * swapped.phase))
        self.record("weyl_associativity", max(errors_assoc), phase_tol, self.TRIPLES)
        self.record("weyl_commutation_cocycle", max(errors_cocycle), phase_tol, self.TRIPLES)

        gauss, implementer = [], []
        for _ in range(20):
            h, g = random_function(grid, rng, "scalar"), random_function(grid, rng, "scalar")
            gauss.append(abs(gauss_conjugation_phase(h, g) - gauss_pairing_phase(h, g)))
            W = random_weyl(grid, rng, with_mean=True)
            implementer.append(_element_error(conjugate_by(gauge_implementer(h), W), SmallGauge(h).apply(W)))
        self.record("gauss_phase_agreement", max(gauss), phase_tol, 20)
        self.record("gauge_implementer_conjugation", max(implementer), phase_tol, 20)

        group, symplectic = [], []
        for _ in range(20):
            s, t = rng.uniform(-3.0, 3.0, 2)
            W1, W2 = random_weyl(grid, rng, with_mean=True), random_weyl(grid, rng, with_mean=True)
            scale = 1.0 + abs(s) + abs(t)
            composed = TimeShift(s).then(TimeShift(t)).apply(W1)
            group.append(_element_error(composed, TimeShift(s + t).apply(W1)) / scale)
            moved = element_symplectic(TimeShift(t).apply(W1), TimeShift(t).apply(W2))
            symplectic.append(abs(moved - element_symplectic(W1, W2)) / scale)
        self.record("time_group_law", max(group), exact, 20)
        self.record("time_preserves_symplectic_form", max(symplectic), exact, 20)

        # second difference of the A-smearing against Laplacian f - grad div f, error is O(dt^2)
        wave_errors = {}
        for _ in range(10):
            W = WeylElement(random_function(grid, rng, with_mean=True), random_function(grid, rng))
            t = rng.uniform(-3.0, 3.0)
            f_t = TimeShift(t).apply(W).f
            wave = laplacian(f_t) - gradient(divergence(f_t))
            for dt in (2e-3, 1e-3):
                second = (TimeShift(t + dt).apply(W).f - f_t.scale(2.0) + TimeShift(t - dt).apply(W).f).scale(dt ** -2)
                error = (second - wave).magnitude() / wave.magnitude()
                wave_errors[dt] = max(wave_errors.get(dt, 0.0), error)
        self.record("time_field_equation", wave_errors[1e-3], 1e-4, 10)
        self.record("time_field_equation_order", wave_errors[1e-3] / max(wave_errors[2e-3], 1e-300), 0.35, 10)

        homomorphism, theta_gauge, theta_time = [], [], []
        for _ in range(20):
            W1, W2 = random_weyl(grid, rng, with_mean=True), random_weyl(grid, rng, with_mean=True)
            t = rng.uniform(-3.0, 3.0)
            theta = tuple(rng.uniform(-1.0, 1.0, 3))
            Lambda = random_function(grid, rng, "scalar")
            scale = 1.0 + abs(t)
            automorphisms = (SmallGauge(Lambda), LargeGauge(tuple(rng.standard_normal(3))), Theta(theta), TimeShift(t))
            for alpha in automorphisms:
                image = apply_automorphism(alpha, multiply(W1, W2))
                homomorphism.append(_element_error(image, multiply(alpha.apply(W1), alpha.apply(W2))) / scale)
            theta_gauge.append(_element_error(Theta(theta).then(SmallGauge(Lambda)).apply(W1),
                                              SmallGauge(Lambda).then(Theta(theta)).apply(W1)))
            shifted = tuple(t * x for x in theta)
            left = TimeShift(t).then(Theta(theta)).apply(W1)
            right = Theta(theta).then(TimeShift(t)).then(LargeGauge(shifted)).apply(W1)
            theta_time.append(_element_error(left, right) / scale)
        self.record("automorphism_homomorphism", max(homomorphism), exact, 80)
        self.record("theta_commutes_with_small_gauge", max(theta_gauge), phase_tol, 20)
        self.record("theta_time_shift_relation", max(theta_time), exact, 20)

        free = IndefiniteQuasiFree()
        kl = []
        for _ in range(100):
            f, g = random_function(grid, rng), random_function(grid, rng)
            y0 = rng.uniform(-5.0, 5.0)
            kl.append(abs(potential_series(free.measure, f, g).eval(y0) - free_two_point(f, g, y0)))
        self.record("free_case_matches_massless_kernel", max(kl), exact, 100)

        ccr = []
        for _ in range(10):
            measure = random_admissible_measure(rng, atoms=int(rng.integers(1, 4)))
            f, g = random_function(grid, rng), random_function(grid, rng)
            ccr.append(abs(equal_time_commutator(measure, f, g) - 1j * inner(f, g)))
        self.record("canonical_commutator", max(ccr), commutator_tol, 10)

        contact = []
        for _ in range(10):
            masses = np.sort(rng.uniform(0.0, 4.0, 2))
            measure = SpectralMeasure(tuple(zip(masses.tolist(), rng.uniform(0.2, 1.0, 2).tolist())),
                                      rng.uniform(0.1, 2.0))
            weight_defect, Z = canonical_defect(measure)
            f, g = random_function(grid, rng), random_function(grid, rng)
            predicted = 1j * ((1.0 + weight_defect) * inner(f, g) + Z * inner(divergence(f), divergence(g)))
            contact.append(abs(equal_time_commutator(measure, f, g) - predicted))
        self.record("contact_term_commutator", max(contact), commutator_tol, 10)

        continuation = []
        for _ in range(50):
            f, g = random_function(grid, rng, "transverse"), random_function(grid, rng, "transverse")
            y0 = rng.uniform(-5.0, 5.0)
            continuation.append(abs(continued_two_point(f, g, y0) - free_two_point(f, g, y0)))
        self.record("euclidean_continuation", max(continuation), commutator_tol, 50)

        null = []
        for _ in range(20):
            f, g = random_function(grid, rng, "scalar"), random_function(grid, rng, "scalar")
            products = null_vector_products(free, f, g)
            null.append(max(abs(products["AA"]), abs(products["EE"]),
                            abs(products["AE"] - products["expected_AE"])))
        self.record("gauss_null_vectors", max(null), exact, 20)

        self._positive_state_checks(rng, exact, psd)
        self.record("ledger_hash_stable", 0.0 if ledger_hash(dict(LEDGER)) == ledger_hash() else 1.0, 0.0, 1)
        self.result.headline = {"checks": len(self.result.checks),
                                "failed": sum(1 for c in self.result.checks if not c["passed"])}

    def _positive_state_checks(self, rng, exact, psd):
        grid = self.grid
        state = PositiveNonRegular()
        vanishing = []
        for _ in range(100):
            W = random_weyl(grid, rng)
            vanishing.append(abs(eval_weyl(state, W)))
        self.record("positive_vanishes_on_divergence", max(vanishing), 0.0, 100)

        invariance = []
        for _ in range(20):
            W = WeylElement(random_function(grid, rng, "transverse"), random_function(grid, rng, with_mean=True))
            value = eval_weyl(state, W)
            moved = [
                TimeShift(rng.uniform(-10.0, 10.0)).apply(W),
                SmallGauge(random_function(grid, rng, "scalar")).apply(W),
                LargeGauge(tuple(rng.standard_normal(3))).apply(W),
                WeylElement(W.f, W.g + gradient(random_function(grid, rng, "scalar")), W.phase),
            ]
            invariance.append(max(abs(eval_weyl(state, V) - value) for V in moved))
        self.record("positive_state_invariance", max(invariance), exact, 20)

        elements = [weyl(f=random_function(grid, rng, "transverse")) for _ in range(3)]
        elements += [random_weyl(grid, rng) for _ in range(3)]
        minimum = float(np.linalg.eigvalsh(weyl_gram(state, elements))[0])
        self.record("positive_gram_psd", max(0.0, -minimum), psd, len(elements))

        h = scalar_mode(grid, (0,))
        s_values = np.array([-1.0, -0.1, 0.0, 1e-8, 0.5])
        profile = nonregular_profile(state, gradient(h), s_values)
        step = np.where(s_values == 0.0, 1.0, 0.0)
        self.record("non_regular_step", max_abs_error(profile, step), 0.0, len(s_values))

        xs = np.linspace(0.0, grid.L, 9)[:-1]
        shifts = np.column_stack([xs, np.zeros_like(xs), np.zeros_like(xs)])
        overlap = translation_overlap(state, h, shifts)
        expected = np.where(xs == 0.0, 1.0, 0.0)
        self.record("translation_overlap_discontinuous", max_abs_error(overlap, expected), exact, len(xs))


SCENARIO_CLASSES = {
    cls.name: cls for cls in (
        StateEvalScenario,
        SpectralScenario,
        ThetaDemoScenario,
        GramScenario,
        McSchwingerScenario,
        PositiveExpScenario,
        ConventionAuditScenario,
    )
}


def get_scenario(name, config):
    """
    Instantiate a scenario by name

    Args:
        name (str): Scenario name
        config (dict): Merged configuration

    Returns:
        Scenario: The scenario
    """
    if name not in SCENARIO_CLASSES:
        raise ConfigError(f"Unknown scenario {name!r}; choose from {sorted(SCENARIO_CLASSES)}")
    return SCENARIO_CLASSES[name](config)
