import json
from fractions import Fraction

import numpy as np
import pytest

from config.config import MonteCarloConfig
from src.errors import ConfigurationError, RangeError, SizeGuardError
from src.group_integrals import RngStream
from src.hypothesis_testing import (
    BetaMethod,
    ErrorBudget,
    ValidationMode,
    as_fraction,
    beta_optimal,
    cross_validate,
    design_blindness,
    dmax_analytic,
    growth_exponent,
    jackknife_stderr,
    sample_complexity,
    scaling_fit,
)
from src.rep_core import SubgroupKind, closed_form_beta0


class TestBeta:
    def test_known_values(self):
        assert beta_optimal(SubgroupKind.TRIVIAL, 1) == Fraction(1, 4)
        assert beta_optimal(SubgroupKind.TORUS, 4) == Fraction(1, 9)
        assert beta_optimal(SubgroupKind.ORTHOGONAL, 3, eps=Fraction(1, 2)) == Fraction(1, 6)

    @pytest.mark.parametrize("eps", [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1])
    def test_tolerance_scales_linearly(self, subgroup, eps):
        for n in range(0, 11):
            assert beta_optimal(subgroup, n, eps) == (1 - eps) * closed_form_beta0(subgroup, n)

    def test_decimal_tolerance_is_exact(self):
        assert as_fraction(0.1) == Fraction(1, 10)
        assert beta_optimal(SubgroupKind.TORUS, 2, eps=0.5) == Fraction(1, 8)

    def test_tolerance_out_of_range(self):
        with pytest.raises(ValueError):
            ErrorBudget(Fraction(3, 2))
        with pytest.raises(ValueError):
            beta_optimal(SubgroupKind.TORUS, 2, eps=-0.1)

    def test_dmax_analytic(self):
        assert dmax_analytic(SubgroupKind.TRIVIAL, 2) == 10
        assert dmax_analytic(SubgroupKind.TORUS, 3) == 6
        assert dmax_analytic(SubgroupKind.ORTHOGONAL, 4) == 6

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_numeric_matches_analytic(self, subgroup, n):
        numeric = beta_optimal(subgroup, n, method=BetaMethod.NUMERIC)
        assert numeric == pytest.approx(float(beta_optimal(subgroup, n)), abs=1e-8)

    def test_numeric_size_guard(self):
        with pytest.raises(SizeGuardError):
            beta_optimal(SubgroupKind.TRIVIAL, 5, method=BetaMethod.NUMERIC)

    def test_design_blindness(self):
        assert design_blindness(SubgroupKind.ORTHOGONAL, 1)
        assert not design_blindness(SubgroupKind.ORTHOGONAL, 2)
        assert not design_blindness(SubgroupKind.TRIVIAL, 1)


class TestSampleComplexity:
    @pytest.mark.parametrize(
        "kind,delta,expected",
        [
            (SubgroupKind.TRIVIAL, Fraction(1, 20), 3),
            (SubgroupKind.ORTHOGONAL, Fraction(1, 3), 2),
            (SubgroupKind.TORUS, 1, 0),
        ],
    )
    def test_known_values(self, kind, delta, expected):
        result = sample_complexity(kind, delta)
        assert result.n_star == expected
        assert result.beta_at_n_star <= delta

    def test_minimality(self, subgroup):
        for delta in (Fraction(1, 7), Fraction(1, 100), Fraction(3, 1000)):
            n_star = sample_complexity(subgroup, delta).n_star
            assert closed_form_beta0(subgroup, n_star) <= delta
            assert n_star == 0 or closed_form_beta0(subgroup, n_star - 1) > delta

    def test_tables_agree(self, subgroup):
        assert sample_complexity(subgroup, 0.01, use_tables=True) == sample_complexity(subgroup, 0.01)

    def test_out_of_search_range(self):
        with pytest.raises(RangeError):
            sample_complexity(SubgroupKind.TRIVIAL, 1e-30)

    def test_invalid_delta(self):
        with pytest.raises(ValueError):
            sample_complexity(SubgroupKind.TORUS, 0)

    def test_to_dict(self):
        assert sample_complexity(SubgroupKind.TRIVIAL, 0.05).to_dict() == {"delta": "1/20", "n_star": 3, "beta": "1/20"}


class TestScaling:
    def test_identity_slope(self):
        assert 0.30 <= scaling_fit(SubgroupKind.TRIVIAL) <= 0.36

    @pytest.mark.parametrize("kind", [SubgroupKind.TORUS, SubgroupKind.ORTHOGONAL])
    def test_symmetry_slopes(self, kind):
        assert 0.47 <= scaling_fit(kind) <= 0.53

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            scaling_fit(SubgroupKind.TORUS, [1e-3, 1e-4, 1e-5])
        with pytest.raises(ValueError):
            scaling_fit(SubgroupKind.TORUS, [1e-5, 1e-4, 1e-3, 1e-2])
        with pytest.raises(ValueError):
            scaling_fit(SubgroupKind.TORUS, [0.5, 1e-2, 1e-3, 1e-4])

    def test_growth_exponent(self):
        assert 2.7 <= growth_exponent() <= 3.0

    def test_growth_exponent_three_levels(self):
        slope = growth_exponent((64, 128), d=3)
        assert 7.4 <= slope <= 8.0
        assert slope > growth_exponent((64, 128))


class TestCrossValidation:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_exact_mode(self, subgroup, n):
        report = cross_validate(subgroup, n)
        assert report.passed
        assert report.method == "exact"
        assert report.stderr is None

    def test_report_json_uses_pass_key(self):
        payload = json.loads(cross_validate(SubgroupKind.TORUS, 2).to_json())
        assert payload["pass"] is True
        assert payload["analytic_exact"] == "1/4"
        assert "passed" not in payload

    def test_tolerance_carried_through(self):
        report = cross_validate(SubgroupKind.ORTHOGONAL, 2, eps=Fraction(1, 2))
        assert report.analytic == pytest.approx(1 / 6)
        assert report.passed

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            cross_validate(SubgroupKind.TORUS, 7)

    def test_monte_carlo_needs_shots(self):
        with pytest.raises(ValueError):
            cross_validate(SubgroupKind.TORUS, 1, ValidationMode.MONTE_CARLO, shots=500)

    @pytest.mark.slow
    @pytest.mark.parametrize("kind,n", [(SubgroupKind.TRIVIAL, 1), (SubgroupKind.TRIVIAL, 2), (SubgroupKind.TORUS, 2)])
    def test_monte_carlo_mode(self, kind, n):
        report = cross_validate(kind, n, ValidationMode.MONTE_CARLO, shots=100_000, rng=RngStream(11))
        assert report.passed
        assert report.shots == 100_000
        assert report.seed == 11
        assert report.stderr > 0

    def test_monte_carlo_size_guard(self):
        with pytest.raises(SizeGuardError):
            cross_validate(SubgroupKind.TORUS, 5, ValidationMode.MONTE_CARLO, shots=10_000)

    def test_jackknife_stderr(self):
        assert jackknife_stderr(np.array([1.0, 2.0, 3.0, 4.0])) == pytest.approx(np.sqrt(3.75))
        assert jackknife_stderr(np.full(20, 0.25)) == 0.0
        with pytest.raises(ValueError):
            jackknife_stderr(np.array([0.5]))

    def test_jackknife_batches_from_environment(self, monkeypatch):
        monkeypatch.setenv("SYMTEST_JACKKNIFE_BATCHES", "8")
        assert MonteCarloConfig().jackknife_batches == 8
        monkeypatch.setenv("SYMTEST_JACKKNIFE_BATCHES", "1")
        with pytest.raises(ConfigurationError):
            MonteCarloConfig()

    def test_monte_carlo_tolerance_is_a_few_standard_errors(self):
        report = cross_validate(SubgroupKind.TORUS, 2, ValidationMode.MONTE_CARLO, shots=100_000, rng=RngStream(11))
        assert report.tolerance == pytest.approx(4 * report.stderr)
        assert report.tolerance < 0.2 * report.analytic

    def test_monte_carlo_rejects_wrong_analytic_value(self, mocker):
        mocker.patch("src.hypothesis_testing.validation.beta_optimal", return_value=Fraction(3, 10))
        report = cross_validate(SubgroupKind.TORUS, 2, ValidationMode.MONTE_CARLO, shots=100_000, rng=RngStream(11))
        assert report.analytic == pytest.approx(0.3)
        assert not report.passed
