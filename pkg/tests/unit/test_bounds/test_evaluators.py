"""Tests for the bound evaluators."""

import math

import numpy as np
import pytest

from src.bounds import (
    PROOF_EXPLICIT,
    BoundQuery,
    ConstantMode,
    LsiMetric,
    as_rate,
    bernstein_tail,
    concentration_bound,
    EVALUATORS,
    derived_tail_bound,
    eigenangle_center,
    eigenangle_deviation,
    eigenangle_moment_bound,
    eigenangle_tail,
    evaluate,
    evaluate_all,
    lipschitz_constant,
    log_factor,
    lsi_constant,
    mean_wp_bound,
    power_variance_bound,
    rate_exponent,
    tail_bound,
)
from src.utils.exceptions import MissingFieldError, ValidationError


class TestLogFactor:
    def test_values(self):
        assert log_factor(8, 2) == pytest.approx(2 * (math.log(4) + 1))
        assert log_factor(5, 5) == pytest.approx(5.0)
        assert power_variance_bound(16, 1) == pytest.approx(math.log(16) + 1)

    def test_power_above_rank(self):
        with pytest.raises(ValidationError, match="m <= N"):
            log_factor(4, 5)


class TestBernsteinTail:
    def test_quadratic_regime(self):
        assert bernstein_tail(1.0, 1.0) == pytest.approx(2 * math.exp(-0.25))

    def test_linear_regime(self):
        assert bernstein_tail(10.0, 1.0) == pytest.approx(2 * math.exp(-5.0))

    def test_zero_variance(self):
        assert bernstein_tail(2.0, 0.0) == pytest.approx(2 * math.exp(-1.0))

    def test_t_must_be_positive(self):
        with pytest.raises(ValidationError):
            bernstein_tail(0.0, 1.0)


class TestEigenangleBounds:
    def test_tail(self):
        scale = math.log(16) + 1
        assert eigenangle_tail(16, 1, 2.0) == pytest.approx(4 * math.exp(-min(4 / scale, 2.0)))

    def test_tail_decreasing(self):
        values = [eigenangle_tail(32, 4, u) for u in (0.5, 1, 2, 4, 8)]
        assert values == sorted(values, reverse=True)

    def test_deviation(self):
        assert eigenangle_deviation(8, 1.0) == pytest.approx(math.pi / 2)

    def test_moment_bound_p1(self):
        expected = 8 * (4 * math.pi / 16) * math.sqrt(math.log(16) + 1)
        assert eigenangle_moment_bound(16, 1, 1.0) == pytest.approx(expected)

    def test_moment_bound_large_p_finite(self):
        assert math.isfinite(eigenangle_moment_bound(1024, 1, 40.0))


class TestMeanWpBound:
    def test_proof_explicit_p1(self):
        root = math.sqrt(math.log(32) + 1)
        expected = 8 * (4 * math.pi / 32) * root + math.pi / 32
        assert mean_wp_bound(32, 1, 1.0) == pytest.approx(expected)
        assert mean_wp_bound(32, 1, 1.0, PROOF_EXPLICIT) == pytest.approx(expected)

    def test_proof_explicit_p2(self):
        root = math.sqrt(2 * (math.log(16) + 1))
        expected = math.sqrt(16) * (4 * math.pi / 32) * root + math.pi / 32
        assert mean_wp_bound(32, 2, 2.0) == pytest.approx(expected)

    def test_absolute_constant(self):
        root = math.sqrt(4 * (math.log(16) + 1))
        assert mean_wp_bound(64, 4, 3.0, ConstantMode.absolute(2.0)) == pytest.approx(
            2.0 * 3.0 * root / 64)

    def test_negative_constant_rejected(self):
        with pytest.raises(ValidationError):
            ConstantMode.absolute(-1.0)

    def test_mode_flags(self):
        assert PROOF_EXPLICIT.is_proof_explicit
        assert not ConstantMode.absolute(1.0).is_proof_explicit


class TestTailBound:
    def test_small_p(self):
        assert tail_bound(16, 2, 1.0, 0.1) == pytest.approx(math.exp(-256 * 0.01 / 48))

    def test_large_p(self):
        expected = math.exp(-(16 ** 1.5) * 0.01 / 24)
        assert tail_bound(16, 1, 4.0, 0.1) == pytest.approx(expected)

    def test_zero_t_is_one(self):
        assert tail_bound(8, 1, 1.0, 0.0) == 1.0


class TestRates:
    @pytest.mark.parametrize("p, exponent", [(1.0, 1.0), (2.0, 1.0), (4.0, 0.75), (10.0, 0.6)])
    def test_rate_exponent(self, p, exponent):
        assert rate_exponent(p) == pytest.approx(exponent)

    def test_as_rate_with_constant(self):
        rate = math.sqrt(2 * math.log(64)) / 64 ** 0.75
        assert as_rate(64, 2, 4.0, c=3.0) == pytest.approx(3.0 * 4.0 * rate)

    def test_as_rate_explicit(self):
        rate = math.sqrt(math.log(64)) / 64
        assert as_rate(64, 1, 1.0) == pytest.approx(mean_wp_bound(64, 1, 1.0) + 5 * rate)

    def test_as_rate_needs_two(self):
        with pytest.raises(ValidationError):
            as_rate(1, 1, 1.0)


class TestConcentration:
    def test_lipschitz_constant(self):
        assert lipschitz_constant(16, 1.0) == pytest.approx(0.25)
        assert lipschitz_constant(16, 2.0) == pytest.approx(0.25)
        assert lipschitz_constant(16, 4.0) == pytest.approx(0.5)

    def test_lsi_constants(self):
        assert lsi_constant(12) == pytest.approx(0.5)
        assert lsi_constant(12, LsiMetric.GEODESIC) == pytest.approx(math.pi ** 2 / 8)

    def test_concentration_bound(self):
        assert concentration_bound(12, 0.5, 1.0) == pytest.approx(math.exp(-4.0))

    @pytest.mark.parametrize("args", [(0.0, 1.0, 1.0), (1.0, 0.0, 1.0), (1.0, 1.0, -1.0)])
    def test_concentration_validation(self, args):
        with pytest.raises(ValidationError):
            concentration_bound(*args)

    def test_derived_tail_bound(self):
        expected = concentration_bound(16 / 4, lipschitz_constant(16, 1.0), 0.2)
        assert derived_tail_bound(16, 2, 1.0, 0.2) == pytest.approx(expected)


class TestBoundQuery:
    def test_require_missing(self):
        with pytest.raises(MissingFieldError) as excinfo:
            BoundQuery(N=4).require("p", "mean_wp_bound")
        assert excinfo.value.field == "p"

    def test_present_drops_missing(self):
        assert BoundQuery(N=4, p=2.0).present() == {"N": 4, "p": 2.0}

    def test_evaluate_all_full_query(self):
        results = evaluate_all(BoundQuery(N=32, m=2, p=1.0, t=0.1, u=1.0, sigma_sq=2.0, L=1.0))
        assert set(results) == {
            "bernstein_tail", "lsi_constant", "lsi_constant_geodesic", "lipschitz_constant",
            "power_variance_bound", "eigenangle_tail", "eigenangle_deviation", "mean_wp_bound",
            "mean_wp_bound_c1", "eigenangle_moment_bound", "as_rate", "tail_bound",
            "derived_tail_bound", "concentration_bound",
        }
        assert results["mean_wp_bound"] == pytest.approx(mean_wp_bound(32, 2, 1.0))

    def test_evaluate_all_minimal_query(self):
        assert set(evaluate_all(BoundQuery(N=8))) == {"lsi_constant", "lsi_constant_geodesic"}

    def test_evaluate_all_empty(self):
        assert evaluate_all(BoundQuery()) == {}

    def test_evaluate_requires_fields(self):
        with pytest.raises(MissingFieldError) as excinfo:
            evaluate("tail_bound", BoundQuery(N=16, m=2, p=1.0))
        assert excinfo.value.field == "t"
        assert "tail_bound" in str(excinfo.value)

    def test_evaluate_matches_direct_call(self):
        query = BoundQuery(N=16, m=2, p=3.0, t=0.2)
        assert evaluate("tail_bound", query) == tail_bound(16, 2, 3.0, 0.2)
        assert evaluate("mean_wp_bound_c1", query) == mean_wp_bound(
            16, 2, 3.0, ConstantMode.absolute(1.0))

    def test_evaluate_unknown(self):
        with pytest.raises(ValidationError, match="Unknown bound evaluator"):
            evaluate("nope", BoundQuery(N=4))

    def test_evaluate_all_skips_only_missing(self):
        results = evaluate_all(BoundQuery(N=16, m=2, p=1.0))
        assert "tail_bound" not in results
        assert "mean_wp_bound" in results
        assert set(results) <= set(EVALUATORS)

    def test_evaluate_all_rejects_power_above_rank(self):
        with pytest.raises(ValidationError, match="m <= N"):
            evaluate_all(BoundQuery(N=4, m=9, p=1.0))

    def test_eigenangle_center(self):
        assert eigenangle_center(8, 2) == pytest.approx(math.pi / 2)
        assert evaluate_all(BoundQuery(N=8, j=8))["eigenangle_center"] == pytest.approx(
            2 * math.pi)
        with pytest.raises(ValidationError, match="j"):
            eigenangle_center(8, 9)


class TestBoundProperties:
    @pytest.mark.parametrize("n", [8, 64, 1000])
    def test_variance_bound_concave_in_power(self, n):
        values = np.array([power_variance_bound(n, m) for m in range(1, n + 1)])
        second_differences = values[2:] - 2 * values[1:-1] + values[:-2]
        assert np.all(second_differences <= 1e-12)

    @pytest.mark.parametrize("n", [4, 16, 128, 2048])
    @pytest.mark.parametrize("m", [1, 2, 4])
    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, 8.0, 40.0])
    def test_proof_explicit_dominates_unit_constant(self, n, m, p):
        assert mean_wp_bound(n, m, p) >= mean_wp_bound(n, m, p, ConstantMode.absolute(1.0))

    @pytest.mark.parametrize("p", [1.0, 2.0, 4.0, 10.0])
    @pytest.mark.parametrize("c", [None, 1.0])
    def test_as_rate_decreasing_in_n(self, p, c):
        values = np.array([as_rate(n, 2, p, c) for n in range(8, 4097)])
        assert np.all(np.diff(values) < 0)

    def test_tail_bound_branches_agree_at_two(self):
        for n, m, t in [(16, 1, 0.1), (64, 4, 0.05), (300, 7, 0.02)]:
            at_two = tail_bound(n, m, 2.0, t)
            assert at_two == math.exp(-(n ** (1.0 + 2.0 / 2.0)) * t * t / (24.0 * m))
            assert tail_bound(n, m, 2.0 + 1e-9, t) == pytest.approx(at_two, rel=1e-6)

    def test_as_rate_branches_agree_at_two(self):
        for n, m in [(16, 1), (64, 4)]:
            branch = math.sqrt(m * math.log(n)) / n
            assert as_rate(n, m, 2.0, c=1.5) == 1.5 * 2.0 * branch
            assert as_rate(n, m, 2.0 + 1e-9, c=1.5) == pytest.approx(3.0 * branch, rel=1e-6)

    @pytest.mark.parametrize("n, m", [(8, 1), (32, 4), (64, 2)])
    def test_tail_evaluators_in_range_and_nonincreasing(self, n, m):
        grid = [0.01, 0.05, 0.1, 0.5, 1.0]
        families = {
            "bernstein_tail": [bernstein_tail(10 * t, 2.0) for t in grid],
            "eigenangle_tail": [eigenangle_tail(n, m, 10 * t) for t in grid],
            "tail_bound": [tail_bound(n, m, 1.0, t) for t in grid],
            "tail_bound_p4": [tail_bound(n, m, 4.0, t) for t in grid],
            "derived_tail_bound": [derived_tail_bound(n, m, 1.0, t) for t in grid],
            "concentration_bound": [concentration_bound(n, 1.0, t) for t in grid],
        }
        for name, values in families.items():
            assert all(0.0 < v <= 4.0 for v in values), name
            assert all(a >= b for a, b in zip(values, values[1:])), name
