"""Tests for verification suites and reports."""

import io

import pytest

from src.harness import (
    BoundComparison,
    ExperimentConfig,
    ExperimentResult,
    SuiteCheck,
    VerificationReport,
    run_suite,
    suite_names,
)
from src.utils.exceptions import ValidationError


def result_with(*comparisons):
    return ExperimentResult(config=ExperimentConfig("mean_distance", "u(2)", replicas=1),
                            comparisons=list(comparisons))


class TestVerificationReport:
    def test_empty_report_passes(self):
        report = VerificationReport(suite="means")
        assert report.passed
        assert report.failures == []

    def test_add(self):
        report = VerificationReport(suite="means")
        report.add("ok", True)
        report.add("bad", False, "off by one")
        assert not report.passed
        assert report.failures == [SuiteCheck("bad", False, "off by one")]

    def test_add_result_passing(self):
        report = VerificationReport(suite="means")
        report.add_result("exp", result_with(BoundComparison.check("b", 1.0, 0.5, 1.0)))
        assert report.passed
        assert report.checks[0].detail == "1 comparisons"
        assert len(report.results) == 1

    def test_add_result_lists_failures(self):
        report = VerificationReport(suite="means")
        report.add_result("exp", result_with(BoundComparison.check("tail", 0.5, 2.0, 1.0)))
        assert not report.passed
        assert "tail@0.5: 2 vs 1" in report.checks[0].detail

    def test_print_report(self):
        report = VerificationReport(suite="transport", fast=True)
        report.add("grid_bound", True, "fine")
        report.add("shift", False)
        buffer = io.StringIO()
        report.print_report(file=buffer)
        text = buffer.getvalue()
        assert "VERIFICATION SUITE: transport (fast)" in text
        assert "[PASS] grid_bound" in text
        assert "[FAIL] shift" in text
        assert "Failures: 1" in text
        assert "All checks passed" not in text


class TestRunSuite:
    def test_suite_names(self):
        assert suite_names() == ["means", "variance", "rains", "bernoulli", "transport",
                                 "concentration", "coupling", "lipschitz"]

    def test_unknown_suite(self):
        with pytest.raises(ValidationError, match="Unknown suite"):
            run_suite("nope")

    def test_transport_fast(self):
        report = run_suite("transport", fast=True)
        assert report.fast
        assert [c.name for c in report.checks] == [
            "grid_bound", "shift_dominates_exact", "single_atom_distance",
            "single_atom_convergence",
        ]
        assert report.passed, report.failures
