"""Acceptance checks: every verification suite in its reduced configuration."""

import pytest

from src.harness import run_suite, suite_names


@pytest.mark.slow
@pytest.mark.parametrize("name", suite_names())
def test_fast_suite_passes(name):
    report = run_suite(name, fast=True)
    assert report.passed, "; ".join(f"{c.name}: {c.detail}" for c in report.failures)
    assert report.checks


@pytest.mark.slow
def test_suite_results_recheck():
    report = run_suite("coupling", fast=True)
    assert report.results
    assert all(result.recheck() for result in report.results)
