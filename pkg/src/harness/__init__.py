"""Monte Carlo experiments, statistical referees and verification suites."""

from .models import BoundComparison, ExperimentConfig, ExperimentKind, ExperimentResult, Relation
from .stats import (
    binomial_fit_test,
    merge_cells,
    pair_difference_test,
    two_sample_count_test,
    uniformity_test,
)
from .experiments import describe, run_experiment, supported_pairs
from .suites import SuiteCheck, VerificationReport, run_suite, suite_names

__all__ = [
    "BoundComparison",
    "ExperimentConfig",
    "ExperimentKind",
    "ExperimentResult",
    "Relation",
    "SuiteCheck",
    "VerificationReport",
    "binomial_fit_test",
    "describe",
    "merge_cells",
    "pair_difference_test",
    "run_experiment",
    "run_suite",
    "suite_names",
    "supported_pairs",
    "two_sample_count_test",
    "uniformity_test",
]
