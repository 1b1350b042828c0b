"""Verification suites: named batches of deterministic checks and seeded experiments."""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from ..core.config import DEFAULT_ALPHA, SUITE_BUDGETS
from ..dpp import (
    KernelFamily,
    KernelSpec,
    mean_count,
    power_count_moments,
    restriction_eigenvalues,
    unitary_variance_bound,
    variance_count,
)
from ..groups import stream_for
from ..transport import (
    CircularMeasure,
    grid_measure,
    monotone_shift_estimate,
    wasserstein_empirical_uniform,
)
from ..utils.exceptions import ValidationError
from ..utils.logger import get_logger
from .experiments import run_experiment
from .models import ExperimentConfig, ExperimentKind, ExperimentResult
from .stats import bonferroni

logger = get_logger(__name__)

TWO_PI = 2.0 * math.pi
SUITE_SEED = 1729
MEAN_IDENTITY_TOL = 1e-9
PROFILE_VARIANCE_TOL = 1e-6
SHIFT_TOL = 1e-9
SINGLE_ATOM_TOL = 2e-3
RATIO_BAND = 3.0


@dataclass
class SuiteCheck:
    """One named pass/fail line of a verification report."""

    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    """Outcome of one suite run."""

    suite: str
    fast: bool = False
    checks: List[SuiteCheck] = field(default_factory=list)
    results: List[ExperimentResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(SuiteCheck(name, bool(passed), detail))

    def add_result(self, name: str, result: ExperimentResult) -> None:
        self.results.append(result)
        failures = result.failures()
        detail = "; ".join(
            f"{c.label}@{c.parameter:.4g}: {c.empirical:.4g} vs {c.bound:.4g}" for c in failures
        )
        self.add(name, not failures, detail or f"{len(result.comparisons)} comparisons")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[SuiteCheck]:
        return [check for check in self.checks if not check.passed]

    def print_report(self, file: Optional[TextIO] = None) -> None:
        """Print formatted report."""
        mode = " (fast)" if self.fast else ""
        print("=" * 80, file=file)
        print(f"VERIFICATION SUITE: {self.suite}{mode}", file=file)
        print("=" * 80, file=file)
        print(f"\nChecks: {len(self.checks)}", file=file)
        print(f"Failures: {len(self.failures)}", file=file)

        for check in self.checks:
            mark = "PASS" if check.passed else "FAIL"
            print(f"\n[{mark}] {check.name}", file=file)
            if check.detail:
                print(f"   {check.detail}", file=file)

        if self.passed:
            print("\n✅ All checks passed!", file=file)
        print("\n" + "=" * 80, file=file)


def _theta_grid(points: int, limit: float) -> List[float]:
    return [limit * (k + 1) / points for k in range(points)]


def _replicas(fast: bool, key: str = "replicas") -> int:
    return SUITE_BUDGETS[f"fast_{key}" if fast else key]


def _experiment(kind: ExperimentKind, group: str, alpha: float, **fields: object
                ) -> ExperimentConfig:
    return ExperimentConfig.from_dict(
        dict(fields, experiment=kind, group=group, master_seed=SUITE_SEED, alpha=alpha)
    )


def _means_suite(report: VerificationReport) -> None:
    fast = report.fast
    sizes = [1, 4, 16] if fast else [1, 2, 4, 8, 16, 32, 64]
    grid = _theta_grid(8 if fast else 32, TWO_PI)
    worst = 0.0
    for n in sizes:
        kernel = KernelSpec(KernelFamily.UNITARY, n)
        for theta in grid:
            worst = max(worst, abs(restriction_eigenvalues(kernel, theta).mean
                                   - n * theta / TWO_PI))
    report.add("unitary_mean_identity", worst <= MEAN_IDENTITY_TOL, f"max error {worst:.3e}")

    half_grid = _theta_grid(8 if fast else 32, math.pi)
    ranks = [1, 2, 8] if fast else [1, 2, 4, 8, 16, 32, 64]
    for family in (KernelFamily.SO_EVEN, KernelFamily.SO_ODD, KernelFamily.SO_ODD_NEG,
                   KernelFamily.SYMPLECTIC):
        worst = 0.0
        for n in ranks:
            kernel = KernelSpec(family, n)
            for theta in half_grid:
                worst = max(worst, abs(mean_count(kernel, theta) - n * theta / math.pi))
        report.add(f"mean_near_linear[{family.value}]", worst < 1.0, f"max deviation {worst:.4f}")

    pairs = [(8, 1), (16, 2)] if fast else [(16, 1), (32, 1), (32, 4), (64, 8)]
    replicas = _replicas(fast, "mean_distance_replicas")
    alpha = bonferroni(DEFAULT_ALPHA, len(pairs))
    ratios = []
    for n, m in pairs:
        config = _experiment(ExperimentKind.MEAN_DISTANCE, f"u({n})", alpha, m=m, p=1.0,
                             replicas=replicas, discretization=32 * n)
        result = run_experiment(config)
        ratios.append(result.summary["rate_ratio"])
        report.add_result(f"mean_distance[N={n}, m={m}]", result)
    spread = max(ratios) / min(ratios)
    report.add("rate_ratio_band", spread <= RATIO_BAND,
               f"ratios {', '.join(f'{r:.3f}' for r in ratios)} (spread {spread:.2f})")


def _variance_suite(report: VerificationReport) -> None:
    fast = report.fast
    sizes = [2 ** k for k in range(1, 7 if fast else 10)]
    grid = _theta_grid(6 if fast else 16, TWO_PI)
    worst_excess, worst_gap = -math.inf, 0.0
    for n in sizes:
        kernel = KernelSpec(KernelFamily.UNITARY, n)
        for theta in grid:
            variance = variance_count(kernel, theta)
            worst_excess = max(worst_excess, variance - unitary_variance_bound(n))
            if n <= 64:
                profile = restriction_eigenvalues(kernel, theta)
                worst_gap = max(worst_gap, abs(profile.variance - variance))
    report.add("unitary_variance_bound", worst_excess <= 0.0,
               f"max(variance - (log N + 1)) = {worst_excess:.4f}")
    report.add("profile_variance_agreement", worst_gap <= PROFILE_VARIANCE_TOL,
               f"max |Σλ(1-λ) - double integral| = {worst_gap:.3e}")

    limit = 16 if fast else 64
    power_grid = _theta_grid(4 if fast else 8, TWO_PI)
    worst_excess = -math.inf
    for n in range(1, limit + 1):
        for m in range(1, n + 1):
            for theta in power_grid:
                moments = power_count_moments(n, m, theta)
                worst_excess = max(worst_excess, moments.variance - moments.variance_bound)
    report.add("power_variance_bound", worst_excess <= 0.0,
               f"max(block variance - m(log(N/m)+1)) = {worst_excess:.4f}")

    n, m = (8, 2) if fast else (32, 4)
    config = _experiment(ExperimentKind.VARIANCE_SCAN, f"u({n})", DEFAULT_ALPHA, m=m,
                         replicas=_replicas(fast), theta_grid=[math.pi / 2, math.pi])
    report.add_result(f"variance_scan[N={n}, m={m}]", run_experiment(config))


def _rains_suite(report: VerificationReport) -> None:
    fast = report.fast
    pairs: Sequence[Tuple[int, int]] = [(6, 2), (8, 4)] if fast else [(6, 2), (8, 2), (8, 4),
                                                                      (9, 3)]
    alpha = bonferroni(DEFAULT_ALPHA, len(pairs) + 1)
    for n, m in pairs:
        config = _experiment(ExperimentKind.RAINS_EQUIVALENCE, f"u({n})", alpha, m=m,
                             replicas=_replicas(fast), theta_grid=[math.pi / 2, math.pi])
        report.add_result(f"rains_equivalence[N={n}, m={m}]", run_experiment(config))
    config = _experiment(ExperimentKind.RAINS_EQUIVALENCE, "u(8)", alpha, m=8,
                         replicas=200 if fast else 500, theta_grid=[math.pi])
    report.add_result("iid_extreme[N=8, m=8]", run_experiment(config))


def _bernoulli_suite(report: VerificationReport) -> None:
    fast = report.fast
    groups = ["u(8)", "so(8)", "so-(7)", "sp(4)"] if fast else [
        "u(8)", "u(16)", "so(8)", "so(9)", "so-(7)", "so-(8)", "sp(4)", "sp(8)", "o(6)",
    ]
    alpha = bonferroni(DEFAULT_ALPHA, len(groups))
    for group in groups:
        config = _experiment(ExperimentKind.COUNT_DISTRIBUTION, group, alpha,
                             replicas=_replicas(fast),
                             theta_grid=[math.pi / 4, math.pi / 2, math.pi])
        report.add_result(f"bernoulli_counts[{group}]", run_experiment(config))


def _transport_suite(report: VerificationReport) -> None:
    fast = report.fast
    worst = -math.inf
    for n in ([2, 4, 8] if fast else [2, 4, 8, 16, 64]):
        k = 64 * n
        for p in (1.0, 2.0):
            value = wasserstein_empirical_uniform(grid_measure(n), p, k).value
            worst = max(worst, value - (math.pi / n + TWO_PI / k))
    report.add("grid_bound", worst <= 0.0, f"max(W_p - π/N - 2π/K) = {worst:.3e}")

    instances = 20 if fast else 100
    worst = -math.inf
    for i in range(instances):
        rng = stream_for(SUITE_SEED, i).generator
        atoms = int(rng.integers(1, 13))
        measure = CircularMeasure.equal_weights(rng.uniform(0.0, TWO_PI, atoms))
        for p in (1.0, 2.0):
            k = 8 * atoms
            exact = wasserstein_empirical_uniform(measure, p, k).value
            shift = monotone_shift_estimate(measure, p, k).value
            worst = max(worst, exact - shift)
    report.add("shift_dominates_exact", worst <= SHIFT_TOL,
               f"max(exact - shift) over {instances} instances = {worst:.3e}")

    single = CircularMeasure.equal_weights([0.0])
    errors = {}
    for k in (512, 1024):
        errors[k] = abs(wasserstein_empirical_uniform(single, 1.0, k).value - 4.0 / math.pi)
    report.add("single_atom_distance", errors[1024] <= SINGLE_ATOM_TOL,
               f"|W_1 - 4/π| = {errors[1024]:.3e} at K=1024")
    report.add("single_atom_convergence", errors[1024] <= 0.5 * errors[512] + 1e-12,
               f"error {errors[512]:.3e} at K=512, {errors[1024]:.3e} at K=1024")


def _concentration_suite(report: VerificationReport) -> None:
    fast = report.fast
    n = 8 if fast else 32
    replicas = _replicas(fast)
    for m in (1, 4):
        config = _experiment(ExperimentKind.TAIL_PROBABILITY, f"u({n})", DEFAULT_ALPHA, m=m,
                             p=1.0, replicas=replicas, discretization=16 * n)
        report.add_result(f"tail_probability[N={n}, m={m}]", run_experiment(config))
    config = _experiment(ExperimentKind.EIGENANGLE_CONCENTRATION, f"u({n})", DEFAULT_ALPHA,
                         m=1, replicas=replicas, eigen_indices=[1, n // 2, n],
                         u_grid=[0.5, 1.0, 2.0, 3.0, 4.0])
    report.add_result(f"eigenangle_concentration[N={n}]", run_experiment(config))


def _coupling_suite(report: VerificationReport) -> None:
    config = _experiment(ExperimentKind.COUPLING_CHECK, "u(6)", DEFAULT_ALPHA,
                         replicas=_replicas(report.fast),
                         theta_grid=[math.pi / 2, math.pi, 3 * math.pi / 2])
    report.add_result("coupling[N=6]", run_experiment(config))


def _lipschitz_suite(report: VerificationReport) -> None:
    fast = report.fast
    sizes = [4, 8] if fast else [4, 16, 32]
    for n in sizes:
        for p in (1.0, 2.0, 4.0):
            config = _experiment(ExperimentKind.LIPSCHITZ_CHECK, f"u({n})", DEFAULT_ALPHA,
                                 p=p, replicas=20 if fast else 200)
            report.add_result(f"lipschitz[N={n}, p={p:g}]", run_experiment(config))


SUITES: Dict[str, Callable[[VerificationReport], None]] = {
    "means": _means_suite,
    "variance": _variance_suite,
    "rains": _rains_suite,
    "bernoulli": _bernoulli_suite,
    "transport": _transport_suite,
    "concentration": _concentration_suite,
    "coupling": _coupling_suite,
    "lipschitz": _lipschitz_suite,
}


def run_suite(name: str, fast: bool = False) -> VerificationReport:
    """Run the named suite; ``fast`` shrinks sizes and replica budgets."""
    if name not in SUITES:
        raise ValidationError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = VerificationReport(suite=name, fast=fast)
    logger.info(f"Running suite {name}{' (fast)' if fast else ''}")
    SUITES[name](report)
    logger.info(f"Suite {name}: {len(report.checks) - len(report.failures)}/"
                f"{len(report.checks)} checks passed")
    return report


def suite_names() -> List[str]:
    return list(SUITES)

