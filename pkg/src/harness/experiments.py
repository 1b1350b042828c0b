"""Seeded Monte Carlo experiments over replica substreams."""

import math
import time
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import __version__
from ..bounds import (
    eigenangle_deviation,
    eigenangle_tail,
    lipschitz_constant,
    mean_wp_bound,
    tail_bound,
)
from ..concurrency import run_replicas
from ..dpp import (
    BernoulliProfile,
    bernoulli_profile_power,
    kernel_for_group,
    power_count_moments,
    restriction_eigenvalues,
    sample_count_bernoulli,
)
from ..groups import (
    GroupFamily,
    GroupSpec,
    MatrixSample,
    compose_coupling,
    decompose_unitary,
    sample_haar,
    sample_special_unitary,
    stream_for,
)
from ..spectral import (
    AngleSet,
    counting_function,
    eigenangles,
    effective_power,
    nontrivial_counting_function,
    power_angles,
    sample_power_spectrum_rains,
)
from ..transport import TransportResult, angles_distance, spectra_distance
from ..utils.exceptions import UnsupportedExperimentError, ValidationError
from ..utils.logger import get_logger
from .models import BoundComparison, ExperimentConfig, ExperimentKind, ExperimentResult, Relation
from .stats import (
    binomial_fit_test,
    bonferroni,
    pair_difference_test,
    standard_error_of_variance,
    two_sample_count_test,
    uniformity_test,
)

logger = get_logger(__name__)

TWO_PI = 2.0 * math.pi
ROUND_TRIP_TOL = 1e-10
LIPSCHITZ_SLACK = 1e-8
RESOLVABLE_EVENTS = 10.0

# per-replica stream purposes
DIRECT, ALTERNATE, AUXILIARY = 0, 1, 2

Runner = Callable[[ExperimentConfig, Optional[int]], "_Outcome"]

ALL_FAMILIES = tuple(GroupFamily)
UNITARY_ONLY = (GroupFamily.UNITARY,)
UNITARY_TYPE = (GroupFamily.UNITARY, GroupFamily.SPECIAL_UNITARY)
COUNTABLE = (
    GroupFamily.UNITARY,
    GroupFamily.ORTHOGONAL,
    GroupFamily.SPECIAL_ORTHOGONAL,
    GroupFamily.NEG_ORTHOGONAL,
    GroupFamily.SYMPLECTIC,
)


class _Outcome:
    """Records, summary and comparisons gathered by one runner."""

    def __init__(self) -> None:
        self.records: List[Dict[str, Any]] = []
        self.summary: Dict[str, Any] = {}
        self.comparisons: List[BoundComparison] = []
        self.p_values: Dict[str, float] = {}

    def add_p_value(self, key: str, label: str, parameter: float, p_value: float) -> None:
        self.p_values[key] = float(p_value)
        # the significance level is fixed after all tests are known
        self.comparisons.append(
            BoundComparison(label, float(parameter), float(p_value), 0.0, Relation.ABOVE)
        )

    def finalize(self, alpha: float) -> None:
        tests = [c for c in self.comparisons if c.relation is Relation.ABOVE]
        level = bonferroni(alpha, len(tests))
        for comparison in tests:
            comparison.bound = level
        for comparison in self.comparisons:
            comparison.passed = comparison.evaluate()


def describe(values: Sequence[float]) -> Dict[str, float]:
    """Mean, variance (0 for a single value), min and max."""
    arr = np.asarray(values, dtype=float)
    return {
        "mean": float(arr.mean()),
        "variance": float(arr.var(ddof=1)) if arr.size > 1 else 0.0,
        "min": float(arr.min()),
        "max": float(arr.max()),
    }


def _binomial_slack(bound: float, replicas: int) -> float:
    b = min(bound, 1.0)
    return 3.0 * math.sqrt(b * (1.0 - b) / replicas)


def _replicas(config: ExperimentConfig, func: Callable[[int], Dict[str, Any]],
              max_workers: Optional[int]) -> List[Dict[str, Any]]:
    records = run_replicas(func, config.replicas, max_workers)
    for index, record in enumerate(records):
        record["replica"] = index
    return records


def _positive_thetas(config: ExperimentConfig) -> List[float]:
    return [theta for theta in config.theta_grid if theta > 0.0]


def _powered_angles(config: ExperimentConfig, sample: MatrixSample) -> AngleSet:
    return power_angles(eigenangles(sample), config.m)


def _distance(config: ExperimentConfig, sample: MatrixSample) -> TransportResult:
    return angles_distance(
        _powered_angles(config, sample), config.p, config.transport_method,
        config.discretization,
    )


def _distance_records(config: ExperimentConfig, max_workers: Optional[int]
                      ) -> List[Dict[str, Any]]:
    def replica(i: int) -> Dict[str, Any]:
        sample = sample_haar(config.group, stream_for(config.master_seed, i, DIRECT))
        result = _distance(config, sample)
        record: Dict[str, Any] = {
            "value": result.value,
            "lower": result.lower,
            "upper": result.upper,
        }
        if sample.coset is not None:
            record["coset"] = sample.coset.value
        return record

    return _replicas(config, replica, max_workers)


def _mean_distance(config: ExperimentConfig, max_workers: Optional[int]) -> _Outcome:
    outcome = _Outcome()
    n = config.group.matrix_size
    m_eff = effective_power(n, config.m)
    outcome.records = _distance_records(config, max_workers)
    values = [r["value"] for r in outcome.records]
    stats = describe(values)
    scale = math.sqrt(m_eff * (math.log(n / m_eff) + 1.0)) / n
    outcome.summary = dict(stats, rate_ratio=stats["mean"] / scale, effective_m=m_eff)
    cosets = sorted({r["coset"] for r in outcome.records if "coset" in r})
    if cosets:
        outcome.summary["by_coset"] = {
            c: describe([r["value"] for r in outcome.records if r.get("coset") == c])
            for c in cosets
        }

    sd = math.sqrt(stats["variance"])
    outcome.comparisons.append(BoundComparison(
        "mean_wp_bound", config.p, stats["mean"], mean_wp_bound(n, m_eff, config.p),
        Relation.AT_MOST, 3.0 * sd / math.sqrt(config.replicas),
    ))
    return outcome


def default_t_grid(n: int, m: int, p: float, replicas: int, points: int = 4) -> List[float]:
    """t values spread up to where the tail bound drops to 10/R."""
    if replicas <= RESOLVABLE_EVENTS:
        return []
    power = 2.0 if p <= 2.0 else 1.0 + 2.0 / p
    t_max = math.sqrt(24.0 * m * math.log(replicas / RESOLVABLE_EVENTS) / n ** power)
    return [t_max * (k + 1) / points for k in range(points)]


def _tail_probability(config: ExperimentConfig, max_workers: Optional[int]) -> _Outcome:
    outcome = _Outcome()
    n = config.group.matrix_size
    m_eff = effective_power(n, config.m)
    outcome.records = _distance_records(config, max_workers)
    values = np.array([r["value"] for r in outcome.records])
    stats = describe(values)
    t_grid = config.t_grid or default_t_grid(n, m_eff, config.p, config.replicas)

    curve = []
    for t in t_grid:
        empirical = float(np.mean(values >= stats["mean"] + t))
        bound = tail_bound(n, m_eff, config.p, t)
        curve.append({"t": t, "empirical": empirical, "bound": bound})
        if bound < RESOLVABLE_EVENTS / config.replicas:
            continue
        outcome.comparisons.append(BoundComparison(
            "tail_bound", t, empirical, bound, Relation.AT_MOST,
            _binomial_slack(bound, config.replicas),
        ))
    outcome.summary = dict(stats, tail_curve=curve, effective_m=m_eff)
    return outcome


def _count_profiles(spec: GroupSpec, m: int, thetas: Sequence[float]
                    ) -> Dict[str, List[BernoulliProfile]]:
    """Bernoulli profiles per θ, keyed by the family whose kernel applies."""
    if spec.family is GroupFamily.UNITARY:
        return {spec.family.value: [bernoulli_profile_power(spec.rank, m, t) for t in thetas]}
    if m != 1:
        raise ValidationError(f"count_distribution for {spec.label} needs m = 1")
    if spec.family is GroupFamily.ORTHOGONAL:
        families = [GroupFamily.SPECIAL_ORTHOGONAL, GroupFamily.NEG_ORTHOGONAL]
    else:
        families = [spec.family]
    profiles = {}
    for family in families:
        kernel = kernel_for_group(GroupSpec(family, spec.rank))
        profiles[family.value] = [restriction_eigenvalues(kernel, t) for t in thetas]
    return profiles


def _count(angle_set: AngleSet, theta: float) -> int:
    if angle_set.is_paired:
        return nontrivial_counting_function(angle_set, theta)
    return counting_function(angle_set, theta)


def _count_distribution(config: ExperimentConfig, max_workers: Optional[int]) -> _Outcome:
    outcome = _Outcome()
    spec = config.group
    thetas = _positive_thetas(config)
    profiles = _count_profiles(spec, config.m, thetas)

    def replica(i: int) -> Dict[str, Any]:
        sample = sample_haar(spec, stream_for(config.master_seed, i, DIRECT))
        angle_set = _powered_angles(config, sample)
        key = sample.effective_family.value
        bern_rng = stream_for(config.master_seed, i, ALTERNATE)
        return {
            "coset": key,
            "direct": [_count(angle_set, t) for t in thetas],
            "bernoulli": [
                sample_count_bernoulli(profile, bern_rng.spawn(k))
                for k, profile in enumerate(profiles[key])
            ],
        }

    outcome.records = _replicas(config, replica, max_workers)
    summary: Dict[str, Any] = {}
    for key, family_profiles in profiles.items():
        rows = [r for r in outcome.records if r["coset"] == key]
        if not rows:
            continue
        per_theta = []
        for k, (theta, profile) in enumerate(zip(thetas, family_profiles)):
            direct = [r["direct"][k] for r in rows]
            bernoulli = [r["bernoulli"][k] for r in rows]
            stats = describe(direct)
            per_theta.append(dict(stats, theta=theta, mean_count=profile.mean,
                                  variance_count=profile.variance, replicas=len(rows)))
            p_value = two_sample_count_test(direct, bernoulli)
            outcome.add_p_value(f"count_equivalence[{key}]@{theta:.6g}",
                                f"count_equivalence[{key}]", theta, p_value)
            slack = 4.0 * math.sqrt(profile.variance / len(rows)) + 1e-9
            outcome.comparisons.append(BoundComparison(
                f"count_mean[{key}]", theta, abs(stats["mean"] - profile.mean), 0.0,
                Relation.AT_MOST, slack,
            ))
        summary[key] = per_theta
    if spec.family is GroupFamily.ORTHOGONAL:
        summary["mixed"] = [
            dict(describe([r["direct"][k] for r in outcome.records]), theta=theta)
            for k, theta in enumerate(thetas)
        ]
    outcome.summary = summary
    return outcome


def _rains_equivalence(config: ExperimentConfig, max_workers: Optional[int]) -> _Outcome:
    outcome = _Outcome()
    n, m = config.group.rank, config.m
    thetas = _positive_thetas(config)
    iid = m >= n

    def replica(i: int) -> Dict[str, Any]:
        sample = sample_haar(config.group, stream_for(config.master_seed, i, DIRECT))
        direct = _powered_angles(config, sample)
        blocks = sample_power_spectrum_rains(n, m, stream_for(config.master_seed, i, ALTERNATE))
        record: Dict[str, Any] = {
            "direct": [counting_function(direct, t) for t in thetas],
            "blocks": [counting_function(blocks, t) for t in thetas],
        }
        if iid:
            record["angles"] = [float(a) for a in direct.angles]
            record["half_count"] = counting_function(direct, math.pi)
        return record

    outcome.records = _replicas(config, replica, max_workers)
    per_theta = []
    for k, theta in enumerate(thetas):
        direct = [r["direct"][k] for r in outcome.records]
        blocks = [r["blocks"][k] for r in outcome.records]
        per_theta.append({"theta": theta, "direct": describe(direct), "blocks": describe(blocks)})
        outcome.add_p_value(f"rains_equivalence@{theta:.6g}", "rains_equivalence", theta,
                            two_sample_count_test(direct, blocks))
    outcome.summary = {"per_theta": per_theta, "effective_m": effective_power(n, m)}

    if iid:
        angle_sets = [r["angles"] for r in outcome.records]
        outcome.add_p_value("iid_uniformity", "iid_uniformity", 0.0,
                            uniformity_test(np.concatenate(angle_sets)))
        outcome.add_p_value("iid_binomial_half", "iid_binomial_half", math.pi,
                            binomial_fit_test([r["half_count"] for r in outcome.records], n, 0.5))
        if n >= 2:
            rng = stream_for(config.master_seed, 0, AUXILIARY)
            outcome.add_p_value("iid_pair_difference", "iid_pair_difference", 0.0,
                                pair_difference_test(angle_sets, rng))
    return outcome


def _variance_scan(config: ExperimentConfig, max_workers: Optional[int]) -> _Outcome:
    outcome = _Outcome()
    n = config.group.rank
    thetas = list(config.theta_grid)

    def replica(i: int) -> Dict[str, Any]:
        sample = sample_haar(config.group, stream_for(config.master_seed, i, DIRECT))
        angle_set = _powered_angles(config, sample)
        return {"counts": [counting_function(angle_set, t) for t in thetas]}

    outcome.records = _replicas(config, replica, max_workers)
    per_theta = []
    for k, theta in enumerate(thetas):
        counts = [r["counts"][k] for r in outcome.records]
        stats = describe(counts)
        moments = power_count_moments(n, config.m, theta)
        se = standard_error_of_variance(counts)
        per_theta.append(dict(stats, theta=theta, block_variance=moments.variance,
                              variance_bound=moments.variance_bound, variance_se=se))
        outcome.comparisons.append(BoundComparison(
            "block_variance_bound", theta, moments.variance, moments.variance_bound,
        ))
        if config.replicas > 1:
            outcome.comparisons.append(BoundComparison(
                "variance_agreement", theta, abs(stats["variance"] - moments.variance), 0.0,
                Relation.AT_MOST, 3.0 * se + 1e-12,
            ))
        outcome.comparisons.append(BoundComparison(
            "mean_agreement", theta, abs(stats["mean"] - moments.mean), 0.0,
            Relation.AT_MOST, 4.0 * math.sqrt(moments.variance / config.replicas) + 1e-9,
        ))
    outcome.summary = {"per_theta": per_theta, "effective_m": effective_power(n, config.m)}
    return outcome


def _coupling_check(config: ExperimentConfig, max_workers: Optional[int]) -> _Outcome:
    outcome = _Outcome()
    n = config.group.rank
    thetas = _positive_thetas(config)

    def replica(i: int) -> Dict[str, Any]:
        direct = sample_haar(config.group, stream_for(config.master_seed, i, DIRECT))
        stream = stream_for(config.master_seed, i, ALTERNATE)
        phase = float(stream.spawn(0).uniform(0.0, TWO_PI / n))
        composed = compose_coupling(phase, sample_special_unitary(n, stream.spawn(1)))
        theta, v = decompose_unitary(direct)
        rebuilt = compose_coupling(theta, v)
        direct_angles = _powered_angles(config, direct)
        composed_angles = _powered_angles(config, composed)
        return {
            "direct": [counting_function(direct_angles, t) for t in thetas],
            "composed": [counting_function(composed_angles, t) for t in thetas],
            "phase": theta,
            "round_trip_error": float(np.max(np.abs(rebuilt.entries - direct.entries))),
        }

    outcome.records = _replicas(config, replica, max_workers)
    for k, theta in enumerate(thetas):
        outcome.add_p_value(
            f"coupling_equivalence@{theta:.6g}", "coupling_equivalence", theta,
            two_sample_count_test([r["direct"][k] for r in outcome.records],
                                  [r["composed"][k] for r in outcome.records]),
        )
    worst = max(r["round_trip_error"] for r in outcome.records)
    outcome.comparisons.append(BoundComparison(
        "round_trip_error", 0.0, worst, ROUND_TRIP_TOL,
    ))
    phases = [r["phase"] for r in outcome.records]
    outcome.add_p_value("phase_uniformity", "phase_uniformity", TWO_PI / n,
                        uniformity_test(phases, period=TWO_PI / n))
    outcome.summary = {"round_trip_error": worst, "phase": describe(phases)}
    return outcome


def _eigenangle_concentration(config: ExperimentConfig, max_workers: Optional[int]
                              ) -> _Outcome:
    outcome = _Outcome()
    n = config.group.rank
    m_eff = effective_power(n, config.m)
    indices = config.eigen_indices or sorted({1, max(1, n // 2), n})
    u_grid = config.u_grid or [0.5, 1.0, 2.0, 3.0, 4.0]

    def replica(i: int) -> Dict[str, Any]:
        sample = sample_haar(config.group, stream_for(config.master_seed, i, DIRECT))
        angles = _powered_angles(config, sample).angles
        return {"deviations": [abs(float(angles[j - 1]) - TWO_PI * j / n) for j in indices]}

    outcome.records = _replicas(config, replica, max_workers)
    curves: Dict[str, List[Dict[str, float]]] = {}
    for k, j in enumerate(indices):
        deviations = np.array([r["deviations"][k] for r in outcome.records])
        curve = []
        for u in u_grid:
            empirical = float(np.mean(deviations > eigenangle_deviation(n, u)))
            bound = eigenangle_tail(n, m_eff, u)
            curve.append({"u": u, "empirical": empirical, "bound": bound})
            outcome.comparisons.append(BoundComparison(
                f"eigenangle_tail[j={j}]", u, empirical, bound, Relation.AT_MOST,
                _binomial_slack(bound, config.replicas),
            ))
        curves[str(j)] = curve
    outcome.summary = {"curves": curves, "indices": list(indices), "effective_m": m_eff}
    return outcome


def _lipschitz_check(config: ExperimentConfig, max_workers: Optional[int]) -> _Outcome:
    outcome = _Outcome()
    n = config.group.matrix_size
    constant = lipschitz_constant(n, config.p)

    def replica(i: int) -> Dict[str, Any]:
        a = sample_haar(config.group, stream_for(config.master_seed, i, DIRECT))
        b = sample_haar(config.group, stream_for(config.master_seed, i, ALTERNATE))
        distance = spectra_distance(_powered_angles(config, a), _powered_angles(config, b),
                                    config.p)
        diff = (np.linalg.matrix_power(a.entries, config.m)
                - np.linalg.matrix_power(b.entries, config.m))
        hs = float(np.linalg.norm(diff))
        return {"distance": distance.value, "hilbert_schmidt": hs,
                "excess": distance.value - constant * hs}

    outcome.records = _replicas(config, replica, max_workers)
    worst = max(r["excess"] for r in outcome.records)
    outcome.comparisons.append(BoundComparison(
        "lipschitz_excess", config.p, worst, 0.0, Relation.AT_MOST, LIPSCHITZ_SLACK,
    ))
    summary: Dict[str, Any] = {"lipschitz_constant": constant, "max_excess": worst}
    if config.p <= 2.0:
        identity = AngleSet.from_angles(np.zeros(n))
        negated = AngleSet.from_angles(np.full(n, math.pi))
        value = spectra_distance(identity, negated, config.p).value
        predicted = constant * 2.0 * math.sqrt(n)
        summary["equality_case"] = {"distance": value, "predicted": predicted}
        outcome.comparisons.append(BoundComparison(
            "hoffman_wielandt_equality", config.p, abs(value - predicted), 0.0,
            Relation.AT_MOST, LIPSCHITZ_SLACK,
        ))
    outcome.summary = summary
    return outcome


RUNNERS: Dict[ExperimentKind, Tuple[Runner, Tuple[GroupFamily, ...]]] = {
    ExperimentKind.MEAN_DISTANCE: (_mean_distance, ALL_FAMILIES),
    ExperimentKind.TAIL_PROBABILITY: (_tail_probability, UNITARY_TYPE),
    ExperimentKind.COUNT_DISTRIBUTION: (_count_distribution, COUNTABLE),
    ExperimentKind.RAINS_EQUIVALENCE: (_rains_equivalence, UNITARY_ONLY),
    ExperimentKind.EIGENANGLE_CONCENTRATION: (_eigenangle_concentration, UNITARY_ONLY),
    ExperimentKind.VARIANCE_SCAN: (_variance_scan, UNITARY_ONLY),
    ExperimentKind.COUPLING_CHECK: (_coupling_check, UNITARY_ONLY),
    ExperimentKind.LIPSCHITZ_CHECK: (_lipschitz_check, ALL_FAMILIES),
}


def supported_pairs() -> List[Tuple[str, str]]:
    return [
        (kind.value, family.value)
        for kind, (_, families) in RUNNERS.items()
        for family in families
    ]


def run_experiment(config: ExperimentConfig, max_workers: Optional[int] = None
                   ) -> ExperimentResult:
    """Run every replica of ``config`` and compare the aggregates with their bounds.

    Replica i draws only from substreams keyed on (master_seed, i), and all
    reductions run in replica order, so the result does not depend on
    ``max_workers``.
    """
    runner, families = RUNNERS[config.experiment]
    if config.group.family not in families:
        raise UnsupportedExperimentError(
            config.experiment.value, config.group.label, supported_pairs()
        )

    logger.info(
        f"Running {config.experiment.value} on {config.group.label} "
        f"(m={config.m}, p={config.p:g}, R={config.replicas}, seed={config.master_seed})"
    )
    started = time.perf_counter()
    outcome = runner(config, max_workers)
    outcome.finalize(config.alpha)
    elapsed = time.perf_counter() - started

    result = ExperimentResult(
        config=config,
        records=outcome.records,
        summary=outcome.summary,
        comparisons=outcome.comparisons,
        p_values=outcome.p_values,
        wall_time=elapsed,
        provenance={"master_seed": config.master_seed, "code_version": __version__},
    )
    failed = len(result.failures())
    logger.info(
        f"{config.experiment.value} finished in {elapsed:.2f}s: "
        f"{len(result.comparisons) - failed}/{len(result.comparisons)} checks passed"
    )
    return result
