"""Statistical referees for distributional identities."""

import math
from typing import List, Sequence

import numpy as np
import scipy.stats

from ..groups.rng import RngStream
from ..utils.exceptions import ValidationError
from ..utils.logger import get_logger
from ..utils.validators import require_positive_int, require_range

logger = get_logger(__name__)

MIN_EXPECTED = 5.0
PERMUTATION_THRESHOLD = 200
PERMUTATION_RESAMPLES = 9999
PERMUTATION_SEED = 20_240_611


def _as_counts(values: Sequence[int], name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.size == 0:
        raise ValidationError(f"{name} must not be empty")
    return arr.astype(np.int64).ravel()


def merge_cells(observed: np.ndarray, expected: np.ndarray, minimum: float = MIN_EXPECTED
                ) -> List[List[int]]:
    """Group adjacent columns so each group's expected count reaches ``minimum``.

    ``expected`` may be 1-D or 2-D (rows x columns); a group is closed once the
    smallest row's expected total is large enough, and an undersized tail is
    folded into the last group.
    """
    expected = np.atleast_2d(expected)
    groups: List[List[int]] = []
    current: List[int] = []
    running = np.zeros(expected.shape[0])
    for col in range(expected.shape[1]):
        current.append(col)
        running += expected[:, col]
        if running.min() >= minimum:
            groups.append(current)
            current, running = [], np.zeros(expected.shape[0])
    if current:
        if groups:
            groups[-1].extend(current)
        else:
            groups.append(current)
    return groups


def _contingency(a: np.ndarray, b: np.ndarray, support: np.ndarray) -> np.ndarray:
    return np.array([
        np.bincount(np.searchsorted(support, a), minlength=support.size),
        np.bincount(np.searchsorted(support, b), minlength=support.size),
    ])


def _chi_square_statistic(table: np.ndarray) -> float:
    table = table[:, table.sum(axis=0) > 0]
    if table.shape[1] < 2:
        return 0.0
    expected = np.outer(table.sum(axis=1), table.sum(axis=0)) / table.sum()
    return float(np.sum((table - expected) ** 2 / expected))


def two_sample_count_test(sample_a: Sequence[int], sample_b: Sequence[int]) -> float:
    """p-value for "both integer samples come from the same distribution".

    Chi-square on the pooled support with adjacent cells merged to expected
    count >= 5; permutation test on the same statistic when the pooled size is
    below 200.
    """
    a = _as_counts(sample_a, "sample_a")
    b = _as_counts(sample_b, "sample_b")
    support = np.unique(np.concatenate([a, b]))
    if support.size < 2:
        return 1.0

    if a.size + b.size < PERMUTATION_THRESHOLD:
        def statistic(x: np.ndarray, y: np.ndarray) -> float:
            return _chi_square_statistic(_contingency(x, y, support))

        result = scipy.stats.permutation_test(
            (a, b),
            statistic,
            permutation_type="independent",
            vectorized=False,
            n_resamples=PERMUTATION_RESAMPLES,
            alternative="greater",
            random_state=PERMUTATION_SEED,
        )
        return float(min(1.0, result.pvalue))

    table = _contingency(a, b, support)
    expected = np.outer(table.sum(axis=1), table.sum(axis=0)) / table.sum()
    groups = merge_cells(table, expected)
    if len(groups) < 2:
        return 1.0
    merged = np.column_stack([table[:, g].sum(axis=1) for g in groups])
    _, p_value, _, _ = scipy.stats.chi2_contingency(merged, correction=False)
    return float(p_value)


def uniformity_test(angles: Sequence[float], period: float = 2.0 * math.pi) -> float:
    """Kolmogorov-Smirnov p-value against the uniform law on [0, period)."""
    values = np.asarray(angles, dtype=float).ravel()
    if values.size == 0:
        raise ValidationError("angles must not be empty")
    if period <= 0:
        raise ValidationError("period must be positive")
    return float(scipy.stats.kstest(values / period, "uniform").pvalue)


def binomial_fit_test(counts: Sequence[int], n: int, prob: float) -> float:
    """Chi-square goodness of fit of integer counts to Binomial(n, prob)."""
    observed_values = _as_counts(counts, "counts")
    n = require_positive_int(n, "n")
    prob = require_range(prob, "prob", 0.0, 1.0)
    observed = np.bincount(observed_values, minlength=n + 1)
    if observed.size > n + 1:
        raise ValidationError(f"counts exceed n={n}")
    expected = observed_values.size * scipy.stats.binom.pmf(np.arange(n + 1), n, prob)
    groups = merge_cells(observed, expected)
    if len(groups) < 2:
        return 1.0
    obs = np.array([observed[g].sum() for g in groups], dtype=float)
    exp = np.array([expected[g].sum() for g in groups], dtype=float)
    exp *= obs.sum() / exp.sum()
    return float(scipy.stats.chisquare(obs, exp).pvalue)


def pair_difference_test(angle_sets: Sequence[Sequence[float]], rng: RngStream) -> float:
    """Uniformity of θ_i − θ_j for one randomly labelled pair per set.

    For i.i.d. uniform angles every such difference is uniform; eigenvalue
    repulsion makes small differences rare.
    """
    diffs = []
    for values in angle_sets:
        arr = np.asarray(values, dtype=float)
        if arr.size < 2:
            raise ValidationError("pair differences need at least two angles per set")
        i, j = rng.generator.choice(arr.size, size=2, replace=False)
        diffs.append((arr[i] - arr[j]) % (2.0 * math.pi))
    return uniformity_test(diffs)


def standard_error_of_variance(values: Sequence[float]) -> float:
    """Large-sample standard error of the sample variance: √((m₄ − s⁴)/R)."""
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        return math.inf
    centered = arr - arr.mean()
    m4 = float(np.mean(centered ** 4))
    s2 = float(np.var(arr, ddof=1))
    return math.sqrt(max(m4 - s2 * s2, 0.0) / arr.size)


def bonferroni(alpha: float, tests: int) -> float:
    return alpha / max(1, tests)
