"""Fast upper bound on W_p to the uniform measure from rotated arc assignments."""

import math
from typing import Optional

import numpy as np
from scipy import optimize, special

from ..utils.exceptions import UnequalWeightsError, ValidationError
from ..utils.logger import get_logger
from ..utils.validators import require_exponent, require_positive_int
from .measures import (
    CostModel,
    MeasureLike,
    TransportMethod,
    TransportResult,
    as_measure,
    chord_cost,
    uniform_grid,
)

logger = get_logger(__name__)

TWO_PI = 2.0 * math.pi
SHIFT_CANDIDATES = 512


def _sine_power_integral(phi: np.ndarray, p: float) -> np.ndarray:
    """∫_0^φ sin^p(w) dw for φ ∈ [0, π], via the regularized incomplete beta function."""
    a, b = (p + 1.0) / 2.0, 0.5
    full = special.beta(a, b)
    s2 = np.sin(phi) ** 2
    lower_half = 0.5 * full * special.betainc(a, b, s2)
    return np.where(phi <= math.pi / 2.0, lower_half, full - lower_half)


def chord_primitive(u: np.ndarray, p: float) -> np.ndarray:
    """F(u) = ∫_0^u |2 sin(t/2)|^p dt for any real u."""
    u = np.asarray(u, dtype=float)
    periods = np.floor(u / TWO_PI)
    rest = u - periods * TWO_PI
    scale = 2.0 ** (p + 1.0)
    full = scale * special.beta((p + 1.0) / 2.0, 0.5)
    return periods * full + scale * _sine_power_integral(rest / 2.0, p)


def _shift_cost(shifts: np.ndarray, angles: np.ndarray, p: float) -> np.ndarray:
    """Σ_j (1/2π)∫ over arc j of the chord cost, one value per shift."""
    n = angles.size
    starts = TWO_PI * np.arange(n) / n
    shifts = np.atleast_1d(shifts)[:, None]
    lo = shifts + starts[None, :] - angles[None, :]
    hi = lo + TWO_PI / n
    return np.sum(chord_primitive(hi, p) - chord_primitive(lo, p), axis=1) / TWO_PI


def _continuous_shift(angles: np.ndarray, p: float) -> float:
    grid = TWO_PI * np.arange(SHIFT_CANDIDATES) / SHIFT_CANDIDATES
    costs = _shift_cost(grid, angles, p)
    best = int(np.argmin(costs))
    step = TWO_PI / SHIFT_CANDIDATES
    refined = optimize.minimize_scalar(
        lambda s: float(_shift_cost(np.array([s]), angles, p)[0]),
        bounds=(grid[best] - step, grid[best] + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return min(float(costs[best]), float(refined.fun))


def _discrete_shift(angles: np.ndarray, p: float, k: int) -> float:
    """Best cyclic block assignment of the K grid atoms; an exact feasible coupling."""
    n = angles.size
    block = k // n
    grid = uniform_grid(k).atoms
    costs = chord_cost(angles[:, None], grid[None, :], p) / k
    # window sums of `block` consecutive grid atoms, cyclically
    extended = np.concatenate([costs, costs[:, :block]], axis=1)
    csum = np.concatenate([np.zeros((n, 1)), np.cumsum(extended, axis=1)], axis=1)
    windows = csum[:, block:block + k] - csum[:, :k]
    rows = np.arange(n)[:, None]
    index = (np.arange(k)[None, :] + block * rows) % k
    return float(np.min(windows[rows, index].sum(axis=0)))


def monotone_shift_estimate(
    a: MeasureLike, p: float = 1.0, k: Optional[int] = None
) -> TransportResult:
    """Upper bound on the chord-cost W_p from an equal-weight measure to uniform.

    Sorted atoms are matched to consecutive arcs of length 2π/n and the whole
    assignment is rotated; the best rotation is kept. With ``k`` the target is
    the K-atom midpoint grid and all K integer rotations are tried, which
    bounds the discrete problem solved by the exact solver.
    """
    p = require_exponent(p)
    measure = as_measure(a)
    if not measure.has_equal_weights:
        raise UnequalWeightsError("MonotoneShift")
    angles = np.sort(measure.atoms)

    if k is None:
        total = _continuous_shift(angles, p)
        value = max(total, 0.0) ** (1.0 / p)
        bracket = (0.0, value)
    else:
        k = require_positive_int(k, "K")
        if k % angles.size:
            raise ValidationError(f"K={k} must be a multiple of the atom count {angles.size}")
        total = _discrete_shift(angles, p, k)
        value = max(total, 0.0) ** (1.0 / p)
        bracket = (0.0, value + TWO_PI / k)

    logger.debug(f"monotone shift W_{p:g} on {angles.size} atoms = {value:.12g}")
    return TransportResult(
        value=value,
        p=p,
        cost_model=CostModel.CHORD,
        method=TransportMethod.MONOTONE_SHIFT,
        error_bracket=bracket,
        discretization=k,
    )
