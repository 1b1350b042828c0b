"""Circular measures, cost models and transport results."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..spectral.angles import AngleSet, wrap_angles
from ..utils.exceptions import ValidationError
from ..utils.validators import require_exponent, require_positive_int

TWO_PI = 2.0 * math.pi
MASS_TOL = 1e-12


class CostModel(str, Enum):
    CHORD = "chord"  # |e^{ix} − e^{iy}|^p
    GEODESIC = "geodesic"  # d(x, y)^p


class TransportMethod(str, Enum):
    EXACT_FLOW = "exact"
    MONOTONE_SHIFT = "shift"


PlanEntry = Tuple[int, int, float]


@dataclass(frozen=True)
class CircularMeasure:
    """Atomic measure on the circle; atoms are angles in [0, 2π)."""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        atoms = np.asarray(self.atoms, dtype=float).ravel()
        weights = np.asarray(self.weights, dtype=float).ravel()
        if atoms.size == 0:
            raise ValidationError("a circular measure needs at least one atom")
        if atoms.shape != weights.shape:
            raise ValidationError(
                f"atoms and weights differ in length ({atoms.size} vs {weights.size})"
            )
        if np.any(~np.isfinite(atoms)) or np.any(atoms < 0.0) or np.any(atoms >= TWO_PI):
            raise ValidationError("atoms must be angles in [0, 2π)")
        if np.any(~np.isfinite(weights)) or np.any(weights < 0.0):
            raise ValidationError("weights must be finite and nonnegative")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return int(self.atoms.size)

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def is_balanced(self) -> bool:
        return abs(self.total_mass - 1.0) <= MASS_TOL

    @property
    def has_equal_weights(self) -> bool:
        return bool(np.all(np.abs(self.weights - 1.0 / self.size) <= MASS_TOL))

    def rotated(self, angle: float) -> "CircularMeasure":
        return CircularMeasure(wrap_angles(self.atoms + angle), self.weights)

    @classmethod
    def equal_weights(cls, angles: Sequence[float]) -> "CircularMeasure":
        atoms = wrap_angles(np.asarray(angles, dtype=float))
        return cls(atoms, np.full(atoms.size, 1.0 / atoms.size))

    @classmethod
    def from_angle_set(cls, angle_set: AngleSet) -> "CircularMeasure":
        return cls(angle_set.angles, angle_set.weights)


MeasureLike = Union[AngleSet, CircularMeasure]


def as_measure(value: MeasureLike) -> CircularMeasure:
    if isinstance(value, CircularMeasure):
        return value
    if isinstance(value, AngleSet):
        return CircularMeasure.from_angle_set(value)
    raise ValidationError(f"expected an AngleSet or CircularMeasure, got {type(value).__name__}")


def grid_measure(n: int) -> CircularMeasure:
    """Mass 1/N at each 2πj/N, j = 1..N."""
    n = require_positive_int(n, "N")
    return CircularMeasure.equal_weights(TWO_PI * np.arange(1, n + 1) / n)


def uniform_grid(k: int) -> CircularMeasure:
    """K equal atoms at the midpoints 2π(k+½)/K of equal arcs."""
    k = require_positive_int(k, "K")
    return CircularMeasure(TWO_PI * (np.arange(k) + 0.5) / k, np.full(k, 1.0 / k))


def geodesic_distance(x, y):
    """Angular distance in [0, π]."""
    diff = np.mod(np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)), TWO_PI)
    return np.minimum(diff, TWO_PI - diff)


def chord_cost(x, y, p: float):
    """(2 sin(d/2))^p, the p-th power of the chord length."""
    p = require_exponent(p)
    value = (2.0 * np.sin(geodesic_distance(x, y) / 2.0)) ** p
    return float(value) if np.ndim(value) == 0 else value


def geodesic_cost(x, y, p: float):
    p = require_exponent(p)
    value = geodesic_distance(x, y) ** p
    return float(value) if np.ndim(value) == 0 else value


def cost_matrix(
    a: CircularMeasure, b: CircularMeasure, p: float, cost_model: CostModel
) -> np.ndarray:
    x = a.atoms[:, None]
    y = b.atoms[None, :]
    if CostModel(cost_model) is CostModel.CHORD:
        return chord_cost(x, y, p)
    return geodesic_cost(x, y, p)


@dataclass
class TransportResult:
    """A W_p value with provenance and a bracket on the true distance."""

    value: float
    p: float
    cost_model: CostModel
    method: TransportMethod
    error_bracket: Tuple[float, float]
    plan: Optional[List[PlanEntry]] = None
    discretization: Optional[int] = None

    def __post_init__(self) -> None:
        lower, upper = self.error_bracket
        if self.value < 0.0:
            raise ValidationError(f"transport value must be nonnegative, got {self.value}")
        if not lower <= self.value <= upper:
            raise ValidationError(
                f"bracket ({lower}, {upper}) does not contain value {self.value}"
            )

    @property
    def lower(self) -> float:
        return self.error_bracket[0]

    @property
    def upper(self) -> float:
        return self.error_bracket[1]

    def overlaps(self, other: "TransportResult") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def plan_marginals(self, n_a: int, n_b: int) -> Tuple[np.ndarray, np.ndarray]:
        """Row and column sums of the stored plan."""
        if self.plan is None:
            raise ValidationError("no transport plan recorded")
        rows = np.zeros(n_a)
        cols = np.zeros(n_b)
        for i, j, mass in self.plan:
            rows[i] += mass
            cols[j] += mass
        return rows, cols
