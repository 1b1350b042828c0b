"""Eigenvalue angles, trivial-eigenvalue classification and counting functions."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..groups.models import GroupFamily, GroupSpec, MatrixSample
from ..utils.exceptions import SpectralError, ValidationError
from ..utils.logger import get_logger
from ..utils.validators import require_positive_int, require_range

logger = get_logger(__name__)

TWO_PI = 2.0 * math.pi
MODULUS_TOL = 1e-6
MODULUS_WARN = 1e-8
TRIVIAL_TOL = 1e-6

_PAIRED_FAMILIES = (
    GroupFamily.SPECIAL_ORTHOGONAL,
    GroupFamily.NEG_ORTHOGONAL,
    GroupFamily.SYMPLECTIC,
)


def wrap_angles(values: np.ndarray) -> np.ndarray:
    """Reduce to [0, 2π); values that round up to 2π map to 0."""
    wrapped = np.mod(np.asarray(values, dtype=float), TWO_PI)
    wrapped[wrapped >= TWO_PI] = 0.0
    return wrapped


def trivial_multiplicities(family: GroupFamily, size: int) -> Tuple[int, int]:
    """Forced (+1, −1) eigenvalue multiplicities for a matrix of the given size."""
    if family is GroupFamily.SPECIAL_ORTHOGONAL:
        return (1, 0) if size % 2 else (0, 0)
    if family is GroupFamily.NEG_ORTHOGONAL:
        return (0, 1) if size % 2 else (1, 1)
    return (0, 0)


@dataclass(frozen=True)
class AngleSet:
    """Sorted eigenvalue angles in [0, 2π) with trivial/nontrivial classification.

    ``nontrivial_upper`` holds one representative in [0, π] of each conjugate
    pair of nontrivial angles and is ``None`` for unitary-type sets (U, SU
    and every powered set).
    """

    angles: np.ndarray
    spec: GroupSpec
    trivial_count_plus: int = 0
    trivial_count_minus: int = 0
    nontrivial_upper: Optional[np.ndarray] = None
    power: int = 1

    @property
    def size(self) -> int:
        return int(self.angles.shape[0])

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.size, 1.0 / self.size)

    @property
    def is_paired(self) -> bool:
        return self.nontrivial_upper is not None

    def to_measure(self) -> "EmpiricalSpectralMeasure":
        return EmpiricalSpectralMeasure.from_angles(self)

    @classmethod
    def from_angles(
        cls, values: Sequence[float], spec: Optional[GroupSpec] = None, power: int = 1
    ) -> "AngleSet":
        """Unclassified (unitary-type) angle set from raw angles."""
        angles = np.sort(wrap_angles(np.asarray(values, dtype=float)), kind="stable")
        if angles.size == 0:
            raise ValidationError("angle set must not be empty")
        if spec is None:
            spec = GroupSpec(GroupFamily.UNITARY, int(angles.size))
        return cls(angles=angles, spec=spec, power=power)


@dataclass(frozen=True)
class EmpiricalSpectralMeasure:
    """Uniform probability measure on unit-modulus atoms."""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        if abs(float(np.sum(self.weights)) - 1.0) > 1e-12:
            raise ValidationError("spectral measure weights must sum to 1")
        if np.max(np.abs(np.abs(self.atoms) - 1.0)) > 1e-10:
            raise ValidationError("spectral measure atoms must lie on the unit circle")

    @classmethod
    def from_angles(cls, angle_set: AngleSet) -> "EmpiricalSpectralMeasure":
        return cls(atoms=np.exp(1j * angle_set.angles), weights=angle_set.weights)

    @property
    def angles(self) -> np.ndarray:
        return wrap_angles(np.angle(self.atoms))


def _take_nearest(
    eigenvalues: np.ndarray, remaining: np.ndarray, target: float, spec: GroupSpec
) -> np.ndarray:
    distances = np.abs(eigenvalues[remaining] - target)
    pick = int(np.argmin(distances))
    if distances[pick] > TRIVIAL_TOL:
        raise SpectralError(
            f"{spec.label} sample has no eigenvalue within {TRIVIAL_TOL:g} of {target:+.0f} "
            f"(nearest at distance {distances[pick]:.3e})"
        )
    return np.delete(remaining, pick)


def classify_angles(
    eigenvalues: np.ndarray, family: GroupFamily, spec: GroupSpec
) -> AngleSet:
    """Classify unit-modulus eigenvalues per the family's trivial-eigenvalue table."""
    angles_all = wrap_angles(np.angle(eigenvalues))
    order = np.argsort(angles_all, kind="stable")
    angles = angles_all[order]
    if family not in _PAIRED_FAMILIES:
        return AngleSet(angles=angles, spec=spec)

    plus, minus = trivial_multiplicities(family, eigenvalues.shape[0])
    remaining = np.arange(eigenvalues.shape[0])
    for _ in range(plus):
        remaining = _take_nearest(eigenvalues, remaining, 1.0, spec)
    for _ in range(minus):
        remaining = _take_nearest(eigenvalues, remaining, -1.0, spec)

    rest = angles_all[remaining]
    folded = np.sort(np.minimum(rest, TWO_PI - rest))
    return AngleSet(
        angles=angles,
        spec=spec,
        trivial_count_plus=plus,
        trivial_count_minus=minus,
        nontrivial_upper=folded[::2].copy(),
    )


def eigenangles(sample: MatrixSample) -> AngleSet:
    """Eigenvalue angles of a sampled group element."""
    eigenvalues = scipy.linalg.eigvals(sample.entries)
    deviation = float(np.max(np.abs(np.abs(eigenvalues) - 1.0)))
    if deviation > MODULUS_TOL:
        raise SpectralError(
            f"eigenvalue modulus deviates from 1 by {deviation:.3e} for {sample.spec.label}"
        )
    if deviation > MODULUS_WARN:
        logger.warning(f"eigenvalue modulus deviation {deviation:.3e} for {sample.spec.label}")
    eigenvalues = eigenvalues / np.abs(eigenvalues)
    return classify_angles(eigenvalues, sample.effective_family, sample.spec)


def power_angles(angle_set: AngleSet, m: int) -> AngleSet:
    """Angles of the m-th power; the result is an unclassified unitary-type set."""
    m = require_positive_int(m, "m")
    if m == 1:
        return angle_set
    powered = np.sort(wrap_angles(m * angle_set.angles), kind="stable")
    spec = GroupSpec(GroupFamily.UNITARY, angle_set.size)
    return AngleSet(angles=powered, spec=spec, power=angle_set.power * m)


def counting_function(angle_set: AngleSet, theta: float) -> int:
    """Number of angles in [0, θ)."""
    theta = require_range(theta, "theta", 0.0, TWO_PI)
    return int(np.searchsorted(angle_set.angles, theta, side="left"))


def nontrivial_counting_function(angle_set: AngleSet, theta: float) -> int:
    """Number of nontrivial upper-half-circle angles in [0, θ)."""
    if angle_set.nontrivial_upper is None:
        raise SpectralError(
            f"nontrivial counts need an SO, SO⁻ or Sp angle set, got {angle_set.spec.label}"
        )
    theta = require_range(theta, "theta", 0.0, math.pi)
    return int(np.searchsorted(angle_set.nontrivial_upper, theta, side="left"))


def counts_on_grid(angle_set: AngleSet, thetas: Sequence[float]) -> np.ndarray:
    """Vectorized counting_function over a θ grid."""
    grid = np.asarray(thetas, dtype=float)
    if np.any(grid < 0) or np.any(grid > TWO_PI):
        raise ValidationError("theta grid must lie in [0, 2π]")
    return np.searchsorted(angle_set.angles, grid, side="left")
