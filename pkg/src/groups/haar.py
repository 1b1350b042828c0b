"""Haar sampling on the compact classical groups."""

import math
from typing import Dict, Optional, Tuple

import numpy as np

from ..utils.exceptions import MembershipError, RankDeficientDrawError, ValidationError
from ..utils.logger import get_logger
from ..utils.validators import require_positive_int
from .models import GroupFamily, GroupSpec, MatrixSample
from .rng import RngStream

logger = get_logger(__name__)

UNITARITY_TOL = 1e-10
DETERMINANT_TOL = 1e-8
SYMPLECTIC_TOL = 1e-10
PIVOT_FLOOR = 1e-300

TWO_PI = 2.0 * math.pi


def sample_ginibre(n: int, rng: RngStream, real: bool = False) -> np.ndarray:
    """n×n matrix of i.i.d. standard Gaussians.

    Complex entries have E|z|² = 1 (real and imaginary parts with variance ½).
    """
    n = require_positive_int(n, "n")
    if real:
        return rng.standard_normal((n, n))
    parts = rng.standard_normal((2, n, n))
    return (parts[0] + 1j * parts[1]) / math.sqrt(2.0)


def _phase_corrected_qr(z: np.ndarray) -> Tuple[np.ndarray, float]:
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    pivot = float(np.min(np.abs(d)))
    if pivot < PIVOT_FLOOR:
        return q, pivot
    # Q·diag(d/|d|) makes diag(R) positive, which is what makes Q Haar
    return q * (d / np.abs(d)), pivot


def _haar_qr(n: int, rng: RngStream, real: bool) -> np.ndarray:
    for attempt in range(2):
        q, pivot = _phase_corrected_qr(sample_ginibre(n, rng, real=real))
        if pivot >= PIVOT_FLOOR:
            return q
        logger.warning(f"Rank-deficient Ginibre draw (n={n}, attempt {attempt + 1})")
    raise RankDeficientDrawError(n, pivot)


def _quaternion_twist(v: np.ndarray) -> np.ndarray:
    """τ(v) = [−conj(v_low); conj(v_up)], the partner column under right-multiplication by j."""
    half = v.shape[0] // 2
    return np.concatenate([-np.conj(v[half:]), np.conj(v[:half])])


def _haar_symplectic(n: int, rng: RngStream) -> np.ndarray:
    """Quaternionic Gram-Schmidt on a quaternionic Ginibre matrix, realized over C^{2n}."""
    columns = rng.standard_normal((2, 2 * n, n))
    z = (columns[0] + 1j * columns[1]) / math.sqrt(2.0)
    for attempt in range(2):
        basis = np.zeros((2 * n, 2 * n), dtype=complex)
        pivot = math.inf
        for j in range(n):
            v = z[:, j].copy()
            if j:
                span = np.concatenate([basis[:, :j], basis[:, n:n + j]], axis=1)
                # two passes of classical Gram-Schmidt
                for _ in range(2):
                    v = v - span @ (span.conj().T @ v)
            norm = float(np.linalg.norm(v))
            pivot = min(pivot, norm)
            if norm < PIVOT_FLOOR:
                break
            u = v / norm
            basis[:, j] = u
            basis[:, n + j] = _quaternion_twist(u)
        else:
            return basis
        logger.warning(f"Rank-deficient quaternionic draw (n={n}, attempt {attempt + 1})")
        columns = rng.standard_normal((2, 2 * n, n))
        z = (columns[0] + 1j * columns[1]) / math.sqrt(2.0)
    raise RankDeficientDrawError(n, pivot)


def symplectic_form(n: int) -> np.ndarray:
    """J = [[0, I], [−I, 0]] of size 2n."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def membership_residuals(entries: np.ndarray, spec: GroupSpec) -> Dict[str, float]:
    """Residuals of every constraint defining the group (or coset) of ``spec``."""
    size = entries.shape[0]
    residuals: Dict[str, float] = {
        "unitarity": float(np.max(np.abs(entries @ entries.conj().T - np.eye(size)))),
    }
    det = complex(np.linalg.det(entries))
    family = spec.family
    if family in (GroupFamily.SPECIAL_UNITARY, GroupFamily.SPECIAL_ORTHOGONAL,
                  GroupFamily.SYMPLECTIC):
        residuals["determinant"] = abs(det - 1.0)
    elif family is GroupFamily.NEG_ORTHOGONAL:
        residuals["determinant"] = abs(det + 1.0)
    elif family is GroupFamily.ORTHOGONAL:
        residuals["determinant"] = min(abs(det - 1.0), abs(det + 1.0))
    else:
        residuals["determinant"] = abs(abs(det) - 1.0)
    if family.is_real:
        residuals["realness"] = float(np.max(np.abs(np.imag(entries)))) if np.iscomplexobj(
            entries) else 0.0
    if family is GroupFamily.SYMPLECTIC:
        j = symplectic_form(spec.rank)
        residuals["symplectic"] = float(np.max(np.abs(entries.T @ j @ entries - j)))
    return residuals


_TOLERANCES = {
    "unitarity": UNITARITY_TOL,
    "determinant": DETERMINANT_TOL,
    "realness": UNITARITY_TOL,
    "symplectic": SYMPLECTIC_TOL,
}


def check_membership(sample: MatrixSample) -> MatrixSample:
    """Raise MembershipError on the first violated constraint; record residuals."""
    spec = sample.spec
    if sample.entries.shape != (spec.matrix_size, spec.matrix_size):
        raise ValidationError(
            f"{spec.label} expects a {spec.matrix_size}x{spec.matrix_size} matrix, "
            f"got shape {sample.entries.shape}"
        )
    residuals = membership_residuals(sample.entries, spec)
    for kind, residual in residuals.items():
        if residual > _TOLERANCES[kind]:
            raise MembershipError(kind, residual, _TOLERANCES[kind])
    sample.residuals = residuals
    return sample


def _sample_special_orthogonal(n: int, rng: RngStream) -> np.ndarray:
    draws = 0
    while True:
        q = _haar_qr(n, rng, real=True)
        draws += 1
        if np.linalg.det(q) > 0:
            if draws > 8:
                logger.debug(f"SO({n}) rejection took {draws} draws")
            return q


def sample_haar(spec: GroupSpec, rng: RngStream) -> MatrixSample:
    """Draw a Haar-distributed element of ``spec``'s group or coset."""
    family, n = spec.family, spec.rank
    coset: Optional[GroupFamily] = None

    if family is GroupFamily.UNITARY:
        entries = _haar_qr(n, rng, real=False)
    elif family is GroupFamily.SPECIAL_UNITARY:
        return sample_special_unitary(n, rng)
    elif family is GroupFamily.ORTHOGONAL:
        entries = _haar_qr(n, rng, real=True)
        coset = (GroupFamily.SPECIAL_ORTHOGONAL if np.linalg.det(entries) > 0
                 else GroupFamily.NEG_ORTHOGONAL)
    elif family is GroupFamily.SPECIAL_ORTHOGONAL:
        entries = _sample_special_orthogonal(n, rng)
    elif family is GroupFamily.NEG_ORTHOGONAL:
        entries = _sample_special_orthogonal(n, rng)
        entries[0, :] = -entries[0, :]
    else:
        entries = _haar_symplectic(n, rng)

    sample = MatrixSample(entries=entries, spec=spec, seed_trace=rng.trace, coset=coset)
    return check_membership(sample)


def compose_coupling(theta: float, v: MatrixSample) -> MatrixSample:
    """Return e^{iθ}·V for V in SU(N) and θ in [0, 2π/N)."""
    n = v.spec.rank
    if v.spec.family is not GroupFamily.SPECIAL_UNITARY:
        raise ValidationError(f"compose_coupling needs an SU(N) sample, got {v.spec.label}")
    if not (math.isfinite(theta) and 0.0 <= theta < TWO_PI / n):
        raise ValidationError(f"theta must lie in [0, 2π/{n}), got {theta}")
    entries = np.exp(1j * theta) * v.entries
    return MatrixSample(
        entries=entries,
        spec=GroupSpec(GroupFamily.UNITARY, n),
        seed_trace=v.seed_trace,
    )


def decompose_unitary(u: MatrixSample) -> Tuple[float, MatrixSample]:
    """Split U ∈ U(N) as e^{iθ}V with θ = arg(det U)/N ∈ [0, 2π/N) and V ∈ SU(N)."""
    n = u.entries.shape[0]
    residual = float(np.max(np.abs(u.entries @ u.entries.conj().T - np.eye(n))))
    if residual > UNITARITY_TOL:
        raise MembershipError("unitarity", residual, UNITARITY_TOL)
    phase = float(np.angle(np.linalg.det(u.entries))) % TWO_PI
    theta = phase / n
    if theta >= TWO_PI / n:
        theta = 0.0
    v = MatrixSample(
        entries=np.exp(-1j * theta) * u.entries,
        spec=GroupSpec(GroupFamily.SPECIAL_UNITARY, n),
        seed_trace=u.seed_trace,
    )
    return theta, check_membership(v)


def sample_special_unitary(n: int, rng: RngStream) -> MatrixSample:
    """Haar SU(n): the SU factor of a Haar U(n) draw."""
    u = sample_haar(GroupSpec(GroupFamily.UNITARY, n), rng)
    _, v = decompose_unitary(u)
    return v
