"""Spectra of kernels restricted to arcs and the Bernoulli count representation."""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from ..groups.rng import RngStream
from ..utils.exceptions import ValidationError
from ..utils.logger import get_logger
from ..utils.validators import require_finite
from .kernels import KernelFamily, KernelSpec

logger = get_logger(__name__)

CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class BernoulliProfile:
    """Eigenvalues λ_k ∈ [0, 1] of a restricted projection kernel.

    The count of points in the arc is distributed as a sum of independent
    Bernoulli(λ_k) variables.
    """

    lambdas: np.ndarray
    theta: float
    kernel: Optional[KernelSpec] = None
    blocks: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def rank(self) -> int:
        return int(self.lambdas.size)

    @property
    def mean(self) -> float:
        return float(np.sum(self.lambdas))

    @property
    def variance(self) -> float:
        return variance_from_profile(self)


def _cosine_integral(k: np.ndarray, theta: float) -> np.ndarray:
    """∫_0^θ cos(kx) dx = θ·sinc(kθ/π), finite at k = 0."""
    return theta * np.sinc(k * theta / math.pi)


def _sine_integral(k: np.ndarray, theta: float) -> np.ndarray:
    """∫_0^θ sin(kx) dx = (θ²k/2)·sinc(kθ/2π)², finite at k = 0."""
    return 0.5 * theta * theta * k * np.sinc(k * theta / (2.0 * math.pi)) ** 2


def gram_matrix(kernel: KernelSpec, theta: float) -> np.ndarray:
    """G_jl = ∫_0^θ φ_j conj(φ_l) dx/|Λ| from closed-form antiderivatives."""
    freqs = kernel.frequencies()
    coeffs = kernel.coefficients()
    scale = np.outer(coeffs, coeffs) / kernel.domain_length
    diff = freqs[:, None] - freqs[None, :]
    if kernel.family is KernelFamily.UNITARY:
        return scale * (_cosine_integral(diff, theta) + 1j * _sine_integral(diff, theta))
    total = freqs[:, None] + freqs[None, :]
    sign = 1.0 if kernel.uses_cosines else -1.0
    return scale * 0.5 * (_cosine_integral(diff, theta) + sign * _cosine_integral(total, theta))


def restriction_eigenvalues(kernel: KernelSpec, theta: float) -> BernoulliProfile:
    """Eigenvalues of the kernel's integral operator restricted to D = [0, θ)."""
    theta = require_finite(theta, "theta")
    length = kernel.domain_length
    if theta <= 0.0 or theta > length + 1e-12:
        raise ValidationError(f"theta must lie in (0, {length:.6g}], got {theta}")
    theta = min(theta, length)

    lambdas = scipy.linalg.eigvalsh(gram_matrix(kernel, theta))
    overshoot = max(float(-lambdas.min()), float(lambdas.max() - 1.0), 0.0)
    if overshoot > CLAMP_TOL:
        logger.warning(
            f"restricted spectrum of {kernel.label} at theta={theta:.6g} "
            f"leaves [0, 1] by {overshoot:.3e}"
        )
    lambdas = np.clip(lambdas, 0.0, 1.0)
    return BernoulliProfile(lambdas=lambdas, theta=theta, kernel=kernel)


def sample_count_bernoulli(profile: BernoulliProfile, rng: RngStream) -> int:
    """One draw of Σ ξ_k with independent ξ_k ~ Bernoulli(λ_k)."""
    return int(np.count_nonzero(rng.random(profile.rank) < profile.lambdas))


def variance_from_profile(profile: BernoulliProfile) -> float:
    """Σ λ_k (1 − λ_k)."""
    lam = profile.lambdas
    return float(np.sum(lam * (1.0 - lam)))
