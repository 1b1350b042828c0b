"""Means and variances of eigenangle counts."""

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from ..spectral.rains import effective_power, rains_block_sizes
from ..utils.exceptions import ValidationError
from ..utils.logger import get_logger
from ..utils.validators import require_finite, require_positive_int
from .kernels import KernelFamily, KernelSpec, kernel_values, s_n
from .quadrature import integrate_panels, tensor_double_integral
from .restriction import BernoulliProfile, restriction_eigenvalues

logger = get_logger(__name__)

TWO_PI = 2.0 * math.pi


class PowerMoments(NamedTuple):
    mean: float
    variance: float
    variance_bound: float


def _check_theta(kernel: KernelSpec, theta: float) -> float:
    theta = require_finite(theta, "theta")
    length = kernel.domain_length
    if theta < 0.0 or theta > length + 1e-12:
        raise ValidationError(f"theta must lie in [0, {length:.6g}], got {theta}")
    return min(theta, length)


def mean_count(kernel: KernelSpec, theta: float) -> float:
    """E N_θ = ∫_0^θ K(x, x) dμ(x), by term-wise integration of the diagonal."""
    theta = _check_theta(kernel, theta)
    n = kernel.rank
    if kernel.family is KernelFamily.UNITARY:
        return n * theta / TWO_PI
    if kernel.family is KernelFamily.SO_EVEN:
        j = np.arange(1, n)
        return n * theta / math.pi + float(np.sum(np.sin(2 * j * theta) / j)) / TWO_PI
    if kernel.family in (KernelFamily.SO_ODD, KernelFamily.SO_ODD_NEG):
        odd = 2 * np.arange(n) + 1
        sign = 1.0 if kernel.family is KernelFamily.SO_ODD_NEG else -1.0
        return n * theta / math.pi + sign * float(np.sum(np.sin(odd * theta) / odd)) / math.pi
    j = np.arange(1, n + 1)
    return n * theta / math.pi - float(np.sum(np.sin(2 * j * theta) / j)) / TWO_PI


def mean_count_quadrature(kernel: KernelSpec, theta: float) -> float:
    """E N_θ by adaptive quadrature of K(x, x); cross-check for :func:`mean_count`."""
    theta = _check_theta(kernel, theta)
    if theta == 0.0:
        return 0.0
    panels = max(1, 2 * kernel.rank)
    breaks = np.linspace(0.0, theta, panels + 1)

    def diagonal(x: float) -> float:
        return float(np.real(kernel_values(kernel, x, x)))

    value, _ = integrate_panels(diagonal, breaks)
    return value / kernel.domain_length


def _unitary_variance(n: int, theta: float) -> float:
    """(1/4π²)∫_0^{2π} w(z) S_N(z)² dz, with w the overlap length of the arc pair."""

    def integrand(z: float) -> float:
        weight = min(theta, TWO_PI - z) - max(0.0, theta - z)
        if weight <= 0.0:
            return 0.0
        return weight * s_n(n, z) ** 2

    breaks = np.concatenate([
        TWO_PI * np.arange(n + 1) / n,
        [theta, TWO_PI - theta],
    ])
    breaks = breaks[(breaks >= 0.0) & (breaks <= TWO_PI)]
    value, _ = integrate_panels(integrand, breaks)
    return value / (4.0 * math.pi ** 2)


def variance_count(kernel: KernelSpec, theta: float) -> float:
    """Var N_θ = ∫_D ∫_{Λ∖D} |K(x, y)|² dμ dμ for D = [0, θ)."""
    theta = _check_theta(kernel, theta)
    length = kernel.domain_length
    if theta == 0.0 or theta >= length:
        return 0.0
    if kernel.family is KernelFamily.UNITARY:
        return _unitary_variance(kernel.rank, theta)

    def kernel_sq(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.abs(kernel_values(kernel, x, y)) ** 2

    value = tensor_double_integral(
        kernel_sq,
        (0.0, theta),
        (theta, length),
        initial_panels=max(2, kernel.rank // 4),
    )
    return value / length ** 2


def unitary_variance_bound(n: int, sharp: bool = False) -> float:
    """log N + 1, or log N + 11/16 when ``sharp``."""
    n = require_positive_int(n, "N")
    return math.log(n) + (11.0 / 16.0 if sharp else 1.0)


@lru_cache(maxsize=4096)
def _block_variance(size: int, theta: float) -> float:
    return variance_count(KernelSpec(KernelFamily.UNITARY, size), theta)


def power_count_moments(n: int, m: int, theta: float) -> PowerMoments:
    """Mean, block-sum variance and variance bound of the count for U^m, U ∈ U(N)."""
    n = require_positive_int(n, "N")
    m_eff = effective_power(n, m)
    theta = _check_theta(KernelSpec(KernelFamily.UNITARY, n), theta)
    variance = sum(_block_variance(size, theta) for size in rains_block_sizes(n, m_eff))
    bound = m_eff * (math.log(n / m_eff) + 1.0)
    return PowerMoments(mean=n * theta / TWO_PI, variance=variance, variance_bound=bound)


def bernoulli_profile_power(n: int, m: int, theta: float) -> BernoulliProfile:
    """Concatenated restriction profiles of the power's unitary blocks."""
    n = require_positive_int(n, "N")
    m_eff = effective_power(n, m)
    sizes = rains_block_sizes(n, m_eff)
    pieces = [
        restriction_eigenvalues(KernelSpec(KernelFamily.UNITARY, size), theta).lambdas
        for size in sizes
    ]
    return BernoulliProfile(
        lambdas=np.concatenate(pieces),
        theta=float(theta),
        kernel=KernelSpec(KernelFamily.UNITARY, n),
        blocks=tuple(sizes),
    )
