"""Projection kernels of the eigenangle point processes."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from ..groups.models import GroupFamily, GroupSpec
from ..utils.exceptions import ValidationError
from ..utils.validators import require_finite, require_positive_int

TWO_PI = 2.0 * math.pi
SERIES_THRESHOLD = 1e-8


class KernelFamily(str, Enum):
    """Rows of the kernel tables."""

    UNITARY = "unitary"
    SO_EVEN = "so_even"  # SO(2N)
    SO_ODD = "so_odd"  # SO(2N+1)
    SO_ODD_NEG = "so_odd_neg"  # SO⁻(2N+1)
    SYMPLECTIC = "symplectic"  # Sp(N), SO⁻(2N+2)


class KernelVariant(str, Enum):
    """FOURIER_SUM is the basis expansion, DIRICHLET_FORM the S_N closed form."""

    FOURIER_SUM = "fourier_sum"
    DIRICHLET_FORM = "dirichlet_form"


@dataclass(frozen=True)
class KernelSpec:
    """A finite-rank projection kernel on Λ with respect to uniform measure dx/|Λ|."""

    family: KernelFamily
    rank: int
    variant: KernelVariant = KernelVariant.FOURIER_SUM

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", KernelFamily(self.family))
        object.__setattr__(self, "variant", KernelVariant(self.variant))
        object.__setattr__(self, "rank", require_positive_int(self.rank, "rank"))

    @property
    def domain_length(self) -> float:
        """|Λ|: 2π for the unitary row, π otherwise."""
        return TWO_PI if self.family is KernelFamily.UNITARY else math.pi

    @property
    def domain(self) -> Tuple[float, float]:
        return (0.0, self.domain_length)

    @property
    def is_hermitian(self) -> bool:
        return self.family is KernelFamily.UNITARY

    def frequencies(self) -> np.ndarray:
        """Frequencies of the orthonormal basis functions."""
        n = self.rank
        if self.family is KernelFamily.UNITARY:
            shift = (n - 1) / 2.0 if self.variant is KernelVariant.DIRICHLET_FORM else 0.0
            return np.arange(n, dtype=float) - shift
        if self.family is KernelFamily.SO_EVEN:
            return np.arange(n, dtype=float)
        if self.family in (KernelFamily.SO_ODD, KernelFamily.SO_ODD_NEG):
            return np.arange(n, dtype=float) + 0.5
        return np.arange(1, n + 1, dtype=float)

    def coefficients(self) -> np.ndarray:
        """Normalizations making the basis orthonormal in L²(dx/|Λ|)."""
        coeffs = np.full(self.rank, math.sqrt(2.0))
        if self.family is KernelFamily.UNITARY:
            coeffs[:] = 1.0
        elif self.family is KernelFamily.SO_EVEN:
            coeffs[0] = 1.0
        return coeffs

    @property
    def uses_cosines(self) -> bool:
        return self.family in (KernelFamily.SO_EVEN, KernelFamily.SO_ODD_NEG)

    @property
    def label(self) -> str:
        return f"{self.family.value}[{self.rank}]"


def s_n(n: int, x):
    """S_N(x) = sin(Nx/2)/sin(x/2), filled by its cosine-sum form near x ≡ 0 (mod 2π)."""
    n = require_positive_int(n, "N")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    half = np.sin(x_arr / 2.0)
    small = np.abs(half) < SERIES_THRESHOLD
    values = np.empty_like(x_arr)
    values[~small] = np.sin(n * x_arr[~small] / 2.0) / half[~small]
    if np.any(small):
        freqs = np.arange(n, dtype=float) - (n - 1) / 2.0
        values[small] = np.cos(np.multiply.outer(x_arr[small], freqs)).sum(axis=-1)
    if np.ndim(x) == 0:
        return float(values[0])
    return values.reshape(np.shape(x))


def basis_values(kernel: KernelSpec, x) -> np.ndarray:
    """φ_j(x) for every basis function; shape ``x.shape + (rank,)``."""
    phase = np.multiply.outer(np.asarray(x, dtype=float), kernel.frequencies())
    coeffs = kernel.coefficients()
    if kernel.family is KernelFamily.UNITARY:
        return np.exp(1j * phase)
    if kernel.uses_cosines:
        return coeffs * np.cos(phase)
    return coeffs * np.sin(phase)


def kernel_values(kernel: KernelSpec, x, y):
    """Vectorized K_N(x, y) with broadcasting; no domain check."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = kernel.rank
    if kernel.variant is KernelVariant.DIRICHLET_FORM:
        if kernel.family is KernelFamily.UNITARY:
            return s_n(n, x - y) + 0j
        if kernel.family is KernelFamily.SO_EVEN:
            return 0.5 * (s_n(2 * n - 1, x - y) + s_n(2 * n - 1, x + y))
        if kernel.family is KernelFamily.SO_ODD:
            return 0.5 * (s_n(2 * n, x - y) - s_n(2 * n, x + y))
        if kernel.family is KernelFamily.SO_ODD_NEG:
            return 0.5 * (s_n(2 * n, x - y) + s_n(2 * n, x + y))
        return 0.5 * (s_n(2 * n + 1, x - y) - s_n(2 * n + 1, x + y))

    x_b, y_b = np.broadcast_arrays(x, y)
    phi_x = basis_values(kernel, x_b)
    phi_y = basis_values(kernel, y_b)
    return np.sum(phi_x * np.conj(phi_y), axis=-1)


def kernel_eval(kernel: KernelSpec, x: float, y: float) -> complex:
    """K_N(x, y) for x, y in Λ."""
    length = kernel.domain_length
    for name, value in (("x", x), ("y", y)):
        value = require_finite(value, name)
        if not 0.0 <= value < length:
            raise ValidationError(f"{name}={value} lies outside Λ = [0, {length:.6g})")
    return complex(kernel_values(kernel, x, y))


def kernel_for_group(
    spec: GroupSpec, variant: KernelVariant = KernelVariant.FOURIER_SUM
) -> KernelSpec:
    """Kernel row governing the nontrivial eigenangles of ``spec``."""
    family, size = spec.family, spec.matrix_size
    if family is GroupFamily.UNITARY:
        return KernelSpec(KernelFamily.UNITARY, spec.rank, variant)
    if family is GroupFamily.SYMPLECTIC:
        return KernelSpec(KernelFamily.SYMPLECTIC, spec.rank, variant)
    if family is GroupFamily.SPECIAL_ORTHOGONAL and size >= 2:
        if size % 2 == 0:
            return KernelSpec(KernelFamily.SO_EVEN, size // 2, variant)
        return KernelSpec(KernelFamily.SO_ODD, (size - 1) // 2, variant)
    if family is GroupFamily.NEG_ORTHOGONAL and size >= 3:
        if size % 2:
            return KernelSpec(KernelFamily.SO_ODD_NEG, (size - 1) // 2, variant)
        return KernelSpec(KernelFamily.SYMPLECTIC, (size - 2) // 2, variant)
    raise ValidationError(
        f"{spec.label} has no nontrivial-eigenangle kernel "
        "(supported: u, sp, so(N>=2), so-(N>=3))"
    )
