"""Determinantal kernels, restricted spectra and count moments."""

from .kernels import (
    KernelFamily,
    KernelSpec,
    KernelVariant,
    basis_values,
    kernel_eval,
    kernel_for_group,
    kernel_values,
    s_n,
)
from .restriction import (
    BernoulliProfile,
    gram_matrix,
    restriction_eigenvalues,
    sample_count_bernoulli,
    variance_from_profile,
)
from .moments import (
    PowerMoments,
    bernoulli_profile_power,
    mean_count,
    mean_count_quadrature,
    power_count_moments,
    unitary_variance_bound,
    variance_count,
)

__all__ = [
    "KernelFamily",
    "KernelSpec",
    "KernelVariant",
    "basis_values",
    "kernel_eval",
    "kernel_for_group",
    "kernel_values",
    "s_n",
    "BernoulliProfile",
    "gram_matrix",
    "restriction_eigenvalues",
    "sample_count_bernoulli",
    "variance_from_profile",
    "PowerMoments",
    "bernoulli_profile_power",
    "mean_count",
    "mean_count_quadrature",
    "power_count_moments",
    "unitary_variance_bound",
    "variance_count",
]
