"""Eigenangles, empirical spectral measures and the power block model."""

from .angles import (
    AngleSet,
    EmpiricalSpectralMeasure,
    classify_angles,
    counting_function,
    counts_on_grid,
    eigenangles,
    nontrivial_counting_function,
    power_angles,
    trivial_multiplicities,
    wrap_angles,
)
from .rains import effective_power, rains_block_sizes, sample_power_spectrum_rains

__all__ = [
    "AngleSet",
    "EmpiricalSpectralMeasure",
    "classify_angles",
    "counting_function",
    "counts_on_grid",
    "eigenangles",
    "nontrivial_counting_function",
    "power_angles",
    "trivial_multiplicities",
    "wrap_angles",
    "effective_power",
    "rains_block_sizes",
    "sample_power_spectrum_rains",
]
