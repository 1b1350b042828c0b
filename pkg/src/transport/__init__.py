"""Wasserstein distances on the circle."""

from .measures import (
    CircularMeasure,
    CostModel,
    TransportMethod,
    TransportResult,
    as_measure,
    chord_cost,
    cost_matrix,
    geodesic_cost,
    geodesic_distance,
    grid_measure,
    uniform_grid,
)
from .exact import default_discretization, wasserstein_empirical_uniform, wasserstein_exact
from .shift import chord_primitive, monotone_shift_estimate
from .distance import angles_distance, spectra_distance, spectral_measure_distance

__all__ = [
    "CircularMeasure",
    "CostModel",
    "TransportMethod",
    "TransportResult",
    "as_measure",
    "chord_cost",
    "cost_matrix",
    "geodesic_cost",
    "geodesic_distance",
    "grid_measure",
    "uniform_grid",
    "default_discretization",
    "wasserstein_empirical_uniform",
    "wasserstein_exact",
    "chord_primitive",
    "monotone_shift_estimate",
    "angles_distance",
    "spectra_distance",
    "spectral_measure_distance",
]
