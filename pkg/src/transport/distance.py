"""Distances between spectral measures and the uniform law."""

from typing import Optional

from ..groups.models import MatrixSample
from ..spectral.angles import AngleSet, eigenangles, power_angles
from ..utils.validators import require_positive_int
from .exact import wasserstein_empirical_uniform, wasserstein_exact
from .measures import CostModel, TransportMethod, TransportResult
from .shift import monotone_shift_estimate


def angles_distance(
    angle_set: AngleSet,
    p: float = 1.0,
    method: TransportMethod = TransportMethod.EXACT_FLOW,
    k: Optional[int] = None,
) -> TransportResult:
    """W_p from an angle set's empirical measure to the uniform measure."""
    if TransportMethod(method) is TransportMethod.EXACT_FLOW:
        return wasserstein_empirical_uniform(angle_set, p, k)
    return monotone_shift_estimate(angle_set, p, k)


def spectral_measure_distance(
    sample: MatrixSample,
    m: int = 1,
    p: float = 1.0,
    method: TransportMethod = TransportMethod.EXACT_FLOW,
    k: Optional[int] = None,
) -> TransportResult:
    """W_p(μ_{N,m}, ν) for the eigenvalues of sample^m."""
    m = require_positive_int(m, "m")
    return angles_distance(power_angles(eigenangles(sample), m), p, method, k)


def spectra_distance(
    first: AngleSet, second: AngleSet, p: float = 1.0
) -> TransportResult:
    """Exact chord-cost W_p between two empirical spectral measures."""
    return wasserstein_exact(first, second, p, CostModel.CHORD)
