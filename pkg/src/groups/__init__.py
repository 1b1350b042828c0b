"""Haar sampling on U, SU, O, SO, SO⁻ and Sp."""

from .models import GroupFamily, GroupSpec, MatrixSample
from .rng import RngStream, stream_for
from .haar import (
    DETERMINANT_TOL,
    UNITARITY_TOL,
    check_membership,
    compose_coupling,
    decompose_unitary,
    membership_residuals,
    sample_ginibre,
    sample_haar,
    sample_special_unitary,
    symplectic_form,
)

__all__ = [
    "GroupFamily",
    "GroupSpec",
    "MatrixSample",
    "RngStream",
    "stream_for",
    "DETERMINANT_TOL",
    "UNITARITY_TOL",
    "check_membership",
    "compose_coupling",
    "decompose_unitary",
    "membership_residuals",
    "sample_ginibre",
    "sample_haar",
    "sample_special_unitary",
    "symplectic_form",
]
