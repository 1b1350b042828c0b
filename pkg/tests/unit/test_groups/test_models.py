"""Tests for group models."""

import numpy as np
import pytest

from src.groups import GroupFamily, GroupSpec, MatrixSample
from src.utils.exceptions import ValidationError


class TestGroupFamily:
    @pytest.mark.parametrize("token, family", [
        ("u", GroupFamily.UNITARY),
        ("SU", GroupFamily.SPECIAL_UNITARY),
        ("so-", GroupFamily.NEG_ORTHOGONAL),
        ("NEG_ORTHOGONAL", GroupFamily.NEG_ORTHOGONAL),
        ("sp", GroupFamily.SYMPLECTIC),
    ])
    def test_parse(self, token, family):
        assert GroupFamily.parse(token) is family

    def test_parse_unknown(self):
        with pytest.raises(ValidationError, match="Unknown group family"):
            GroupFamily.parse("gl")

    def test_real_families(self):
        assert GroupFamily.ORTHOGONAL.is_real
        assert GroupFamily.NEG_ORTHOGONAL.is_real
        assert not GroupFamily.SYMPLECTIC.is_real
        assert not GroupFamily.UNITARY.is_real


class TestGroupSpec:
    def test_symplectic_matrix_size(self):
        assert GroupSpec(GroupFamily.SYMPLECTIC, 3).matrix_size == 6
        assert GroupSpec(GroupFamily.SPECIAL_ORTHOGONAL, 3).matrix_size == 3

    def test_label_round_trip(self):
        spec = GroupSpec.parse("so-(5)")
        assert spec.family is GroupFamily.NEG_ORTHOGONAL
        assert spec.rank == 5
        assert spec.label == "so-(5)"
        assert GroupSpec.parse(spec.label) == spec

    def test_family_string_coerced(self):
        assert GroupSpec("sp", 2).family is GroupFamily.SYMPLECTIC

    @pytest.mark.parametrize("text", ["u8", "u(x)", "u(0)", "q(3)"])
    def test_invalid_labels(self, text):
        with pytest.raises(ValidationError):
            GroupSpec.parse(text)

    def test_rank_must_be_positive(self):
        with pytest.raises(ValidationError):
            GroupSpec(GroupFamily.UNITARY, 0)


class TestMatrixSample:
    def test_effective_family_uses_coset_for_orthogonal(self):
        spec = GroupSpec(GroupFamily.ORTHOGONAL, 3)
        sample = MatrixSample(np.eye(3), spec, coset=GroupFamily.SPECIAL_ORTHOGONAL)
        assert sample.effective_family is GroupFamily.SPECIAL_ORTHOGONAL
        assert sample.size == 3

    def test_effective_family_defaults_to_spec(self):
        sample = MatrixSample(np.eye(2), GroupSpec(GroupFamily.UNITARY, 2))
        assert sample.effective_family is GroupFamily.UNITARY
