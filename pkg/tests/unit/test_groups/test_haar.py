"""Tests for Haar sampling."""

import math

import numpy as np
import pytest

from src.groups import (
    GroupFamily,
    GroupSpec,
    MatrixSample,
    check_membership,
    compose_coupling,
    decompose_unitary,
    membership_residuals,
    sample_ginibre,
    sample_haar,
    sample_special_unitary,
    stream_for,
    symplectic_form,
)
from src.harness import two_sample_count_test
from src.utils.exceptions import MembershipError, ValidationError

ALL_SPECS = [
    GroupSpec(GroupFamily.UNITARY, 5),
    GroupSpec(GroupFamily.SPECIAL_UNITARY, 5),
    GroupSpec(GroupFamily.ORTHOGONAL, 6),
    GroupSpec(GroupFamily.SPECIAL_ORTHOGONAL, 7),
    GroupSpec(GroupFamily.NEG_ORTHOGONAL, 7),
    GroupSpec(GroupFamily.NEG_ORTHOGONAL, 6),
    GroupSpec(GroupFamily.SYMPLECTIC, 3),
]


class TestGinibre:
    def test_complex_entries_unit_second_moment(self):
        z = sample_ginibre(200, stream_for(0, 0))
        assert np.iscomplexobj(z)
        assert abs(np.mean(np.abs(z) ** 2) - 1.0) < 0.02

    def test_real_entries(self):
        z = sample_ginibre(4, stream_for(0, 0), real=True)
        assert not np.iscomplexobj(z)
        assert z.shape == (4, 4)


class TestSampleHaar:
    @pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label)
    def test_membership(self, spec):
        for i in range(5):
            sample = sample_haar(spec, stream_for(11, i))
            assert sample.entries.shape == (spec.matrix_size, spec.matrix_size)
            assert sample.residuals["unitarity"] <= 1e-10
            assert sample.residuals["determinant"] <= 1e-8

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label)
    def test_deterministic(self, spec):
        a = sample_haar(spec, stream_for(3, 4))
        b = sample_haar(spec, stream_for(3, 4))
        np.testing.assert_array_equal(a.entries, b.entries)

    def test_seed_trace_recorded(self):
        sample = sample_haar(GroupSpec(GroupFamily.UNITARY, 3), stream_for(8, 2, 0))
        assert sample.seed_trace == (8, 2, (0,))

    def test_neg_orthogonal_determinant(self):
        for i in range(10):
            sample = sample_haar(GroupSpec(GroupFamily.NEG_ORTHOGONAL, 4), stream_for(1, i))
            assert np.linalg.det(sample.entries) == pytest.approx(-1.0, abs=1e-8)
            assert not np.iscomplexobj(sample.entries)

    def test_orthogonal_coset_matches_determinant(self):
        cosets = set()
        for i in range(40):
            sample = sample_haar(GroupSpec(GroupFamily.ORTHOGONAL, 3), stream_for(2, i))
            det = np.linalg.det(sample.entries)
            expected = (GroupFamily.SPECIAL_ORTHOGONAL if det > 0
                        else GroupFamily.NEG_ORTHOGONAL)
            assert sample.coset is expected
            cosets.add(sample.coset)
        assert cosets == {GroupFamily.SPECIAL_ORTHOGONAL, GroupFamily.NEG_ORTHOGONAL}

    def test_symplectic_form_preserved(self):
        spec = GroupSpec(GroupFamily.SYMPLECTIC, 4)
        j = symplectic_form(4)
        for i in range(5):
            u = sample_haar(spec, stream_for(6, i)).entries
            np.testing.assert_allclose(u.T @ j @ u, j, atol=1e-10)

    def test_unitary_trace_second_moment(self):
        # E|tr U|² = 1 for U Haar on U(N)
        spec = GroupSpec(GroupFamily.UNITARY, 6)
        values = [abs(np.trace(sample_haar(spec, stream_for(9, i)).entries)) ** 2
                  for i in range(800)]
        assert np.mean(values) == pytest.approx(1.0, abs=0.25)

    def test_unitary_entry_second_moment(self):
        # E|U_11|² = 1/N
        spec = GroupSpec(GroupFamily.UNITARY, 4)
        values = [abs(sample_haar(spec, stream_for(10, i)).entries[0, 0]) ** 2
                  for i in range(800)]
        assert np.mean(values) == pytest.approx(0.25, abs=0.04)

    def test_one_by_one_groups(self):
        so1 = sample_haar(GroupSpec(GroupFamily.SPECIAL_ORTHOGONAL, 1), stream_for(0, 0))
        np.testing.assert_allclose(so1.entries, [[1.0]])
        neg1 = sample_haar(GroupSpec(GroupFamily.NEG_ORTHOGONAL, 1), stream_for(0, 0))
        np.testing.assert_allclose(neg1.entries, [[-1.0]])


class TestMembership:
    def test_rejects_non_unitary(self):
        sample = MatrixSample(2.0 * np.eye(3), GroupSpec(GroupFamily.UNITARY, 3))
        with pytest.raises(MembershipError) as excinfo:
            check_membership(sample)
        assert excinfo.value.kind == "unitarity"

    def test_rejects_wrong_determinant(self):
        flip = np.diag([1.0, 1.0, -1.0])
        sample = MatrixSample(flip, GroupSpec(GroupFamily.SPECIAL_ORTHOGONAL, 3))
        with pytest.raises(MembershipError) as excinfo:
            check_membership(sample)
        assert excinfo.value.kind == "determinant"

    def test_rejects_complex_orthogonal(self):
        sample = MatrixSample(1j * np.eye(2), GroupSpec(GroupFamily.ORTHOGONAL, 2))
        residuals = membership_residuals(sample.entries, sample.spec)
        assert residuals["realness"] == pytest.approx(1.0)

    def test_rejects_wrong_shape(self):
        sample = MatrixSample(np.eye(3), GroupSpec(GroupFamily.SYMPLECTIC, 3))
        with pytest.raises(ValidationError, match="6x6"):
            check_membership(sample)

    def test_identity_is_symplectic(self):
        sample = check_membership(MatrixSample(np.eye(4), GroupSpec(GroupFamily.SYMPLECTIC, 2)))
        assert sample.residuals["symplectic"] == 0.0


class TestCoupling:
    def test_decompose_then_compose_round_trip(self):
        spec = GroupSpec(GroupFamily.UNITARY, 5)
        for i in range(10):
            u = sample_haar(spec, stream_for(4, i))
            theta, v = decompose_unitary(u)
            assert 0.0 <= theta < 2.0 * math.pi / 5
            assert v.spec.family is GroupFamily.SPECIAL_UNITARY
            assert np.linalg.det(v.entries) == pytest.approx(1.0, abs=1e-8)
            rebuilt = compose_coupling(theta, v)
            np.testing.assert_allclose(rebuilt.entries, u.entries, atol=1e-10)

    def test_compose_rejects_theta_outside_fundamental_domain(self):
        v = sample_special_unitary(3, stream_for(0, 0))
        with pytest.raises(ValidationError):
            compose_coupling(2.0 * math.pi / 3, v)
        with pytest.raises(ValidationError):
            compose_coupling(-0.1, v)

    def test_compose_needs_special_unitary(self):
        u = sample_haar(GroupSpec(GroupFamily.UNITARY, 3), stream_for(0, 0))
        with pytest.raises(ValidationError, match="SU"):
            compose_coupling(0.1, u)

    def test_decompose_rejects_non_unitary(self):
        sample = MatrixSample(2.0 * np.eye(2), GroupSpec(GroupFamily.UNITARY, 2))
        with pytest.raises(MembershipError):
            decompose_unitary(sample)

    def test_special_unitary_sample(self):
        v = sample_special_unitary(4, stream_for(7, 1))
        assert v.spec == GroupSpec(GroupFamily.SPECIAL_UNITARY, 4)
        assert np.linalg.det(v.entries) == pytest.approx(1.0, abs=1e-8)


class TestLeftInvariance:
    @pytest.mark.parametrize("label", ["u(6)", "so(7)", "sp(2)"])
    @pytest.mark.parametrize("theta", [1.0, 2.5])
    def test_translated_draws_match_in_law(self, label, theta):
        spec = GroupSpec.parse(label)
        fixed = sample_haar(spec, stream_for(500, 0)).entries

        def count(matrix):
            angles = np.mod(np.angle(np.linalg.eigvals(matrix)), 2.0 * math.pi)
            return int(np.sum(angles < theta))

        plain = [count(sample_haar(spec, stream_for(501, i)).entries) for i in range(300)]
        translated = [count(fixed @ sample_haar(spec, stream_for(502, i)).entries)
                      for i in range(300)]
        assert two_sample_count_test(plain, translated) > 1e-3
