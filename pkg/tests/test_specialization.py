import numpy as np
import pytest

from beliefdyn.belief import MassFunction, q_from_mass, vacuous
from beliefdyn.dynamics import combine_conjunctive, combine_disjunctive, condition
from beliefdyn.errors import (
    EvidenceNotContainedError,
    FrameTooLargeError,
    InvalidSpecializationError,
    NotDempsterianError,
    SingularSpecializationError,
)
from beliefdyn.lattice import default_frame
from beliefdyn.specialization import (
    GeneralizationMatrix,
    SpecializationMatrix,
    apply,
    apply_despecialization,
    apply_generalization,
    commute_check,
    conditioning_matrix,
    dempsterian_matrix,
    despecialize_matrix,
    disjunctive_matrix,
    eigen_structure,
    enlargement_matrix,
    idempotence_check,
    incidence_inverse,
    incidence_matrix,
    is_dempsterian,
    is_valid_specialization,
)
from beliefdyn.verify import random_mass, random_specialization

F2 = default_frame(2)
F3 = default_frame(3)


def two_element_example() -> MassFunction:
    """Mass .4 on {b}, .6 on the frame {a,b}."""
    return MassFunction.from_masses(F2, {0b10: 0.4, 0b11: 0.6})


class TestConditioningMatrix:
    def test_full_frame_gives_identity(self):
        s = conditioning_matrix(F3, F3.full)
        assert np.array_equal(s.values, np.eye(8))

    def test_empty_set_sends_everything_to_empty(self):
        s = conditioning_matrix(F3, 0)
        assert np.array_equal(s.values[:, 0], np.ones(8))
        assert s.values[:, 1:].sum() == 0.0

    def test_two_element_rows(self):
        s = conditioning_matrix(F2, 0b10).values
        # row A has its single 1 at column A & {b}
        for a in range(4):
            expected = np.zeros(4)
            expected[a & 0b10] = 1.0
            assert np.array_equal(s[a], expected)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_always_valid_and_dempsterian(self, n):
        # conditioning matrices sit inside the Dempsterian family, exhaustively
        frame = default_frame(n)
        for c in range(frame.size):
            s = conditioning_matrix(frame, c)
            assert is_valid_specialization(s)
            assert is_dempsterian(s)

    def test_rows_exactly_stochastic(self):
        for c in range(8):
            values = conditioning_matrix(F3, c).values
            assert np.array_equal(values.sum(axis=1), np.ones(8))
        for a in range(8):
            values = enlargement_matrix(F3, a).values
            assert np.array_equal(values.sum(axis=1), np.ones(8))
        rng = np.random.default_rng(42)
        s = dempsterian_matrix(random_mass(F3, rng))
        assert is_valid_specialization(s, tol=1e-12)


class TestApply:
    def test_identity_matrix_is_neutral(self):
        rng = np.random.default_rng(0)
        m = random_mass(F3, rng)
        out = apply(m, conditioning_matrix(F3, F3.full))
        np.testing.assert_allclose(out.values, m.values, atol=1e-15)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_conditioning_matrix_matches_direct_rule(self, n):
        frame = default_frame(n)
        rng = np.random.default_rng(80 + n)
        for _ in range(85):
            m = random_mass(frame, rng)
            c = int(rng.integers(frame.size))
            np.testing.assert_allclose(
                apply(m, conditioning_matrix(frame, c)).values,
                condition(m, c).values,
                atol=1e-12,
            )

    def test_vacuous_row_extraction(self):
        # applying any Dempsterian matrix to the vacuous state reads off its top row
        rng = np.random.default_rng(1)
        for _ in range(20):
            m = random_mass(F3, rng)
            np.testing.assert_allclose(
                apply(vacuous(F3), dempsterian_matrix(m)).values, m.values, atol=1e-15
            )

    def test_invalid_matrix_rejected(self):
        bad = SpecializationMatrix(F2, np.full((4, 4), 0.25))
        with pytest.raises(InvalidSpecializationError):
            apply(vacuous(F2), bad)

    def test_mass_totals_preserved(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            m = random_mass(F3, rng)
            s = random_specialization(F3, rng)
            assert apply(m, s).values.sum() == pytest.approx(1.0, abs=1e-12)


class TestDempsterianMatrix:
    def test_categorical_mass_gives_conditioning_matrix(self):
        for c in range(8):
            m = MassFunction.from_masses(F3, {c: 1.0})
            np.testing.assert_allclose(
                dempsterian_matrix(m).values, conditioning_matrix(F3, c).values, atol=1e-15
            )

    def test_vacuous_gives_identity(self):
        assert np.array_equal(dempsterian_matrix(vacuous(F3)).values, np.eye(8))

    def test_two_element_rows(self):
        s = dempsterian_matrix(two_element_example()).values
        expected = np.array(
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.4, 0.6, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.4, 0.6],
            ]
        )
        np.testing.assert_allclose(s, expected, atol=1e-15)

    def test_rows_are_conditionings(self):
        rng = np.random.default_rng(3)
        m = random_mass(F3, rng)
        s = dempsterian_matrix(m).values
        for a in range(8):
            np.testing.assert_allclose(s[a], condition(m, a).values, atol=1e-15)
        np.testing.assert_allclose(s[-1], m.values, atol=1e-15)

    def test_application_is_conjunctive_combination(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            m0 = random_mass(F3, rng)
            m1 = random_mass(F3, rng)
            np.testing.assert_allclose(
                apply(m0, dempsterian_matrix(m1)).values,
                combine_conjunctive(m0, m1).values,
                atol=1e-12,
            )

    def test_commutation_identity(self):
        # m' . S_m equals m . S_m' ; both sides realize the same combination
        rng = np.random.default_rng(5)
        for _ in range(30):
            m0 = random_mass(F3, rng)
            m1 = random_mass(F3, rng)
            np.testing.assert_allclose(
                apply(m0, dempsterian_matrix(m1)).values,
                apply(m1, dempsterian_matrix(m0)).values,
                atol=1e-9,
            )


class TestPredicates:
    def test_identity_is_both(self):
        s = conditioning_matrix(F3, F3.full)
        assert is_valid_specialization(s)
        assert is_dempsterian(s)

    def test_perturbed_rows_stay_valid_but_not_dempsterian(self):
        rng = np.random.default_rng(6)
        base = dempsterian_matrix(random_mass(F3, rng)).values.copy()
        # move a slice of row {a,b}'s mass toward the empty set and renormalize
        row = 0b011
        base[row, 0] += 0.25
        base[row] /= base[row].sum()
        s = SpecializationMatrix(F3, base)
        assert is_valid_specialization(s)
        assert not is_dempsterian(s)

    def test_support_violation_detected(self):
        values = np.eye(4)
        values[0b01, 0b10] = 0.5  # {b} is not a subset of {a}
        values[0b01, 0b01] = 0.5
        assert not is_valid_specialization(SpecializationMatrix(F2, values))

    def test_row_sum_violation_detected(self):
        values = np.eye(4) * 0.9
        assert not is_valid_specialization(SpecializationMatrix(F2, values))


class TestCommutation:
    def test_vacuous_matrix_is_neutral_in_products(self):
        rng = np.random.default_rng(17)
        identity = dempsterian_matrix(vacuous(F3))
        s = dempsterian_matrix(random_mass(F3, rng))
        np.testing.assert_allclose(identity.values @ s.values, s.values, atol=1e-15)
        np.testing.assert_allclose(s.values @ identity.values, s.values, atol=1e-15)

    def test_dempsterian_matrices_commute(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            s1 = dempsterian_matrix(random_mass(F3, rng))
            s2 = dempsterian_matrix(random_mass(F3, rng))
            ok, dev = commute_check(s1, s2)
            assert ok, dev

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_conditioning_products_compose_by_intersection(self, n):
        frame = default_frame(n)
        for c1 in range(frame.size):
            for c2 in range(frame.size):
                product = (
                    conditioning_matrix(frame, c1).values @ conditioning_matrix(frame, c2).values
                )
                assert np.array_equal(product, conditioning_matrix(frame, c1 & c2).values)

    def test_non_dempsterian_has_conditioning_witness(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            s = random_specialization(F3, rng)
            if is_dempsterian(s):
                continue
            worst = max(commute_check(s, conditioning_matrix(F3, c))[1] for c in range(8))
            assert worst > 1e-9


class TestIdempotence:
    def test_conditioning_matrices_idempotent(self):
        for c in range(8):
            assert idempotence_check(conditioning_matrix(F3, c))

    def test_identity_idempotent(self):
        assert idempotence_check(conditioning_matrix(F2, F2.full))

    def test_dempsterian_with_partial_frame_mass_is_not(self):
        m = MassFunction.from_masses(F2, {0b01: 0.5, 0b11: 0.5})
        assert not idempotence_check(dempsterian_matrix(m))


class TestIncidenceTransform:
    def test_one_element_matrices(self):
        f1 = default_frame(1)
        assert np.array_equal(incidence_matrix(f1), [[1.0, 0.0], [1.0, 1.0]])
        assert np.array_equal(incidence_inverse(f1), [[1.0, 0.0], [-1.0, 1.0]])

    @pytest.mark.parametrize("n", range(1, 7))
    def test_right_multiplication_computes_commonality(self, n):
        frame = default_frame(n)
        t = incidence_matrix(frame)
        rng = np.random.default_rng(90 + n)
        for _ in range(35):
            m = random_mass(frame, rng)
            np.testing.assert_allclose(m.values @ t, q_from_mass(m).values, atol=1e-12)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_exact_inverse(self, n):
        frame = default_frame(n)
        product = incidence_matrix(frame) @ incidence_inverse(frame)
        assert np.array_equal(product, np.eye(frame.size))


class TestEigenStructure:
    def test_vacuous_gives_identity_eigenvalues(self):
        structure = eigen_structure(dempsterian_matrix(vacuous(F3)))
        assert np.array_equal(structure.eigenvalues, np.ones(8))
        assert structure.reconstruction_error <= 1e-15

    def test_two_element_diagonal_is_commonality(self):
        s = dempsterian_matrix(two_element_example())
        structure = eigen_structure(s)
        np.testing.assert_allclose(structure.eigenvalues, [1.0, 0.6, 1.0, 0.6], atol=1e-12)
        np.testing.assert_allclose(np.diag(s.values), structure.eigenvalues, atol=1e-15)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_reconstruction_and_left_eigenvectors(self, n):
        frame = default_frame(n)
        rng = np.random.default_rng(60 + n)
        for _ in range(35):
            m = random_mass(frame, rng)
            s = dempsterian_matrix(m)
            structure = eigen_structure(s)
            np.testing.assert_allclose(structure.eigenvalues, q_from_mass(m).values, atol=1e-12)
            assert structure.reconstruction_error <= 1e-9
            residual = structure.t_inverse @ s.values - structure.eigenvalues[:, None] * structure.t_inverse
            assert np.abs(residual).max() <= 1e-9

    def test_determinant_is_eigenvalue_product(self):
        rng = np.random.default_rng(9)
        for n in (1, 2, 3, 4):
            frame = default_frame(n)
            for _ in range(10):
                m = random_mass(frame, rng)
                s = dempsterian_matrix(m)
                assert np.linalg.det(s.values) == pytest.approx(
                    float(np.prod(q_from_mass(m).values)), abs=1e-8
                )

    def test_non_dempsterian_rejected(self):
        values = np.eye(4)
        values[0b11] = [0.5, 0.25, 0.25, 0.0]
        with pytest.raises(NotDempsterianError):
            eigen_structure(SpecializationMatrix(F2, values))


class TestDespecialization:
    def test_inverse_of_identity(self):
        d = despecialize_matrix(dempsterian_matrix(vacuous(F3)))
        assert np.array_equal(d.values, np.eye(8))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_right_inverse_property(self, n):
        frame = default_frame(n)
        rng = np.random.default_rng(70 + n)
        for _ in range(20):
            m = MassFunction(frame, 0.9 * random_mass(frame, rng).values + 0.1 * vacuous(frame).values)
            s = dempsterian_matrix(m)
            d = despecialize_matrix(s)
            assert np.abs(s.values @ d.values - np.eye(frame.size)).max() <= 1e-8

    def test_round_trip_through_combination(self):
        rng = np.random.default_rng(10)
        for _ in range(30):
            m0 = random_mass(F3, rng)
            m1 = MassFunction(F3, 0.9 * random_mass(F3, rng).values + 0.1 * vacuous(F3).values)
            combined = combine_conjunctive(m0, m1)
            recovered = apply_despecialization(combined, despecialize_matrix(dempsterian_matrix(m1)))
            np.testing.assert_allclose(recovered.values, m0.values, atol=1e-8)

    def test_zero_frame_mass_is_singular(self):
        m = MassFunction.from_masses(F2, {0b01: 0.5, 0b10: 0.5})
        with pytest.raises(SingularSpecializationError):
            despecialize_matrix(dempsterian_matrix(m))

    def test_vacuous_does_not_contain_evidence(self):
        d = despecialize_matrix(dempsterian_matrix(two_element_example()))
        with pytest.raises(EvidenceNotContainedError):
            apply_despecialization(vacuous(F2), d)

    def test_identity_despecialization_is_neutral(self):
        rng = np.random.default_rng(11)
        m = random_mass(F3, rng)
        d = despecialize_matrix(dempsterian_matrix(vacuous(F3)))
        np.testing.assert_allclose(apply_despecialization(m, d).values, m.values, atol=1e-12)


class TestEnlargementMatrix:
    def test_empty_set_is_identity(self):
        assert np.array_equal(enlargement_matrix(F3, 0).values, np.eye(8))

    def test_full_frame_vacuates(self):
        g = enlargement_matrix(F3, F3.full)
        rng = np.random.default_rng(12)
        out = apply_generalization(random_mass(F3, rng), g)
        np.testing.assert_allclose(out.values, vacuous(F3).values, atol=1e-12)

    def test_two_element_example(self):
        m = MassFunction.from_masses(F2, {0b10: 1.0})
        out = apply_generalization(m, enlargement_matrix(F2, 0b01))
        assert out.mass(0b11) == pytest.approx(1.0)

    def test_focal_sets_absorb_the_whole_set(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            m = random_mass(F3, rng)
            a = int(rng.integers(8))
            out = apply_generalization(m, enlargement_matrix(F3, a))
            for focal in out.focal_sets():
                assert focal & a == a


class TestDisjunctiveMatrix:
    def test_conflict_indicator_is_identity(self):
        m = MassFunction.from_masses(F3, {0: 1.0})
        assert np.array_equal(disjunctive_matrix(m).values, np.eye(8))

    def test_vacuous_sends_everything_to_frame(self):
        g = disjunctive_matrix(vacuous(F3)).values
        assert np.array_equal(g[:, -1], np.ones(8))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_application_is_disjunctive_combination(self, n):
        frame = default_frame(n)
        rng = np.random.default_rng(30 + n)
        for _ in range(35):
            m0 = random_mass(frame, rng)
            m1 = random_mass(frame, rng)
            np.testing.assert_allclose(
                apply_generalization(m0, disjunctive_matrix(m1)).values,
                combine_disjunctive(m0, m1).values,
                atol=1e-12,
            )

    def test_rows_are_stochastic_with_superset_support(self):
        rng = np.random.default_rng(14)
        g = disjunctive_matrix(random_mass(F3, rng))
        np.testing.assert_allclose(g.values.sum(axis=1), np.ones(8), atol=1e-12)
        for a in range(8):
            for b in range(8):
                if a & ~b:
                    assert g.values[a, b] == 0.0


class TestCaps:
    def test_matrix_cap_enforced(self):
        big = default_frame(11)
        with pytest.raises(FrameTooLargeError):
            conditioning_matrix(big, 0)

    def test_generalization_shape_checked(self):
        with pytest.raises(InvalidSpecializationError):
            GeneralizationMatrix(F2, np.eye(3))
