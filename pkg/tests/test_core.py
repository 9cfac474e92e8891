import numpy as np
import pytest

from csm.core import (
    Context,
    ContextError,
    ContextTransformation,
    Modality,
    NonOrthonormalBasis,
    NotUnitary,
    Relation,
    born_probability,
    classify_pair,
    context_from_basis,
    max_exclusive_set,
    transform_context,
    transition_table,
)
from csm.epr import coupled_basis_context
from csm.linalg import DimensionMismatch
from csm.spin import polarization_context

from conftest import random_frame, random_unitary


def check_context(c, tol=1e-10):
    n = c.dim
    for p in c.projectors:
        assert np.max(np.abs(p - p.conj().T)) <= tol
        assert np.max(np.abs(p @ p - p)) <= tol
        assert abs(np.trace(p) - 1) <= tol
    for a in range(n):
        for b in range(n):
            assert abs(np.trace(c.projectors[a] @ c.projectors[b]) - (a == b)) <= tol
    assert np.max(np.abs(sum(c.projectors) - np.eye(n))) <= tol


class TestContextFromBasis:
    def test_standard_basis(self):
        c = context_from_basis(np.eye(2))
        np.testing.assert_array_equal(c.projectors[0], np.diag([1, 0]))
        np.testing.assert_array_equal(c.projectors[1], np.diag([0, 1]))

    def test_diagonal_basis(self):
        r = 1 / np.sqrt(2)
        c = context_from_basis([(r, r), (r, -r)])
        assert c.dim == 2
        check_context(c)

    def test_repeated_vector(self):
        with pytest.raises(NonOrthonormalBasis) as err:
            context_from_basis([(1, 0), (1, 0)])
        assert err.value.worst_deviation == pytest.approx(1.0)

    def test_wrong_count(self):
        with pytest.raises(DimensionMismatch):
            context_from_basis([(1, 0, 0), (0, 1, 0)])

    def test_incomplete_frame_rejected(self):
        with pytest.raises(ContextError):
            Context((np.diag([1, 0, 0]), np.diag([0, 1, 0]), np.diag([0, 1, 0])))

    def test_immutable(self):
        c = context_from_basis(np.eye(2))
        with pytest.raises(ValueError):
            c.projectors[0][0, 0] = 5

    def test_set_equality_ignores_order(self):
        a = context_from_basis(np.eye(3))
        b = context_from_basis(np.eye(3)[[2, 0, 1]])
        assert a == b
        assert not a.ordered_equal(b)
        assert a.ordered_equal(context_from_basis(np.eye(3)))


class TestBorn:
    def test_self(self):
        m = polarization_context(0.3).modality(0)
        assert born_probability(m, m) == pytest.approx(1.0, abs=1e-15)

    def test_orthogonal(self):
        c = polarization_context(0.3)
        assert born_probability(c.modality(0), c.modality(1)) == pytest.approx(0.0, abs=1e-15)

    def test_malus_60_degrees(self):
        h0 = polarization_context(0.0).modality(0)
        h60 = polarization_context(np.radians(60)).modality(0)
        assert born_probability(h0, h60) == pytest.approx(0.25, abs=1e-15)

    def test_symmetric(self, rng):
        for dim in range(2, 7):
            for _ in range(20):
                a = Modality.from_vector(random_frame(dim, rng)[0])
                b = Modality.from_vector(random_frame(dim, rng)[0])
                assert abs(born_probability(a, b) - born_probability(b, a)) <= 1e-14

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            born_probability(np.diag([1.0, 0]), np.diag([1.0, 0, 0]))


class TestTransitionTable:
    def test_identity_for_same_context(self, rng):
        c = context_from_basis(random_frame(4, rng))
        np.testing.assert_allclose(transition_table(c, c).p, np.eye(4), atol=1e-12)

    def test_polarizers_45(self):
        t = transition_table(polarization_context(0.0), polarization_context(np.pi / 4))
        np.testing.assert_allclose(t.p, np.full((2, 2), 0.5), atol=1e-15)

    def test_indexing_is_to_given_from(self, rng):
        c1 = context_from_basis(random_frame(3, rng))
        c2 = context_from_basis(random_frame(3, rng))
        t = transition_table(c1, c2)
        for m in range(3):
            for n in range(3):
                assert t.p[m, n] == pytest.approx(born_probability(c2.modality(m), c1.modality(n)), abs=1e-14)

    @pytest.mark.parametrize("dim", [2, 3, 4, 5, 6])
    def test_doubly_stochastic(self, rng, dim):
        for _ in range(50):
            c1 = context_from_basis(random_frame(dim, rng))
            c2 = context_from_basis(random_frame(dim, rng))
            assert transition_table(c1, c2).stochasticity_error() <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            transition_table(context_from_basis(np.eye(2)), context_from_basis(np.eye(3)))


class TestTransform:
    def test_identity(self, rng):
        c = context_from_basis(random_frame(3, rng))
        assert transform_context(c, ContextTransformation(np.eye(3))).ordered_equal(c)

    def test_random_unitaries_dim6(self, rng):
        c = context_from_basis(np.eye(6))
        for _ in range(200):
            out = transform_context(c, ContextTransformation(random_unitary(6, rng)))
            assert out.dim == 6
            check_context(out)

    def test_inverse(self, rng):
        c = context_from_basis(random_frame(4, rng))
        g = ContextTransformation(random_unitary(4, rng))
        back = transform_context(transform_context(c, g), g.inverse())
        assert back.ordered_equal(c, 1e-10)

    def test_composition(self, rng):
        c = context_from_basis(random_frame(3, rng))
        g, h = (ContextTransformation(random_unitary(3, rng)) for _ in range(2))
        assert transform_context(transform_context(c, g), h).ordered_equal(transform_context(c, g.then(h)))

    def test_non_unitary(self):
        with pytest.raises(NotUnitary):
            ContextTransformation(2 * np.eye(2))


class TestClassify:
    def test_same_context(self):
        c = polarization_context(0.2)
        assert classify_pair(c.modality(0), c.modality(1)) is Relation.MUTUALLY_EXCLUSIVE

    def test_incompatible_45(self):
        a = polarization_context(0.0).modality(0)
        b = polarization_context(np.pi / 4).modality(0)
        assert classify_pair(a, b) is Relation.INCOMPATIBLE

    def test_coupled_uncoupled_identity(self):
        up_up = Modality.from_vector([1, 0, 0, 0], "{Sz1,Sz2}", 0)
        triplet_top = coupled_basis_context().modality(0)
        assert classify_pair(up_up, triplet_top, tol=1e-12) is Relation.IDENTICAL

    def test_symmetric(self, rng):
        for _ in range(100):
            a = Modality.from_vector(random_frame(3, rng)[0])
            b = Modality.from_vector(random_frame(3, rng)[0])
            assert classify_pair(a, b) is classify_pair(b, a)

    def test_near_one_is_identical(self):
        eps = 1e-6
        a = Modality.from_vector([1, 0])
        b = Modality.from_vector([np.cos(eps), np.sin(eps)])
        # p = cos^2(1e-6) is within 1e-10 of 1 but the projectors differ by ~1e-6
        assert classify_pair(a, b) is Relation.IDENTICAL


class TestMaxExclusiveSet:
    def test_one_context(self, rng):
        c = context_from_basis(random_frame(5, rng))
        assert max_exclusive_set(c.modalities()) == 5

    def test_two_polarizer_contexts(self):
        mods = polarization_context(0.0).modalities() + polarization_context(np.pi / 4).modalities()
        assert max_exclusive_set(mods) == 2

    def test_empty(self):
        assert max_exclusive_set([]) == 0

    def test_shared_element(self):
        # frames {e0, e1, e2} and {e0, (e1+e2)/r2, (e1-e2)/r2} share e0; best set is still 3
        r = 1 / np.sqrt(2)
        a = context_from_basis(np.eye(3))
        b = context_from_basis([(1, 0, 0), (0, r, r), (0, r, -r)])
        assert max_exclusive_set(a.modalities() + b.modalities()) == 3

    def test_never_exceeds_dim(self, rng):
        for dim in (2, 3, 4):
            pool = []
            for _ in range(6):
                pool += context_from_basis(random_frame(dim, rng)).modalities()
            pool += context_from_basis(np.eye(dim)).modalities()
            assert max_exclusive_set(pool) == dim

    def test_mixed_dims(self):
        with pytest.raises(DimensionMismatch):
            max_exclusive_set([Modality.from_vector([1, 0]), Modality.from_vector([1, 0, 0])])
