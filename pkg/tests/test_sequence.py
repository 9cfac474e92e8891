import itertools

import numpy as np
import pytest

from csm.core import Modality, context_from_basis, transition_table
from csm.linalg import DimensionMismatch
from csm.sequence import (
    Chain,
    ChainTooLong,
    max_binomial_z,
    ordering_comparison,
    run_chain_exact,
    sample_chain,
)
from csm.spin import polarization_context

from conftest import random_frame, random_unit_vector


def lueders_oracle(psi, frames):
    """Outcome-tuple probabilities by explicit projection of a state vector."""
    out = {}
    for outcome in itertools.product(*(range(len(f)) for f in frames)):
        v = np.asarray(psi, dtype=complex)
        for basis, k in zip(frames, outcome):
            b = np.asarray(basis[k], dtype=complex)
            v = b * np.vdot(b, v)
        out[outcome] = float(np.vdot(v, v).real)
    return out


def pol_chain(*angles_deg, initial_deg=0.0):
    steps = tuple(polarization_context(np.radians(a)) for a in angles_deg)
    return Chain(polarization_context(np.radians(initial_deg)).modality(0), steps)


class TestExact:
    def test_fig1a(self):
        assert run_chain_exact(pol_chain(0, 45, 90))[(0, 0, 0)] == pytest.approx(0.25, abs=1e-12)

    def test_fig1b(self):
        assert run_chain_exact(pol_chain(0, 90, 45))[(0, 0, 0)] == pytest.approx(0.0, abs=1e-12)

    def test_repeatability(self):
        d = run_chain_exact(pol_chain(0, 0, 0))
        assert d[(0, 0, 0)] == pytest.approx(1.0, abs=1e-15)

    def test_matches_lueders_oracle(self, rng):
        for _ in range(30):
            dim = int(rng.integers(2, 5))
            k = int(rng.integers(1, 5))
            psi = random_unit_vector(dim, rng)
            frames = [random_frame(dim, rng) for _ in range(k)]
            chain = Chain(Modality.from_vector(psi), tuple(context_from_basis(f) for f in frames))
            dist = run_chain_exact(chain)
            for outcome, p in lueders_oracle(psi, frames).items():
                assert dist[outcome] == pytest.approx(p, abs=1e-12)

    def test_normalized(self, rng):
        for _ in range(30):
            dim = int(rng.integers(2, 7))
            k = int(rng.integers(1, 7 if dim <= 4 else 5))
            chain = Chain(Modality.from_vector(random_unit_vector(dim, rng)),
                          tuple(context_from_basis(random_frame(dim, rng)) for _ in range(k)))
            assert abs(run_chain_exact(chain).total() - 1) <= 1e-12

    def test_first_marginal_is_table_row(self, rng):
        c0 = context_from_basis(random_frame(3, rng))
        steps = tuple(context_from_basis(random_frame(3, rng)) for _ in range(3))
        dist = run_chain_exact(Chain(c0.modality(1), steps))
        np.testing.assert_allclose(dist.marginal(0), transition_table(c0, steps[0]).p[:, 1], atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Chain(Modality.from_vector([1, 0]), (context_from_basis(np.eye(3)),))

    def test_length_guard(self):
        c = context_from_basis(np.eye(2))
        Chain(c.modality(0), (c,) * 12)
        with pytest.raises(ChainTooLong):
            Chain(c.modality(0), (c,) * 13)


class TestOrdering:
    def test_fig1_orders(self):
        cmp = ordering_comparison(polarization_context(0.0).modality(0),
                                  [polarization_context(np.radians(a)) for a in (0, 45, 90)], [0, 2, 1])
        assert cmp.original[(0, 0, 0)] == pytest.approx(0.25, abs=1e-12)
        assert cmp.permuted[(0, 0, 0)] == pytest.approx(0.0, abs=1e-12)

    def test_identical_contexts_commute(self, rng):
        c = context_from_basis(random_frame(3, rng))
        cmp = ordering_comparison(Modality.from_vector(random_unit_vector(3, rng)), [c, c, c], [2, 0, 1])
        assert cmp.tv_distance <= 1e-12

    def test_two_steps_generally_differ(self, rng):
        h0 = polarization_context(0.0).modality(0)
        for t1, t2 in rng.uniform(0.1, 1.4, (20, 2)):
            if abs(t1 - t2) < 0.05:
                continue
            cmp = ordering_comparison(h0, [polarization_context(t1), polarization_context(t2)], [1, 0])
            a = lueders_oracle([1, 0], [[(np.cos(t), np.sin(t)), (-np.sin(t), np.cos(t))] for t in (t1, t2)])
            b = lueders_oracle([1, 0], [[(np.cos(t), np.sin(t)), (-np.sin(t), np.cos(t))] for t in (t2, t1)])
            expected = 0.5 * sum(abs(a[o] - b[o]) for o in a)
            assert cmp.tv_distance == pytest.approx(expected, abs=1e-12)
            assert cmp.tv_distance > 1e-3

    def test_invalid_permutation(self):
        c = polarization_context(0.0)
        with pytest.raises(ValueError):
            ordering_comparison(c.modality(0), [c, c], [0, 0])


class TestSampling:
    def test_deterministic_chain(self):
        s = sample_chain(pol_chain(30, 30, 30, initial_deg=30), 5000, seed=1)
        assert s.counts == {(0, 0, 0): 5000}

    def test_same_seed_same_counts(self):
        chain = pol_chain(0, 45, 90)
        assert sample_chain(chain, 20000, 9).counts == sample_chain(chain, 20000, 9).counts

    def test_different_seed_differs(self):
        chain = pol_chain(0, 45, 90)
        assert sample_chain(chain, 20000, 9).counts != sample_chain(chain, 20000, 10).counts

    def test_impossible_outcomes_never_drawn(self):
        s = sample_chain(pol_chain(0, 90, 45), 50000, seed=3)
        assert all(o[1] == 1 and o[0] == 0 for o in s.counts)

    @pytest.mark.parametrize("workers", [1, 2, 3, 8])
    def test_parallelism_invariant(self, workers):
        chain = pol_chain(0, 30, 75, 10)
        ref = sample_chain(chain, 30001, seed=77, workers=1)
        assert sample_chain(chain, 30001, seed=77, workers=workers).counts == ref.counts

    def test_convergence_random_chain(self, rng):
        dim = 3
        chain = Chain(Modality.from_vector(random_unit_vector(dim, rng)),
                      tuple(context_from_basis(random_frame(dim, rng)) for _ in range(3)))
        s = sample_chain(chain, 200_000, seed=5)
        assert sum(s.counts.values()) == 200_000
        assert max_binomial_z(run_chain_exact(chain), s) <= 5.0

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            sample_chain(pol_chain(0), 0, 1)
        with pytest.raises(ValueError):
            sample_chain(pol_chain(0), 10, 1, workers=0)
        with pytest.raises(ValueError):
            sample_chain(pol_chain(0), 10, 1, backend="fortran")
