"""Tests for the grading symmetry group and its actions."""

import pytest

from liecontract.cyclo import one, zero
from liecontract.liealg import pauli_indices
from liecontract.symmetry import (
    act_on_contraction,
    canonical_tuple,
    enumerate_group,
    group_mul,
    orbit_of_tuple,
    pair_classes,
    permutation_of,
)

X = (1, 2, 0, 1)  # the order-3 element used for the coset analysis


def relevant_pairs_raw(n=3):
    idx = pauli_indices(n)
    out = []
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            (i, j), (k, l) = idx[a], idx[b]
            if (j * k - i * l) % n != 0:
                out.append(frozenset((idx[a], idx[b])))
    return out


class TestEnumerateGroup:
    def test_h3_has_48_elements(self):
        assert len(enumerate_group(3)) == 48

    def test_sl2z3_has_24_elements(self):
        assert len(enumerate_group(3, det_plus_only=True)) == 24

    def test_n2_brute_force(self):
        # over Z_2 both determinant signs coincide: the 6 invertible matrices
        assert len(enumerate_group(2)) == 6

    def test_deterministic_order(self):
        g = enumerate_group(3)
        assert g == sorted(g)

    def test_closed_under_product(self):
        g = set(enumerate_group(3))
        sl = list(enumerate_group(3, det_plus_only=True))
        for a in sl[:6]:
            for b in sl[:6]:
                assert group_mul(a, b, 3) in g


class TestPermutationOf:
    def test_identity(self):
        perm = permutation_of((1, 0, 0, 1))
        assert all(perm[i] == i for i in perm)

    def test_x_matrix(self):
        perm = permutation_of(X)
        assert perm[(0, 1)] == (0, 1)
        assert perm[(1, 0)] == (1, 2)

    def test_det_minus_one_is_bijection(self):
        perm = permutation_of((0, 1, 1, 0))
        assert sorted(perm.values()) == sorted(perm.keys())

    def test_composition_is_diagrammatic(self):
        # row-vector action: v (AB) = (vA) B
        g = enumerate_group(3)
        a, b = g[5], g[17]
        pa, pb, pab = permutation_of(a), permutation_of(b), permutation_of(group_mul(a, b, 3))
        assert all(pab[v] == pb[pa[v]] for v in pab)


class TestOrbits:
    def test_two_triple_orbits_of_24(self):
        sl = enumerate_group(3, det_plus_only=True)
        o1 = orbit_of_tuple([(0, 1), (0, 2), (1, 0)], sl)
        o2 = orbit_of_tuple([(0, 1), (1, 0), (1, 1)], sl)
        assert len(o1) == 24
        assert len(o2) == 24
        assert not (o1 & o2)

    def test_orbits_partition(self):
        sl = enumerate_group(3, det_plus_only=True)
        seen = {}
        for t in [[(0, 1), (0, 2), (1, 0)], [(0, 2), (1, 0), (1, 2)], [(0, 1), (1, 0), (1, 1)]]:
            orb = frozenset(orbit_of_tuple(t, sl))
            key = canonical_tuple(t)
            for prev in seen.values():
                assert prev == orb or not (prev & orb)
            seen[key] = orb

    def test_single_pair_orbit_covers_relevant_pairs(self):
        h3 = enumerate_group(3)
        orbit = orbit_of_tuple([(0, 1), (1, 0)], h3)
        expected = {canonical_tuple(p) for p in relevant_pairs_raw()}
        assert orbit == expected
        assert len(orbit) == 24


class TestActOnContraction:
    def test_identity_fixes(self):
        eps = {frozenset(((0, 1), (1, 0))): one(3)}
        perm = permutation_of((1, 0, 0, 1))
        assert act_on_contraction(eps, perm) == eps

    def test_moves_single_entry(self):
        eps = {frozenset(((0, 1), (1, 0))): one(3)}
        out = act_on_contraction(eps, permutation_of(X))
        assert out == {frozenset(((0, 1), (1, 2))): one(3)}

    def test_irrelevant_positions_stay_zero(self):
        # acting on a full solution support never creates an irrelevant key
        relevant = set(relevant_pairs_raw())
        eps = {p: one(3) for p in relevant}
        for mat in enumerate_group(3):
            out = act_on_contraction(eps, permutation_of(mat))
            assert set(out) == relevant


class TestPairClasses:
    def test_table_structure(self):
        h3 = enumerate_group(3)
        classes = pair_classes([(0, 1), (1, 0)], h3, relevant_pairs_raw())
        assert sorted(len(c) for c in classes) == [1, 2, 2, 2, 2, 2, 4, 4, 4]

    def test_stated_memberships(self):
        h3 = enumerate_group(3)
        classes = pair_classes([(0, 1), (1, 0)], h3, relevant_pairs_raw())
        as_sets = [frozenset(c) for c in classes]
        cls1 = frozenset({
            frozenset(((1, 1), (1, 2))), frozenset(((1, 1), (2, 1))),
            frozenset(((2, 2), (1, 2))), frozenset(((2, 2), (2, 1))),
        })
        assert cls1 in as_sets
        assert frozenset({frozenset(((0, 2), (2, 0)))}) in as_sets

    def test_irrelevant_k_rejected(self):
        h3 = enumerate_group(3)
        with pytest.raises(ValueError):
            pair_classes([(0, 1), (0, 2)], h3, relevant_pairs_raw())
