"""Tests for the structure-constant core and the Pauli-graded sl(n,C)."""

import random
from fractions import Fraction

import pytest

from liecontract.cyclo import CycloNumber, omega, one, root_power, zero
from liecontract.liealg import (
    abelian_algebra,
    apply_contraction,
    dump,
    from_brackets,
    index_add,
    jacobi_defect,
    pauli_algebra,
    pauli_indices,
    trace_form,
    transformed,
)
from liecontract.linalg import det, rank


CANONICAL_8 = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 1), (2, 2), (1, 2), (2, 1)]


def test_canonical_index_order():
    assert pauli_indices(3) == CANONICAL_8
    assert len(pauli_indices(5)) == 24


def test_unsupported_n():
    with pytest.raises(Exception):
        pauli_algebra(7)


class TestPauliAlgebra:
    def test_x01_x10_bracket(self):
        sl3 = pauli_algebra(3)
        # [X_01, X_10] = (w - 1) X_11
        i, j = 0, 2
        targets = sl3.constants.entry(i, j)
        assert targets == {4: omega() - 1}

    def test_x01_x02_vanishes(self):
        sl3 = pauli_algebra(3)
        assert sl3.constants.entry(0, 1) == {}

    def test_n5_bracket(self):
        sl5 = pauli_algebra(5)
        pos = sl5.grade_position()
        i, j = pos[(0, 1)], pos[(1, 0)]
        targets = sl5.constants.entry(i, j)
        assert targets == {pos[(1, 1)]: root_power(5, 1) - 1}

    @pytest.mark.parametrize("n", [3, 5])
    def test_grading_compatibility(self, n):
        alg = pauli_algebra(n)
        pos = alg.grade_position()
        for (i, j), targets in alg.constants.items():
            expected = index_add(alg.grading[i], alg.grading[j], n)
            assert set(targets) == {pos[expected]}

    @pytest.mark.parametrize("n", [3, 5])
    def test_relevance_predicate(self, n):
        # zero bracket exactly when s r' = r s' (mod n)
        alg = pauli_algebra(n)
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                (r, s), (rp, sp) = alg.grading[i], alg.grading[j]
                vanishes = (s * rp - r * sp) % n == 0
                assert (alg.constants.entry(i, j) == {}) == vanishes

    @pytest.mark.parametrize("n", [3, 5])
    def test_jacobi_holds(self, n):
        assert jacobi_defect(pauli_algebra(n)) == []


class TestBracket:
    def test_antisymmetry_on_basis(self):
        sl3 = pauli_algebra(3)
        e1 = sl3.basis_vector(0)
        assert all(c.is_zero() for c in sl3.bracket(e1, e1))

    def test_e1_e3(self):
        sl3 = pauli_algebra(3)
        out = sl3.bracket(sl3.basis_vector(0), sl3.basis_vector(2))
        expected = [zero(3)] * 8
        expected[4] = omega() - 1
        assert list(out) == expected

    def test_abelian(self):
        alg = abelian_algebra(8)
        rng = random.Random(3)
        for _ in range(10):
            x = tuple(CycloNumber(3, (rng.randint(-5, 5), rng.randint(-5, 5))) for _ in range(8))
            y = tuple(CycloNumber(3, (rng.randint(-5, 5), rng.randint(-5, 5))) for _ in range(8))
            assert all(c.is_zero() for c in alg.bracket(x, y))

    def test_length_mismatch(self):
        sl3 = pauli_algebra(3)
        with pytest.raises(ValueError):
            sl3.bracket(sl3.basis_vector(0)[:5], sl3.basis_vector(1))

    def test_bilinearity_random(self):
        sl3 = pauli_algebra(3)
        rng = random.Random(11)
        for _ in range(50):
            x, y, z = (
                tuple(CycloNumber(3, (rng.randint(-4, 4), rng.randint(-4, 4))) for _ in range(8))
                for _ in range(3)
            )
            lhs = sl3.bracket(x, tuple(a + b for a, b in zip(y, z)))
            rhs = tuple(a + b for a, b in zip(sl3.bracket(x, y), sl3.bracket(x, z)))
            assert lhs == rhs


class TestJacobiDefect:
    def test_broken_contraction_detected(self):
        sl3 = pauli_algebra(3)
        eps = {}
        for i in range(8):
            for j in range(i + 1, 8):
                if sl3.constants.entry(i, j):
                    eps[frozenset((sl3.grading[i], sl3.grading[j]))] = one(3)
        eps[frozenset(((0, 1), (1, 0)))] = zero(3)
        broken = apply_contraction(sl3, eps)
        assert jacobi_defect(broken) != []

    def test_abelian_clean(self):
        assert jacobi_defect(abelian_algebra(8)) == []


class TestApplyContraction:
    def test_all_ones_is_identity(self):
        sl3 = pauli_algebra(3)
        eps = {}
        for i in range(8):
            for j in range(i + 1, 8):
                eps[frozenset((sl3.grading[i], sl3.grading[j]))] = one(3)
        assert apply_contraction(sl3, eps) == sl3

    def test_all_zeros_is_abelian(self):
        sl3 = pauli_algebra(3)
        contracted = apply_contraction(sl3, {})
        assert contracted.constants.table == {}

    def test_single_pair(self):
        sl3 = pauli_algebra(3)
        eps = {frozenset(((0, 1), (1, 0))): one(3)}
        contracted = apply_contraction(sl3, eps)
        assert list(contracted.constants.table) == [(0, 2)]
        assert contracted.constants.entry(0, 2) == {4: omega() - 1}

    def test_ungraded_rejected(self):
        with pytest.raises(ValueError):
            apply_contraction(from_brackets(3, {(0, 1): {2: one(3)}}), {})


class TestTraceForm:
    def test_killing_values(self):
        sl3 = pauli_algebra(3)
        k = trace_form(sl3)
        assert k[0][1] == 18  # K(X_01, X_02)
        assert k[0][0].is_zero()  # K(X_01, X_01): off-grade

    def test_killing_nondegenerate(self):
        sl3 = pauli_algebra(3)
        assert not det(trace_form(sl3)).is_zero()

    def test_abelian_zero(self):
        alg = abelian_algebra(4)
        k = trace_form(alg)
        assert all(c.is_zero() for row in k for c in row)

    def test_restricted_shape(self):
        sl3 = pauli_algebra(3)
        sub = [sl3.basis_vector(0), sl3.basis_vector(1)]
        k = trace_form(sl3, restrict_to=sub)
        assert len(k) == 8 and len(k[0]) == 2
        assert k[0][1] == 18


def test_transformed_preserves_jacobi():
    sl3 = pauli_algebra(3)
    rng = random.Random(7)
    while True:
        t = [[CycloNumber(3, (rng.randint(-2, 2), rng.randint(-2, 2))) for _ in range(8)]
             for _ in range(8)]
        cols = [[t[a][i] for a in range(8)] for i in range(8)]
        if not det(cols).is_zero():
            break
    moved = transformed(sl3, t)
    assert jacobi_defect(moved) == []
    assert moved.constants.table != {}


def test_dump_format():
    heis = from_brackets(3, {(1, 2): {0: one(3)}})
    assert dump(heis) == "[e_2,e_3] = e_1"
    sl3 = pauli_algebra(3)
    text = dump(sl3)
    assert "[e_1,e_3] = (-1+w)*e_5" in text.splitlines()[0]
