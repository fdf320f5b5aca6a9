"""Tests for contraction matrices, the equation system, and equivalence."""

import random
from fractions import Fraction

import pytest

from liecontract.cyclo import CycloNumber, omega, one, parse as cparse, root_power, zero
from liecontract.contraction import (
    ConcreteContraction,
    ContractionEquation,
    ContractionError,
    Continuous,
    Discrete,
    NonSolutionError,
    NotComparableError,
    ParseError,
    all_ones,
    build_nonequivalence_system,
    check_solution,
    classify_continuity,
    coset_redundancy,
    equation_for_triple,
    equivalent,
    full_lattice,
    generate_identities,
    generate_system,
    indicator,
    instantiate,
    instantiate_boundary,
    normalization_between,
    normalization_matrix,
    pair_from_text,
    pair_text,
    parse_entry,
    parse_matrix,
    relevant_pairs,
    satisfies_nonequivalence,
    system_orbits,
)
from liecontract.linalg import rank, vec
from liecontract.symmetry import enumerate_group, permutation_of


P = pair_from_text


def concrete(ones, n=3):
    o = one(n)
    return ConcreteContraction({P(t): o for t in ones}, n)


class TestRelevantPairs:
    def test_count(self):
        assert len(relevant_pairs(3)) == 24

    def test_exclusions(self):
        idx = {frozenset(p) for p in relevant_pairs(3)}
        assert frozenset(((0, 1), (0, 2))) not in idx
        assert frozenset(((1, 2), (2, 1))) not in idx  # 2*2 - 1*1 = 3 = 0 mod 3

    def test_canonical_order_starts_at_0110(self):
        assert relevant_pairs(3)[0] == P("(01)(10)")


class TestEntryGrammar:
    @pytest.mark.parametrize(
        "token,sign,coeff,params",
        [
            ("1", 1, 1, ()),
            ("a", 1, 1, ("a",)),
            ("bad", 1, 1, ("a", "b", "d")),
            ("-2ab", -1, 2, ("a", "b")),
            ("0", 1, 0, ()),
        ],
    )
    def test_parse(self, token, sign, coeff, params):
        m = parse_entry(token)
        if coeff == 0:
            assert m.is_zero()
        else:
            assert (m.sign, m.coeff, m.params) == (sign, coeff, params)

    @pytest.mark.parametrize("bad", ["x", "2-", "a-b", ""])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_entry(bad)

    def test_instantiate_monomial(self):
        m = parse_entry("bad")
        val = m.instantiate({"a": cparse("2"), "b": cparse("3"), "d": cparse("1/2")})
        assert val == cparse("3")


ROWS_23_1 = """
. . 1 . . . . .
. . . . . . . .
1 . . . . . . .
. . . . . . . .
. . . . . . . .
. . . . . . . .
. . . . . . . .
. . . . . . . .
"""


class TestParseMatrix:
    def test_single_entry(self):
        m = parse_matrix(ROWS_23_1)
        assert m.nu() == 23
        assert m.entry(P("(01)(10)")).render() == "1"

    def test_irrelevant_position_rejected(self):
        bad = ROWS_23_1.replace(". . 1 . . . . .", "1 . 1 . . . . .", 1)
        # (01)(02) slot now nonzero but matrix asymmetric first; make symmetric
        lines = bad.strip().splitlines()
        lines[1] = "1 . . . . . . ."
        with pytest.raises(ParseError, match="irrelevant"):
            parse_matrix("\n".join(lines))

    def test_asymmetric_rejected(self):
        lines = ROWS_23_1.strip().splitlines()
        lines[2] = ". . . . . . . ."
        with pytest.raises(ParseError, match="symmetric"):
            parse_matrix("\n".join(lines))

    def test_round_trip(self):
        m = parse_matrix(ROWS_23_1)
        assert parse_matrix(m.render_body()) == m


class TestInstantiate:
    def test_missing_binding(self):
        text = ROWS_23_1.replace(" 1 ", " a ")
        lines = text.strip().splitlines()
        lines[2] = "a . . . . . . ."
        m = parse_matrix("\n".join(lines))
        with pytest.raises(ContractionError, match="unbound"):
            instantiate(m, {})

    def test_zero_binding_rejected(self):
        text = ROWS_23_1.replace(" 1 ", " a ")
        lines = text.strip().splitlines()
        lines[2] = "a . . . . . . ."
        m = parse_matrix("\n".join(lines))
        with pytest.raises(ContractionError, match="boundary"):
            instantiate(m, {"a": zero(3)})

    def test_boundary_path_recomputes_nu(self):
        text = ROWS_23_1.replace(" 1 ", " a ")
        lines = text.strip().splitlines()
        lines[2] = "a . . . . . . ."
        m = parse_matrix("\n".join(lines))
        conc, nu = instantiate_boundary(m, {"a": zero(3)})
        assert nu == 24
        assert conc.support() == frozenset()


class TestSystem:
    def test_48_equations_two_orbits(self):
        sys3 = generate_system(3)
        assert len(sys3) == 48
        orbits = system_orbits(sys3, enumerate_group(3, det_plus_only=True))
        assert sorted(len(o) for o in orbits) == [24, 24]

    def test_representative_equation(self):
        eq = equation_for_triple([(0, 1), (0, 2), (1, 0)])
        ref = ContractionEquation(
            (
                (one(3), P("(02)(10)"), P("(01)(12)")),
                (-one(3), P("(01)(10)"), P("(02)(11)")),
            ),
            ((0, 1), (0, 2), (1, 0)),
        )
        assert eq.canonical() == ref.canonical()

    def test_identically_satisfied_triples_dropped(self):
        # 56 triples minus the 8 with vanishing index sum
        sl3_idx = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 1), (2, 2), (1, 2), (2, 1)]
        import itertools
        zero_sum = [
            t for t in itertools.combinations(sl3_idx, 3)
            if sum(i for i, _ in t) % 3 == 0 and sum(j for _, j in t) % 3 == 0
        ]
        assert len(zero_sum) == 8

    def test_h3_stability(self):
        # pushing any equation through any permutation lands on a system equation
        sys3 = generate_system(3)
        canon = {eq.canonical() for eq in sys3}
        for mat in enumerate_group(3)[::7]:
            perm = permutation_of(mat)
            for eq in sys3[::5]:
                moved = ContractionEquation(
                    tuple((c, frozenset(perm[i] for i in p), frozenset(perm[i] for i in q))
                          for c, p, q in eq.terms),
                    tuple(perm[i] for i in eq.source_triple),
                )
                assert moved.canonical() in canon

    def test_three_term_for_n5(self):
        eq = equation_for_triple([(0, 1), (1, 0), (3, 1)], 5)
        assert len(eq.terms) == 3


class TestCheckSolution:
    def test_all_ones(self):
        ok, _ = check_solution(all_ones())
        assert ok

    def test_broken_witness(self):
        vals = all_ones().as_pair_dict()
        vals[P("(01)(10)")] = zero(3)
        ok, witness = check_solution(ConcreteContraction(vals))
        assert not ok
        assert witness.triple_text() == "(01)(02)(10)"


class TestCosetRedundancy:
    def test_eight_cosets(self):
        cosets, count = coset_redundancy()
        assert count == 8
        assert all(len(c) == 3 for c in cosets)
        flat = [m for c in cosets for m in c]
        assert len(set(flat)) == 24


class TestIdentities:
    def test_counts(self):
        ids = generate_identities()
        assert len(ids) == 104
        assert sum(1 for r in ids if r.order == 2) == 24

    def test_all_in_left_kernel(self):
        lat = full_lattice()
        for rel in generate_identities():
            u = rel.exponents
            image = [sum(u[i] * lat.matrix[i][m] for i in range(24)) for m in range(8)]
            assert all(v == 0 for v in image)

    def test_lattice_shape(self):
        lat = full_lattice()
        assert all(sorted(r) == [-1, 0, 0, 0, 0, 0, 1, 1] for r in lat.matrix)
        assert len(lat.left_kernel_basis) == 16
        assert rank([vec(3, r) for r in lat.matrix], 8) == 8

    def test_violation_example(self):
        # support of the third-order representative's left side only
        x = concrete(["(01)(10)", "(01)(12)", "(02)(21)"])
        rel = next(r for r in generate_identities() if r.order == 3)
        ids = generate_identities()
        violated = [r for r in ids if not r.holds_for(x)]
        assert violated


class TestNormalization:
    def test_reflexive(self):
        x = all_ones()
        cert, violated = normalization_between(x, x, want_scalings=True)
        assert cert is not None and violated is None
        assert cert.scalings is not None

    def test_scaling_reachable(self):
        rng = random.Random(4)
        a = {}
        for idx in [(0, 1), (0, 2), (1, 0), (2, 0), (1, 1), (2, 2), (1, 2), (2, 1)]:
            a[idx] = CycloNumber(3, (Fraction(rng.randint(1, 9)), Fraction(rng.randint(0, 3))))
        y = normalization_matrix(a)
        cert, violated = normalization_between(all_ones(), y)
        assert cert is not None

    def test_single_scaled_entry_violates(self):
        vals = all_ones().as_pair_dict()
        vals[P("(01)(10)")] = CycloNumber.from_rational(3, 2)
        y = ConcreteContraction(vals)
        cert, violated = normalization_between(all_ones(), y)
        assert cert is None
        assert violated is not None

    def test_support_mismatch(self):
        with pytest.raises(NotComparableError):
            normalization_between(all_ones(), concrete(["(01)(10)"]))


class TestEquivalent:
    def test_self(self):
        ok, witness = equivalent(all_ones(), all_ones())
        assert ok

    def test_permuted_single_entry(self):
        x = concrete(["(01)(10)"])
        perm = permutation_of((1, 2, 0, 1))
        ok, _ = equivalent(x, x.permuted(perm))
        assert ok

    def test_non_solution_rejected(self):
        vals = all_ones().as_pair_dict()
        vals[P("(01)(10)")] = zero(3)
        with pytest.raises(NonSolutionError):
            equivalent(ConcreteContraction(vals), all_ones())


class TestContinuity:
    def test_all_ones_continuous_zero_weights(self):
        res = classify_continuity(all_ones())
        assert isinstance(res, Continuous)
        assert set(res.weights) == {0}

    def test_single_entry_continuous(self):
        res = classify_continuity(concrete(["(01)(10)"]))
        assert isinstance(res, Continuous)

    def test_weights_certify_path(self):
        x = concrete(["(01)(10)"])
        res = classify_continuity(x)
        lat = full_lattice()
        pos = {p: i for i, p in enumerate(relevant_pairs(3))}
        for p in relevant_pairs(3):
            e = sum(res.weights[m] * lat.matrix[pos[p]][m] for m in range(8))
            if x.value(p).is_zero():
                assert e >= 1
            else:
                assert e == 0

    def test_non_solution_rejected(self):
        vals = all_ones().as_pair_dict()
        vals[P("(01)(10)")] = zero(3)
        with pytest.raises(NonSolutionError):
            classify_continuity(ConcreteContraction(vals))


class TestNonEquivalenceSystem:
    def test_single_pair_hits_all(self):
        cons = build_nonequivalence_system([P("(01)(10)")])
        assert len(cons) == 24
        assert {next(iter(c)) for c in cons} == set(relevant_pairs(3))

    def test_pair_product_present(self):
        cons = build_nonequivalence_system([P("(01)(10)"), P("(22)(21)")])
        assert frozenset((P("(01)(10)"), P("(22)(21)"))) in cons

    def test_triple_product_shape(self):
        cons = build_nonequivalence_system(
            [P("(01)(10)"), P("(10)(11)"), P("(01)(22)")])
        assert all(len(c) == 3 for c in cons)

    def test_satisfaction(self):
        cons = build_nonequivalence_system([P("(01)(10)")])
        ok, _ = satisfies_nonequivalence(ConcreteContraction({}), cons)
        assert ok
        ok, witness = satisfies_nonequivalence(all_ones(), cons)
        assert not ok
