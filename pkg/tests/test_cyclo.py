"""Tests for exact cyclotomic arithmetic."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecontract.cyclo import (
    CycloNumber,
    UnsupportedOrderError,
    arith,
    invert,
    omega,
    one,
    parse,
    render,
    root_power,
    zero,
)


def C3(a, b):
    return CycloNumber(3, (Fraction(a), Fraction(b)))


class TestRootPower:
    def test_identity_case(self):
        assert root_power(3, 0) == one(3)

    def test_omega_squared_is_reduced(self):
        assert root_power(3, 2) == C3(-1, -1)

    def test_exponent_reduction_mod_5(self):
        assert root_power(5, 7) == root_power(5, 2)

    @pytest.mark.parametrize("n", [4, 6, 1, 0, -3])
    def test_nonprime_rejected(self, n):
        with pytest.raises(UnsupportedOrderError):
            root_power(n, 1)

    @pytest.mark.parametrize("n", [3, 5])
    def test_roots_sum_to_zero(self, n):
        total = zero(n)
        for k in range(n):
            total = total + root_power(n, k)
        assert total.is_zero()

    @pytest.mark.parametrize("n", [3, 5])
    def test_power_law(self, n):
        for k in range(2 * n + 1):
            for m in range(2 * n + 1):
                assert root_power(n, k) * root_power(n, m) == root_power(n, k + m)


class TestArith:
    def test_cyclotomic_relation(self):
        w = omega()
        assert w + w * w == C3(-1, 0)

    def test_product_expansion(self):
        # (w - 1)(w^2 - 1) = 3, by expanding and reducing mod 1 + x + x^2
        w = omega()
        assert (w - 1) * (w * w - 1) == C3(3, 0)

    def test_zero_absorbs(self):
        assert (zero(3) * omega()).is_zero()

    def test_order_mismatch_rejected(self):
        with pytest.raises(ValueError):
            arith(one(3), one(5), "add")

    def test_dispatch(self):
        w = omega()
        assert arith(w, w, "add") == 2 * w
        assert arith(w, w, "sub").is_zero()
        assert arith(w, w, "mul") == root_power(3, 2)
        with pytest.raises(ValueError):
            arith(w, w, "div")


class TestInvert:
    def test_omega_inverse(self):
        assert invert(omega()) == root_power(3, 2)

    def test_rational_inverse(self):
        assert invert(C3(3, 0)) == C3(Fraction(1, 3), 0)

    def test_one_minus_omega(self):
        # (1 - w)(2 + w) = 2 + w - 2w - w^2 = 3, so the inverse is (2 + w)/3
        x = one(3) - omega()
        assert invert(x) == C3(Fraction(2, 3), Fraction(1, 3))
        assert x * invert(x) == one(3)

    def test_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            invert(zero(3))

    @pytest.mark.parametrize("n", [3, 5])
    def test_random_inverses(self, n):
        rng = random.Random(20240 + n)
        for _ in range(200):
            coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(n - 1)]
            x = CycloNumber(n, coeffs)
            if x.is_zero():
                continue
            assert x * invert(x) == one(n)


def _random_element(rng, n):
    return CycloNumber(n, [Fraction(rng.randint(-9, 9)) for _ in range(n - 1)])


@pytest.mark.parametrize("n", [3, 5])
def test_field_axioms_randomized(n):
    # >= 1000 random triples with coefficients in [-9, 9]
    rng = random.Random(7 * n)
    for _ in range(1000):
        x, y, z = (_random_element(rng, n) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x
        if not z.is_zero():
            assert z * invert(z) == one(n)


class TestText:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("0", C3(0, 0)),
            ("1", C3(1, 0)),
            ("-1", C3(-1, 0)),
            ("1-2w", C3(1, -2)),
            ("(1/3)w", C3(0, Fraction(1, 3))),
            ("-w", C3(0, -1)),
            ("2+w", C3(2, 1)),
            ("(-2/7)", C3(Fraction(-2, 7), 0)),
        ],
    )
    def test_parse_known(self, text, value):
        assert parse(text) == value

    def test_parse_w_squared_reduces(self):
        assert parse("w^2") == C3(-1, -1)
        assert parse("1+w+w^2").is_zero()

    @pytest.mark.parametrize("bad", ["", "w+", "1**w", "(1/0)", "q"])
    def test_parse_rejects(self, bad):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse(bad)

    @given(
        st.fractions(max_denominator=40),
        st.fractions(max_denominator=40),
    )
    @settings(max_examples=300)
    def test_round_trip(self, a, b):
        x = C3(a, b)
        assert parse(render(x)) == x

    @pytest.mark.parametrize("n", [3, 5])
    def test_round_trip_order5(self, n):
        rng = random.Random(99)
        for _ in range(200):
            x = _random_element(rng, n)
            assert parse(render(x), order=n) == x


class TestConjugates:
    def test_norm_is_rational(self):
        rng = random.Random(5)
        for _ in range(50):
            x = _random_element(rng, 3)
            prod = one(3)
            for c in x.conjugates():
                prod = prod * c
            assert prod.is_rational()

    def test_conjugate_identity(self):
        w = omega()
        assert w.conjugates() == [w, w * w]
