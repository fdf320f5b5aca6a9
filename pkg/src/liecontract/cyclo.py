"""Exact arithmetic in the cyclotomic-rational fields Q(zeta_n), n prime.

Elements are residues modulo the cyclotomic polynomial 1 + x + ... + x^(n-1),
stored as vectors of n-1 rational coefficients.  Equality is coefficient-wise,
so every value has exactly one representation.  The primitive cube root of
unity (rendered ``w``) is the workhorse; n = 5 is supported for the
five-dimensional analogues.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class UnsupportedOrderError(ValueError):
    """Raised for cyclotomic orders that are not prime or are < 2."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_order(n: int) -> None:
    if n < 2 or not _is_prime(n):
        raise UnsupportedOrderError(f"cyclotomic order must be prime >= 2, got {n}")


class CycloNumber:
    """An element of Q(zeta_n) in the basis 1, zeta, ..., zeta^(n-2)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Union[Rational, int]]):
        _check_order(order)
        cs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if len(cs) != order - 1:
            raise ValueError(f"need {order - 1} coefficients for order {order}, got {len(cs)}")
        self.order = order
        self.coeffs = cs

    @classmethod
    def from_rational(cls, order: int, value: Union[Rational, int]) -> "CycloNumber":
        v = value if isinstance(value, Fraction) else Fraction(value)
        return cls(order, (v,) + (_ZERO,) * (order - 2))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.order != self.order:
                raise ValueError(f"order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(self.order, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycloNumber(self.order, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycloNumber(self.order, (a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycloNumber(self.order, (-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = self.order
        a, b = self.coeffs, o.coeffs
        if n == 3:
            # (a0 + a1 w)(b0 + b1 w) with w^2 = -1 - w
            t = a[1] * b[1]
            return CycloNumber(3, (a[0] * b[0] - t, a[0] * b[1] + a[1] * b[0] - t))
        # generic: convolve, then fold x^k (k >= n-1) using
        # x^(n-1) = -(1 + x + ... + x^(n-2))
        m = n - 1
        prod = [_ZERO] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = list(prod[:m])
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if not c:
                continue
            # x^k = x^(k-n+1) * x^(n-1) = -x^(k-n+1) * (1 + x + ... + x^(n-2))
            base = k - n + 1
            for j in range(m):
                idx = base + j
                if idx < m:
                    out[idx] -= c
                else:
                    prod[idx] -= c
        return CycloNumber(n, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse, by the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        n = self.order
        if n == 3:
            a0, a1 = self.coeffs
            # norm (a0 + a1 w)(a0 + a1 w^2) = a0^2 - a0 a1 + a1^2
            nrm = a0 * a0 - a0 * a1 + a1 * a1
            return CycloNumber(3, ((a0 - a1) / nrm, -a1 / nrm))
        # extended Euclid on (cyclotomic poly, self) over Q[x]
        f = [_ONE] * n  # 1 + x + ... + x^(n-1)
        g = list(self.coeffs)
        while g and g[-1] == 0:
            g.pop()
        r0, r1 = f, g
        s0, s1 = [], [_ONE]  # coefficients for self on each remainder
        while True:
            r1 = r1[:]
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                inv_c = 1 / r1[0]
                inv = [c * inv_c for c in s1]
                inv += [_ZERO] * (n - 1 - len(inv))
                return CycloNumber(n, inv[: n - 1])
            q, rem = _poly_divmod(r0, r1)
            new_s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1 = r1, rem
            s0, s1 = s1, new_s

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.from_rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugates(self) -> list["CycloNumber"]:
        """All Galois conjugates (zeta -> zeta^k, k = 1..n-1)."""
        n = self.order
        out = []
        for k in range(1, n):
            acc = CycloNumber.from_rational(n, self.coeffs[0])
            for i in range(1, n - 1):
                if self.coeffs[i]:
                    acc = acc + root_power(n, i * k) * self.coeffs[i]
            out.append(acc)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycloNumber({self.order}, {render(self)!r})"

    def __str__(self):
        return render(self)


def _poly_divmod(a: list, b: list):
    a = a[:]
    q = [_ZERO] * max(1, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a: list, b: list) -> list:
    m = max(len(a), len(b))
    a = a + [_ZERO] * (m - len(a))
    b = b + [_ZERO] * (m - len(b))
    return [x - y for x, y in zip(a, b)]


def root_power(n: int, k: int) -> CycloNumber:
    """zeta_n^k in canonical reduced form; root_power(n, 0) = 1."""
    _check_order(n)
    k %= n
    if k < n - 1:
        coeffs = [_ZERO] * (n - 1)
        coeffs[k] = _ONE
        return CycloNumber(n, coeffs)
    # zeta^(n-1) = -(1 + zeta + ... + zeta^(n-2))
    return CycloNumber(n, [-_ONE] * (n - 1))


def arith(x: CycloNumber, y: CycloNumber, op: str) -> CycloNumber:
    """Dispatch add/sub/mul; orders must match."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def invert(x: CycloNumber) -> CycloNumber:
    return x.inverse()


def zero(n: int = 3) -> CycloNumber:
    return CycloNumber.from_rational(n, 0)


def one(n: int = 3) -> CycloNumber:
    return CycloNumber.from_rational(n, 1)


def omega() -> CycloNumber:
    """The primitive cube root of unity."""
    return root_power(3, 1)


# --- textual form -----------------------------------------------------------
#
# Polynomials in "w": e.g. "1-2w", "(1/3)w", "-1+w^3".  Fractional
# coefficients are parenthesized; round-trip is bit exact.

_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-]?)\s*"
    r"(?:\((?P<paren>-?\d+/\d+)\)|(?P<num>\d+(?:/\d+)?))?"
    r"(?:(?P<w>w)(?:\^(?P<pow>\d+))?)?"
)


def render(x: CycloNumber) -> str:
    parts = []
    for k, c in enumerate(x.coeffs):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if mag.denominator == 1:
            coeff = str(mag.numerator)
            wrapped = coeff
        else:
            coeff = f"{mag.numerator}/{mag.denominator}"
            wrapped = f"({coeff})"
        if k == 0:
            body = wrapped
        else:
            unit = "w" if k == 1 else f"w^{k}"
            body = unit if mag == 1 else f"{wrapped}{unit}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def parse(text: str, order: int = 3) -> CycloNumber:
    """Parse the grammar emitted by render().  Raises ValueError on junk."""
    s = text.strip()
    if not s:
        raise ValueError("empty cyclotomic literal")
    coeffs = [_ZERO] * (order - 1)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        sign, paren, num, w, pw = (m.group("sign"), m.group("paren"),
                                   m.group("num"), m.group("w"), m.group("pow"))
        if paren is None and num is None and w is None:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        if not first and sign == "":
            raise ValueError(f"missing sign between terms in {text!r}")
        mag = Fraction(paren if paren is not None else (num if num is not None else 1))
        if sign == "-":
            mag = -mag
        k = 0
        if w:
            k = int(pw) if pw else 1
            k %= order
        if k == order - 1:
            for i in range(order - 1):
                coeffs[i] -= mag
        else:
            coeffs[k] += mag
        pos = m.end()
        first = False
    return CycloNumber(order, coeffs)
