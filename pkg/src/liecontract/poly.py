"""Sparse multivariate polynomials over Q(zeta_n), plus the e_i text grammar.

Just enough for invariant verification: polynomials are dicts from exponent
tuples to exact coefficients, with addition, products, and partial
derivatives.  The text grammar covers the catalog's polynomial column
("e_2", "e_1^2 - 2e_2e_3", "(1+w)e_5") and the coefficient language of
bracket relations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Tuple

from .cyclo import CycloNumber, one, parse as cyclo_parse, zero

Exponents = Tuple[int, ...]


class Poly:
    """Polynomial in x_1..x_nvars over Q(zeta_order)."""

    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars: int, order: int = 3,
                 terms: Dict[Exponents, CycloNumber] | None = None):
        self.nvars = nvars
        self.order = order
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def constant(cls, nvars: int, value: CycloNumber, order: int = 3) -> "Poly":
        return cls(nvars, order, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, i: int, order: int = 3) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, order, {tuple(e): one(order)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return Poly(self.nvars, self.order, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CycloNumber):
            return Poly(self.nvars, self.order,
                        {e: c * other for e, c in self.terms.items()})
        out: Dict[Exponents, CycloNumber] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = out.get(e)
                out[e] = c if cur is None else cur + c
        return Poly(self.nvars, self.order, out)

    __rmul__ = __mul__

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * Fraction(e[i])
        return Poly(self.nvars, self.order, out)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            c = self.terms[e]
            mono = "".join(
                f"e_{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e) if k
            )
            cs = str(c)
            if mono and cs == "1":
                body = mono
            elif mono and cs == "-1":
                body = "-" + mono
            else:
                if ("+" in cs[1:]) or ("-" in cs[1:]):
                    cs = f"({cs})"
                body = cs + mono
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"Poly({self.render()})"


_FACTOR_RE = re.compile(
    r"\s*(?:"
    r"(?P<var>e_?(?P<vi>\d+))(?:\^(?P<vp>\d+))?"
    r"|\((?P<paren>[^()]*)\)"
    r"|(?P<rat>\d+(?:/\d+)?)"
    r"|(?P<w>w)(?:\^(?P<wp>\d+))?"
    r"|(?P<par>[a-d])"
    r"|(?P<star>\*)"
    r")\s*"
)


def parse_poly(text: str, nvars: int, order: int = 3,
               bindings: Dict[str, CycloNumber] | None = None) -> Poly:
    """Parse sums of monomial terms in e_1..e_n.

    Coefficients may be rationals, w-polynomials in parentheses, or bound
    parameter letters a..d (resolved through ``bindings``).
    """
    bindings = bindings or {}
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    result = Poly(nvars, order)
    pos = 0
    first = True
    while pos < len(text):
        sign = 1
        while pos < len(text) and text[pos] in "+- \t":
            if text[pos] == "-":
                sign = -sign
            pos += 1
        if pos >= len(text):
            if not first:
                raise ValueError(f"dangling sign in {text!r}")
            break
        term = Poly.constant(nvars, CycloNumber.from_rational(order, sign), order)
        got = False
        while pos < len(text) and text[pos] not in "+-":
            m = _FACTOR_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at {pos}")
            if m.group("star"):
                pos = m.end()
                continue
            got = True
            if m.group("var"):
                vi = int(m.group("vi")) - 1
                if not 0 <= vi < nvars:
                    raise ValueError(f"variable e_{vi + 1} out of range in {text!r}")
                vp = int(m.group("vp") or 1)
                for _ in range(vp):
                    term = term * Poly.variable(nvars, vi, order)
            elif m.group("paren") is not None:
                term = term * cyclo_parse(m.group("paren"), order)
            elif m.group("rat"):
                term = term * CycloNumber.from_rational(order, Fraction(m.group("rat")))
            elif m.group("w"):
                wp = int(m.group("wp") or 1)
                term = term * (cyclo_parse("w", order) ** wp)
            elif m.group("par"):
                letter = m.group("par")
                if letter not in bindings:
                    raise ValueError(f"unbound parameter {letter!r} in {text!r}")
                term = term * bindings[letter]
            pos = m.end()
        if not got:
            raise ValueError(f"empty term in {text!r}")
        result = result + term
        first = False
    return result


def parse_coefficient(text: str, order: int = 3,
                      bindings: Dict[str, CycloNumber] | None = None) -> CycloNumber:
    """A bare scalar in the same grammar (no e_i factors allowed)."""
    t = text.strip()
    if t in ("", "+"):
        return one(order)
    if t == "-":
        return -one(order)
    # tag a variable on so the generic parser does the work
    p = parse_poly(t + "*e_1", 1, order, bindings)
    val = p.terms.get((1,))
    if val is None:
        return zero(order)
    if len(p.terms) != 1:
        raise ValueError(f"{text!r} is not a scalar")
    return val
