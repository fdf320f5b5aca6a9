"""Integer exponent lattices and rational feasibility for contraction weights.

Every relevant pair {i, j} contributes the multiplicative relation
a_i a_j / a_(i+j) of a normalization matrix; collecting the exponents gives a
24 x 8 integer matrix B.  Its left kernel decides when two solutions differ
by a normalization, and a weight vector n with B n = 0 on the support and
B n >= 1 on the zeros exhibits a generalized Inonu-Wigner path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclo import CycloNumber
from .liealg import Index, index_add, pauli_indices
from .linalg import integer_left_kernel


@dataclass(frozen=True)
class ExponentLattice:
    """Row-per-pair exponent matrix B and an integer basis of {u : u B = 0}."""

    pairs: Tuple[frozenset, ...]
    matrix: Tuple[Tuple[int, ...], ...]
    left_kernel_basis: Tuple[Tuple[int, ...], ...]


def exponent_rows(pairs: Sequence[frozenset], n: int = 3) -> List[List[int]]:
    indices = pauli_indices(n)
    col = {g: i for i, g in enumerate(indices)}
    rows = []
    for pair in pairs:
        i, j = sorted(pair, key=lambda g: col[g])
        target = index_add(i, j, n)
        row = [0] * len(indices)
        row[col[i]] += 1
        row[col[j]] += 1
        row[col[target]] -= 1
        rows.append(row)
    return rows


def build_exponent_lattice(pairs: Sequence[frozenset], n: int = 3) -> ExponentLattice:
    rows = exponent_rows(pairs, n)
    kernel = integer_left_kernel(rows)
    return ExponentLattice(
        pairs=tuple(pairs),
        matrix=tuple(tuple(r) for r in rows),
        left_kernel_basis=tuple(tuple(u) for u in kernel),
    )


def kernel_product_is_one(u: Sequence[int], ratios: Sequence[CycloNumber]) -> bool:
    """Check prod ratios[p]^u[p] = 1 exactly (negative exponents via inverses)."""
    acc = None
    for e, r in zip(u, ratios):
        if e == 0:
            continue
        base = r if e > 0 else r.inverse()
        p = base ** abs(e)
        acc = p if acc is None else acc * p
    return acc is None or acc == 1


# --- rational Fourier-Motzkin ------------------------------------------------

Constraint = Tuple[Tuple[Fraction, ...], Fraction]  # coeffs . t >= const


def _nullspace_rational(eq_rows: Sequence[Sequence[int]], width: int) -> List[List[Fraction]]:
    rows = [[Fraction(x) for x in r] for r in eq_rows]
    pivots: Dict[int, List[Fraction]] = {}
    for r in rows:
        r = r[:]
        for c in sorted(pivots):
            if r[c]:
                pr = pivots[c]
                f = r[c]
                for j in range(width):
                    r[j] -= f * pr[j]
        lead = next((j for j in range(width) if r[j]), None)
        if lead is None:
            continue
        inv = 1 / r[lead]
        r = [x * inv for x in r]
        for c, pr in pivots.items():
            if pr[lead]:
                f = pr[lead]
                pivots[c] = [pr[j] - f * r[j] for j in range(width)]
        pivots[lead] = r
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for p, pr in pivots.items():
            v[p] = -pr[f]
        basis.append(v)
    return basis


def integer_weight_vector(eq_rows: Sequence[Sequence[int]],
                          ge_one_rows: Sequence[Sequence[int]],
                          width: int) -> Optional[List[int]]:
    """Integer n with row.n = 0 for eq_rows and row.n >= 1 for ge_one_rows.

    Rational Fourier-Motzkin feasibility, then clearing of denominators.
    Returns None when infeasible.
    """
    basis = _nullspace_rational(eq_rows, width)
    nfree = len(basis)
    constraints: List[Constraint] = []
    for row in ge_one_rows:
        coeffs = tuple(sum(Fraction(row[i]) * basis[k][i] for i in range(width))
                       for k in range(nfree))
        constraints.append((coeffs, Fraction(1)))
    t = _fourier_motzkin(constraints, nfree)
    if t is None:
        return None
    sol = [sum(basis[k][i] * t[k] for k in range(nfree)) for i in range(width)]
    denom = 1
    for x in sol:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    out = [int(x * denom) for x in sol]
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _fourier_motzkin(constraints: List[Constraint], nvars: int) -> Optional[List[Fraction]]:
    """A feasible point of {t : coeffs.t >= const for all}, or None."""
    stages = []
    current = list(constraints)
    for var in range(nvars - 1, -1, -1):
        lowers, uppers, rest = [], [], []
        for coeffs, c in current:
            a = coeffs[var]
            if a > 0:
                lowers.append((coeffs, c))
            elif a < 0:
                uppers.append((coeffs, c))
            else:
                rest.append((coeffs, c))
        stages.append((var, lowers, uppers))
        new = rest
        for lc, lv in lowers:
            for uc, uv in uppers:
                # t_var >= (lv - lrest)/la  and  t_var <= (urest - uv)/(-ua)
                la, ua = lc[var], uc[var]
                coeffs = tuple(lc[i] * (-ua) + uc[i] * la for i in range(nvars))
                const = lv * (-ua) + uv * la
                coeffs = coeffs[:var] + (Fraction(0),) + coeffs[var + 1:]
                new.append((coeffs, const))
        for coeffs, c in new:
            if all(x == 0 for x in coeffs) and c > 0:
                return None
        current = new
    point = [Fraction(0)] * nvars
    for var, lowers, uppers in reversed(stages):
        lo, hi = None, None
        for coeffs, c in lowers:
            rest = sum(coeffs[i] * point[i] for i in range(nvars) if i != var)
            bound = (c - rest) / coeffs[var]
            lo = bound if lo is None or bound > lo else lo
        for coeffs, c in uppers:
            rest = sum(coeffs[i] * point[i] for i in range(nvars) if i != var)
            bound = (c - rest) / coeffs[var]
            hi = bound if hi is None or bound < hi else hi
        if lo is None and hi is None:
            point[var] = Fraction(0)
        elif lo is None:
            point[var] = hi
        elif hi is None:
            point[var] = lo
        else:
            if lo > hi:
                return None
            point[var] = (lo + hi) / 2
    return point
