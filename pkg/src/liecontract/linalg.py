"""Exact linear algebra over Q(zeta_n) and over the integers.

Dense routines (echelon form, kernels, inverses, characteristic polynomial)
cover matrices up to a few hundred rows; the sparse row-dict eliminator
handles the large Leibniz systems that arise when computing derivation
algebras of 17- and 19-dimensional algebras.  Integer kernels come from a
small Smith-normal-form implementation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cyclo import CycloNumber, one, zero

Vector = Tuple[CycloNumber, ...]
Matrix = List[List[CycloNumber]]


def vec(order: int, entries: Iterable) -> Vector:
    out = []
    for e in entries:
        if isinstance(e, CycloNumber):
            out.append(e)
        else:
            out.append(CycloNumber.from_rational(order, e))
    return tuple(out)


def zero_vec(order: int, n: int) -> Vector:
    z = zero(order)
    return (z,) * n

def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: CycloNumber, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def is_zero_vec(a: Vector) -> bool:
    return all(x.is_zero() for x in a)


def mat_mul(a: Sequence[Sequence[CycloNumber]], b: Sequence[Sequence[CycloNumber]]) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        ai = a[i]
        for j in range(cols):
            acc = None
            for k in range(inner):
                x = ai[k]
                if x.is_zero():
                    continue
                term = x * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else zero(ai[0].order))
        out.append(row)
    return out


def mat_vec(a: Sequence[Sequence[CycloNumber]], v: Sequence[CycloNumber]) -> Vector:
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x.is_zero() or y.is_zero():
                continue
            term = x * y
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else zero(v[0].order))
    return tuple(out)


def identity_matrix(order: int, n: int) -> Matrix:
    z, o = zero(order), one(order)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_trace(a: Sequence[Sequence[CycloNumber]]) -> CycloNumber:
    acc = zero(a[0][0].order)
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def rref(rows: Iterable[Sequence[CycloNumber]], width: int, order: int = 3):
    """Reduced row echelon form.

    Returns (basis_rows, pivot_cols); basis rows are tuples with pivot 1 and
    zeros above and below every pivot, sorted by pivot column.  This form is
    canonical: two spans are equal iff their rref rows are equal.
    """
    pivots: Dict[int, List[CycloNumber]] = {}
    for r in rows:
        work = list(r)
        for c in sorted(pivots):
            x = work[c]
            if not x.is_zero():
                prow = pivots[c]
                for j in range(c, width):
                    work[j] = work[j] - x * prow[j]
        lead = None
        for j in range(width):
            if not work[j].is_zero():
                lead = j
                break
        if lead is None:
            continue
        inv = work[lead].inverse()
        work = [inv * x for x in work]
        for c, prow in pivots.items():
            x = prow[lead]
            if not x.is_zero():
                pivots[c] = [prow[j] - x * work[j] for j in range(width)]
        pivots[lead] = work
    cols = sorted(pivots)
    return [tuple(pivots[c]) for c in cols], cols


def rank(rows: Iterable[Sequence[CycloNumber]], width: int, order: int = 3) -> int:
    return len(rref(rows, width, order)[0])


def null_space(rows: Iterable[Sequence[CycloNumber]], width: int, order: int = 3) -> List[Vector]:
    """Canonical basis of {x : A x = 0} (right kernel), as rref rows."""
    basis, piv = rref(rows, width, order)
    pivset = set(piv)
    free = [j for j in range(width) if j not in pivset]
    z, o = zero(order), one(order)
    out = []
    for f in free:
        v = [z] * width
        v[f] = o
        for row, p in zip(basis, piv):
            v[p] = -row[f]
        out.append(tuple(v))
    return out


def solve(a: Sequence[Sequence[CycloNumber]], b: Sequence[CycloNumber],
          order: int = 3) -> Optional[Vector]:
    """One solution of A x = b, or None if inconsistent."""
    width = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    basis, piv = rref(aug, width + 1, order)
    z = zero(order)
    x = [z] * width
    for row, p in zip(basis, piv):
        if p == width:
            return None
        x[p] = row[width]
    return tuple(x)


def mat_inverse(a: Matrix, order: int = 3) -> Optional[Matrix]:
    n = len(a)
    aug = [list(a[i]) + list(identity_matrix(order, n)[i]) for i in range(n)]
    basis, piv = rref(aug, 2 * n, order)
    if piv[: n] != list(range(n)) or len(basis) < n:
        return None
    return [list(basis[i][n:]) for i in range(n)]


def det(a: Matrix, order: int = 3) -> CycloNumber:
    """Determinant by fraction-full Gaussian elimination."""
    n = len(a)
    m = [list(row) for row in a]
    result = one(order)
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if not m[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            return zero(order)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            result = -result
        p = m[col][col]
        result = result * p
        inv = p.inverse()
        for r in range(col + 1, n):
            x = m[r][col]
            if x.is_zero():
                continue
            f = x * inv
            for j in range(col, n):
                m[r][j] = m[r][j] - f * m[col][j]
    return result


def charpoly(a: Matrix, order: int = 3) -> List[CycloNumber]:
    """Coefficients of det(tI - A), ascending: [c0, c1, ..., 1].

    Faddeev-LeVerrier; exact over any char-0 field.
    """
    n = len(a)
    coeffs = [zero(order)] * (n + 1)
    coeffs[n] = one(order)
    m = identity_matrix(order, n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = mat_trace(m) / Fraction(-k)
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] = m[i][i] + c
    return coeffs


def poly_eval_matrix(p: Sequence[CycloNumber], a: Matrix, order: int = 3) -> Matrix:
    """Evaluate a polynomial (ascending coefficients) at a square matrix."""
    n = len(a)
    out = [[p[len(p) - 1] if i == j else zero(order) for j in range(n)] for i in range(n)]
    for k in range(len(p) - 2, -1, -1):
        out = mat_mul(out, a)
        for i in range(n):
            out[i][i] = out[i][i] + p[k]
    return out


def poly_gcd(a: List[CycloNumber], b: List[CycloNumber], order: int = 3) -> List[CycloNumber]:
    """Monic gcd in Q(zeta_n)[t]; coefficients ascending."""

    def trim(p):
        p = list(p)
        while p and p[-1].is_zero():
            p.pop()
        return p

    def poly_mod(p, q):
        p = list(p)
        inv = q[-1].inverse()
        while len(p) >= len(q):
            c = p[-1] * inv
            off = len(p) - len(q)
            for j in range(len(q)):
                p[off + j] = p[off + j] - c * q[j]
            p = trim(p)
            if not p:
                break
        return p

    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_mod(a, b)
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]


def poly_derivative(p: Sequence[CycloNumber]) -> List[CycloNumber]:
    return [p[k] * Fraction(k) for k in range(1, len(p))]


# --- sparse elimination ------------------------------------------------------


class SparseEliminator:
    """Incremental reduced echelon form with row dicts {col: coeff}.

    Feed rows one at a time; the pivot rows are kept mutually reduced so the
    final state is a canonical RREF.  Used for the big Leibniz systems.
    """

    def __init__(self, width: int, order: int = 3):
        self.width = width
        self.order = order
        self.pivot_rows: Dict[int, Dict[int, CycloNumber]] = {}

    def add_row(self, row: Dict[int, CycloNumber]) -> bool:
        """Reduce and insert; returns True if the row added a new pivot."""
        row = {c: v for c, v in row.items() if not v.is_zero()}
        # pivot rows are mutually reduced, so subtracting them never
        # reintroduces entries at pivot columns: one pass suffices
        for lead in sorted(c for c in row if c in self.pivot_rows):
            x = row.pop(lead, None)
            if x is None or x.is_zero():
                continue
            prow = self.pivot_rows[lead]
            for c, v in prow.items():
                if c == lead:
                    continue
                nv = row.get(c)
                nv = -x * v if nv is None else nv - x * v
                if nv.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = nv
        if not row:
            return False
        lead = min(row)
        inv = row[lead].inverse()
        new_row = {c: inv * v for c, v in row.items()}
        new_row[lead] = one(self.order)
        # knock the new pivot column out of existing pivot rows
        for p, prow in self.pivot_rows.items():
            x = prow.get(lead)
            if x is None:
                continue
            prow.pop(lead)
            for c, v in new_row.items():
                if c == lead:
                    continue
                nv = prow.get(c)
                nv = -x * v if nv is None else nv - x * v
                if nv.is_zero():
                    prow.pop(c, None)
                else:
                    prow[c] = nv
        self.pivot_rows[lead] = new_row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def null_space(self) -> List[Vector]:
        pivset = set(self.pivot_rows)
        free = [j for j in range(self.width) if j not in pivset]
        z, o = zero(self.order), one(self.order)
        out = []
        for f in free:
            v = [z] * self.width
            v[f] = o
            for p, prow in self.pivot_rows.items():
                x = prow.get(f)
                if x is not None:
                    v[p] = -x
            out.append(tuple(v))
        return out

    def nullity(self) -> int:
        return self.width - self.rank


# --- integer lattices --------------------------------------------------------


def smith_normal_form(a: List[List[int]]):
    """Return (U, S, V) with U A V = S diagonal, U and V unimodular."""
    rows, cols = len(a), len(a[0]) if a else 0
    s = [list(r) for r in a]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        for k in range(cols):
            s[dst][k] += q * s[src][k]
        for k in range(rows):
            u[dst][k] += q * u[src][k]

    def add_col(src, dst, q):
        for r in s:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot in the remaining block
        pr = pc = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(s[i][j])
                if x and (best is None or x < best):
                    best, pr, pc = x, i, j
        if pr is None:
            break
        swap_rows(t, pr)
        swap_cols(t, pc)
        while True:
            done = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = -(s[i][t] // s[t][t])
                    add_row(t, i, q)
                    if s[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = -(s[t][j] // s[t][t])
                    add_col(t, j, q)
                    if s[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if s[t][t] < 0:
            for k in range(cols):
                s[t][k] = -s[t][k]
            for k in range(rows):
                u[t][k] = -u[t][k]
        t += 1
    return u, s, v


def integer_left_kernel(a: List[List[int]]) -> List[List[int]]:
    """Basis of the saturated lattice {u in Z^rows : u A = 0}."""
    rows = len(a)
    if rows == 0:
        return []
    u, s, _v = smith_normal_form(a)
    out = []
    for i in range(rows):
        if i >= len(s) or all(x == 0 for x in s[i]):
            out.append(list(u[i]))
    return out
