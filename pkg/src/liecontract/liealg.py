"""Lie algebras with exact structure constants; the Pauli-graded sl(n,C).

The grading index set is (Z_n x Z_n) \\ {(0,0)}.  For n = 3 the basis order
is fixed as (01),(02),(10),(20),(11),(22),(12),(21); the same
line-by-line rule orders the 24 indices for n = 5.  Structure constants are
stored sparsely for i < j only, so antisymmetry holds by construction.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cyclo import CycloNumber, UnsupportedOrderError, one, root_power, zero, render
from .linalg import Matrix, Vector, mat_trace, mat_mul, mat_inverse, vec, zero_vec

Index = Tuple[int, int]

_SUPPORTED_N = (3, 5)


def pauli_indices(n: int) -> List[Index]:
    """Canonical order of the nonzero grading indices, line by line."""
    if n not in _SUPPORTED_N:
        raise UnsupportedOrderError(f"supported Pauli gradings: n in {_SUPPORTED_N}, got {n}")
    directions = [(0, 1), (1, 0)] + [(1, s) for s in range(1, n)]
    out: List[Index] = []
    for d in directions:
        for k in range(1, n):
            out.append(((k * d[0]) % n, (k * d[1]) % n))
    return out


def index_add(a: Index, b: Index, n: int) -> Index:
    return ((a[0] + b[0]) % n, (a[1] + b[1]) % n)


class StructureConstants:
    """Sparse table (i, j) -> {k: c_ij^k} for basis positions i < j."""

    def __init__(self, dim: int, field_order: int,
                 table: Dict[Tuple[int, int], Dict[int, CycloNumber]]):
        self.dim = dim
        self.field_order = field_order
        self.table = {}
        for (i, j), targets in table.items():
            if not 0 <= i < j < dim:
                raise ValueError(f"structure constants must be keyed by i < j, got ({i},{j})")
            cleaned = {k: c for k, c in targets.items() if not c.is_zero()}
            if cleaned:
                self.table[(i, j)] = cleaned

    def entry(self, i: int, j: int) -> Dict[int, CycloNumber]:
        """{k: c_ij^k} for any i, j, antisymmetry applied."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def items(self):
        return self.table.items()


class LieAlgebra:
    """Immutable algebra: structure constants plus an optional grading."""

    def __init__(self, constants: StructureConstants,
                 grading: Optional[Sequence[Index]] = None):
        self.constants = constants
        self.grading = list(grading) if grading is not None else None
        if self.grading is not None and len(self.grading) != constants.dim:
            raise ValueError("grading must label every basis vector")

    @property
    def dim(self) -> int:
        return self.constants.dim

    @property
    def order(self) -> int:
        return self.constants.field_order

    def zero(self) -> CycloNumber:
        return zero(self.order)

    def basis_vector(self, i: int) -> Vector:
        z, o = zero(self.order), one(self.order)
        return tuple(o if k == i else z for k in range(self.dim))

    def bracket_basis(self, i: int, j: int) -> Dict[int, CycloNumber]:
        return self.constants.entry(i, j)

    def bracket(self, x: Sequence[CycloNumber], y: Sequence[CycloNumber]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("coefficient vectors must have length dim")
        acc: Dict[int, CycloNumber] = {}
        for (i, j), targets in self.constants.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c.is_zero():
                continue
            for k, v in targets.items():
                prev = acc.get(k)
                nv = c * v if prev is None else prev + c * v
                acc[k] = nv
        z = self.zero()
        return tuple(acc.get(k, z) for k in range(self.dim))

    def ad_basis(self, i: int) -> Matrix:
        """Matrix of ad e_i (column j holds [e_i, e_j])."""
        z = self.zero()
        m = [[z] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.constants.entry(i, j).items():
                m[k][j] = c
        return m

    def ad_vector(self, x: Sequence[CycloNumber]) -> Matrix:
        z = self.zero()
        m = [[z] * self.dim for _ in range(self.dim)]
        for (i, j), targets in self.constants.items():
            xi, xj = x[i], x[j]
            if not xi.is_zero():
                for k, c in targets.items():
                    m[k][j] = m[k][j] + xi * c
            if not xj.is_zero():
                for k, c in targets.items():
                    m[k][i] = m[k][i] - xj * c
        return m

    def grade_position(self) -> Dict[Index, int]:
        if self.grading is None:
            raise ValueError("algebra carries no grading")
        return {g: i for i, g in enumerate(self.grading)}

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.dim == other.dim and self.order == other.order
                and self.constants.table == other.constants.table
                and self.grading == other.grading)

    def __repr__(self):
        g = "graded" if self.grading is not None else "ungraded"
        return f"LieAlgebra(dim={self.dim}, order={self.order}, {g})"


def from_brackets(dim: int, brackets: Dict[Tuple[int, int], Dict[int, CycloNumber]],
                  field_order: int = 3,
                  grading: Optional[Sequence[Index]] = None) -> LieAlgebra:
    """Build from 0-based {(i, j): {k: coeff}} with i < j."""
    return LieAlgebra(StructureConstants(dim, field_order, brackets), grading)


def abelian_algebra(dim: int, field_order: int = 3) -> LieAlgebra:
    return from_brackets(dim, {}, field_order)


def pauli_bracket_coeff(a: Index, b: Index, n: int) -> CycloNumber:
    """(omega^(s r') - omega^(r s')) for [X_a, X_b]."""
    return root_power(n, a[1] * b[0]) - root_power(n, a[0] * b[1])


def pauli_algebra(n: int) -> LieAlgebra:
    """The Pauli-graded sl(n,C), dimension n^2 - 1, over Q(zeta_n)."""
    indices = pauli_indices(n)
    pos = {g: i for i, g in enumerate(indices)}
    table: Dict[Tuple[int, int], Dict[int, CycloNumber]] = {}
    for i in range(len(indices)):
        for j in range(i + 1, len(indices)):
            a, b = indices[i], indices[j]
            c = pauli_bracket_coeff(a, b, n)
            if c.is_zero():
                continue
            target = index_add(a, b, n)
            if target == (0, 0):
                raise AssertionError("nonzero bracket cannot land on the removed identity grade")
            table[(i, j)] = {pos[target]: c}
    return LieAlgebra(StructureConstants(n * n - 1, n, table), indices)


def jacobi_defect(alg: LieAlgebra) -> List[Tuple[int, int, int, Vector]]:
    """Violating basis triples i < j < k with their nonzero defect vectors."""
    out = []
    dim = alg.dim
    z = alg.zero()

    def term(i, inner):
        acc: Dict[int, CycloNumber] = {}
        for m, c in inner.items():
            for k, v in alg.constants.entry(i, m).items():
                prev = acc.get(k)
                nv = c * v if prev is None else prev + c * v
                acc[k] = nv
        return acc

    for i in range(dim):
        for j in range(i + 1, dim):
            cij = alg.constants.entry(i, j)
            for k in range(j + 1, dim):
                acc: Dict[int, CycloNumber] = {}
                for part in (term(i, alg.constants.entry(j, k)),
                             term(k, cij),
                             term(j, alg.constants.entry(k, i))):
                    for t, v in part.items():
                        prev = acc.get(t)
                        acc[t] = v if prev is None else prev + v
                if any(not v.is_zero() for v in acc.values()):
                    defect = tuple(acc.get(t, z) for t in range(dim))
                    out.append((i, j, k, defect))
    return out


def apply_contraction(alg: LieAlgebra, eps: Dict[frozenset, CycloNumber]) -> LieAlgebra:
    """Multiply each graded bracket by its contraction parameter.

    ``eps`` maps frozensets {index_a, index_b} of grading indices to exact
    values; missing pairs count as zero.  Jacobi is deliberately not checked.
    """
    if alg.grading is None:
        raise ValueError("apply_contraction needs a graded algebra")
    table: Dict[Tuple[int, int], Dict[int, CycloNumber]] = {}
    for (i, j), targets in alg.constants.items():
        key = frozenset((alg.grading[i], alg.grading[j]))
        factor = eps.get(key)
        if factor is None or factor.is_zero():
            continue
        table[(i, j)] = {k: factor * c for k, c in targets.items()}
    return LieAlgebra(StructureConstants(alg.dim, alg.order, table), alg.grading)


def trace_form(alg: LieAlgebra,
               restrict_to: Optional[Sequence[Sequence[CycloNumber]]] = None) -> Matrix:
    """K_ij = Tr(ad e_i ad e_j); columns restricted to a subspace basis if given.

    With no restriction this is the Killing form.
    """
    ads = [alg.ad_basis(i) for i in range(alg.dim)]
    if restrict_to is None:
        cols = ads
    else:
        cols = [alg.ad_vector(v) for v in restrict_to]
    out = []
    for a in ads:
        row = []
        for b in cols:
            acc = alg.zero()
            for k in range(alg.dim):
                for l in range(alg.dim):
                    x = a[k][l]
                    if x.is_zero():
                        continue
                    y = b[l][k]
                    if y.is_zero():
                        continue
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def transformed(alg: LieAlgebra, new_basis: Sequence[Sequence[CycloNumber]]) -> LieAlgebra:
    """Structure constants in the basis f_a = sum_i new_basis[a][i] e_i."""
    n = alg.dim
    t = [list(row) for row in new_basis]
    tinv = mat_inverse([[t[a][i] for a in range(n)] for i in range(n)], alg.order)
    if tinv is None:
        raise ValueError("change of basis must be invertible")
    table: Dict[Tuple[int, int], Dict[int, CycloNumber]] = {}
    for a in range(n):
        for b in range(a + 1, n):
            w = alg.bracket(t[a], t[b])
            coords = [sum((tinv[c][i] * w[i] for i in range(n)), alg.zero()) for c in range(n)]
            targets = {c: coords[c] for c in range(n) if not coords[c].is_zero()}
            if targets:
                table[(a, b)] = targets
    return LieAlgebra(StructureConstants(n, alg.order, table), None)


def dump(alg: LieAlgebra) -> str:
    """One line per nonzero bracket: ``[e_i,e_j] = c*e_k + ...`` (1-based)."""
    lines = []
    for (i, j) in sorted(alg.constants.table):
        targets = alg.constants.table[(i, j)]
        terms = []
        for k in sorted(targets):
            c = targets[k]
            text = render(c)
            if text == "1":
                terms.append(f"e_{k + 1}")
            elif text == "-1":
                terms.append(f"-e_{k + 1}")
            elif ("+" in text[1:]) or ("-" in text[1:]):
                terms.append(f"({text})*e_{k + 1}")
            else:
                terms.append(f"{text}*e_{k + 1}")
        rhs = " + ".join(terms).replace("+ -", "- ")
        lines.append(f"[e_{i + 1},e_{j + 1}] = {rhs}")
    return "\n".join(lines)
