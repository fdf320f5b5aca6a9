"""Identification of Lie algebras from exact structure constants.

Central splitting, direct-sum decomposition, radical and nilradical, the
three ideal series, derivation algebras and towers, formal-invariant counts,
polynomial-invariant verification, isomorphism verification, and the
aggregate fingerprint.  Everything is exact over Q(zeta_n); randomized
steps (generic rank, Cartan subalgebra search) take explicit seeds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclo import CycloNumber, one, zero
from .liealg import LieAlgebra, StructureConstants, from_brackets
from .linalg import (
    SparseEliminator,
    Vector,
    charpoly,
    identity_matrix,
    mat_inverse,
    mat_mul,
    mat_trace,
    mat_vec,
    null_space,
    poly_derivative,
    poly_eval_matrix,
    poly_gcd,
    rref,
    vec,
    zero_vec,
)
from .poly import Poly


# --- subspaces ----------------------------------------------------------------


class Subspace:
    """A subspace of the coefficient space, held as canonical rref rows."""

    def __init__(self, ambient_dim: int, vectors: Sequence[Sequence[CycloNumber]],
                 order: int = 3):
        self.ambient_dim = ambient_dim
        self.order = order
        self.basis, self.pivots = rref(vectors, ambient_dim, order)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[CycloNumber]) -> bool:
        return self.coordinates(v) is not None

    def coordinates(self, v: Sequence[CycloNumber]) -> Optional[Vector]:
        """Coefficients in the rref basis, or None if v is outside."""
        work = list(v)
        coords = []
        for row, p in zip(self.basis, self.pivots):
            c = work[p]
            coords.append(c)
            if not c.is_zero():
                for j in range(self.ambient_dim):
                    work[j] = work[j] - c * row[j]
        if any(not x.is_zero() for x in work):
            return None
        return tuple(coords)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient_dim})"


def span_of(alg_dim: int, vectors: Sequence[Sequence[CycloNumber]], order: int = 3) -> Subspace:
    return Subspace(alg_dim, vectors, order)


# --- basic subalgebra computations --------------------------------------------


def center(alg: LieAlgebra) -> Subspace:
    """Intersection of the kernels of all ad e_i."""
    rows = []
    n = alg.dim
    z = zero(alg.order)
    for j in range(n):
        cols = [alg.constants.entry(i, j) for i in range(n)]
        for k in range(n):
            rows.append(tuple(cols[i].get(k, z) for i in range(n)))
    return Subspace(n, null_space(rows, n, alg.order), alg.order)


def derived_algebra(alg: LieAlgebra) -> Subspace:
    vectors = []
    z = zero(alg.order)
    for (i, j), targets in alg.constants.items():
        vectors.append(tuple(targets.get(k, z) for k in range(alg.dim)))
    return Subspace(alg.dim, vectors, alg.order)


def bracket_span(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    vectors = [alg.bracket(x, y) for x in a.basis for y in b.basis]
    return Subspace(alg.dim, vectors, alg.order)


def subalgebra_constants(alg: LieAlgebra, sub: Subspace) -> LieAlgebra:
    """Structure constants of a bracket-closed subspace, in its rref basis."""
    table: Dict[Tuple[int, int], Dict[int, CycloNumber]] = {}
    for a in range(sub.dim):
        for b in range(a + 1, sub.dim):
            w = alg.bracket(sub.basis[a], sub.basis[b])
            coords = sub.coordinates(w)
            if coords is None:
                raise ValueError("subspace is not closed under the bracket")
            targets = {c: coords[c] for c in range(sub.dim) if not coords[c].is_zero()}
            if targets:
                table[(a, b)] = targets
    return LieAlgebra(StructureConstants(sub.dim, alg.order, table), None)


def quotient_algebra(alg: LieAlgebra, ideal: Subspace):
    """(quotient, projection) for an ideal; the projection maps coefficient
    vectors of alg onto quotient coordinates."""
    n = alg.dim
    pivset = set(ideal.pivots)
    free = [j for j in range(n) if j not in pivset]

    def project(v: Sequence[CycloNumber]) -> Vector:
        work = list(v)
        for row, p in zip(ideal.basis, ideal.pivots):
            c = work[p]
            if not c.is_zero():
                for j in range(n):
                    work[j] = work[j] - c * row[j]
        return tuple(work[j] for j in free)

    reps = [alg.basis_vector(j) for j in free]
    table: Dict[Tuple[int, int], Dict[int, CycloNumber]] = {}
    for a in range(len(free)):
        for b in range(a + 1, len(free)):
            w = project(alg.bracket(reps[a], reps[b]))
            targets = {c: w[c] for c in range(len(free)) if not w[c].is_zero()}
            if targets:
                table[(a, b)] = targets
    quo = LieAlgebra(StructureConstants(len(free), alg.order, table), None)
    return quo, project


# --- series -------------------------------------------------------------------


def _trim_repeats(dims: List[int]) -> List[int]:
    # drop the stabilized tail, keeping its first occurrence
    out = [dims[0]]
    for d in dims[1:]:
        if d == out[-1]:
            break
        out.append(d)
    return out


def derived_series(alg: LieAlgebra):
    chain = [Subspace(alg.dim, [alg.basis_vector(i) for i in range(alg.dim)], alg.order)]
    dims = [alg.dim]
    while True:
        nxt = bracket_span(alg, chain[-1], chain[-1])
        if nxt.dim == chain[-1].dim:
            dims.append(nxt.dim)
            break
        chain.append(nxt)
        dims.append(nxt.dim)
        if nxt.dim == 0:
            break
    return _trim_repeats(dims), chain


def lower_central_series(alg: LieAlgebra):
    whole = Subspace(alg.dim, [alg.basis_vector(i) for i in range(alg.dim)], alg.order)
    chain = [whole]
    dims = [alg.dim]
    while True:
        nxt = bracket_span(alg, chain[-1], whole)
        if nxt.dim == chain[-1].dim:
            dims.append(nxt.dim)
            break
        chain.append(nxt)
        dims.append(nxt.dim)
        if nxt.dim == 0:
            break
    return _trim_repeats(dims), chain


def upper_central_series(alg: LieAlgebra):
    """Dims of C^1 <= C^2 <= ... via iterated quotient centers."""
    n = alg.dim
    current = Subspace(n, [], alg.order)  # C^0 = 0
    dims: List[int] = []
    chain: List[Subspace] = []
    while True:
        quo, _project = quotient_algebra(alg, current)
        zq = center(quo)
        # pull back: current + preimages of the quotient center
        lift = list(current.basis)
        free = [j for j in range(n) if j not in set(current.pivots)]
        for row in zq.basis:
            v = [zero(alg.order)] * n
            for c, j in zip(row, free):
                v[j] = c
            lift.append(tuple(v))
        nxt = Subspace(n, lift, alg.order)
        dims.append(nxt.dim)
        chain.append(nxt)
        if nxt.dim == n or nxt.dim == current.dim:
            break
        current = nxt
    return _trim_repeats(dims), chain


def is_nilpotent(alg: LieAlgebra) -> bool:
    dims, _ = lower_central_series(alg)
    return dims[-1] == 0


def is_solvable(alg: LieAlgebra) -> bool:
    dims, _ = derived_series(alg)
    return dims[-1] == 0


# --- radical, semisimplicity, nilradical ---------------------------------------


def radical(alg: LieAlgebra) -> Subspace:
    """{x : Tr(ad x ad y) = 0 for all y in the derived algebra}."""
    from .liealg import trace_form

    d = derived_algebra(alg)
    if d.dim == 0:
        return Subspace(alg.dim, [alg.basis_vector(i) for i in range(alg.dim)], alg.order)
    k = trace_form(alg, restrict_to=d.basis)
    rows = [tuple(k[i][j] for i in range(alg.dim)) for j in range(d.dim)]
    return Subspace(alg.dim, null_space(rows, alg.dim, alg.order), alg.order)


def is_semisimple(alg: LieAlgebra) -> bool:
    return radical(alg).dim == 0


def levi_kind(alg: LieAlgebra) -> str:
    """'semisimple', 'solvable', or 'proper' (nonzero proper radical)."""
    r = radical(alg)
    if r.dim == 0:
        return "semisimple"
    if r.dim == alg.dim:
        return "solvable"
    return "proper"


def _fitting_null(a, n: int, order: int) -> List[Vector]:
    power = a
    for _ in range(max(n.bit_length(), 1)):
        power = mat_mul(power, power)
    return null_space(power, n, order)


def _semisimple_part(a, order: int):
    """Chevalley: the semisimple summand of the Jordan decomposition."""
    n = len(a)
    f = charpoly(a, order)
    fp = poly_derivative(f)
    g = poly_gcd(list(f), list(fp), order)
    # squarefree part f / gcd(f, f')
    sf = _poly_div_exact(list(f), g, order)
    x = [row[:] for row in a]
    for _ in range(n.bit_length() + 2):
        gx = poly_eval_matrix(sf, x, order)
        if all(c.is_zero() for row in gx for c in row):
            return x
        dgx = poly_eval_matrix(poly_derivative(sf), x, order)
        inv = mat_inverse(dgx, order)
        if inv is None:
            raise ArithmeticError("derivative not invertible in Chevalley iteration")
        corr = mat_mul(inv, gx)
        x = [[x[i][j] - corr[i][j] for j in range(n)] for i in range(n)]
    raise ArithmeticError("Chevalley iteration failed to converge")


def _poly_div_exact(a: List[CycloNumber], b: List[CycloNumber], order: int) -> List[CycloNumber]:
    out = [zero(order)] * (len(a) - len(b) + 1)
    a = list(a)
    inv = b[-1].inverse()
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        out[i] = c
        if not c.is_zero():
            for j in range(len(b)):
                a[i + j] = a[i + j] - c * b[j]
    assert all(x.is_zero() for x in a), "non-exact polynomial division"
    return out


def cartan_subalgebra(alg: LieAlgebra, seed: int = 11) -> Subspace:
    """A nilpotent self-normalizing subalgebra, by generic Fitting descent."""
    rng = random.Random(seed)
    n = alg.dim
    whole = Subspace(n, [alg.basis_vector(i) for i in range(n)], alg.order)
    current = whole
    for _attempt in range(40):
        sub_alg = subalgebra_constants(alg, current) if current.dim < n else alg
        if is_nilpotent(sub_alg):
            if _self_normalizing(alg, current):
                return current
            current = whole  # restart
            continue
        # pick a random element of current with non-nilpotent ad inside it
        for _ in range(30):
            coeffs = [CycloNumber.from_rational(alg.order, rng.randint(-6, 6))
                      for _ in range(current.dim)]
            x = _combine(current.basis, coeffs, n, alg.order)
            adx = sub_alg.ad_vector(_coords_or_fail(current, x))
            fit = _fitting_null(adx, current.dim, alg.order)
            if len(fit) < current.dim:
                lifted = [_combine(current.basis, row, n, alg.order) for row in fit]
                current = Subspace(n, lifted, alg.order)
                break
        else:
            current = whole
    raise ArithmeticError("Cartan subalgebra search did not converge")


def _combine(basis, coeffs, n, order):
    out = [zero(order)] * n
    for c, row in zip(coeffs, basis):
        if isinstance(c, CycloNumber) and c.is_zero():
            continue
        for j in range(n):
            out[j] = out[j] + c * row[j]
    return tuple(out)


def _coords_or_fail(sub: Subspace, v) -> Vector:
    coords = sub.coordinates(v)
    if coords is None:
        raise AssertionError("vector unexpectedly outside subspace")
    return coords


def _self_normalizing(alg: LieAlgebra, sub: Subspace) -> bool:
    # normalizer {x : [x, sub] <= sub} equals sub
    n = alg.dim
    rows = []
    z = zero(alg.order)
    # complement projector: reduce [x, b] by sub and require the residue zero
    for b in sub.basis:
        cols = []
        for i in range(n):
            w = alg.bracket(alg.basis_vector(i), b)
            work = list(w)
            for row, p in zip(sub.basis, sub.pivots):
                c = work[p]
                if not c.is_zero():
                    for j in range(n):
                        work[j] = work[j] - c * row[j]
            cols.append(work)
        for k in range(n):
            rows.append(tuple(cols[i][k] for i in range(n)))
    normalizer = Subspace(n, null_space(rows, n, alg.order), alg.order)
    return normalizer.dim == sub.dim


@dataclass
class NilradicalResult:
    subspace: Subspace
    verified_ideal: bool
    verified_nilpotent: bool
    flag: Optional[str] = None


def nilradical(alg: LieAlgebra, seed: int = 11) -> NilradicalResult:
    """Maximal nilpotent ideal.

    Within the (solvable) radical R the nilradical is R_1 + {h in H : S_h = 0}
    where H is a Cartan subalgebra of R, S_h the semisimple part of ad_R h
    (linear in h), and R_1 the span of their images.  Every claim is
    re-verified exactly; failures are flagged instead of silently returned.
    """
    n = alg.dim
    rad = radical(alg)
    if rad.dim == 0:
        return NilradicalResult(Subspace(n, [], alg.order), True, True)
    rad_alg = subalgebra_constants(alg, rad)
    if is_nilpotent(rad_alg):
        return NilradicalResult(rad, _is_ideal(alg, rad), True)
    h = cartan_subalgebra(rad_alg, seed)
    s_parts = [
        _semisimple_part(rad_alg.ad_vector(hb), alg.order)
        for hb in h.basis
    ]
    m = rad.dim
    # kernel of the linear map t -> sum t_i S_i
    rows = []
    for r in range(m):
        for c in range(m):
            rows.append(tuple(s_parts[i][r][c] for i in range(h.dim)))
    kernel = null_space(rows, h.dim, alg.order)
    inner_vectors: List[Vector] = []
    for t in kernel:
        inner_vectors.append(_combine(h.basis, t, m, alg.order))
    for s in s_parts:
        for col in range(m):
            colv = tuple(s[r][col] for r in range(m))
            if any(not c.is_zero() for c in colv):
                inner_vectors.append(colv)
    inner = Subspace(m, inner_vectors, alg.order)
    lifted = [_combine(rad.basis, row, n, alg.order) for row in inner.basis]
    cand = Subspace(n, lifted, alg.order)
    ideal_ok = _is_ideal(alg, cand)
    try:
        cand_alg = subalgebra_constants(alg, cand)
        nilp_ok = is_nilpotent(cand_alg)
    except ValueError:
        nilp_ok = False
    flag = None
    if not (ideal_ok and nilp_ok):
        flag = "unverified-maximality"
    return NilradicalResult(cand, ideal_ok, nilp_ok, flag)


def _is_ideal(alg: LieAlgebra, sub: Subspace) -> bool:
    for i in range(alg.dim):
        for b in sub.basis:
            if not sub.contains(alg.bracket(alg.basis_vector(i), b)):
                return False
    return True


# --- central splitting and decomposition ---------------------------------------


def split_central(alg: LieAlgebra, keep_grading: bool = False):
    """(core, abelian_dim): strip the central component outside the derived
    algebra; the core contains D(L) and has center inside its own derived
    algebra."""
    n = alg.dim
    c = center(alg)
    d = derived_algebra(alg)
    central_extra: List[Vector] = []
    working = Subspace(n, list(d.basis), alg.order)
    for v in c.basis:
        if not working.contains(v):
            central_extra.append(v)
            working = Subspace(n, list(working.basis) + [v], alg.order)
    abelian_dim = len(central_extra)
    # complete D(L) to a complement of the split-off center
    core_vectors = list(d.basis)
    blocked = Subspace(n, list(d.basis) + central_extra, alg.order)
    for i in range(n):
        v = alg.basis_vector(i)
        if not blocked.contains(v):
            core_vectors.append(v)
            blocked = Subspace(n, list(blocked.basis) + [v], alg.order)
    core_span = Subspace(n, core_vectors, alg.order)
    core = subalgebra_constants(alg, core_span)
    return core, abelian_dim


@dataclass
class Decomposition:
    parts: List[LieAlgebra]
    certified: bool
    flag: Optional[str] = None


def decompose(alg: LieAlgebra, seed: int = 5) -> Decomposition:
    """Direct sum of indecomposable ideals.

    Strategy (i): connected components of the basis interaction graph (the
    exhaustive basis-aligned split).  Strategy (ii): the centralizer of the
    adjoint representation; scalar centralizer certifies indecomposability,
    otherwise a nontrivial idempotent is sought through the minimal
    polynomial of a generic centralizer element (square-free step plus
    linear/quadratic factors).  Undecided cases come back flagged.
    """
    comps = _basis_components(alg)
    if len(comps) > 1:
        parts: List[LieAlgebra] = []
        certified = True
        for comp in comps:
            sub = Subspace(alg.dim, [alg.basis_vector(i) for i in sorted(comp)], alg.order)
            part = subalgebra_constants(alg, sub)
            inner = decompose(part, seed)
            parts.extend(inner.parts)
            certified = certified and inner.certified
        return Decomposition(parts, certified)
    cz = _ad_centralizer(alg)
    if len(cz) == 1:
        return Decomposition([alg], True)
    idem = _find_idempotent(alg, cz, seed)
    if idem is None:
        # centralizer may still be local (nilpotent off the identity)
        if _centralizer_is_local(alg, cz):
            return Decomposition([alg], True)
        return Decomposition([alg], False, flag="undetermined")
    ker = null_space(idem, alg.dim, alg.order)
    shifted = [[idem[i][j] - (one(alg.order) if i == j else zero(alg.order))
                for j in range(alg.dim)] for i in range(alg.dim)]
    img = null_space(shifted, alg.dim, alg.order)
    out_parts: List[LieAlgebra] = []
    certified = True
    for vs in (ker, img):
        sub = Subspace(alg.dim, vs, alg.order)
        part = subalgebra_constants(alg, sub)
        inner = decompose(part, seed)
        out_parts.extend(inner.parts)
        certified = certified and inner.certified
    return Decomposition(out_parts, certified)


def _basis_components(alg: LieAlgebra) -> List[List[int]]:
    n = alg.dim
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for (i, j), targets in alg.constants.items():
        union(i, j)
        for k in targets:
            union(i, k)
    groups: Dict[int, List[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _ad_centralizer(alg: LieAlgebra) -> List:
    """Basis of {M : M ad(e_i) = ad(e_i) M for all i} (n^2 unknowns)."""
    n = alg.dim
    ads = [alg.ad_basis(i) for i in range(n)]
    elim = SparseEliminator(n * n, alg.order)
    for a in ads:
        # (M a - a M)[r][c] = sum_k M[r][k] a[k][c] - a[r][k] M[k][c]
        for r in range(n):
            for c in range(n):
                row: Dict[int, CycloNumber] = {}
                for k in range(n):
                    v = a[k][c]
                    if not v.is_zero():
                        key = r * n + k
                        row[key] = row.get(key, zero(alg.order)) + v
                    v = a[r][k]
                    if not v.is_zero():
                        key = k * n + c
                        row[key] = row.get(key, zero(alg.order)) - v
                if row:
                    elim.add_row(row)
    out = []
    for flat in elim.null_space():
        out.append([list(flat[i * n:(i + 1) * n]) for i in range(n)])
    return out


def _minimal_polynomial(m, order: int) -> List[CycloNumber]:
    """Ascending coefficients of the monic minimal polynomial."""
    n = len(m)
    width = n * n
    powers = [identity_matrix(order, n)]
    flat_rows = [tuple(c for row in powers[0] for c in row)]
    for k in range(1, width + 1):
        powers.append(mat_mul(powers[-1], m))
        flat_rows.append(tuple(c for row in powers[-1] for c in row))
        sub = Subspace(width, flat_rows[:-1], order)
        coords = sub.coordinates(flat_rows[-1])
        if coords is not None:
            # m^k = sum coords over the rref basis; convert to power basis
            # solve directly: express m^k in terms of previous powers
            sol = _express_in_powers(flat_rows[:-1], flat_rows[-1], width, order)
            poly = [-c for c in sol] + [one(order)]
            return poly
    raise ArithmeticError("minimal polynomial not found")


def _express_in_powers(power_rows, target, width, order):
    cols = len(power_rows)
    rows = []
    for j in range(width):
        rows.append(tuple(power_rows[i][j] for i in range(cols)) + (target[j],))
    basis, piv = rref(rows, cols + 1, order)
    sol = [zero(order)] * cols
    for row, p in zip(basis, piv):
        assert p != cols, "inconsistent power expression"
        sol[p] = row[cols]
    return sol


def _find_idempotent(alg: LieAlgebra, cz, seed: int):
    rng = random.Random(seed)
    n = alg.dim
    o, z = one(alg.order), zero(alg.order)
    for _ in range(25):
        coeffs = [CycloNumber.from_rational(alg.order, rng.randint(-5, 5)) for _ in cz]
        m = [[z] * n for _ in range(n)]
        for c, b in zip(coeffs, cz):
            if c.is_zero():
                continue
            for i in range(n):
                for j in range(n):
                    m[i][j] = m[i][j] + c * b[i][j]
        minpoly = _minimal_polynomial(m, alg.order)
        factors = _coprime_split(minpoly, alg.order)
        if factors is None:
            continue
        f1, f2 = factors
        # Bezout: u f1 + v f2 = 1; idempotent E = (u f1)(m)
        u, v = _poly_bezout(f1, f2, alg.order)
        e = poly_eval_matrix(_poly_mul_list(u, f1, alg.order), m, alg.order)
        ee = mat_mul(e, e)
        if ee == e and any(not e[i][j].is_zero() for i in range(n) for j in range(n)):
            if e != identity_matrix(alg.order, n):
                return e
    return None


def _coprime_split(p: List[CycloNumber], order: int):
    """Split the squarefree part into two coprime nonconstant factors."""
    sf = _squarefree_part(p, order)
    if len(sf) <= 2:
        return None
    lin = _linear_roots(sf, order)
    if not lin:
        return None
    root = lin[0]
    f1 = [-root, one(order)]
    f2 = _poly_div_exact(sf, f1, order)
    if len(f2) <= 1:
        return None
    return f1, f2


def _squarefree_part(p: List[CycloNumber], order: int) -> List[CycloNumber]:
    g = poly_gcd(list(p), poly_derivative(p), order)
    return _poly_div_exact(list(p), g, order)


def _linear_roots(p: List[CycloNumber], order: int) -> List[CycloNumber]:
    """Roots in Q(zeta_n) found by rational-candidate search on charpoly-sized
    polynomials: try roots of the form r, r*w, r+s*w via resultant-free probing."""
    # probe small rational candidates; sufficient for idempotent spectra,
    # whose eigenvalues here are small algebraic integers (typically 0/1).
    roots = []
    candidates = [Fraction(k) for k in range(-6, 7)]
    from .cyclo import root_power

    w = root_power(order, 1) if order > 2 else one(order)
    pool = [CycloNumber.from_rational(order, c) for c in candidates]
    pool += [w * CycloNumber.from_rational(order, c) for c in candidates if c != 0]
    for cand in pool:
        acc = zero(order)
        powv = one(order)
        for c in p:
            acc = acc + c * powv
            powv = powv * cand
        if acc.is_zero():
            roots.append(cand)
    return roots


def _poly_bezout(a: List[CycloNumber], b: List[CycloNumber], order: int):
    """u, v with u a + v b = 1 for coprime a, b."""
    r0, s0, t0 = list(a), [one(order)], [zero(order)]
    r1, s1, t1 = list(b), [zero(order)], [one(order)]

    def trim(p):
        p = list(p)
        while p and p[-1].is_zero():
            p.pop()
        return p

    def sub_scaled(p, q, c, shift):
        out = list(p) + [zero(order)] * max(0, len(q) + shift - len(p))
        for i, qc in enumerate(q):
            out[i + shift] = out[i + shift] - c * qc
        return trim(out)

    r0, r1 = trim(r0), trim(r1)
    while len(r1) > 1:
        q = []
        rem = list(r0)
        inv = r1[-1].inverse()
        qs = [zero(order)] * max(1, len(rem) - len(r1) + 1)
        while len(rem) >= len(r1):
            c = rem[-1] * inv
            shift = len(rem) - len(r1)
            qs[shift] = c
            rem = sub_scaled(rem, r1, c, shift)
            if not rem:
                break
        new_s = sub_scaled(s0, _poly_mul_list(qs, s1, order), one(order), 0)
        new_t = sub_scaled(t0, _poly_mul_list(qs, t1, order), one(order), 0)
        r0, s0, t0, r1, s1, t1 = r1, s1, t1, trim(rem), trim(new_s) or [zero(order)], trim(new_t) or [zero(order)]
        if not r1:
            raise ArithmeticError("inputs to Bezout are not coprime")
    c = r1[0].inverse()
    return [x * c for x in s1], [x * c for x in t1]


def _poly_mul_list(a, b, order: int):
    if not a or not b:
        return []
    out = [zero(order)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _centralizer_is_local(alg: LieAlgebra, cz) -> bool:
    """No nontrivial idempotents iff the centralizer algebra is local;
    certified when the trace-form radical has codimension 1."""
    n = alg.dim
    m = len(cz)
    gram = []
    for a in cz:
        row = []
        for b in cz:
            row.append(mat_trace(mat_mul(a, b)))
        gram.append(tuple(row))
    from .linalg import rank as _rank

    return _rank(gram, m, alg.order) == 1


# --- derivations ----------------------------------------------------------------


@dataclass
class DerivationAlgebra:
    basis: List  # dim x dim matrices
    dim: int
    as_lie: Optional[LieAlgebra] = None


def derivation_algebra(alg: LieAlgebra, with_lie: bool = True) -> DerivationAlgebra:
    """Exact null space of the Leibniz system."""
    n = alg.dim
    elim = SparseEliminator(n * n, alg.order)
    z = zero(alg.order)
    entries = {}
    for (i, j), targets in alg.constants.items():
        entries[(i, j)] = targets
    for i in range(n):
        for j in range(i + 1, n):
            cij = alg.constants.entry(i, j)
            for k in range(n):
                row: Dict[int, CycloNumber] = {}
                for m, c in cij.items():
                    key = k * n + m
                    row[key] = row.get(key, z) + c
                for m in range(n):
                    c = alg.constants.entry(m, j).get(k)
                    if c is not None:
                        key = m * n + i
                        row[key] = row.get(key, z) - c
                    c = alg.constants.entry(i, m).get(k)
                    if c is not None:
                        key = m * n + j
                        row[key] = row.get(key, z) - c
                row = {kk: v for kk, v in row.items() if not v.is_zero()}
                if row:
                    elim.add_row(row)
    basis = []
    for flat in elim.null_space():
        basis.append([list(flat[i * n:(i + 1) * n]) for i in range(n)])
    der = DerivationAlgebra(basis=basis, dim=len(basis))
    if with_lie:
        der.as_lie = _matrix_lie_algebra(basis, n, alg.order)
    return der


def _matrix_lie_algebra(mats, n: int, order: int) -> LieAlgebra:
    """Structure constants of a space of matrices closed under commutators."""
    width = n * n
    flat_rows = [tuple(c for row in m for c in row) for m in mats]
    span = Subspace(width, flat_rows, order)
    # mats from a null-space routine are already independent, but re-derive
    # coordinates against the canonical span basis for stable arithmetic
    basis_mats = [[list(row[i * n:(i + 1) * n]) for i in range(n)] for row in span.basis]
    table: Dict[Tuple[int, int], Dict[int, CycloNumber]] = {}
    m = len(basis_mats)
    for a in range(m):
        for b in range(a + 1, m):
            comm = mat_mul(basis_mats[a], basis_mats[b])
            ba = mat_mul(basis_mats[b], basis_mats[a])
            flat = tuple(comm[i][j] - ba[i][j] for i in range(n) for j in range(n))
            coords = span.coordinates(flat)
            if coords is None:
                raise ValueError("matrix space is not closed under commutators")
            targets = {k: coords[k] for k in range(m) if not coords[k].is_zero()}
            if targets:
                table[(a, b)] = targets
    return LieAlgebra(StructureConstants(m, order, table), None)


def der_tower(alg: LieAlgebra, depth_cap: int = 4) -> Tuple[List[int], bool]:
    """Dims of Der, Der^2, ... until the dimension stabilizes or the cap.

    Returns (dims, stabilized); the repeated stabilized dimension is trimmed.
    """
    dims: List[int] = []
    current = alg
    stabilized = False
    for _ in range(depth_cap):
        der = derivation_algebra(current, with_lie=True)
        if dims and der.dim == dims[-1]:
            stabilized = True
            break
        dims.append(der.dim)
        current = der.as_lie
    return dims, stabilized


# --- formal invariants -----------------------------------------------------------


def formal_invariant_count(alg: LieAlgebra, seed: int = 23) -> Tuple[int, int]:
    """(tau, generic_rank) of the antisymmetric matrix sum_k c_ij^k e_k.

    Generic rank by exact evaluation at random rational points: at least
    three points per batch, two independently seeded batches, maxima must
    agree.
    """
    n = alg.dim

    def batch_rank(batch_seed: int) -> int:
        rng = random.Random(batch_seed)
        best = 0
        for _ in range(3):
            point = [Fraction(rng.randint(-1000, 1000)) for _ in range(n)]
            rows = []
            for i in range(n):
                row = [zero(alg.order)] * n
                rows.append(row)
            for (i, j), targets in alg.constants.items():
                acc = zero(alg.order)
                for k, c in targets.items():
                    acc = acc + c * point[k]
                rows[i][j] = acc
                rows[j][i] = -acc
            from .linalg import rank as _rank

            best = max(best, _rank([tuple(r) for r in rows], n, alg.order))
        return best

    r1 = batch_rank(seed)
    r2 = batch_rank(seed + 104729)
    r = max(r1, r2)
    if r1 != r2:
        # a third batch settles disagreement loudly
        r3 = batch_rank(seed + 224737)
        r = max(r, r3)
    return n - r, r


def verify_casimir(alg: LieAlgebra, f: Poly):
    """True iff every structure-constant vector field annihilates f."""
    n = alg.dim
    if f.nvars != n:
        raise ValueError("polynomial variable count must equal dim")
    diffs = [f.diff(j) for j in range(n)]
    for i in range(n):
        acc = Poly(n, alg.order)
        for j in range(n):
            if diffs[j].is_zero():
                continue
            coeffs = alg.constants.entry(i, j)
            if not coeffs:
                continue
            lin = Poly(n, alg.order,
                       {tuple(1 if t == k else 0 for t in range(n)): c
                        for k, c in coeffs.items()})
            acc = acc + lin * diffs[j]
        if not acc.is_zero():
            return False, i
    return True, None


def verify_isomorphism(a, l1: LieAlgebra, l2: LieAlgebra) -> bool:
    """Does the matrix transport l1's bracket onto l2's exactly?

    With phi(e_i) = sum_mu a[mu][i] f_mu the condition is
    sum_r x_ij^r a[k][r] = sum_(mu,nu) a[mu][i] a[nu][j] y_munu^k.
    Singular matrices fail.
    """
    n = l1.dim
    if l2.dim != n or len(a) != n:
        raise ValueError("dimension mismatch")
    if mat_inverse([list(r) for r in a], l1.order) is None:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            lhs = [zero(l1.order)] * n
            for r, c in l1.constants.entry(i, j).items():
                for k in range(n):
                    lhs[k] = lhs[k] + c * a[k][r]
            cols_i = [a[mu][i] for mu in range(n)]
            cols_j = [a[nu][j] for nu in range(n)]
            rhs = l2.bracket(cols_i, cols_j)
            if any(lhs[k] != rhs[k] for k in range(n)):
                return False
    return True


# --- fingerprints -----------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    derived_dims: Tuple[int, ...]
    lower_central_dims: Tuple[int, ...]
    upper_central_dims: Tuple[int, ...]
    dim_der: int
    tau: int
    center_dim: int
    solvable: bool
    nilpotent: bool
    semisimple: bool
    der_tower: Tuple[int, ...] = ()

    def render(self) -> str:
        lines = [
            f"dim: {self.dim}",
            f"derived_series: {_fmt(self.derived_dims)}",
            f"lower_central_series: {_fmt(self.lower_central_dims)}",
            f"upper_central_series: {_fmt(self.upper_central_dims)}",
            f"dim_der: {self.dim_der}",
            f"tau: {self.tau}",
            f"center_dim: {self.center_dim}",
            f"flags: solvable={_yn(self.solvable)} nilpotent={_yn(self.nilpotent)}"
            f" semisimple={_yn(self.semisimple)}",
        ]
        if self.der_tower:
            lines.append(f"der_tower: {_fmt(self.der_tower)}")
        return "\n".join(lines)


def _fmt(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def fingerprint(alg: LieAlgebra, seed: int = 23, tower_depth: int = 0) -> Fingerprint:
    ds, _ = derived_series(alg)
    lcs, _ = lower_central_series(alg)
    ucs, _ = upper_central_series(alg)
    c = center(alg)
    der = derivation_algebra(alg, with_lie=False)
    tau, _rank_val = formal_invariant_count(alg, seed)
    solvable = ds[-1] == 0
    nilpotent = lcs[-1] == 0
    semisimple = is_semisimple(alg)
    tower: Tuple[int, ...] = ()
    if tower_depth:
        dims, _stab = der_tower(alg, tower_depth)
        tower = tuple(dims)
    return Fingerprint(
        dim=alg.dim,
        derived_dims=tuple(ds),
        lower_central_dims=tuple(lcs),
        upper_central_dims=tuple(ucs),
        dim_der=der.dim,
        tau=tau,
        center_dim=c.dim,
        solvable=solvable,
        nilpotent=nilpotent,
        semisimple=semisimple,
        der_tower=tower,
    )
