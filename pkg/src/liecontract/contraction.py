"""Contraction matrices, the quadratic contraction system, and equivalence.

Symbolic matrices carry monomial entries over the parameters a..f exactly as
printed in the solution catalog; instantiation at nonzero rationals produces
concrete matrices over Q(zeta_3).  The system of 48 two-term equations, the
104 multiplicative identities, the coset redundancy, the non-equivalence
systems, and the continuity classifier all live here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .cyclo import CycloNumber, one, zero
from .liealg import Index, index_add, pauli_bracket_coeff, pauli_indices
from .lattice import (
    ExponentLattice,
    build_exponent_lattice,
    exponent_rows,
    integer_weight_vector,
    kernel_product_is_one,
)
from .linalg import integer_left_kernel
from .symmetry import (
    SymmetryElement,
    enumerate_group,
    group_mul,
    permutation_of,
)

Pair = FrozenSet[Index]

PARAM_LETTERS = "abcdef"


class ContractionError(ValueError):
    pass


class ParseError(ContractionError):
    pass


class NotComparableError(ContractionError):
    """Zero patterns differ; no normalization can relate the matrices."""


class NonSolutionError(ContractionError):
    """An operation that requires a solution got a non-solution."""


# --- relevant pairs ----------------------------------------------------------


@lru_cache(maxsize=None)
def relevant_pairs(n: int = 3) -> Tuple[Pair, ...]:
    """All unordered index pairs with nonvanishing bracket, canonical order."""
    indices = pauli_indices(n)
    out = []
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            (i, j), (k, l) = indices[a], indices[b]
            if (j * k - i * l) % n != 0:
                out.append(frozenset((indices[a], indices[b])))
    return tuple(out)


@lru_cache(maxsize=None)
def pair_position(n: int = 3) -> Dict[Pair, int]:
    return {p: i for i, p in enumerate(relevant_pairs(n))}


def pair_text(pair: Pair, n: int = 3) -> str:
    pos = {g: i for i, g in enumerate(pauli_indices(n))}
    a, b = sorted(pair, key=lambda g: pos[g])
    return f"({a[0]}{a[1]})({b[0]}{b[1]})"


def pair_from_text(text: str, n: int = 3) -> Pair:
    m = re.fullmatch(r"\((\d)(\d)\)\((\d)(\d)\)", text.strip())
    if not m:
        raise ParseError(f"bad pair literal {text!r}")
    i = (int(m.group(1)) % n, int(m.group(2)) % n)
    j = (int(m.group(3)) % n, int(m.group(4)) % n)
    pair = frozenset((i, j))
    if pair not in pair_position(n):
        raise ParseError(f"{text} is not a relevant pair")
    return pair


# --- symbolic entries --------------------------------------------------------


@dataclass(frozen=True)
class SymbolicMonomial:
    """sign * coeff * product of parameters; coeff 0 means the zero entry."""

    sign: int = 1
    coeff: int = 0
    params: Tuple[str, ...] = ()

    def is_zero(self) -> bool:
        return self.coeff == 0

    def instantiate(self, bindings: Dict[str, CycloNumber], order: int = 3) -> CycloNumber:
        acc = CycloNumber.from_rational(order, self.sign * self.coeff)
        for p in self.params:
            acc = acc * bindings[p]
        return acc

    def render(self) -> str:
        if self.coeff == 0:
            return "."
        body = "".join(self.params)
        if self.coeff != 1 or not body:
            body = str(self.coeff) + body
        return ("-" if self.sign < 0 else "") + body


_ENTRY_RE = re.compile(r"(-)?(\d+)?([a-f]*)")


def parse_entry(token: str) -> SymbolicMonomial:
    if token == ".":
        return SymbolicMonomial()
    m = _ENTRY_RE.fullmatch(token)
    if not m or (m.group(2) is None and not m.group(3)):
        raise ParseError(f"bad entry {token!r}")
    sign = -1 if m.group(1) else 1
    coeff = int(m.group(2)) if m.group(2) is not None else 1
    params = tuple(sorted(m.group(3)))
    if coeff == 0:
        return SymbolicMonomial()
    return SymbolicMonomial(sign=sign, coeff=coeff, params=params)


ZERO_MONOMIAL = SymbolicMonomial()


class ContractionMatrix:
    """Symmetric 8x8 symbolic contraction matrix in the canonical order."""

    def __init__(self, entries: Dict[Pair, SymbolicMonomial],
                 side_conditions: Optional[str] = None, n: int = 3):
        self.n = n
        known = set(relevant_pairs(n))
        for p in entries:
            if p not in known:
                raise ContractionError(f"nonzero value at irrelevant position {pair_text(p, n)}")
        self.entries = {p: m for p, m in entries.items() if not m.is_zero()}
        self.side_conditions = side_conditions

    @property
    def params_declared(self) -> FrozenSet[str]:
        out = set()
        for m in self.entries.values():
            out.update(m.params)
        return frozenset(out)

    def entry(self, pair: Pair) -> SymbolicMonomial:
        return self.entries.get(pair, ZERO_MONOMIAL)

    def nu(self) -> int:
        """Number of zero relevant positions (parameters count as nonzero)."""
        return len(relevant_pairs(self.n)) - len(self.entries)

    def render_body(self) -> str:
        indices = pauli_indices(self.n)
        pos = pair_position(self.n)
        rows = []
        for i in range(len(indices)):
            row = []
            for j in range(len(indices)):
                pair = frozenset((indices[i], indices[j]))
                if i == j or pair not in pos:
                    row.append(".")
                else:
                    row.append(self.entry(pair).render())
            rows.append(" ".join(row))
        return "\n".join(rows)

    def __eq__(self, other):
        if not isinstance(other, ContractionMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __repr__(self):
        return f"ContractionMatrix(n={self.n}, nu={self.nu()}, params={sorted(self.params_declared)})"


def parse_matrix(text: str, n: int = 3) -> ContractionMatrix:
    """Parse 8 whitespace-separated rows; '.' is zero.

    Symmetry and zero irrelevant positions are validated; violations name
    the row and column (1-based).
    """
    lines = [ln for ln in (l.strip() for l in text.splitlines()) if ln]
    dim = n * n - 1
    if len(lines) != dim:
        raise ParseError(f"expected {dim} matrix rows, got {len(lines)}")
    grid = []
    for r, line in enumerate(lines, start=1):
        tokens = line.split()
        if len(tokens) != dim:
            raise ParseError(f"row {r}: expected {dim} entries, got {len(tokens)}")
        row = []
        for c, tok in enumerate(tokens, start=1):
            try:
                row.append(parse_entry(tok))
            except ParseError as exc:
                raise ParseError(f"row {r}, column {c}: {exc}") from None
        grid.append(row)
    indices = pauli_indices(n)
    pos = pair_position(n)
    entries = {}
    for i in range(dim):
        for j in range(i, dim):
            if grid[i][j] != grid[j][i]:
                raise ParseError(f"row {i + 1}, column {j + 1}: matrix is not symmetric")
            pair = frozenset((indices[i], indices[j]))
            if i == j or pair not in pos:
                if not grid[i][j].is_zero():
                    raise ParseError(
                        f"row {i + 1}, column {j + 1}: nonzero entry at irrelevant position")
                continue
            entries[pair] = grid[i][j]
    return ContractionMatrix(entries, n=n)


# --- concrete matrices -------------------------------------------------------


class ConcreteContraction:
    """A fully evaluated contraction matrix over Q(zeta_n)."""

    def __init__(self, values: Dict[Pair, CycloNumber], n: int = 3):
        self.n = n
        z = zero(n)
        self.values = {p: values.get(p, z) for p in relevant_pairs(n)}

    def value(self, pair: Pair) -> CycloNumber:
        return self.values[pair]

    def support(self) -> FrozenSet[Pair]:
        return frozenset(p for p, v in self.values.items() if not v.is_zero())

    def nu(self) -> int:
        return len(self.values) - len(self.support())

    def permuted(self, perm) -> "ConcreteContraction":
        return ConcreteContraction(
            {frozenset(perm[i] for i in p): v for p, v in self.values.items()}, self.n)

    def scaled(self, a: Dict[Index, CycloNumber]) -> "ConcreteContraction":
        """Entrywise product with the normalization matrix a_i a_j / a_(i+j)."""
        out = {}
        for p, v in self.values.items():
            i, j = tuple(p)
            factor = a[i] * a[j] / a[index_add(i, j, self.n)]
            out[p] = factor * v
        return ConcreteContraction(out, self.n)

    def as_pair_dict(self) -> Dict[Pair, CycloNumber]:
        return dict(self.values)

    def __eq__(self, other):
        if not isinstance(other, ConcreteContraction):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __repr__(self):
        return f"ConcreteContraction(n={self.n}, nu={self.nu()})"


def all_ones(n: int = 3) -> ConcreteContraction:
    o = one(n)
    return ConcreteContraction({p: o for p in relevant_pairs(n)}, n)


def indicator(support: Iterable[Pair], n: int = 3) -> ConcreteContraction:
    o = one(n)
    return ConcreteContraction({p: o for p in support}, n)


def normalization_matrix(a: Dict[Index, CycloNumber], n: int = 3) -> ConcreteContraction:
    return all_ones(n).scaled(a)


def instantiate(matrix: ContractionMatrix, bindings: Dict[str, CycloNumber]) -> ConcreteContraction:
    """Evaluate all entries; every declared parameter must be bound nonzero."""
    missing = matrix.params_declared - set(bindings)
    if missing:
        raise ContractionError(f"unbound parameters: {sorted(missing)}")
    for p in matrix.params_declared:
        if bindings[p].is_zero():
            raise ContractionError(
                f"parameter {p} bound to zero; use instantiate_boundary for degenerate values")
    values = {p: m.instantiate(bindings, matrix.n) for p, m in matrix.entries.items()}
    return ConcreteContraction(values, matrix.n)


def instantiate_boundary(matrix: ContractionMatrix, bindings: Dict[str, CycloNumber],
                         system: Optional[List["ContractionEquation"]] = None):
    """Degenerate instantiation (zero parameter values allowed).

    The zero pattern is recomputed and the contraction system re-checked;
    returns (concrete, nu).  Raises NonSolutionError if the boundary point
    leaves the solution set.
    """
    missing = matrix.params_declared - set(bindings)
    if missing:
        raise ContractionError(f"unbound parameters: {sorted(missing)}")
    values = {p: m.instantiate(bindings, matrix.n) for p, m in matrix.entries.items()}
    concrete = ConcreteContraction(values, matrix.n)
    if system is None:
        system = generate_system(matrix.n)
    ok, witness = check_solution(concrete, system)
    if not ok:
        raise NonSolutionError(
            f"boundary instantiation violates the system at triple {witness.triple_text()}")
    return concrete, concrete.nu()


# --- the contraction system --------------------------------------------------


@dataclass(frozen=True)
class ContractionEquation:
    """sum of coeff * eps_p * eps_q over the listed monomials = 0."""

    terms: Tuple[Tuple[CycloNumber, Pair, Pair], ...]
    source_triple: Tuple[Index, ...]
    n: int = 3

    def monomials(self) -> Dict[FrozenSet[Pair], CycloNumber]:
        out: Dict[FrozenSet[Pair], CycloNumber] = {}
        for c, p, q in self.terms:
            key = frozenset((p, q))
            out[key] = out[key] + c if key in out else c
        return out

    def evaluate(self, x: ConcreteContraction) -> CycloNumber:
        acc = zero(self.n)
        for c, p, q in self.terms:
            acc = acc + c * x.value(p) * x.value(q)
        return acc

    def canonical(self) -> Tuple[Tuple[Tuple[int, ...], Tuple[Fraction, ...], ...], ...]:
        """Scalar-normalized form: equations equal up to a nonzero factor
        canonicalize identically."""
        pos = pair_position(self.n)
        items = []
        for key, c in self.monomials().items():
            mk = tuple(sorted(pos[p] for p in key))
            items.append((mk, c))
        items.sort(key=lambda t: t[0])
        lead = items[0][1]
        inv = lead.inverse()
        return tuple((mk, (inv * c).coeffs) for mk, c in items)

    def triple_text(self) -> str:
        return "".join(f"({i}{j})" for i, j in self.source_triple)

    def render(self) -> str:
        parts = []
        for c, p, q in self.terms:
            coeff = str(c)
            if ("+" in coeff[1:]) or ("-" in coeff[1:]):
                coeff = f"({coeff})"
            parts.append(f"{coeff}*e[{pair_text(p, self.n)}]*e[{pair_text(q, self.n)}]")
        return " + ".join(parts) + " = 0"


def _triple_equation(triple: Sequence[Index], n: int) -> Optional[ContractionEquation]:
    i, j, k = triple
    terms = []
    for a, (b, c) in ((i, (j, k)), (k, (i, j)), (j, (k, i))):
        inner = pauli_bracket_coeff(b, c, n)
        if inner.is_zero():
            continue
        target = index_add(b, c, n)
        outer = pauli_bracket_coeff(a, target, n)
        if outer.is_zero():
            continue
        terms.append((inner * outer, frozenset((a, target)), frozenset((b, c))))
    if not terms:
        return None
    return ContractionEquation(tuple(terms), tuple(triple), n)


@lru_cache(maxsize=None)
def generate_system(n: int = 3) -> Tuple[ContractionEquation, ...]:
    """All non-trivial Jacobi-derived equations, one per index triple."""
    if n not in (3, 5):
        raise ContractionError(f"unsupported grading order {n}")
    indices = pauli_indices(n)
    out = []
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            for c in range(b + 1, len(indices)):
                eq = _triple_equation((indices[a], indices[b], indices[c]), n)
                if eq is not None:
                    out.append(eq)
    if n == 3:
        assert len(out) == 48, f"expected 48 equations for n=3, got {len(out)}"
        assert all(len(eq.terms) == 2 for eq in out)
    return tuple(out)


def equation_for_triple(triple: Sequence[Index], n: int = 3) -> ContractionEquation:
    eq = _triple_equation(tuple(triple), n)
    if eq is None:
        raise ContractionError("triple is identically satisfied")
    return eq


def system_orbits(equations: Sequence[ContractionEquation],
                  group: Sequence[SymmetryElement], n: int = 3) -> List[List[ContractionEquation]]:
    """Group equations by the orbit of their source triples."""
    perms = [permutation_of(mat, n) for mat in group]
    orbit_of: Dict[FrozenSet[Index], int] = {}
    orbits: List[List[ContractionEquation]] = []
    for eq in equations:
        key = frozenset(eq.source_triple)
        if key in orbit_of:
            orbits[orbit_of[key]].append(eq)
            continue
        idx = len(orbits)
        for perm in perms:
            orbit_of[frozenset(perm[i] for i in key)] = idx
        orbits.append([eq])
    return orbits


def check_solution(x: ConcreteContraction,
                   system: Optional[Sequence[ContractionEquation]] = None):
    """(True, None) iff every equation vanishes; else (False, first witness)."""
    if system is None:
        system = generate_system(x.n)
    for eq in system:
        if not eq.evaluate(x).is_zero():
            return False, eq
    return True, None


# --- substitution orbit of the S^a representative and coset redundancy -------


def _pair_times(pair: Pair, mat: SymmetryElement, n: int) -> Pair:
    a, b, c, d = mat
    return frozenset(((i * a + j * c) % n, (i * b + j * d) % n) for i, j in pair)


def sa_equation(mat: SymmetryElement, n: int = 3) -> Dict[FrozenSet[Pair], int]:
    """The S^a equation for A, by substitution into the representative.

    eps_((02)(10)A) eps_((01)(12)A) - eps_((01)(10)A) eps_((02)(11)A) = 0,
    kept as a +1/-1 monomial vector (no scalar renormalization).
    """
    plus = [pair_from_text("(02)(10)"), pair_from_text("(01)(12)")]
    minus = [pair_from_text("(01)(10)"), pair_from_text("(02)(11)")]
    key_plus = frozenset(_pair_times(p, mat, n) for p in plus)
    key_minus = frozenset(_pair_times(p, mat, n) for p in minus)
    return {key_plus: 1, key_minus: -1}


def coset_redundancy(n: int = 3):
    """The 8 triples {A, XA, X^2A} whose S^a equations sum to zero.

    Returns (cosets, eliminable_count); each coset is a list of three group
    elements and the exact linear dependence is verified over Q.
    """
    x = (1, 2, 0, 1)
    sl = enumerate_group(n, det_plus_only=True)
    seen = set()
    cosets = []
    for a in sl:
        if a in seen:
            continue
        triple = [a, group_mul(x, a, n), group_mul(group_mul(x, x, n), a, n)]
        seen.update(triple)
        total: Dict[FrozenSet[Pair], int] = {}
        for b in triple:
            for key, v in sa_equation(b, n).items():
                total[key] = total.get(key, 0) + v
        if any(v != 0 for v in total.values()):
            raise AssertionError("coset equations are not linearly dependent")
        cosets.append(triple)
    return cosets, len(cosets)


# --- higher-order identities -------------------------------------------------


@dataclass(frozen=True)
class IdentityRelation:
    """Multiplicative relation prod eps^(u>0) = prod eps^(-u<0)."""

    exponents: Tuple[int, ...]  # over the canonical relevant-pair order
    order: int
    n: int = 3

    def pairs_lhs(self) -> List[Pair]:
        rp = relevant_pairs(self.n)
        out = []
        for i, e in enumerate(self.exponents):
            out.extend([rp[i]] * max(e, 0))
        return out

    def pairs_rhs(self) -> List[Pair]:
        rp = relevant_pairs(self.n)
        out = []
        for i, e in enumerate(self.exponents):
            out.extend([rp[i]] * max(-e, 0))
        return out

    def holds_for(self, x: ConcreteContraction) -> bool:
        lhs = one(self.n)
        for p in self.pairs_lhs():
            lhs = lhs * x.value(p)
        rhs = one(self.n)
        for p in self.pairs_rhs():
            rhs = rhs * x.value(p)
        return lhs == rhs

    def render(self) -> str:
        lhs = "".join(f"e[{pair_text(p, self.n)}]" for p in self.pairs_lhs())
        rhs = "".join(f"e[{pair_text(p, self.n)}]" for p in self.pairs_rhs())
        return f"{lhs} = {rhs}"


def _identity_from_texts(plus: Sequence[str], minus: Sequence[str], n: int = 3) -> IdentityRelation:
    pos = pair_position(n)
    expo = [0] * len(pos)
    for t in plus:
        expo[pos[pair_from_text(t, n)]] += 1
    for t in minus:
        expo[pos[pair_from_text(t, n)]] -= 1
    return IdentityRelation(tuple(expo), order=len(plus), n=n)


IDENTITY_REPRESENTATIVES: Tuple[Tuple[Tuple[str, ...], Tuple[str, ...]], ...] = (
    (("(01)(10)", "(02)(11)"), ("(01)(20)", "(02)(21)")),
    (("(01)(10)", "(01)(11)", "(01)(12)"), ("(01)(20)", "(01)(22)", "(01)(21)")),
    (("(01)(10)", "(01)(12)", "(02)(21)"), ("(01)(22)", "(01)(21)", "(02)(12)")),
    (("(01)(10)", "(01)(11)", "(02)(21)"), ("(01)(22)", "(01)(21)", "(02)(10)")),
    (("(01)(10)", "(01)(11)", "(02)(22)"), ("(01)(20)", "(01)(22)", "(02)(10)")),
)


def _canonical_identity(expo: Sequence[int]) -> Tuple[int, ...]:
    for e in expo:
        if e > 0:
            return tuple(expo)
        if e < 0:
            return tuple(-x for x in expo)
    return tuple(expo)


@lru_cache(maxsize=None)
def generate_identities(n: int = 3) -> Tuple[IdentityRelation, ...]:
    """Orbits of the five representative identities; 104 in total."""
    if n != 3:
        raise ContractionError("identities are tabulated for n=3 only")
    pos = pair_position(n)
    rp = relevant_pairs(n)
    group = enumerate_group(n)
    out: List[IdentityRelation] = []
    orbit_sizes = []
    seen_all = set()
    for plus, minus in IDENTITY_REPRESENTATIVES:
        rep = _identity_from_texts(plus, minus, n)
        orbit = set()
        for mat in group:
            expo = [0] * len(rp)
            for i, e in enumerate(rep.exponents):
                if e:
                    expo[pos[_pair_times(rp[i], mat, n)]] += e
            orbit.add(_canonical_identity(expo))
        orbit_sizes.append(len(orbit))
        if orbit & seen_all:
            raise AssertionError("identity orbits overlap")
        seen_all |= orbit
        out.extend(IdentityRelation(e, order=rep.order, n=n) for e in sorted(orbit))
    assert orbit_sizes == [24, 8, 24, 24, 24], orbit_sizes
    return tuple(out)


# --- normalization and equivalence -------------------------------------------


@lru_cache(maxsize=None)
def full_lattice(n: int = 3) -> ExponentLattice:
    return build_exponent_lattice(relevant_pairs(n), n)


@lru_cache(maxsize=None)
def _support_kernel(support: FrozenSet[Pair], n: int) -> Tuple[Tuple[Pair, ...], Tuple[Tuple[int, ...], ...]]:
    pos = pair_position(n)
    pairs = tuple(sorted(support, key=lambda p: pos[p]))
    rows = exponent_rows(pairs, n)
    kernel = tuple(tuple(u) for u in integer_left_kernel(rows))
    return pairs, kernel


@dataclass(frozen=True)
class NormalizationCertificate:
    support: Tuple[Pair, ...]
    kernel_checked: int
    scalings: Optional[Dict[Index, CycloNumber]] = None


def normalization_between(x: ConcreteContraction, y: ConcreteContraction,
                          want_scalings: bool = False):
    """Decide existence of a normalization scaling alpha with alpha*x = y.

    Returns (certificate, None) on success or (None, violated_kernel_vector).
    Raises NotComparableError when the supports differ.  Existence over C is
    what the kernel criterion certifies; explicit subspace scalings a_k are
    attached only when they exist in Q(zeta_n) without adjoining roots.
    """
    if x.support() != y.support():
        raise NotComparableError("supports differ; matrices are not normalization-related")
    pairs, kernel = _support_kernel(x.support(), x.n)
    ratios = [y.value(p) / x.value(p) for p in pairs]
    for u in kernel:
        if not kernel_product_is_one(u, ratios):
            return None, u
    scalings = _solve_scalings(pairs, ratios, x.n) if want_scalings else None
    return NormalizationCertificate(support=pairs, kernel_checked=len(kernel),
                                    scalings=scalings), None


def _solve_scalings(pairs: Sequence[Pair], ratios: Sequence[CycloNumber],
                    n: int) -> Optional[Dict[Index, CycloNumber]]:
    """Scalings a_k with a_i a_j / a_(i+j) = ratio on each support pair.

    Solved through the Smith form of the exponent matrix; gives up (returns
    None) whenever a fractional root of a non-trivial value would be needed.
    """
    from .linalg import smith_normal_form

    rows = exponent_rows(pairs, n)
    u_mat, s_mat, v_mat = smith_normal_form([r[:] for r in rows])
    width = n * n - 1
    o = one(n)

    def power_product(values, exps):
        acc = o
        for val, e in zip(values, exps):
            if e:
                base = val if e > 0 else val.inverse()
                acc = acc * base ** abs(e)
        return acc

    betas = []
    for i in range(width):
        d = s_mat[i][i] if i < len(s_mat) and i < len(s_mat[i]) else 0
        sigma = power_product(ratios, [u_mat[i][p] for p in range(len(pairs))]) \
            if i < len(u_mat) else o
        if d == 0:
            if sigma != 1:
                return None
            betas.append(o)
        elif d == 1:
            betas.append(sigma)
        elif sigma == 1:
            betas.append(o)
        else:
            return None
    a = {}
    indices = pauli_indices(n)
    for m in range(width):
        a[indices[m]] = power_product(betas, [v_mat[m][i] for i in range(width)])
    # verify before returning
    for p, r in zip(pairs, ratios):
        i, j = tuple(p)
        if a[i] * a[j] / a[index_add(i, j, n)] != r:
            return None
    return a


def equivalent(x: ConcreteContraction, y: ConcreteContraction,
               group: Optional[Sequence[SymmetryElement]] = None,
               system: Optional[Sequence[ContractionEquation]] = None,
               checked: bool = False):
    """Equality up to a symmetry permutation composed with a normalization.

    Returns (True, (matrix, certificate)) or (False, None).  Both inputs must
    satisfy the contraction system; pass checked=True when the caller has
    already verified that (the pairwise catalog sweep does).
    """
    if not checked:
        if system is None:
            system = generate_system(x.n)
        for m, name in ((x, "first"), (y, "second")):
            ok, witness = check_solution(m, system)
            if not ok:
                raise NonSolutionError(
                    f"{name} argument violates the system at triple {witness.triple_text()}")
    if group is None:
        group = enumerate_group(x.n)
    y_support = y.support()
    if len(x.support()) != len(y_support):
        return False, None
    for mat in group:
        perm = permutation_of(mat, x.n)
        moved = x.permuted(perm)
        if moved.support() != y_support:
            continue
        cert, _violated = normalization_between(moved, y)
        if cert is not None:
            return True, (mat, cert)
    return False, None


# --- continuity --------------------------------------------------------------


@dataclass(frozen=True)
class Continuous:
    weights: Tuple[int, ...]


@dataclass(frozen=True)
class Discrete:
    witness: IdentityRelation


@dataclass(frozen=True)
class Unknown:
    reason: str


def classify_continuity(x: ConcreteContraction,
                        system: Optional[Sequence[ContractionEquation]] = None,
                        identities: Optional[Sequence[IdentityRelation]] = None):
    """Continuous(weights) / Discrete(violated identity) / Unknown.

    A violated multiplicative identity certifies a discrete contraction.
    Otherwise the matrix is scaled to 0/1 on its support (lattice
    certificate) and integer Inonu-Wigner weights are sought: n_i + n_j -
    n_(i+j) equal to 0 on the support and >= 1 on the relevant zeros.
    """
    if system is None:
        system = generate_system(x.n)
    ok, witness = check_solution(x, system)
    if not ok:
        raise NonSolutionError(f"not a solution; violated at {witness.triple_text()}")
    if identities is None:
        identities = generate_identities(x.n)
    for rel in identities:
        if not rel.holds_for(x):
            return Discrete(rel)
    support = x.support()
    cert, _violated = normalization_between(x, indicator(support, x.n))
    if cert is None:
        return Unknown("support values are not normalization-reachable from 0/1")
    pos = pair_position(x.n)
    zeros = [p for p in relevant_pairs(x.n) if p not in support]
    eq_rows = exponent_rows(sorted(support, key=lambda p: pos[p]), x.n)
    ge_rows = exponent_rows(zeros, x.n)
    width = x.n * x.n - 1
    weights = integer_weight_vector(eq_rows, ge_rows, width)
    if weights is None:
        return Unknown("no integer weight vector exists for this zero pattern")
    return Continuous(tuple(weights))


# --- non-equivalence systems --------------------------------------------------


def build_nonequivalence_system(pairs: Iterable[Pair],
                                group: Optional[Sequence[SymmetryElement]] = None,
                                n: int = 3) -> List[FrozenSet[Pair]]:
    """Orbit of the product-vanishing constraint prod_(k in P) eps_k = 0."""
    p = [frozenset(q) for q in pairs]
    if not p:
        raise ContractionError("P must be nonempty")
    known = set(relevant_pairs(n))
    for q in p:
        if q not in known:
            raise ContractionError(f"{pair_text(q, n)} is not a relevant pair")
    if group is None:
        group = enumerate_group(n)
    pos = pair_position(n)
    out = set()
    for mat in group:
        out.add(frozenset(_pair_times(q, mat, n) for q in p))
    return sorted(out, key=lambda c: tuple(sorted(pos[q] for q in c)))


def satisfies_nonequivalence(x: ConcreteContraction,
                             constraints: Sequence[FrozenSet[Pair]]):
    """True iff every orbit constraint has at least one vanishing factor."""
    for cons in constraints:
        if all(not x.value(p).is_zero() for p in cons):
            return False, cons
    return True, None
