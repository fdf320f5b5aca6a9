"""The grading symmetry group H_n and its actions.

H_3 is the group of 2x2 matrices over Z_3 with determinant +-1 (48 elements,
containing SL(2,Z_3) of order 24); a matrix A acts on a grading index (i j)
as the row vector product (i j)A mod n.  Orbits of unordered tuples of
indices drive both the construction of the contraction system and the
equivalence analysis.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .liealg import Index, pauli_indices

SymmetryElement = Tuple[int, int, int, int]  # (a, b, c, d) row-major
IndexPermutation = Dict[Index, Index]


def enumerate_group(n: int, det_plus_only: bool = False) -> List[SymmetryElement]:
    """All 2x2 matrices over Z_n with det = +-1 (or +1), lexicographic order."""
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    det = (a * d - b * c) % n
                    if det == 1 or (not det_plus_only and det == n - 1):
                        out.append((a, b, c, d))
    return out


def group_mul(x: SymmetryElement, y: SymmetryElement, n: int) -> SymmetryElement:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n,
            (c * e + d * g) % n, (c * f + d * h) % n)


def permutation_of(mat: SymmetryElement, n: int = 3) -> IndexPermutation:
    """(i j) -> (i j) A mod n on the nonzero grading indices."""
    a, b, c, d = mat
    perm = {}
    for idx in pauli_indices(n):
        i, j = idx
        perm[idx] = ((i * a + j * c) % n, (i * b + j * d) % n)
    return perm


def permute_tuple(t: Iterable[Index], perm: IndexPermutation) -> FrozenSet[Index]:
    return frozenset(perm[i] for i in t)


def canonical_tuple(t: Iterable[Index], n: int = 3) -> Tuple[Index, ...]:
    pos = {g: i for i, g in enumerate(pauli_indices(n))}
    return tuple(sorted(t, key=lambda g: pos[g]))


def orbit_of_tuple(t: Iterable[Index], group: Sequence[SymmetryElement],
                   n: int = 3) -> set:
    """Orbit of an unordered index tuple, as a set of canonical tuples."""
    seed = frozenset(t)
    out = set()
    for mat in group:
        perm = permutation_of(mat, n)
        out.add(canonical_tuple(permute_tuple(seed, perm), n))
    return out


def act_on_contraction(entries: Dict[FrozenSet[Index], object],
                       perm: IndexPermutation) -> Dict[FrozenSet[Index], object]:
    """(eps^pi)_ij = eps_(pi(i) pi(j)); works for symbolic or concrete values."""
    return {frozenset(perm[i] for i in key): value for key, value in entries.items()}


def permute_pair(pair, perm: IndexPermutation):
    return frozenset(perm[i] for i in pair)


def pair_classes(k, group: Sequence[SymmetryElement], relevant: Sequence,
                 n: int = 3) -> List[List]:
    """Partition of the relevant pairs minus {k}.

    Two pairs i, j are identified when some group permutation maps the
    unordered pair-of-pairs {i, k} to {j, k}.
    """
    k = frozenset(k)
    pool = [frozenset(p) for p in relevant]
    if k not in pool:
        raise ValueError(f"{set(k)} is not a relevant pair")
    perms = [permutation_of(mat, n) for mat in group]
    remaining = [p for p in pool if p != k]
    classes: List[List] = []
    assigned = set()
    for p in remaining:
        if p in assigned:
            continue
        cls = {p}
        for perm in perms:
            pk = {permute_pair(p, perm), permute_pair(k, perm)}
            if k in pk:
                other = (pk - {k}).pop() if len(pk) == 2 else k
                cls.add(other)
        cls &= set(remaining)
        classes.append(sorted(cls, key=_pair_sort_key(n)))
        assigned |= cls
    classes.sort(key=lambda c: (-len(c), _pair_sort_key(n)(c[0])))
    return classes


def _pair_sort_key(n: int):
    pos = {g: i for i, g in enumerate(pauli_indices(n))}

    def key(pair):
        return tuple(sorted(pos[g] for g in pair))

    return key
