"""Independent brute-force oracles and shared small structures.

Everything here is deliberately naive (full enumeration over all maps or
bijections) and kept separate from the library's search paths, so agreement
between the two is meaningful.
"""

import itertools
from fractions import Fraction
from math import comb

from homcount import Signature, Structure

SIG_E = Signature((("E", 2),))
SIG_U = Signature((("U", 1),))


def st(universe, edges=()):
    """Digraph-with-loops structure over SIG_E."""
    return Structure(SIG_E, universe, {"E": edges})


VERTEX = st((0,))
LOOP = st((0,), [(0, 0)])
EDGE = st((0, 1), [(0, 1)])
CYC2 = st((0, 1), [(0, 1), (1, 0)])
ISO2 = st((0, 1))
ISO3 = st((0, 1, 2))
ISO4 = st((0, 1, 2, 3))
# 2-cycle with an extra element feeding into it
AUG2 = st((0, 1, 2), [(0, 1), (1, 0), (2, 0)])
CYC3 = st((0, 1, 2), [(0, 1), (1, 2), (2, 0)])
PATH3 = st((0, 1, 2), [(0, 1), (1, 2)])


def _dense(s):
    idx = {e: i for i, e in enumerate(s.universe)}
    rels = [
        frozenset(tuple(idx[e] for e in t) for t in s.relations[name])
        for name in s.signature.names
    ]
    return len(s.universe), rels


def naive_counts(a, b):
    """(hom, surjhom, condens) by checking every one of the |B|^|A| maps."""
    na, rels_a = _dense(a)
    nb, rels_b = _dense(b)
    hom = surj = cond = 0
    for assign in itertools.product(range(nb), repeat=na):
        images = [
            {tuple(assign[i] for i in t) for t in rel_a} for rel_a in rels_a
        ]
        if not all(img <= rel_b for img, rel_b in zip(images, rels_b)):
            continue
        hom += 1
        if set(assign) != set(range(nb)):
            continue
        surj += 1
        if all(img == rel_b for img, rel_b in zip(images, rels_b)):
            cond += 1
    return hom, surj, cond


def naive_count_hom(a, b):
    return naive_counts(a, b)[0]


def naive_count_surjhom(a, b):
    return naive_counts(a, b)[1]


def naive_count_condens(a, b):
    return naive_counts(a, b)[2]


def brute_isomorphic(a, b):
    """Exhaustive search over all universe bijections."""
    if len(a.universe) != len(b.universe):
        return False
    na, rels_a = _dense(a)
    _, rels_b = _dense(b)
    for perm in itertools.permutations(range(na)):
        if all(
            {tuple(perm[i] for i in t) for t in ra} == rb
            for ra, rb in zip(rels_a, rels_b)
        ):
            return True
    return False


def surjections(m, n):
    """Number of surjective maps from an m-set onto an n-set."""
    return sum((-1) ** k * comb(n, k) * (n - k) ** m for k in range(n + 1))


def exact_rank(rows):
    """Rank of a rational matrix by Gaussian elimination over Fraction."""
    rows = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank
