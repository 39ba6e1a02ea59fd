"""Hom-basis expansions and matrix identities.

Surjhom(., b) and Condens(., b) are integer linear combinations of plain
hom-counting functions hom(., B_i).  The expansions are computed by peeling:

  Surjhom(., b) = Hom(., b)
                  - sum over proper induced-substructure classes C of b of
                    Indsub(C, b) * Surjhom(., C)

  Condens(., b) = Surjhom(., b)
                  - sum over proper deduct classes C of b of
                    Deducts(C, b) * Condens(., C)

both recursions memoized on canonical keys.  The coefficient on b's own
class is always exactly 1 and every coefficient is an integer; both facts
are asserted (a failure is a bug, not an input error).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .counting import count_hom, count_surjhom, count_condens
from .errors import SliceTooLarge
from .structures import (
    Signature,
    Structure,
    _require_same_signature,
    canonical_form,
    canonical_key,
    deducts_count,
    enumerate_structures,
    indsub_count,
    induced_substructure,
    sort_key,
    validate,
)

# Guard for materialized class slices (matrix views, CLI enumeration).
SLICE_LIMIT = 200


@dataclass(frozen=True)
class LinearCombination:
    """Finite rational linear combination of hom-counting template functions.

    Terms are (coefficient, structure) pairs with nonzero coefficients and
    pairwise non-isomorphic structures, sorted by (total size, canonical key)
    with the largest structure first, so the expansion of a template b leads
    with b's own unit term.
    """

    terms: tuple[tuple[Fraction, Structure], ...]

    @staticmethod
    def from_terms(pairs) -> "LinearCombination":
        """Merge coefficients of isomorphic structures, drop exact zeros, sort."""
        merged: dict[bytes, list] = {}
        for coef, struct in pairs:
            key = canonical_key(struct)
            if key in merged:
                merged[key][0] += Fraction(coef)
            else:
                merged[key] = [Fraction(coef), struct]
        kept = [(c, s) for c, s in merged.values() if c != 0]
        kept.sort(key=lambda term: sort_key(term[1]), reverse=True)
        return LinearCombination(tuple(kept))

    def __len__(self):
        return len(self.terms)


def evaluate(lc: LinearCombination, a: Structure) -> Fraction:
    """Sum of coefficient * count_hom(a, structure) over the terms, exact."""
    total = Fraction(0)
    for coef, struct in lc.terms:
        _require_same_signature(a, struct)
        total += coef * count_hom(a, struct)
    return total


def _substructure_classes(rep: Structure) -> list[tuple[int, Structure]]:
    """Proper induced-substructure classes of rep with multiplicities."""
    groups: dict[bytes, list] = {}
    n = len(rep.universe)
    for r in range(1, n):
        for subset in itertools.combinations(rep.universe, r):
            sub = induced_substructure(rep, subset)
            key = canonical_key(sub)
            if key in groups:
                groups[key][0] += 1
            else:
                groups[key] = [1, canonical_form(sub)]
    return [(cnt, s) for cnt, s in groups.values()]


def _deduct_classes(rep: Structure) -> list[tuple[int, Structure]]:
    """Proper deduct classes of rep with multiplicities."""
    pool = [
        (name, t)
        for name, _ in rep.signature.symbols
        for t in sorted(rep.relations[name], key=repr)
    ]
    groups: dict[bytes, list] = {}
    for r in range(len(pool)):
        for kept in itertools.combinations(pool, r):
            rels: dict[str, list] = {name: [] for name in rep.signature.names}
            for name, t in kept:
                rels[name].append(t)
            ded = Structure(rep.signature, rep.universe, rels)
            key = canonical_key(ded)
            if key in groups:
                groups[key][0] += 1
            else:
                groups[key] = [1, canonical_form(ded)]
    return [(cnt, s) for cnt, s in groups.values()]


_SURJHOM_MEMO: dict[bytes, LinearCombination] = {}
_CONDENS_SURJ_MEMO: dict[bytes, tuple[tuple[Fraction, Structure], ...]] = {}


def _check_expansion(lc: LinearCombination, template_key: bytes) -> LinearCombination:
    for coef, struct in lc.terms:
        assert coef.denominator == 1, f"non-integer coefficient {coef}"
        if canonical_key(struct) == template_key:
            assert coef == 1, f"template self-coefficient {coef} != 1"
    return lc


def expand_surjhom(b: Structure) -> LinearCombination:
    """Express Surjhom(., b) over the hom basis.

    Evaluating the result at any structure a equals count_surjhom(a, b).
    """
    validate(b)
    rep = canonical_form(b)
    key = canonical_key(rep)
    if key in _SURJHOM_MEMO:
        return _SURJHOM_MEMO[key]
    pairs: list[tuple[Fraction, Structure]] = [(Fraction(1), rep)]
    for cnt, sub in _substructure_classes(rep):
        for coef, struct in expand_surjhom(sub).terms:
            pairs.append((-cnt * coef, struct))
    lc = _check_expansion(LinearCombination.from_terms(pairs), key)
    _SURJHOM_MEMO[key] = lc
    return lc


def mobius_expand_surjhom(b: Structure) -> LinearCombination:
    """Same expansion, computed instead by signed sums over the subset lattice
    of b's universe: each nonempty subset S contributes (-1)^(|b|-|S|) to the
    class of b[S]."""
    validate(b)
    rep = canonical_form(b)
    n = len(rep.universe)
    pairs: list[tuple[Fraction, Structure]] = []
    for r in range(1, n + 1):
        sign = Fraction(-1 if (n - r) % 2 else 1)
        for subset in itertools.combinations(rep.universe, r):
            pairs.append((sign, canonical_form(induced_substructure(rep, subset))))
    return _check_expansion(LinearCombination.from_terms(pairs), canonical_key(rep))


def _condens_over_surjhom(rep: Structure) -> tuple[tuple[Fraction, Structure], ...]:
    """Condens(., rep) as a combination of Surjhom(., C) over deduct classes."""
    key = canonical_key(rep)
    if key in _CONDENS_SURJ_MEMO:
        return _CONDENS_SURJ_MEMO[key]
    coeffs: dict[bytes, list] = {key: [Fraction(1), rep]}
    for cnt, ded in _deduct_classes(rep):
        for coef, struct in _condens_over_surjhom(ded):
            dkey = canonical_key(struct)
            if dkey in coeffs:
                coeffs[dkey][0] -= cnt * coef
            else:
                coeffs[dkey] = [-cnt * coef, struct]
    out = tuple((c, s) for c, s in coeffs.values() if c != 0)
    _CONDENS_SURJ_MEMO[key] = out
    return out


def expand_condens(b: Structure) -> LinearCombination:
    """Express Condens(., b) over the hom basis.

    First peels deduct classes to land on the Surjhom basis, then substitutes
    the hom-basis expansion of each Surjhom term and merges.
    """
    validate(b)
    rep = canonical_form(b)
    pairs: list[tuple[Fraction, Structure]] = []
    for gamma, surj_template in _condens_over_surjhom(rep):
        for coef, struct in expand_surjhom(surj_template).terms:
            pairs.append((gamma * coef, struct))
    return _check_expansion(LinearCombination.from_terms(pairs), canonical_key(rep))


@dataclass
class MatrixView:
    """Dense exact matrices of the five pair counters over a class slice.

    The index lists one canonical representative per isomorphism class with
    universe size up to the requested bound, ordered so that total size never
    decreases.  Entry [i][j] pairs index[i] (source / pattern) with index[j]
    (target / host).
    """

    index: list[Structure]
    hom: list[list[int]]
    surjhom: list[list[int]]
    condens: list[list[int]]
    indsub: list[list[int]]
    deducts: list[list[int]]


def enumerate_classes_guarded(
    sig: Signature, max_universe: int, limit: int = SLICE_LIMIT
) -> list[Structure]:
    """enumerate_structures with the materialization guard applied.

    A cheap lower bound (labeled count / n!) rejects clearly oversized
    slices before enumerating anything.
    """
    lower = 0
    for n in range(1, max_universe + 1):
        labeled = 2 ** sum(n**ar for _, ar in sig.symbols)
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        lower += -(-labeled // fact)  # ceil
        if lower > limit:
            raise SliceTooLarge(
                f"class slice for max_universe={max_universe} exceeds {limit} classes"
            )
    index = enumerate_structures(sig, max_universe)
    if len(index) > limit:
        raise SliceTooLarge(f"class slice has {len(index)} classes, guard is {limit}")
    return index


def matrix_views(sig: Signature, max_universe: int) -> MatrixView:
    """Build the five matrices on the class slice up to max_universe."""
    index = enumerate_classes_guarded(sig, max_universe)

    def table(fn):
        return [[fn(x, y) for y in index] for x in index]

    return MatrixView(
        index=index,
        hom=table(count_hom),
        surjhom=table(count_surjhom),
        condens=table(count_condens),
        indsub=table(indsub_count),
        deducts=table(deducts_count),
    )


@dataclass
class MatrixIdentityReport:
    """Entrywise violations of the two product identities and of the
    triangularity of the right factors; empty everywhere when all hold."""

    product_violations: list[tuple[str, int, int, int, int]]
    triangular_violations: list[tuple[str, int, int, int]]

    @property
    def ok(self) -> bool:
        return not self.product_violations and not self.triangular_violations


def verify_matrix_identities(mv: MatrixView) -> MatrixIdentityReport:
    """Check hom = surjhom @ indsub and surjhom = condens @ deducts exactly,
    plus upper triangularity with unit diagonal of indsub and deducts."""
    n = len(mv.index)
    products = []
    for name, left, right, expected in (
        ("hom = surjhom*indsub", mv.surjhom, mv.indsub, mv.hom),
        ("surjhom = condens*deducts", mv.condens, mv.deducts, mv.surjhom),
    ):
        for i in range(n):
            for j in range(n):
                got = sum(left[i][k] * right[k][j] for k in range(n))
                if got != expected[i][j]:
                    products.append((name, i, j, expected[i][j], got))
    triangles = []
    for name, matrix in (("indsub", mv.indsub), ("deducts", mv.deducts)):
        for i in range(n):
            if matrix[i][i] != 1:
                triangles.append((name + " diagonal", i, i, matrix[i][i]))
            for j in range(i):
                if matrix[i][j] != 0:
                    triangles.append((name + " lower", i, j, matrix[i][j]))
    return MatrixIdentityReport(products, triangles)
