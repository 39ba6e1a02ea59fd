"""Finite relational structures over finite signatures.

A structure is a universe (an ordered tuple of element identifiers) plus one
finite set of tuples per relation symbol.  Everything here is exact and
brute-force: canonical forms are computed by explicit minimization over all
universe relabelings, which is the right trade-off at the universe sizes
this toolkit targets (up to roughly seven elements).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    ArityMismatch,
    DuplicateElement,
    EmptyUniverse,
    ForeignElement,
    SignatureMismatch,
    UnknownSymbol,
    ZeroCopies,
)

# Canonicalization enumerates all n! relabelings; refuse silly inputs.
_CANON_LIMIT = 10


@dataclass(frozen=True)
class Signature:
    """Ordered list of (relation symbol, arity) pairs.

    Symbol order is part of the signature's identity: it fixes the order in
    which relations are serialized and canonicalized.  Arities are >= 1 and
    names are pairwise distinct.  The empty signature is allowed (structures
    over it are bare sets).
    """

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((n, a) for n, a in self.symbols))
        names = [n for n, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"signature: duplicate relation symbol in {names}")
        for name, arity in self.symbols:
            if not isinstance(arity, int) or arity < 1:
                raise ValueError(f"signature: arity of {name!r} must be an integer >= 1, got {arity!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    def arity(self, name: str) -> int:
        for n, a in self.symbols:
            if n == name:
                return a
        raise KeyError(name)


class Structure:
    """Immutable finite structure: signature, universe, one tuple set per symbol.

    The constructor normalizes its input (universe to a tuple, relation tuple
    lists to frozensets, missing symbols to empty relations) but performs no
    validation; call :func:`validate` to check the invariants.  Unknown
    relation keys are kept so validate() can report them.
    """

    __slots__ = ("signature", "universe", "relations", "_key", "_hash")

    def __init__(self, signature: Signature, universe: Iterable, relations: Mapping | None = None):
        self.signature = signature
        self.universe = tuple(universe)
        given = dict(relations or {})
        rels = {}
        for name, _ in signature.symbols:
            rels[name] = frozenset(tuple(t) for t in given.pop(name, ()))
        for name, tuples in given.items():
            rels[name] = frozenset(tuple(t) for t in tuples)
        self.relations = rels
        self._key = None
        self._hash = None

    def __eq__(self, other):
        return (
            isinstance(other, Structure)
            and self.signature == other.signature
            and self.universe == other.universe
            and self.relations == other.relations
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.signature, self.universe, frozenset(self.relations.items()))
            )
        return self._hash

    def __repr__(self):
        rels = ", ".join(f"{n}:{len(self.relations[n])}" for n in self.relations)
        return f"Structure(|U|={len(self.universe)}, {rels})"


def validate(s: Structure) -> None:
    """Raise the first invariant violation found in `s`, if any.

    Scan order: empty universe, duplicate universe elements, unknown relation
    symbols, then per symbol (in signature order) arity and element
    membership of every tuple.
    """
    if not s.universe:
        raise EmptyUniverse("universe: must be nonempty")
    seen = set()
    for e in s.universe:
        if e in seen:
            raise DuplicateElement(f"universe: duplicate element {e!r}")
        seen.add(e)
    sig_names = set(s.signature.names)
    for name in s.relations:
        if name not in sig_names:
            raise UnknownSymbol(f"relations: unknown symbol {name!r}")
    for name, arity in s.signature.symbols:
        for t in sorted(s.relations[name], key=repr):
            if len(t) != arity:
                raise ArityMismatch(
                    f"relations.{name}: tuple {t!r} has length {len(t)}, arity is {arity}"
                )
            for e in t:
                if e not in seen:
                    raise ForeignElement(f"relations.{name}: element {e!r} not in universe")


def total_size(s: Structure) -> int:
    """Universe size plus the number of tuples across all relations."""
    return len(s.universe) + sum(len(r) for r in s.relations.values())


def _require_same_signature(a: Structure, b: Structure) -> None:
    if a.signature != b.signature:
        raise SignatureMismatch(
            f"signatures differ: {a.signature.symbols} vs {b.signature.symbols}"
        )


def induced_substructure(s: Structure, subset: Iterable) -> Structure:
    """Restrict `s` to the given nonempty subset of its universe.

    Keeps exactly the tuples all of whose entries lie in the subset; element
    names and universe order are preserved.
    """
    chosen = set(subset)
    if not chosen:
        raise EmptyUniverse("subset: must be nonempty")
    elements = set(s.universe)
    for e in chosen:
        if e not in elements:
            raise ForeignElement(f"subset: element {e!r} not in universe")
    universe = tuple(e for e in s.universe if e in chosen)
    rels = {
        name: [t for t in s.relations[name] if all(e in chosen for e in t)]
        for name in s.signature.names
    }
    return Structure(s.signature, universe, rels)


def enumerate_induced_substructures(s: Structure) -> Iterator[Structure]:
    """Yield s restricted to every nonempty subset of its universe (2^n - 1 items)."""
    n = len(s.universe)
    for r in range(1, n + 1):
        for subset in itertools.combinations(s.universe, r):
            yield induced_substructure(s, subset)


def enumerate_deducts(s: Structure) -> Iterator[Structure]:
    """Yield every structure on the same universe whose relations are subsets
    of s's relations: 2^(tuple count) items, s itself included."""
    pool = [
        (name, t)
        for name, _ in s.signature.symbols
        for t in sorted(s.relations[name], key=repr)
    ]
    for r in range(len(pool) + 1):
        for kept in itertools.combinations(pool, r):
            rels: dict[str, list] = {name: [] for name in s.signature.names}
            for name, t in kept:
                rels[name].append(t)
            yield Structure(s.signature, s.universe, rels)


def disjoint_union(a: Structure, b: Structure) -> Structure:
    """Disjoint union of two structures over the same signature.

    Element names are kept when the universes are already disjoint;
    otherwise both sides are retagged positionally ("0.i" / "1.j").
    """
    _require_same_signature(a, b)
    if set(a.universe).isdisjoint(b.universe):
        universe = a.universe + b.universe
        rels = {
            name: a.relations[name] | b.relations[name] for name in a.signature.names
        }
        return Structure(a.signature, universe, rels)
    pos_a = {e: f"0.{i}" for i, e in enumerate(a.universe)}
    pos_b = {e: f"1.{i}" for i, e in enumerate(b.universe)}
    universe = tuple(pos_a[e] for e in a.universe) + tuple(pos_b[e] for e in b.universe)
    rels = {}
    for name in a.signature.names:
        tagged = {tuple(pos_a[e] for e in t) for t in a.relations[name]}
        tagged |= {tuple(pos_b[e] for e in t) for t in b.relations[name]}
        rels[name] = tagged
    return Structure(a.signature, universe, rels)


def n_fold_union(n: int, a: Structure) -> Structure:
    """n disjoint copies of `a` (n >= 1); copies are tagged "copy.position"."""
    if n < 1:
        raise ZeroCopies(f"n_fold_union: need n >= 1, got {n}")
    if n == 1:
        return a
    pos = {e: i for i, e in enumerate(a.universe)}
    universe = tuple(f"{c}.{i}" for c in range(n) for i in range(len(a.universe)))
    rels = {}
    for name in a.signature.names:
        tagged = set()
        for c in range(n):
            for t in a.relations[name]:
                tagged.add(tuple(f"{c}.{pos[e]}" for e in t))
        rels[name] = tagged
    return Structure(a.signature, universe, rels)


def _min_encoding(s: Structure) -> tuple[int, tuple]:
    """Least per-symbol sorted tuple lists over all relabelings to 0..n-1."""
    n = len(s.universe)
    if n > _CANON_LIMIT:
        raise ValueError(f"canonicalization limited to {_CANON_LIMIT} elements, got {n}")
    idx = {e: i for i, e in enumerate(s.universe)}
    dense = [
        [tuple(idx[e] for e in t) for t in s.relations[name]]
        for name, _ in s.signature.symbols
    ]
    best = None
    for perm in itertools.permutations(range(n)):
        enc = tuple(
            tuple(sorted(tuple(perm[i] for i in t) for t in rel)) for rel in dense
        )
        if best is None or enc < best:
            best = enc
    return n, best


def canonical_key(s: Structure) -> bytes:
    """Isomorphism-invariant key: equal keys iff isomorphic (same signature).

    The key is an ASCII serialization of the least relabeled form, so it is
    printable, totally ordered, and stable across runs.
    """
    if s._key is None:
        n, enc = _min_encoding(s)
        sig = ",".join(f"{name}/{ar}" for name, ar in s.signature.symbols)
        body = ";".join("|".join(".".join(map(str, t)) for t in rel) for rel in enc)
        s._key = f"{sig}#{n}#{body}".encode("ascii")
    return s._key


def canonical_form(s: Structure) -> Structure:
    """The chosen isomorphism-class representative: least relabeling on 0..n-1."""
    n, enc = _min_encoding(s)
    rels = {name: rel for (name, _), rel in zip(s.signature.symbols, enc)}
    return Structure(s.signature, tuple(range(n)), rels)


def sort_key(s: Structure) -> tuple[int, bytes]:
    """(total size, canonical key): the ordering used for class slices."""
    return (total_size(s), canonical_key(s))


def is_isomorphic(a: Structure, b: Structure) -> bool:
    _require_same_signature(a, b)
    if len(a.universe) != len(b.universe):
        return False
    if any(len(a.relations[n]) != len(b.relations[n]) for n in a.signature.names):
        return False
    return canonical_key(a) == canonical_key(b)


def indsub_count(pattern: Structure, host: Structure) -> int:
    """Number of subsets S of host's universe with host[S] isomorphic to pattern."""
    _require_same_signature(pattern, host)
    k = len(pattern.universe)
    if k > len(host.universe):
        return 0
    target = canonical_key(pattern)
    return sum(
        1
        for subset in itertools.combinations(host.universe, k)
        if canonical_key(induced_substructure(host, subset)) == target
    )


def deducts_count(pattern: Structure, host: Structure) -> int:
    """Number of deducts of host isomorphic to pattern."""
    _require_same_signature(pattern, host)
    if len(pattern.universe) != len(host.universe):
        return 0
    keep = total_size(pattern) - len(pattern.universe)
    pool = [
        (name, t)
        for name, _ in host.signature.symbols
        for t in sorted(host.relations[name], key=repr)
    ]
    if keep > len(pool):
        return 0
    target = canonical_key(pattern)
    count = 0
    for kept in itertools.combinations(pool, keep):
        rels: dict[str, list] = {name: [] for name in host.signature.names}
        for name, t in kept:
            rels[name].append(t)
        if canonical_key(Structure(host.signature, host.universe, rels)) == target:
            count += 1
    return count


def _bounded_tuple_subsets(pools: list[list[tuple]], budget: int) -> Iterator[tuple]:
    # One frozenset per symbol, total kept tuples <= budget.
    if not pools:
        yield ()
        return
    head, rest = pools[0], pools[1:]
    for r in range(min(len(head), budget) + 1):
        for combo in itertools.combinations(head, r):
            for tail in _bounded_tuple_subsets(rest, budget - r):
                yield (combo,) + tail


_ENUM_CACHE: dict[tuple, list[Structure]] = {}


def enumerate_structures(
    sig: Signature, max_universe: int, *, max_total_size: int | None = None
) -> list[Structure]:
    """One canonical representative per isomorphism class with universe size
    between 1 and max_universe, ordered by (total size, canonical key).

    `max_total_size` optionally prunes the enumeration to classes whose total
    size stays within the bound, which avoids materializing the full labeled
    powerset for larger universes.
    """
    if max_universe < 1:
        raise ValueError(f"max_universe must be >= 1, got {max_universe}")
    cache_key = (sig, max_universe, max_total_size)
    if cache_key in _ENUM_CACHE:
        return _ENUM_CACHE[cache_key]
    reps: dict[bytes, Structure] = {}
    for n in range(1, max_universe + 1):
        pools = [
            sorted(itertools.product(range(n), repeat=ar)) for _, ar in sig.symbols
        ]
        budget = sum(len(p) for p in pools)
        if max_total_size is not None:
            budget = min(budget, max_total_size - n)
            if budget < 0:
                continue
        for choice in _bounded_tuple_subsets(pools, budget):
            s = Structure(sig, range(n), dict(zip(sig.names, choice)))
            key = canonical_key(s)
            if key not in reps:
                reps[key] = canonical_form(s)
    out = sorted(reps.values(), key=sort_key)
    _ENUM_CACHE[cache_key] = out
    return out
