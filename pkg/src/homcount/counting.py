"""Exact counters for homomorphisms, surjective homomorphisms and condensations.

All counters are pruned depth-first searches over assignments of the source
universe, with arbitrary-precision integer results.  count_hom additionally
factors over the connected components of the source (tuple co-occurrence
graph), since a homomorphism restricts independently to each component; the
surjective variants cannot factor because surjectivity couples components.
"""

from __future__ import annotations

import itertools

from .structures import Structure, _require_same_signature, induced_substructure


def _dense(s: Structure):
    """Universe positions plus per-symbol tuple lists as index tuples."""
    idx = {e: i for i, e in enumerate(s.universe)}
    rels = [
        [tuple(idx[e] for e in t) for t in s.relations[name]]
        for name in s.signature.names
    ]
    return len(s.universe), rels


def _components(n: int, rels) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rel in rels:
        for t in rel:
            for e in t[1:]:
                ra, rb = find(t[0]), find(e)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[r] for r in sorted(groups, key=lambda r: groups[r][0])]


def _checks_for(order: list[int], rels_a, rel_sets_b):
    """Constraint tuples grouped by the assignment step that completes them."""
    pos = {e: p for p, e in enumerate(order)}
    checks: list[list[tuple]] = [[] for _ in order]
    for rel, bset in zip(rels_a, rel_sets_b):
        for t in rel:
            if all(e in pos for e in t):
                positions = tuple(pos[e] for e in t)
                checks[max(positions)].append((bset, positions))
    return checks


def _count_component(order, rels_a, rel_sets_b, nb) -> int:
    checks = _checks_for(order, rels_a, rel_sets_b)
    m = len(order)
    assign = [0] * m

    def go(p):
        if p == m:
            return 1
        total = 0
        for v in range(nb):
            assign[p] = v
            if all(
                tuple(assign[q] for q in positions) in bset
                for bset, positions in checks[p]
            ):
                total += go(p + 1)
        return total

    return go(0)


def count_hom(a: Structure, b: Structure) -> int:
    """Number of maps h with h(R^A) contained in R^B for every symbol R."""
    _require_same_signature(a, b)
    na, rels_a = _dense(a)
    nb, rels_b = _dense(b)
    rel_sets_b = [frozenset(r) for r in rels_b]
    result = 1
    for comp in _components(na, rels_a):
        result *= _count_component(comp, rels_a, rel_sets_b, nb)
        if result == 0:
            return 0
    return result


def _count_onto(a: Structure, b: Structure, condens: bool) -> int:
    na, rels_a = _dense(a)
    nb, rels_b = _dense(b)
    rel_sets_b = [frozenset(r) for r in rels_b]
    if na < nb:
        return 0
    if condens and any(len(ra) < len(rb) for ra, rb in zip(rels_a, rels_b)):
        return 0
    order = list(range(na))
    checks = _checks_for(order, rels_a, rel_sets_b)
    assign = [0] * na
    cover = [0] * nb
    state = {"uncovered": nb}

    def leaf_ok():
        if not condens:
            return True
        for rel, bset in zip(rels_a, rel_sets_b):
            if {tuple(assign[i] for i in t) for t in rel} != bset:
                return False
        return True

    def go(p):
        if p == na:
            return 1 if state["uncovered"] == 0 and leaf_ok() else 0
        if na - p < state["uncovered"]:
            return 0
        total = 0
        for v in range(nb):
            assign[p] = v
            if all(
                tuple(assign[q] for q in positions) in bset
                for bset, positions in checks[p]
            ):
                cover[v] += 1
                if cover[v] == 1:
                    state["uncovered"] -= 1
                total += go(p + 1)
                cover[v] -= 1
                if cover[v] == 0:
                    state["uncovered"] += 1
        return total

    return go(0)


def count_surjhom(a: Structure, b: Structure) -> int:
    """Number of homomorphisms whose image is all of b's universe."""
    _require_same_signature(a, b)
    return _count_onto(a, b, condens=False)


def count_condens(a: Structure, b: Structure) -> int:
    """Number of surjective homomorphisms that also map each relation of a
    onto the corresponding relation of b."""
    _require_same_signature(a, b)
    return _count_onto(a, b, condens=True)


def count_surjhom_inclusion_exclusion(a: Structure, b: Structure) -> int:
    """Independent surjective-homomorphism counter: signed sum of plain hom
    counts into the induced substructures of b."""
    _require_same_signature(a, b)
    nb = len(b.universe)
    total = 0
    for r in range(1, nb + 1):
        sign = -1 if (nb - r) % 2 else 1
        for subset in itertools.combinations(b.universe, r):
            total += sign * count_hom(a, induced_substructure(b, subset))
    return total


def exists_hom(a: Structure, b: Structure) -> bool:
    """True iff count_hom(a, b) > 0, by early-exit backtracking."""
    _require_same_signature(a, b)
    na, rels_a = _dense(a)
    nb, rels_b = _dense(b)
    if nb == 0:
        return na == 0
    rel_sets_b = [frozenset(r) for r in rels_b]
    order = list(range(na))
    checks = _checks_for(order, rels_a, rel_sets_b)
    assign = [0] * na

    def go(p):
        if p == na:
            return True
        for v in range(nb):
            assign[p] = v
            if all(
                tuple(assign[q] for q in positions) in bset
                for bset, positions in checks[p]
            ):
                if go(p + 1):
                    return True
        return False

    return go(0)


def hom_equivalent(a: Structure, b: Structure) -> bool:
    """True iff homomorphisms exist in both directions."""
    return exists_hom(a, b) and exists_hom(b, a)
