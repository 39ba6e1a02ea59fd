"""Distinguishers and Vandermonde extraction of hom counts from oracles.

Given black-box access to a linear combination of hom-counting functions,
the individual hom counts can be recovered: pick an extremal
hom-equivalence class among the combination's structures, build a
distinguisher whose hom counts into the class members are positive and
pairwise distinct, query the oracle on disjoint unions of a base member,
the input, and k copies of the distinguisher, and solve the resulting
Vandermonde system.  Resolved classes are subtracted exactly and the
procedure repeats on the remaining terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .basis import LinearCombination
from .counting import count_hom, exists_hom, hom_equivalent
from .errors import (
    DuplicateNodes,
    NotEquivalentClass,
    OracleInconsistent,
    ProbeExhausted,
)
from .structures import (
    Structure,
    _require_same_signature,
    canonical_key,
    disjoint_union,
    enumerate_structures,
    is_isomorphic,
    n_fold_union,
    sort_key,
)

# Black-box evaluator from structures to exact rationals.
CountOracle = Callable[[Structure], "Fraction | int"]

_M_CAP = 2**64


@dataclass(frozen=True)
class VandermondeSystem:
    """Equations sum_i y_i * nodes[i]**k = rhs[k] for k = 0..n-1."""

    nodes: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]


def solve_vandermonde(system: VandermondeSystem) -> list[Fraction]:
    """Unique exact solution of the system; nodes must be pairwise distinct."""
    nodes = [Fraction(x) for x in system.nodes]
    rhs = [Fraction(x) for x in system.rhs]
    n = len(nodes)
    if len(rhs) != n:
        raise ValueError(f"nodes and rhs lengths differ: {n} vs {len(rhs)}")
    if len(set(nodes)) != n:
        raise DuplicateNodes(f"nodes are not pairwise distinct: {nodes}")
    rows = [[x**k for x in nodes] + [rhs[k]] for k in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def lovasz_separator(
    b1: Structure, b2: Structure, max_probe: int | None = None
) -> Structure:
    """Smallest canonical structure with different hom counts into b1 and b2.

    Probes are scanned in (total size, canonical key) order over all classes
    with universe size up to max_probe, which defaults to max(|b1|, |b2|);
    a separator within that bound always exists for non-isomorphic inputs.
    """
    _require_same_signature(b1, b2)
    if is_isomorphic(b1, b2):
        raise ValueError("separator requires non-isomorphic structures")
    if max_probe is None:
        max_probe = max(len(b1.universe), len(b2.universe))
    for probe in enumerate_structures(b1.signature, max_probe):
        if count_hom(probe, b1) != count_hom(probe, b2):
            return probe
    raise ProbeExhausted(
        f"no separating probe with at most {max_probe} elements; "
        "either the bound is below the guaranteed one or isomorphism is broken"
    )


def _check_equivalence_class(members: Sequence[Structure]) -> None:
    for i, x in enumerate(members):
        for y in members[i + 1 :]:
            if is_isomorphic(x, y):
                raise NotEquivalentClass(f"isomorphic members: {x!r}, {y!r}")
            if not hom_equivalent(x, y):
                raise NotEquivalentClass(
                    f"members not homomorphically equivalent: {x!r}, {y!r}"
                )


def lovasz_distinguisher(members: Sequence[Structure]) -> Structure:
    """A structure whose hom counts into the members are positive and
    pairwise distinct.

    The members must be pairwise non-isomorphic and pairwise homomorphically
    equivalent.  Built inductively: start from the least member; whenever the
    current structure X fails to separate the next member from an earlier
    one, pick a separating probe A' and replace X by M*X + A' for the first
    M in 1, 2, 4, ... that works.  Candidate values are evaluated through the
    product rule hom(M*X + A', B) = hom(X, B)**M * hom(A', B) with exact
    integers, so the M-search never materializes the unions.
    """
    if not members:
        raise NotEquivalentClass("empty member list")
    _check_equivalence_class(members)
    order = sorted(members, key=sort_key)
    current = order[0]
    values = [count_hom(current, order[0])]
    assert values[0] > 0
    for k in range(1, len(order)):
        vk = count_hom(current, order[k])
        assert vk > 0, "hom-equivalence must force a positive count"
        if vk not in values:
            values.append(vk)
            continue
        other = values.index(vk)
        probe = lovasz_separator(order[k], order[other])
        weights = [count_hom(probe, b) for b in order[: k + 1]]
        assert all(w > 0 for w in weights)
        trial = values + [vk]
        m = 1
        while True:
            candidate = [v**m * w for v, w in zip(trial, weights)]
            if len(set(candidate)) == len(candidate):
                break
            m *= 2
            if m > _M_CAP:
                raise RuntimeError(
                    "internal error: no union multiplier below the cap "
                    "produced distinct values"
                )
        current = disjoint_union(n_fold_union(m, current), probe)
        values = candidate
    assert len(set(values)) == len(values) and all(v > 0 for v in values)
    return current


def _equivalence_partition(terms) -> list[list[int]]:
    """Indices of `terms` grouped by homomorphic equivalence of structures."""
    classes: list[list[int]] = []
    for i, (_, struct, _) in enumerate(terms):
        for cls in classes:
            if hom_equivalent(struct, terms[cls[0]][1]):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def _extremal_class(terms, classes: list[list[int]]) -> list[int]:
    """A class with no homomorphism into any other class, tie-broken by the
    least canonical key of its members."""
    maximal = []
    for cls in classes:
        rep = terms[cls[0]][1]
        if all(
            not exists_hom(rep, terms[other[0]][1])
            for other in classes
            if other is not cls
        ):
            maximal.append(cls)
    assert maximal, "finite hom-preorder must have a maximal class"
    return min(maximal, key=lambda cls: min(terms[i][2] for i in cls))


def extract_hom_values(
    lc: LinearCombination, oracle: CountOracle, a: Structure
) -> list[int]:
    """Recover hom(a, struct) for every term of lc from oracle answers alone.

    The oracle is promised to equal evaluate(lc, .); hom counts with `a` as
    the source are never computed directly.  Returns the values aligned with
    lc.terms.  Raises OracleInconsistent when answers do not resolve to
    non-negative integers or fail the final residual check at `a`.
    """
    if not lc.terms:
        raise ValueError("extraction needs a nonempty linear combination")
    for _, struct in lc.terms:
        _require_same_signature(a, struct)
    terms = [(coef, struct, canonical_key(struct)) for coef, struct in lc.terms]

    all_classes = _equivalence_partition(terms)
    query_budget = max(len(c) for c in all_classes) * len(all_classes) + 1
    queries = 0

    def ask(x: Structure) -> Fraction:
        nonlocal queries
        queries += 1
        assert queries <= query_budget, "oracle query bookkeeping exceeded"
        try:
            return Fraction(oracle(x))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise OracleInconsistent(f"oracle answer unusable: {exc}") from exc

    resolved: dict[bytes, int] = {}
    remaining = list(terms)
    while remaining:
        classes = _equivalence_partition(remaining)
        chosen = _extremal_class(remaining, classes)
        members = sorted((remaining[i] for i in chosen), key=lambda t: t[2])
        m = len(members)
        base_struct = members[0][1]
        hom_base = [count_hom(base_struct, struct) for _, struct, _ in members]
        assert all(h > 0 for h in hom_base)
        if m > 1:
            probe = lovasz_distinguisher([struct for _, struct, _ in members])
            nodes = tuple(Fraction(count_hom(probe, struct)) for _, struct, _ in members)
        else:
            probe = None
            nodes = (Fraction(1),)
        corrections = [
            (
                coef,
                count_hom(base_struct, struct),
                resolved[key],
                count_hom(probe, struct) if probe is not None else 1,
            )
            for coef, struct, key in terms
            if key in resolved
        ]
        base = disjoint_union(base_struct, a)
        rhs = []
        for k in range(m):
            query = base if k == 0 else disjoint_union(base, n_fold_union(k, probe))
            answer = ask(query)
            correction = sum(
                coef * hb * hom_a * (hp**k) for coef, hb, hom_a, hp in corrections
            )
            rhs.append(answer - correction)
        solution = solve_vandermonde(VandermondeSystem(nodes, tuple(rhs)))
        for (coef, struct, key), y in zip(members, solution):
            value = y / (coef * count_hom(base_struct, struct))
            if value.denominator != 1 or value < 0:
                raise OracleInconsistent(
                    f"recovered hom value {value} is not a non-negative integer"
                )
            resolved[key] = int(value)
        chosen_keys = {t[2] for t in members}
        remaining = [t for t in remaining if t[2] not in chosen_keys]

    reconstructed = sum(coef * resolved[key] for coef, _, key in terms)
    if ask(a) != reconstructed:
        raise OracleInconsistent(
            "residual check failed: oracle at the input disagrees with the "
            "reconstructed combination"
        )
    return [resolved[key] for _, _, key in terms]


def independence_probe(
    classes: Sequence[Structure], max_probe: int | None = None
) -> list[Structure]:
    """Probes A_1..A_n making the matrix [hom(A_j, B_i)] nonsingular.

    Candidates are tried greedily for rank growth: first the inductive ones
    (for each hom-equivalence class, B_1 + k copies of its distinguisher),
    then all canonical structures with at most max_probe elements in
    (total size, canonical key) order.  max_probe defaults to the largest
    member size, which always suffices.
    """
    if not classes:
        return []
    for i, x in enumerate(classes):
        for y in classes[i + 1 :]:
            if is_isomorphic(x, y):
                raise ValueError(f"classes must be pairwise non-isomorphic: {x!r}, {y!r}")
    sig = classes[0].signature
    for s in classes[1:]:
        _require_same_signature(classes[0], s)
    if max_probe is None:
        max_probe = max(len(s.universe) for s in classes)
    n = len(classes)

    def candidates():
        groups: list[list[Structure]] = []
        for s in classes:
            for g in groups:
                if hom_equivalent(s, g[0]):
                    g.append(s)
                    break
            else:
                groups.append([s])
        groups.sort(key=lambda g: min(canonical_key(s) for s in g))
        for g in groups:
            members = sorted(g, key=sort_key)
            base = members[0]
            partner = lovasz_distinguisher(members) if len(members) > 1 else base
            for k in range(len(members)):
                size = len(base.universe) + k * len(partner.universe)
                if size > max_probe:
                    break
                yield base if k == 0 else disjoint_union(base, n_fold_union(k, partner))
        yield from enumerate_structures(sig, max_probe)

    probes: list[Structure] = []
    pivots: list[tuple[int, list[Fraction]]] = []
    for cand in candidates():
        row = [Fraction(count_hom(cand, s)) for s in classes]
        for col, pivot_row in pivots:
            if row[col] != 0:
                factor = row[col] / pivot_row[col]
                row = [v - factor * w for v, w in zip(row, pivot_row)]
        lead = next((j for j, v in enumerate(row) if v != 0), None)
        if lead is None:
            continue
        probes.append(cand)
        pivots.append((lead, row))
        if len(probes) == n:
            return probes
    raise ProbeExhausted(
        f"rank {len(probes)} of {n} reached with probes of at most {max_probe} elements"
    )
