"""Jordan sets and the closure geometry they induce.

A Jordan set of a permutation group is a set of at least two points on
which the pointwise stabilizer of the complement still acts transitively.
Such a set is improper when the group is (k+1)-transitive for k the size
of the complement, so that transitivity inside costs nothing; the proper
ones are the geometrically interesting witnesses.

Everything here runs on the element list.  The workhorse is a table of
support masks: each group element moves some set of points, and an
element is available inside a candidate set exactly when its support
fits.  Unions of fitting supports give connectivity, and a decreasing
fixpoint over that table finds the unique maximal Jordan set avoiding a
prescribed set of points.  Spans, and the closure-operator audit built
from them, reduce to the same scan.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cache

from .config import element_cap
from .errors import CapExceeded, OutOfRange, PointOutOfRange, TooSmall
from .groups import (
    GenGroup,
    enumerate_elements,
    orbit,
    stabilizer,
    transitivity_degree,
)
from .perms import Permutation

__all__ = [
    "JordanWitness",
    "is_jordan",
    "jordan_sets",
    "maximal_jordan_avoiding",
    "span",
    "SpanGeometry",
    "span_geometry",
    "GeometryAudit",
    "geometry_audit",
]


@dataclass(frozen=True)
class JordanWitness:
    """Certificate for one Jordan set.

    points is the set itself, sorted.  witness_group acts on 0..len-1 in
    the order of points and is the complement's pointwise stabilizer
    restricted to the set; it is transitive by construction.  proper is
    False when the set is forced by (k+1)-transitivity alone.
    """

    points: tuple[int, ...]
    witness_group: GenGroup
    proper: bool


def _point_set(group: GenGroup, points) -> set[int]:
    out = set()
    for p in points:
        if not 0 <= p < group.degree:
            raise PointOutOfRange(f"point {p} outside 0..{group.degree - 1}")
        out.add(p)
    return out


@cache
def _support_edges(
    group: GenGroup, cap: int | None
) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """Movement edges grouped by distinct support mask.

    One entry per support that occurs among non-identity elements: the
    bitmask of moved points plus every (point, image) pair contributed by
    an element with exactly that support.  An element is usable inside a
    candidate set iff its mask is a submask of the set's mask, so scans
    over candidates only ever touch this table, not the element list.
    """
    buckets: dict[int, set[tuple[int, int]]] = {}
    for g in enumerate_elements(group, cap):
        moved = [p for p in range(group.degree) if g.images[p] != p]
        if not moved:
            continue
        mask = 0
        for p in moved:
            mask |= 1 << p
        buckets.setdefault(mask, set()).update((p, g.images[p]) for p in moved)
    return tuple(
        (mask, tuple(sorted(pairs))) for mask, pairs in sorted(buckets.items())
    )


def _component(edges, allowed_mask: int, seed: int) -> frozenset[int]:
    """Largest set containing seed, inside allowed, on which the elements
    supported inside the set act with a single orbit through seed.

    Decreasing fixpoint: start from the whole allowed set, take the orbit
    of seed under every element whose support fits, and repeat on the
    orbit.  Elements supported inside a set form a subgroup (supports of
    products and inverses only shrink), so the undirected reachability
    below really is the orbit.  Any candidate set through seed inside
    allowed survives every round, which makes the fixpoint the unique
    maximal one.
    """
    current = allowed_mask
    while True:
        adjacency: dict[int, list[int]] = {}
        for mask, pairs in edges:
            if mask & ~current:
                continue
            for a, b in pairs:
                adjacency.setdefault(a, []).append(b)
                adjacency.setdefault(b, []).append(a)
        reached = {seed}
        stack = [seed]
        while stack:
            x = stack.pop()
            for y in adjacency.get(x, ()):
                if y not in reached:
                    reached.add(y)
                    stack.append(y)
        new_mask = 0
        for p in reached:
            new_mask |= 1 << p
        if new_mask == current:
            return frozenset(reached)
        current = new_mask


def is_jordan(group: GenGroup, gamma, cap: int | None = None) -> JordanWitness | None:
    """Test one candidate set, returning a witness or None.

    Builds the pointwise stabilizer of the complement and checks that it
    has a single orbit on the candidate.  The witness group is that
    stabilizer restricted to the set's points in sorted order.  Sets of
    fewer than two points are refused: transitivity on them is empty.
    """
    wanted = _point_set(group, gamma)
    if len(wanted) < 2:
        raise TooSmall("a Jordan set needs at least two points")
    points = tuple(sorted(wanted))
    complement = [p for p in range(group.degree) if p not in wanted]
    inside = stabilizer(group, "pointwise", complement, cap)
    if set(orbit(inside, points[0]).points) != wanted:
        return None
    index = {p: i for i, p in enumerate(points)}
    restricted = tuple(
        Permutation(tuple(index[g.images[p]] for p in points))
        for g in inside.generators
    )
    k = len(complement)
    proper = transitivity_degree(group, k + 1) < k + 1
    return JordanWitness(points, GenGroup(len(points), restricted), proper)


def jordan_sets(
    group: GenGroup, sizes=None, cap: int | None = None
) -> tuple[JordanWitness, ...]:
    """All Jordan sets of the group, optionally restricted to given sizes.

    Scans every subset of the requested sizes against the support-mask
    table; the handful of survivors then get full witnesses.  The subset
    count is compared against the element cap before anything runs, since
    the scan is exponential in the degree.
    """
    n = group.degree
    if sizes is None:
        wanted_sizes = tuple(range(2, n + 1))
    else:
        wanted_sizes = tuple(sorted(set(sizes)))
        for m in wanted_sizes:
            if not 2 <= m <= n:
                raise OutOfRange(f"size {m} outside 2..{n}")
    count = sum(math.comb(n, m) for m in wanted_sizes)
    if count > element_cap(cap):
        raise CapExceeded(f"{count} candidate subsets passes the cap")
    edges = _support_edges(group, cap)
    found: list[JordanWitness] = []
    for m in wanted_sizes:
        for combo in itertools.combinations(range(n), m):
            mask = 0
            for p in combo:
                mask |= 1 << p
            if _connected_inside(edges, mask, combo):
                witness = is_jordan(group, combo, cap)
                assert witness is not None
                found.append(witness)
    return tuple(found)


def _connected_inside(edges, mask: int, members: tuple[int, ...]) -> bool:
    """Single orbit on members under elements supported inside mask."""
    parent = {p: p for p in members}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = len(members) - 1
    for emask, pairs in edges:
        if emask & ~mask:
            continue
        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                merged -= 1
                if not merged:
                    return True
    return merged == 0


def maximal_jordan_avoiding(
    group: GenGroup, avoid, seed: int | None = None, cap: int | None = None
):
    """Maximal Jordan sets disjoint from a prescribed point set.

    With a seed point, returns the unique maximal Jordan set through the
    seed avoiding the set, as a sorted tuple, or () when only the seed's
    singleton survives.  Without a seed, returns the tuple of all distinct
    maximal Jordan sets avoiding the set; these are pairwise disjoint,
    since two through a common point would both equal the fixpoint there.
    """
    banned = _point_set(group, avoid)
    allowed_mask = 0
    for p in range(group.degree):
        if p not in banned:
            allowed_mask |= 1 << p
    edges = _support_edges(group, cap)
    if seed is not None:
        _point_set(group, [seed])
        if seed in banned:
            raise OutOfRange(f"seed {seed} lies in the avoided set")
        part = _component(edges, allowed_mask, seed)
        return tuple(sorted(part)) if len(part) >= 2 else ()
    remaining = {p for p in range(group.degree) if p not in banned}
    out: list[tuple[int, ...]] = []
    while remaining:
        s = min(remaining)
        part = _component(edges, allowed_mask, s)
        if len(part) >= 2:
            out.append(tuple(sorted(part)))
            remaining -= part
        else:
            remaining.discard(s)
    return tuple(out)


def span(group: GenGroup, points, cap: int | None = None) -> tuple[int, ...]:
    """Points in no Jordan set avoiding the given ones.

    The complement of the union of the maximal Jordan sets avoiding the
    input.  This is a closure operator whenever the group is transitive;
    for a 2-transitive group with line-like proper Jordan complements it
    recovers the lines, and for a symmetric group it is the identity on
    small sets.
    """
    wanted = _point_set(group, points)
    covered: set[int] = set()
    allowed_mask = 0
    for p in range(group.degree):
        if p not in wanted:
            allowed_mask |= 1 << p
    edges = _support_edges(group, cap)
    remaining = {p for p in range(group.degree) if p not in wanted}
    while remaining:
        s = min(remaining)
        part = _component(edges, allowed_mask, s)
        if len(part) >= 2:
            covered |= part
            remaining -= part
        else:
            remaining.discard(s)
    return tuple(p for p in range(group.degree) if p not in covered)


@dataclass(frozen=True)
class SpanGeometry:
    """Span table over all point sets up to one past the size cap."""

    group: GenGroup
    size_cap: int
    table: "tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]"

    def span_of(self, points) -> tuple[int, ...]:
        key = tuple(sorted(set(points)))
        for entry, value in self.table:
            if entry == key:
                return value
        raise OutOfRange(f"span table only covers sets of at most {self.size_cap + 1}")


def span_geometry(
    group: GenGroup, size_cap: int = 2, cap: int | None = None
) -> SpanGeometry:
    """Tabulate spans of every subset of size at most size_cap + 1."""
    n = group.degree
    if size_cap < 0:
        raise OutOfRange("size_cap must be nonnegative")
    count = sum(math.comb(n, m) for m in range(min(size_cap + 1, n) + 1))
    if count > element_cap(cap):
        raise CapExceeded(f"{count} table rows passes the cap")
    rows = []
    for m in range(min(size_cap + 1, n) + 1):
        for combo in itertools.combinations(range(n), m):
            rows.append((combo, span(group, combo, cap)))
    return SpanGeometry(group, size_cap, tuple(rows))


@dataclass(frozen=True)
class GeometryAudit:
    """Closure-operator report for a span table.

    extensive/monotone/idempotent are the closure laws on the tabulated
    sets; exchange is the matroid-style law (a point entering a span when
    another is added can be swapped for it), with the first failing triple
    as witness.  singleton_spans_fixed is None unless the group is
    2-transitive, where singletons must span themselves.  Each row of
    independent_counts is (k, number of independent ordered k-tuples,
    orbits on them); a geometry behaving like the classical examples is
    transitive on each nonempty level.
    """

    geometry: SpanGeometry
    extensive: bool
    monotone: bool
    idempotent: bool
    exchange: bool
    exchange_witness: "tuple[tuple[int, ...], int, int] | None"
    empty_span: tuple[int, ...]
    singleton_spans_fixed: bool | None
    independent_counts: tuple[tuple[int, int, int], ...]
    transitive_on_independent: bool

    @property
    def ok(self) -> bool:
        return (
            self.extensive
            and self.monotone
            and self.idempotent
            and self.exchange
            and self.empty_span == ()
            and self.singleton_spans_fixed is not False
            and self.transitive_on_independent
        )


def _tuple_orbits(group: GenGroup, tuples: tuple[tuple[int, ...], ...]) -> int:
    items = set(tuples)
    orbits = 0
    while items:
        start = min(items)
        orbits += 1
        stack = [start]
        items.discard(start)
        while stack:
            t = stack.pop()
            for g in group.generators:
                image = tuple(g.images[p] for p in t)
                if image in items:
                    items.discard(image)
                    stack.append(image)
    return orbits


def geometry_audit(
    group: GenGroup, size_cap: int = 2, cap: int | None = None
) -> GeometryAudit:
    """Build the span table and audit it as a combinatorial geometry."""
    geometry = span_geometry(group, size_cap, cap)
    table = {frozenset(k): frozenset(v) for k, v in geometry.table}
    n = group.degree

    extensive = all(k <= v for k, v in table.items())
    monotone = all(
        table[a] <= table[b]
        for a in table
        for b in table
        if a < b
    )
    idempotent = all(
        tuple(sorted(v)) == span(group, v, cap) for v in set(table.values())
    )

    exchange = True
    exchange_witness = None
    small = sorted(
        (k for k in table if len(k) <= size_cap), key=lambda k: (len(k), sorted(k))
    )
    for base in small:
        closed = table[base]
        for gamma in range(n):
            if gamma in closed:
                continue
            bigger = table[base | {gamma}]
            for beta in sorted(bigger - closed - {gamma}):
                if gamma not in table[base | {beta}]:
                    exchange = False
                    exchange_witness = (tuple(sorted(base)), gamma, beta)
                    break
            if not exchange:
                break
        if not exchange:
            break

    empty_span = tuple(sorted(table[frozenset()]))
    if transitivity_degree(group, min(2, n)) >= 2:
        singleton_spans_fixed = all(
            table[frozenset([p])] == frozenset([p]) for p in range(n)
        )
    else:
        singleton_spans_fixed = None

    counts = []
    transitive_on_independent = True
    level: list[tuple[int, ...]] = [()]
    for k in range(1, size_cap + 2):
        nxt = []
        for t in level:
            closed = table[frozenset(t)]
            for p in range(n):
                if p not in closed:
                    nxt.append(t + (p,))
        orbits = _tuple_orbits(group, tuple(nxt)) if nxt else 0
        counts.append((k, len(nxt), orbits))
        if orbits > 1:
            transitive_on_independent = False
        level = nxt

    return GeometryAudit(
        geometry,
        extensive,
        monotone,
        idempotent,
        exchange,
        exchange_witness,
        empty_span,
        singleton_spans_fixed,
        tuple(counts),
        transitive_on_independent,
    )
