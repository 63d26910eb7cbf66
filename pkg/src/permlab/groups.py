"""Finitely generated permutation group machinery.

A group is held by its generators; everything else (orbits, element
enumeration, stabilizers, induced actions, witnesses) is derived on demand
by deterministic breadth-first walks.  Enumeration order is reproducible:
words are explored shortest-first, ties broken by generator list position,
so "the BFS-least witness" is a well-defined value everywhere below.

>>> g = group_from_cycles(5, "(1 2 3 4 5)")
>>> order(g)
5
>>> orbit(g, 0).points
(0, 1, 2, 3, 4)
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from .config import element_cap
from .errors import (
    CapExceeded,
    NotSubgroup,
    NotTransitive,
    OutOfRange,
    PointOutOfRange,
)
from .perms import Permutation, compose, identity, inverse, parse_cycles


@dataclass(frozen=True)
class GenGroup:
    """A subgroup of Sym({0..degree-1}) given by a generator list."""

    degree: int
    generators: tuple[Permutation, ...] = ()

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.degree != self.degree:
                raise ValueError("generator degree mismatch")


def group_from_cycles(degree: int, *cycle_texts: str) -> GenGroup:
    return GenGroup(degree, tuple(parse_cycles(t, degree) for t in cycle_texts))


def symmetric_group(degree: int) -> GenGroup:
    if degree <= 1:
        return GenGroup(degree, ())
    if degree == 2:
        return group_from_cycles(2, "(1 2)")
    cycle = "(" + " ".join(str(i) for i in range(1, degree + 1)) + ")"
    return group_from_cycles(degree, cycle, "(1 2)")


def cyclic_group(degree: int) -> GenGroup:
    if degree <= 1:
        return GenGroup(degree, ())
    cycle = "(" + " ".join(str(i) for i in range(1, degree + 1)) + ")"
    return group_from_cycles(degree, cycle)


def dihedral_group(sides: int) -> GenGroup:
    """Symmetries of a regular polygon, acting on its vertices."""
    if sides < 3:
        raise OutOfRange("need at least 3 vertices")
    rotation = "(" + " ".join(str(i) for i in range(1, sides + 1)) + ")"
    flip_pairs = [
        (i, sides + 2 - i) for i in range(2, sides // 2 + 2) if i < sides + 2 - i
    ]
    flip = "".join(f"({a} {b})" for a, b in flip_pairs)
    return group_from_cycles(sides, rotation, flip if flip else "()")


def alternating_group(degree: int) -> GenGroup:
    if degree <= 2:
        return GenGroup(degree, ())
    if degree == 3:
        return group_from_cycles(3, "(1 2 3)")
    threecycle = "(1 2 3)"
    if degree % 2 == 1:
        long = "(" + " ".join(str(i) for i in range(1, degree + 1)) + ")"
    else:
        long = "(" + " ".join(str(i) for i in range(2, degree + 1)) + ")"
    return group_from_cycles(degree, threecycle, long)


# element enumeration


@cache
def _bfs_elements(group: GenGroup, cap: int) -> tuple[Permutation, ...]:
    start = identity(group.degree)
    seen = {start}
    out = [start]
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in group.generators:
            node = compose(current, g)
            if node not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"enumeration passed cap {cap}")
                seen.add(node)
                out.append(node)
                queue.append(node)
    return tuple(out)


def enumerate_elements(group: GenGroup, cap: int | None = None) -> tuple[Permutation, ...]:
    """All elements in deterministic BFS word order (identity first).

    Raises CapExceeded when the group has more than `cap` elements.
    """
    return _bfs_elements(group, element_cap(cap))


@cache
def _element_set(group: GenGroup, cap: int) -> frozenset[Permutation]:
    return frozenset(_bfs_elements(group, cap))


def element_set(group: GenGroup, cap: int | None = None) -> frozenset[Permutation]:
    return _element_set(group, element_cap(cap))


def order(group: GenGroup, cap: int | None = None) -> int:
    return len(enumerate_elements(group, cap))


def contains(group: GenGroup, f: Permutation, cap: int | None = None) -> bool:
    return f in element_set(group, cap)


def _reduce_generators(
    elements: tuple[Permutation, ...], degree: int
) -> tuple[Permutation, ...]:
    """Greedy small generating set for a subgroup given by its element list.

    Scans in the given order, keeping any element outside the running
    closure.  Each kept element at least doubles the closure, so at most
    log2(n) generators survive.
    """
    e = identity(degree)
    generators: list[Permutation] = []
    closed = {e}
    target = len(elements)
    for candidate in elements:
        if candidate in closed:
            continue
        generators.append(candidate)
        closed = set(_bfs_elements(GenGroup(degree, tuple(generators)), target))
        if len(closed) == target:
            break
    return tuple(generators)


def subgroup_from_elements(
    elements: tuple[Permutation, ...], degree: int
) -> GenGroup:
    return GenGroup(degree, _reduce_generators(elements, degree))


# orbits


@dataclass(frozen=True)
class Orbit:
    """Orbit of a point with BFS-minimal transversal words.

    words[beta] is a tuple of generator indices; applying those generators
    left-to-right to the base point lands on beta.
    """

    group: GenGroup
    base: int
    points: tuple[int, ...]
    words: "tuple[tuple[int, tuple[int, ...]], ...]"

    def word(self, point: int) -> tuple[int, ...]:
        return dict(self.words)[point]

    def transversal_element(self, point: int) -> Permutation:
        t = identity(self.group.degree)
        for index in self.word(point):
            t = compose(t, self.group.generators[index])
        return t


@cache
def orbit(group: GenGroup, alpha: int) -> Orbit:
    """BFS orbit of alpha under the generators, with minimal words."""
    if not 0 <= alpha < group.degree:
        raise PointOutOfRange(f"point {alpha} outside 0..{group.degree - 1}")
    words: dict[int, tuple[int, ...]] = {alpha: ()}
    queue = deque([alpha])
    while queue:
        current = queue.popleft()
        for index, g in enumerate(group.generators):
            moved = g.images[current]
            if moved not in words:
                words[moved] = words[current] + (index,)
                queue.append(moved)
    return Orbit(group, alpha, tuple(sorted(words)), tuple(sorted(words.items())))


def orbits(group: GenGroup) -> tuple[tuple[int, ...], ...]:
    """All orbits, each sorted, ordered by least point."""
    seen: set[int] = set()
    out = []
    for alpha in range(group.degree):
        if alpha in seen:
            continue
        pts = orbit(group, alpha).points
        seen.update(pts)
        out.append(pts)
    return tuple(out)


def is_transitive(group: GenGroup) -> bool:
    return group.degree > 0 and len(orbit(group, 0).points) == group.degree


# stabilizers


def stabilizer(
    group: GenGroup,
    kind: str,
    arg,
    cap: int | None = None,
) -> GenGroup:
    """Stabilizer subgroup.

    kind: "point" (arg: a point; Schreier generators, no enumeration),
    "pointwise" (arg: iterable of points; filters the element list), or
    "setwise" (arg: iterable of points; filters the element list).
    """
    if kind == "point":
        return _point_stabilizer(group, arg)
    if kind == "pointwise":
        wanted = sorted(set(arg))
        keep = tuple(
            g
            for g in enumerate_elements(group, cap)
            if all(g.images[p] == p for p in wanted)
        )
        return subgroup_from_elements(keep, group.degree)
    if kind == "setwise":
        wanted = frozenset(arg)
        keep = tuple(
            g
            for g in enumerate_elements(group, cap)
            if frozenset(g.images[p] for p in wanted) == wanted
        )
        return subgroup_from_elements(keep, group.degree)
    raise ValueError(f"unknown stabilizer kind {kind!r}")


@cache
def _point_stabilizer(group: GenGroup, alpha: int) -> GenGroup:
    """Schreier generators t_beta s t_(beta s)^-1 over the orbit of alpha."""
    table = orbit(group, alpha)
    transversal = {beta: table.transversal_element(beta) for beta in table.points}
    e = identity(group.degree)
    out: list[Permutation] = []
    seen = {e}
    for beta in table.points:
        t_beta = transversal[beta]
        for s in group.generators:
            schreier = compose(compose(t_beta, s), inverse(transversal[s.images[beta]]))
            if schreier not in seen:
                seen.add(schreier)
                out.append(schreier)
    return GenGroup(group.degree, tuple(out))


# induced actions on tuples and subsets


def _subsets_colex(degree: int, k: int) -> list[tuple[int, ...]]:
    """All sorted k-subsets in colexicographic order."""
    return sorted(
        itertools.combinations(range(degree), k), key=lambda s: tuple(reversed(s))
    )


@dataclass(frozen=True)
class InducedAction:
    """A group action moved to k-tuples or k-subsets of the original points."""

    group: GenGroup
    items: tuple[tuple[int, ...], ...]
    kind: str

    def index_of(self, item: tuple[int, ...]) -> int:
        return self.items.index(item)


def induced_action(
    group: GenGroup, kind: str, k: int, cap: int | None = None
) -> InducedAction:
    """Action on injective k-tuples ("tuples") or k-subsets ("subsets").

    Derived degree is n!/(n-k)! for tuples and C(n, k) for subsets; subsets
    are listed in colexicographic order, tuples lexicographically.
    """
    if not 0 < k <= group.degree:
        raise OutOfRange(f"k={k} outside 1..{group.degree}")
    if kind == "tuples":
        items = tuple(itertools.permutations(range(group.degree), k))
    elif kind == "subsets":
        items = tuple(_subsets_colex(group.degree, k))
    else:
        raise ValueError(f"unknown induced action kind {kind!r}")
    if len(items) > element_cap(cap):
        raise CapExceeded(f"derived domain of size {len(items)} passes the cap")
    index = {item: i for i, item in enumerate(items)}
    lifted = []
    for g in group.generators:
        if kind == "tuples":
            moved = [index[tuple(g.images[p] for p in item)] for item in items]
        else:
            moved = [index[tuple(sorted(g.images[p] for p in item))] for item in items]
        lifted.append(Permutation(tuple(moved)))
    return InducedAction(GenGroup(len(items), tuple(lifted)), items, kind)


def _item_orbit_is_everything(group: GenGroup, kind: str, k: int) -> bool:
    """Transitivity on k-tuples/k-subsets by a single item-orbit BFS."""
    start = tuple(range(k))
    if kind == "tuples":
        total = math.perm(group.degree, k)
    else:
        total = math.comb(group.degree, k)
    ordered = kind == "tuples"
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in group.generators:
            if ordered:
                moved = tuple(g.images[p] for p in current)
            else:
                moved = tuple(sorted(g.images[p] for p in current))
            if moved not in seen:
                seen.add(moved)
                queue.append(moved)
    return len(seen) == total


def transitivity_degree(group: GenGroup, kmax: int) -> int:
    """Largest k <= kmax with a single orbit on injective j-tuples for all j <= k."""
    if kmax > group.degree:
        raise OutOfRange(f"kmax={kmax} above degree {group.degree}")
    best = 0
    for k in range(1, kmax + 1):
        if not _item_orbit_is_everything(group, "tuples", k):
            break
        best = k
    return best


def homogeneity_degree(group: GenGroup, kmax: int) -> int:
    """Largest k <= kmax with a single orbit on j-subsets for all j <= k."""
    if kmax > group.degree:
        raise OutOfRange(f"kmax={kmax} above degree {group.degree}")
    best = 0
    for k in range(1, kmax + 1):
        if not _item_orbit_is_everything(group, "subsets", k):
            break
        best = k
    return best


# separation


def separation_search(
    group: GenGroup,
    gamma: frozenset[int] | set[int],
    delta: frozenset[int] | set[int],
    cap: int | None = None,
) -> Permutation | None:
    """BFS-least g with (gamma)g disjoint from delta, or None.

    When every orbit is larger than |gamma| * |delta|, a witness always
    exists, so None is only possible for crowded orbits.
    """
    gamma = frozenset(gamma)
    delta = frozenset(delta)
    for g in enumerate_elements(group, cap):
        if not frozenset(g.images[p] for p in gamma) & delta:
            return g
    return None


# coset covers


@dataclass(frozen=True)
class CosetCoverInstance:
    group: GenGroup
    parts: tuple[tuple[GenGroup, Permutation], ...]


@dataclass(frozen=True)
class CosetCoverReport:
    covers: bool
    irredundant: bool
    indices: tuple[int, ...]
    index_sum: Fraction


def coset_cover_audit(
    instance: CosetCoverInstance, cap: int | None = None
) -> CosetCoverReport:
    """Audit a finite union of cosets Y_i x_i against the whole group.

    Exact index arithmetic; when the cover is exhaustive and irredundant the
    reciprocal index sum is at least 1, and this audit asserts it.
    """
    whole = element_set(instance.group, cap)
    cosets: list[frozenset[Permutation]] = []
    indices: list[int] = []
    for subgroup, representative in instance.parts:
        members = element_set(subgroup, cap)
        if not members <= whole or representative not in whole:
            raise NotSubgroup("cover part does not live inside the group")
        cosets.append(frozenset(compose(y, representative) for y in members))
        indices.append(len(whole) // len(members))
    union: set[Permutation] = set()
    for coset in cosets:
        union |= coset
    covers = union == whole
    irredundant = True
    for skip in range(len(cosets)):
        rest: set[Permutation] = set()
        for j, coset in enumerate(cosets):
            if j != skip:
                rest |= coset
        if rest == union:
            irredundant = False
            break
    index_sum = sum((Fraction(1, i) for i in indices), Fraction(0))
    if covers and irredundant:
        assert index_sum >= 1, "irredundant exhaustive cover with reciprocal sum < 1"
    return CosetCoverReport(covers, irredundant, tuple(indices), index_sum)


# automorphisms of the action and coset spaces


def _normalizer_of_subgroup(
    group: GenGroup, sub: GenGroup, cap: int | None = None
) -> tuple[Permutation, ...]:
    members = element_set(sub, cap)
    generators = sub.generators if sub.generators else (identity(group.degree),)
    out = []
    for g in enumerate_elements(group, cap):
        gi = inverse(g)
        if all(compose(compose(gi, s), g) in members for s in generators):
            out.append(g)
    return tuple(out)


def gspace_automorphisms(
    group: GenGroup, alpha: int, cap: int | None = None
) -> GenGroup:
    """All permutations of the domain commuting with the whole action.

    Requires transitivity.  Each normalizer element g of the point
    stabilizer yields the commuting map (alpha)x -> (alpha)gx; distinct
    stabilizer cosets give distinct maps, so the output order is
    |N(G_alpha)| / |G_alpha|.
    """
    if not is_transitive(group):
        raise NotTransitive("the action has more than one orbit")
    stab = stabilizer(group, "point", alpha)
    normalizer = _normalizer_of_subgroup(group, stab, cap)
    table = orbit(group, alpha)
    transversal = {
        beta: table.transversal_element(beta) for beta in table.points
    }
    maps = []
    for g in normalizer:
        images = [0] * group.degree
        for beta in range(group.degree):
            images[beta] = compose(g, transversal[beta]).images[alpha]
        maps.append(Permutation(tuple(images)))
    unique = tuple(dict.fromkeys(maps))
    return subgroup_from_elements(unique, group.degree)


def _is_subgroup_of(
    group: GenGroup, sub: GenGroup, cap: int | None = None
) -> bool:
    return element_set(sub, cap) <= element_set(group, cap)


def coset_spaces_isomorphic(
    group: GenGroup, h: GenGroup, k: GenGroup, cap: int | None = None
) -> Permutation | None:
    """BFS-least x with x^-1 H x = K, or None when H, K are not conjugate."""
    if not _is_subgroup_of(group, h, cap) or not _is_subgroup_of(group, k, cap):
        raise NotSubgroup("both coset spaces need subgroups of the ambient group")
    h_members = element_set(h, cap)
    k_members = element_set(k, cap)
    if len(h_members) != len(k_members):
        return None
    h_generators = h.generators if h.generators else (identity(group.degree),)
    for x in enumerate_elements(group, cap):
        xi = inverse(x)
        if all(compose(compose(xi, s), x) in k_members for s in h_generators):
            return x
    return None
