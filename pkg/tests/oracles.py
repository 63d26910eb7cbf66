"""Brute-force reference implementations, independent of the library code.

Everything here favors the dumbest correct algorithm: fixpoint loops over
sets, scans over the whole symmetric group, itertools catalogs.  Tests
freeze values produced by these oracles and cross-check library outputs
against them.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from permlab.perms import Permutation


def sym(n: int) -> list[Permutation]:
    """Every element of Sym(n), lexicographic by image tuple."""
    return [Permutation(images) for images in itertools.permutations(range(n))]


def apply_word(point: int, word: list[Permutation]) -> int:
    for f in word:
        point = f.images[point]
    return point


def mul(f: Permutation, g: Permutation) -> Permutation:
    """Pointwise left-to-right product, built through a dict on purpose."""
    table = {p: g.images[f.images[p]] for p in range(f.degree)}
    return Permutation(tuple(table[p] for p in range(f.degree)))


def inv(f: Permutation) -> Permutation:
    return Permutation(tuple(sorted(range(f.degree), key=lambda p: f.images[p])))


def conj(f: Permutation, h: Permutation) -> Permutation:
    """h^-1 f h via the oracle's own mul/inv."""
    return mul(mul(inv(h), f), h)


def brute_conjugator(f: Permutation, g: Permutation) -> Permutation | None:
    """Scan all of Sym(n) for h with h^-1 f h = g."""
    for h in sym(f.degree):
        if conj(f, h) == g:
            return h
    return None


def closure(generators: list[Permutation]) -> set[Permutation]:
    """Subgroup closure by a product fixpoint loop (not a word BFS)."""
    if not generators:
        raise ValueError("need at least one generator to know the degree")
    elements = {Permutation(tuple(range(generators[0].degree)))}
    elements.update(generators)
    while True:
        fresh = {mul(a, b) for a in elements for b in generators} - elements
        if not fresh:
            return elements
        elements |= fresh


def orbit_set(generators: list[Permutation], point: int) -> set[int]:
    """Orbit of a point by set fixpoint, no word tracking."""
    orbit = {point}
    while True:
        fresh = {g.images[p] for p in orbit for g in generators} - orbit
        if not fresh:
            return orbit
        orbit |= fresh


def orbits_on(generators: list[Permutation], points: list) -> list[frozenset]:
    """Orbits on arbitrary hashable items under item -> act(item, g).

    Items are acted on through ``act`` below if tuples/frozensets of points,
    or directly if plain points.
    """
    remaining = set(points)
    out: list[frozenset] = []
    while remaining:
        seed = remaining.pop()
        orb = {seed}
        frontier = [seed]
        while frontier:
            item = frontier.pop()
            for g in generators:
                moved = act(item, g)
                if moved not in orb:
                    orb.add(moved)
                    frontier.append(moved)
        remaining -= orb
        out.append(frozenset(orb))
    return out


def act(item, g: Permutation):
    """Act on a point, a tuple of points, or a frozenset of points."""
    if isinstance(item, int):
        return g.images[item]
    if isinstance(item, tuple):
        return tuple(g.images[p] for p in item)
    if isinstance(item, frozenset):
        return frozenset(g.images[p] for p in item)
    raise TypeError(f"cannot act on {type(item)}")


def burnside_orbit_count(elements: set[Permutation], items: list) -> Fraction:
    """Average fixed-point count over the whole group."""
    total = 0
    for g in elements:
        total += sum(1 for item in items if act(item, g) == item)
    return Fraction(total, len(elements))


def stabilizer_filter(elements: set[Permutation], item) -> set[Permutation]:
    """Stabilizer by filtering a full enumeration."""
    return {g for g in elements if act(item, g) == item}


def is_transitive_on(generators: list[Permutation], points: list) -> bool:
    return len(orbits_on(generators, points)) <= 1


def brute_jordan(elements: set[Permutation], candidate: set[int]) -> bool:
    """Definition check: the elements fixing the complement pointwise
    must reach every candidate point from the first one."""
    degree = next(iter(elements)).degree
    outside = [p for p in range(degree) if p not in candidate]
    fixing = [g for g in elements if all(g.images[p] == p for p in outside)]
    reached = orbit_set(fixing, min(candidate))
    return reached == set(candidate)
