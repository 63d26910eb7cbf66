"""Finite k-ary relations on a point domain {0..n-1}.

Shared value type for the order, tree and geometry modules.  Tuples are
plain int tuples; the JSON form is a sorted array of 1-based arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ArityMismatch, PointOutOfRange


@dataclass(frozen=True)
class Relation:
    """A set of ``arity``-tuples over the domain {0..size-1}."""

    arity: int
    size: int
    tuples: frozenset

    def __post_init__(self):
        for t in self.tuples:
            if len(t) != self.arity:
                raise ArityMismatch(
                    f"tuple {t} has length {len(t)}, expected {self.arity}"
                )
            for p in t:
                if not 0 <= p < self.size:
                    raise PointOutOfRange(f"point {p + 1} outside domain")

    def __contains__(self, item):
        return tuple(item) in self.tuples

    def sorted_tuples(self):
        return sorted(self.tuples)


def relation(arity, size, tuples):
    return Relation(arity, size, frozenset(tuple(t) for t in tuples))


def relation_to_json(rel):
    rows = [[p + 1 for p in t] for t in rel.sorted_tuples()]
    return json.dumps({"arity": rel.arity, "size": rel.size, "tuples": rows})


def relation_from_json(text):
    data = json.loads(text)
    tuples = [tuple(p - 1 for p in row) for row in data["tuples"]]
    return relation(data["arity"], data["size"], tuples)


def relabel_relation(rel, images):
    """Apply the point map ``images`` (a degree-matching sequence) to every tuple."""
    if len(images) != rel.size:
        raise PointOutOfRange("relabeling map has the wrong degree")
    return Relation(
        rel.arity, rel.size, frozenset(tuple(images[p] for p in t) for t in rel.tuples)
    )


def is_invariant(rel, perm):
    """True when the permutation maps the tuple set onto itself."""
    if perm.degree != rel.size:
        raise PointOutOfRange("permutation degree differs from relation domain")
    return relabel_relation(rel, perm.images).tuples == rel.tuples


def restrict_relation(rel, points):
    """Restriction to a point subset, relabeled to {0..len(points)-1} in point order."""
    points = sorted(points)
    index = {p: i for i, p in enumerate(points)}
    kept = [
        tuple(index[p] for p in t)
        for t in rel.tuples
        if all(p in index for p in t)
    ]
    return relation(rel.arity, len(points), kept)


__all__ = [
    "Relation",
    "relation",
    "relation_to_json",
    "relation_from_json",
    "relabel_relation",
    "is_invariant",
    "restrict_relation",
]
