"""Exact linear algebra on the subset levels of a point domain.

Functions on k-subsets form a vector space with the k-subsets (in colex
order) as basis.  The inclusion map sends a function f on (k-1)-subsets
to the function on k-subsets that sums f over the facets of each subset;
its matrix is the 0/1 inclusion incidence matrix, and its injectivity
for n >= 2k-1 is what makes orbit counts grow level by level.  The sign
matrices with entries (-1)^|intersection| are a candidate for a family
of maps composing multiplicatively between levels; the exploration
report computes the composite and compares, asserting nothing.

All arithmetic is exact: Fraction entries, Gaussian elimination over the
rationals, and an independent elimination mod a large prime as a cheap
full-rank certificate for the bigger matrices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy

from .config import element_cap
from .errors import CapExceeded, OutOfRange
from .groups import GenGroup, enumerate_elements, induced_action, orbits
from .perms import Permutation, cycle_type

__all__ = [
    "ExactMatrix",
    "build_r_matrix",
    "build_theta_matrix",
    "subset_permutation_matrix",
    "rank",
    "rank_mod_p",
    "orbit_count_inequality",
    "ThetaReport",
    "theta_exploration",
]


def _colex_subsets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(
        sorted(itertools.combinations(range(n), k), key=lambda s: tuple(reversed(s)))
    )


@dataclass(frozen=True)
class ExactMatrix:
    """Rational matrix whose rows and columns are labeled by subsets."""

    rows: tuple[tuple[int, ...], ...]
    cols: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.rows):
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != len(self.cols):
                raise ValueError("column count mismatch")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def entry(self, row_label, col_label) -> Fraction:
        i = self.rows.index(tuple(sorted(row_label)))
        j = self.cols.index(tuple(sorted(col_label)))
        return self.entries[i][j]

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("label mismatch in matrix product")
        product = tuple(
            tuple(
                sum((a * b for a, b in zip(row, col)), Fraction(0))
                for col in zip(*other.entries)
            )
            for row in self.entries
        )
        return ExactMatrix(self.rows, other.cols, product)

    def to_csv(self) -> str:
        return "\n".join(",".join(str(x) for x in row) for row in self.entries)


def build_r_matrix(n: int, k: int) -> ExactMatrix:
    """Inclusion incidence matrix from (k-1)-subsets to k-subsets.

    Entry (S, F) is 1 exactly when F is S minus one point, so applying
    the matrix to a function on the (k-1)-level sums it over the facets
    of each k-subset.
    """
    if not 1 <= k <= n:
        raise OutOfRange(f"k={k} outside 1..{n}")
    rows = _colex_subsets(n, k)
    cols = _colex_subsets(n, k - 1)
    col_index = {c: j for j, c in enumerate(cols)}
    one, zero = Fraction(1), Fraction(0)
    entries = []
    for s in rows:
        row = [zero] * len(cols)
        for drop in range(k):
            facet = s[:drop] + s[drop + 1 :]
            row[col_index[facet]] = one
        entries.append(tuple(row))
    return ExactMatrix(rows, cols, tuple(entries))


def build_theta_matrix(n: int, r: int, s: int) -> ExactMatrix:
    """Sign matrix from r-subsets to s-subsets: (-1)^|intersection|."""
    if not 0 <= r <= n or not 0 <= s <= n:
        raise OutOfRange(f"levels ({r},{s}) outside 0..{n}")
    rows = _colex_subsets(n, s)
    cols = _colex_subsets(n, r)
    entries = tuple(
        tuple(
            Fraction(-1 if len(set(sigma) & set(gamma)) % 2 else 1)
            for gamma in cols
        )
        for sigma in rows
    )
    return ExactMatrix(rows, cols, entries)


def subset_permutation_matrix(g: Permutation, k: int) -> ExactMatrix:
    """Permutation matrix of g acting on the k-subsets of its domain."""
    labels = _colex_subsets(g.degree, k)
    index = {s: i for i, s in enumerate(labels)}
    one, zero = Fraction(1), Fraction(0)
    entries = [[zero] * len(labels) for _ in labels]
    for j, s in enumerate(labels):
        image = tuple(sorted(g.images[p] for p in s))
        entries[index[image]][j] = one
    return ExactMatrix(labels, labels, tuple(tuple(row) for row in entries))


def rank(matrix: ExactMatrix) -> int:
    """Exact rank over the rationals by Gaussian elimination."""
    work = [list(row) for row in matrix.entries]
    n_rows, n_cols = matrix.shape
    found = 0
    for col in range(n_cols):
        pivot = next((i for i in range(found, n_rows) if work[i][col]), None)
        if pivot is None:
            continue
        work[found], work[pivot] = work[pivot], work[found]
        lead = work[found][col]
        if lead != 1:
            work[found] = [x / lead for x in work[found]]
        top = work[found]
        for i in range(found + 1, n_rows):
            factor = work[i][col]
            if factor:
                work[i] = [a - factor * b for a, b in zip(work[i], top)]
        found += 1
        if found == n_rows:
            break
    return found


def rank_mod_p(matrix: ExactMatrix, p: int = 1_000_003) -> int:
    """Rank of the reduction mod p; a lower bound for the rational rank.

    Equality with the column count therefore certifies injectivity over
    the rationals without touching big-number arithmetic.
    """
    n_rows, n_cols = matrix.shape
    if n_rows == 0 or n_cols == 0:
        return 0
    a = numpy.array(
        [
            [
                x.numerator % p * pow(x.denominator, -1, p) % p
                for x in row
            ]
            for row in matrix.entries
        ],
        dtype=numpy.int64,
    )
    found = 0
    for col in range(n_cols):
        hits = numpy.nonzero(a[found:, col])[0]
        if hits.size == 0:
            continue
        pivot = int(hits[0]) + found
        a[[found, pivot]] = a[[pivot, found]]
        a[found] = a[found] * pow(int(a[found, col]), -1, p) % p
        below = a[found + 1 :, col].copy()
        live = numpy.nonzero(below)[0]
        if live.size:
            block = a[found + 1 :]
            block[live] = (block[live] - numpy.outer(below[live], a[found])) % p
        found += 1
        if found == n_rows:
            break
    return found


def _fixed_subset_count(g: Permutation, k: int) -> int:
    """Subsets of size k fixed setwise: unions of whole cycles."""
    ways = [0] * (k + 1)
    ways[0] = 1
    for length, mult in cycle_type(g).items():
        for _ in range(mult):
            for j in range(k, length - 1, -1):
                ways[j] += ways[j - length]
    return ways[k]


def orbit_count_inequality(
    group: GenGroup, kmax: int, cap: int | None = None
) -> tuple[int, ...]:
    """Orbit counts on k-subsets for k = 0..kmax, with the growth law.

    Counts come from the induced action; each is cross-checked against
    the average number of fixed k-subsets over the whole group, and the
    counts must be nondecreasing while n >= 2k.
    """
    n = group.degree
    if not 0 <= kmax <= n:
        raise OutOfRange(f"kmax={kmax} outside 0..{n}")
    elements = enumerate_elements(group, cap)
    counts = [1]
    for k in range(1, kmax + 1):
        action = induced_action(group, "subsets", k, cap)
        count = len(orbits(action.group))
        average = Fraction(
            sum(_fixed_subset_count(g, k) for g in elements), len(elements)
        )
        assert average == count
        counts.append(count)
    for k in range(1, kmax + 1):
        if n >= 2 * k:
            assert counts[k - 1] <= counts[k]
    return tuple(counts)


@dataclass(frozen=True)
class ThetaReport:
    """Outcome of composing two sign matrices against the direct one.

    scalar is the exact factor when the composite is proportional to the
    direct matrix, else None.  Ranks of all three matrices ride along.
    No claim is made beyond the arithmetic.
    """

    n: int
    r: int
    s: int
    t: int
    proportional: bool
    scalar: Fraction | None
    rank_rs: int
    rank_st: int
    rank_rt: int


def theta_exploration(
    n: int, r: int, s: int, t: int, cap: int | None = None
) -> ThetaReport:
    """Compose the sign maps level r -> s -> t and compare with r -> t."""
    if not 0 <= r <= s <= t <= n:
        raise OutOfRange(f"levels ({r},{s},{t}) not increasing within 0..{n}")
    widest = max(math.comb(n, m) for m in (r, s, t))
    if widest > element_cap(cap):
        raise CapExceeded(f"{widest} subsets on one level passes the cap")
    theta_rs = build_theta_matrix(n, r, s)
    theta_st = build_theta_matrix(n, s, t)
    theta_rt = build_theta_matrix(n, r, t)
    composite = theta_st.matmul(theta_rs)
    scalar = composite.entries[0][0] / theta_rt.entries[0][0]
    proportional = all(
        c == scalar * d
        for crow, drow in zip(composite.entries, theta_rt.entries)
        for c, d in zip(crow, drow)
    )
    return ThetaReport(
        n,
        r,
        s,
        t,
        proportional,
        scalar if proportional else None,
        rank(theta_rs),
        rank(theta_st),
        rank(theta_rt),
    )
