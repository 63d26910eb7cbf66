"""Finite-instance workbench for permutation group actions.

Everything here is exact and deterministic: orbits, stabilizers, block
systems, orbital graphs, wreath products, dense-order automorphisms,
tree-like relational structures, closure geometries from transitive
stabilizers, and subset inclusion operators, each with small brute-force
checks built alongside.
"""

from __future__ import annotations

from .errors import PermlabError
from .perms import Permutation, compose, format_cycles, identity, inverse, parse_cycles

__all__ = [
    "PermlabError",
    "Permutation",
    "compose",
    "format_cycles",
    "identity",
    "inverse",
    "parse_cycles",
]

__version__ = "0.1.0"
