"""Runtime limits.

Enumeration caps keep brute-force closures honest: any walk that would grow
past the cap raises CapExceeded instead of thrashing.  The default can be
overridden with the PERMLAB_CAP environment variable or per call.
"""

from __future__ import annotations

import os

DEFAULT_CAP = 200_000


def element_cap(override: int | None = None) -> int:
    """Resolve the enumeration cap: explicit override > env var > default."""
    if override is not None:
        return override
    env = os.environ.get("PERMLAB_CAP")
    if env is not None:
        return int(env)
    return DEFAULT_CAP
