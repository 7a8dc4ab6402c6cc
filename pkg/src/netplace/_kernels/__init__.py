"""Matching kernel selection.

The compiled Hopcroft-Karp kernel is used when its extension module built;
otherwise the pure-Python twin takes over.  Set ``NETPLACE_PURE_PYTHON=1``
to force the fallback.  Both kernels return identical matchings, so the
choice never changes results, only speed.
"""

from __future__ import annotations

import os

from . import _matching_py

try:
    from . import _matching_c
except ImportError:
    _matching_c = None


def select(kind: str = "auto") -> str:
    """Bind the module-level ``hopcroft_karp`` to one implementation.

    ``kind`` is ``"auto"``, ``"cython"``, or ``"python"``.  Returns the name
    of the implementation now active.
    """
    global hopcroft_karp, IMPLEMENTATION
    if kind == "auto":
        kind = "python" if _matching_c is None else "cython"
    if kind == "cython":
        if _matching_c is None:
            raise RuntimeError("compiled matching kernel is not available")
        hopcroft_karp = _matching_c.hopcroft_karp
    elif kind == "python":
        hopcroft_karp = _matching_py.hopcroft_karp
    else:
        raise ValueError(f"unknown kernel kind: {kind!r}")
    IMPLEMENTATION = kind
    return kind


select("python" if os.environ.get("NETPLACE_PURE_PYTHON") else "auto")
