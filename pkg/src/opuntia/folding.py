"""Folding backend selection.

Prefers the compiled kernel (opuntia._foldcore, built from Cython) and
falls back to the pure-Python twin.  Set OPUNTIA_PURE=1 to force the
fallback.
"""
from __future__ import annotations

import os

if os.environ.get("OPUNTIA_PURE"):
    from ._foldpy import BACKEND, fold_edges
else:
    try:
        from ._foldcore import BACKEND, fold_edges  # type: ignore
    except ImportError:
        from ._foldpy import BACKEND, fold_edges

__all__ = ["fold_edges", "BACKEND"]
