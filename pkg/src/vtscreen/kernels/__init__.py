"""Numeric kernels with a compiled core and a pure-Python fallback.

The compiled Cython backend (``_fast``) is preferred when its extension
module built; otherwise the pure backend (``_pure``) is used. Both
implement the same operations in the same order, so swapping backends
never changes results. Set ``VTSCREEN_PURE_PYTHON=1`` to force the pure
backend (useful for debugging and for the backend benchmark).
"""

from __future__ import annotations

import os

import numpy as np

from . import _pure

_IMPL = _pure
BACKEND = "pure"

if not os.environ.get("VTSCREEN_PURE_PYTHON"):
    try:
        from . import _fast

        _IMPL = _fast
        BACKEND = "compiled"
    except ImportError:
        pass


def get_backend(name: str):
    """Return a backend module by name ("pure" or "compiled")."""
    if name == "pure":
        return _pure
    if name == "compiled":
        from . import _fast

        return _fast
    raise KeyError(f"unknown kernel backend: {name!r}")


def other_score(vs: float, ts: float) -> float:
    return _IMPL.other_score(float(vs), float(ts))


def sparse_cosine(ids_a, wa, ids_b, wb) -> float:
    ids_a = np.ascontiguousarray(ids_a, dtype=np.int64)
    ids_b = np.ascontiguousarray(ids_b, dtype=np.int64)
    wa = np.ascontiguousarray(wa, dtype=np.float64)
    wb = np.ascontiguousarray(wb, dtype=np.float64)
    return _IMPL.sparse_cosine(ids_a, wa, ids_b, wb)


def dense_cosine(u, v) -> float:
    u = np.ascontiguousarray(u, dtype=np.float64)
    v = np.ascontiguousarray(v, dtype=np.float64)
    return _IMPL.dense_cosine(u, v)


def pair_accumulate(cos_v, cos_t) -> tuple[float, float, float]:
    cos_v = np.ascontiguousarray(cos_v, dtype=np.float64)
    cos_t = np.ascontiguousarray(cos_t, dtype=np.float64)
    return _IMPL.pair_accumulate(cos_v, cos_t)


def cosine_matrix(a, b) -> np.ndarray:
    """Pairwise cosine of the rows of ``a`` against the rows of ``b``."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    out = np.zeros((a.shape[0], b.shape[0]), dtype=np.float64)
    if a.shape[0] and b.shape[0]:
        _IMPL.cosine_matrix(a, b, out)
    return out


def max_cosine_rows(a, b) -> np.ndarray:
    """Per row of ``a``, the maximum cosine against any row of ``b``."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    out = np.zeros(a.shape[0], dtype=np.float64)
    if a.shape[0] and b.shape[0]:
        _IMPL.max_cosine_rows(a, b, out)
    return out
