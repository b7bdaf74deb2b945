"""Backend selection for the search kernels.

The compiled core is used when it imports and the graph has at most 64
vertices; otherwise the pure-Python kernels run. Set
``COVERGRAPH_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("COVERGRAPH_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def _pick(n, backend=None):
    if backend == "python" or _ckernels is None or n > 64:
        if backend == "cython" and _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        return _pykernels
    return _ckernels


def cover_search(n, edges, prefix=(), backend=None):
    return _pick(n, backend).cover_search(n, list(edges), tuple(prefix))


def dmin_search(n, edges, prefix=(), backend=None):
    return _pick(n, backend).dmin_search(n, list(edges), tuple(prefix))


def min_imbalance(n, edges, cycles, prefix=(), backend=None):
    return _pick(n, backend).min_imbalance(n, list(edges), list(cycles), tuple(prefix))
