"""Kernel backend selection.

The compiled extension is used when it was built and HOPNET_PURE_PYTHON is
unset; otherwise the pure-Python kernel takes over with identical semantics.
"""

from __future__ import annotations

import os

from hopnet import _kernels_py

if os.environ.get("HOPNET_PURE_PYTHON"):
    _core = None
else:
    try:
        from hopnet import _core
    except ImportError:
        _core = None

BACKEND = "python" if _core is None else "compiled"


def bfs_hops(graph, roots, allowed):
    """Dispatch to the active backend.  See Graph.hop_bfs for the contract."""
    if _core is not None:
        return _core.bfs_hops(graph.n, graph.indptr, graph.indices, roots, allowed)
    return _kernels_py.bfs_hops(graph.n, graph.adj, roots, allowed)
