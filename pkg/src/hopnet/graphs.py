"""Undirected graph container shared by every solver.

A Graph keeps the adjacency both as sorted tuples (pure-Python kernel) and in
CSR form (compiled kernel).  Hop counts are edge counts; all breadth-first
queries run through hop_bfs so the deterministic parent rule (smallest parent
id on the previous level) holds everywhere.
"""

from __future__ import annotations

import numpy as np

from hopnet import _kernels


class Graph:
    """Immutable undirected graph over dense node ids 0..n-1."""

    __slots__ = ("n", "adj", "indptr", "indices")

    def __init__(self, n, edges):
        lists = [[] for _ in range(n)]
        for u, v in edges:
            lists[u].append(v)
            lists[v].append(u)
        for lst in lists:
            lst.sort()
        self.n = n
        self.adj = tuple(tuple(lst) for lst in lists)
        self.indptr = np.zeros(n + 1, dtype=np.int32)
        for u in range(n):
            self.indptr[u + 1] = self.indptr[u] + len(lists[u])
        self.indices = np.fromiter(
            (v for lst in lists for v in lst), dtype=np.int32, count=int(self.indptr[n])
        )

    def degree(self, u):
        return len(self.adj[u])


def node_mask(n, *id_sets):
    """Build a bytearray mask with the given id collections switched on."""
    mask = bytearray(n)
    for ids in id_sets:
        for i in ids:
            mask[i] = 1
    return mask


def hop_bfs(graph, roots, allowed):
    """Hop counts and parents from the closest of ``roots`` within the mask.

    Roots must be allowed.  Returns (dist, parent) lists indexed by node id;
    -1 means unreachable (dist) and root-or-unreached (parent).  Parents are
    deterministic: the smallest-id allowed neighbour on the previous level.
    """
    roots = sorted(set(roots))
    for r in roots:
        if not allowed[r]:
            raise ValueError(f"root {r} is not in the allowed set")
    return _kernels.bfs_hops(graph, roots, allowed)


def path_to_root(parent, node):
    """Follow parents from ``node`` to its BFS root, inclusive."""
    path = [node]
    while parent[path[-1]] >= 0:
        path.append(parent[path[-1]])
    return path
