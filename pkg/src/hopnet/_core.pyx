# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled breadth-first kernel over CSR adjacency.

Mirrors hopnet._kernels_py.bfs_hops exactly: level-synchronous expansion with
ascending frontiers, so every node gets the smallest-id parent on the
previous level regardless of backend.
"""

import numpy as np


def bfs_hops(int n, int[::1] indptr, int[::1] indices, roots, unsigned char[::1] allowed):
    """Multi-root BFS restricted to the ``allowed`` mask.

    ``roots`` must be sorted ascending and contained in the mask.  Returns
    ``(dist, parent)`` lists of length ``n``; -1 marks unreachable (dist) and
    root-or-unreached (parent).
    """
    dist_arr = np.full(n, -1, dtype=np.int32)
    parent_arr = np.full(n, -1, dtype=np.int32)
    cur_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    cdef int[::1] parent = parent_arr
    cdef int[::1] cur = cur_arr
    cdef int cur_len = 0
    cdef int level = 0
    cdef int i, u, v, e, found, r

    for r in roots:
        dist[r] = 0
        cur[cur_len] = r
        cur_len += 1

    while cur_len > 0:
        found = 0
        for i in range(cur_len):
            u = cur[i]
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if allowed[v] and dist[v] < 0:
                    dist[v] = level + 1
                    parent[v] = u
                    found += 1
        # rebuild the frontier by scanning ids ascending; neighbour lists are
        # unordered so discovery order alone would not be sorted
        cur_len = 0
        if found > 0:
            level += 1
            for v in range(n):
                if dist[v] == level:
                    cur[cur_len] = v
                    cur_len += 1
    return dist_arr.tolist(), parent_arr.tolist()
