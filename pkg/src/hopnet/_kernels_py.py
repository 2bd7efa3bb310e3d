"""Pure-Python breadth-first kernel, the fallback when the compiled core is unavailable.

Semantics are identical to the compiled twin: level-synchronous expansion over
an allowed-node mask, with each frontier processed in ascending id order so
that every discovered node receives the smallest-id parent on the previous
level.  Shortest-path trees are therefore reproducible across backends.
"""

from __future__ import annotations


def bfs_hops(n, adj, roots, allowed):
    """Multi-root BFS restricted to ``allowed`` nodes.

    ``roots`` must be sorted ascending and contained in the mask.  Returns
    ``(dist, parent)`` lists of length ``n``; -1 marks unreachable (dist) and
    root-or-unreached (parent).
    """
    dist = [-1] * n
    parent = [-1] * n
    for r in roots:
        dist[r] = 0
    level = 0
    frontier = list(roots)
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if allowed[v] and dist[v] < 0:
                    dist[v] = level + 1
                    parent[v] = u
                    nxt.append(v)
        # keep the next frontier ascending: first discoverer is then always
        # the smallest-id neighbour on the previous level
        nxt.sort()
        frontier = nxt
        level += 1
    return dist, parent
