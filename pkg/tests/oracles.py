"""Independent reference implementations used only by the tests.

Everything here is written against the problem statement directly (plain
dict/deque code, no package kernels) so package results can be checked
against genuinely separate logic.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations


def adjacency(n, edges):
    adj = {i: set() for i in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def bfs_dist(n, edges, roots, allowed):
    """Hop counts from the nearest root, walking only ``allowed`` nodes."""
    adj = adjacency(n, edges)
    allowed = set(allowed)
    dist = {r: 0 for r in roots}
    queue = deque(sorted(roots))
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if v in allowed and v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def serves(instance, sinks, relays, sources=None):
    """Can every source reach one of ``sinks`` within h_max via ``relays``?"""
    sources = instance.sources if sources is None else sources
    allowed = set(instance.sources) | set(relays) | set(sinks)
    dist = bfs_dist(instance.n, instance.edges, sorted(sinks), allowed)
    return all(dist.get(q, 10**9) <= instance.h_max for q in sources)


def min_relay_count(instance, sink, targets, candidates):
    """Fewest relays (from ``candidates``) serving all targets from one sink."""
    cands = sorted(candidates)
    for k in range(len(cands) + 1):
        for combo in combinations(cands, k):
            if serves(instance, [sink], combo, sources=targets):
                return k
    return None


def greedy_set_cover(subsets, universe_size):
    """Textbook greedy for uniform-cost set cover.

    Picks the subset covering the most uncovered elements; ties go to the
    lowest index.  Returns the pick order.
    """
    uncovered = set(range(universe_size))
    order = []
    while uncovered:
        best_gain, best_idx = 0, None
        for idx, subset in enumerate(subsets):
            gain = len(set(subset) & uncovered)
            if gain > best_gain:
                best_gain, best_idx = gain, idx
        if best_idx is None:
            raise ValueError("family does not cover the universe")
        order.append(best_idx)
        uncovered -= set(subsets[best_idx])
    return order


def set_cover_optimum(subsets, universe_size):
    """Smallest cover size, by enumerating every subfamily."""
    universe = set(range(universe_size))
    for k in range(1, len(subsets) + 1):
        for combo in combinations(range(len(subsets)), k):
            if set().union(*(set(subsets[i]) for i in combo)) >= universe:
                return k
    return None


def path_formulation_optimum(instance):
    """Optimal cost via the route formulation with a virtual super-sink.

    A selection serves source k when some path of at most h_max + 1 edges
    reaches the super-sink using only selected nodes and other sources as
    interiors.  Selected sinks may appear as interiors here, which the
    package's search never does; the optima must agree anyway.
    """
    b0 = instance.n
    edges = set(instance.edges) | {(b, b0) for b in instance.sinks}
    cands = sorted(set(instance.relays) | set(instance.sinks))
    sink_set = set(instance.sinks)
    best = None
    for k in range(1, len(cands) + 1):
        for combo in combinations(cands, k):
            cost = sum(instance.c_s if c in sink_set else instance.c_r for c in combo)
            if best is not None and cost >= best:
                continue
            allowed = set(combo) | set(instance.sources) | {b0}
            ok = True
            for q in instance.sources:
                dist = bfs_dist(instance.n + 1, edges, [q], allowed | {q})
                if dist.get(b0, 10**9) > instance.h_max + 1:
                    ok = False
                    break
            if ok:
                best = cost
    return best


def vertex_cut_minimum(n, edges, source, target, weights):
    """Minimum-weight vertex cut separating source from target, by enumeration.

    Removable nodes are everything except the endpoints; missing weights are
    treated as 0.  Returns (weight, cut frozenset).
    """
    removable = sorted(set(range(n)) - {source, target})
    best = None
    for k in range(len(removable) + 1):
        for combo in combinations(removable, k):
            allowed = set(range(n)) - set(combo)
            dist = bfs_dist(n, edges, [source], allowed)
            if target not in dist:
                weight = sum(weights.get(j, 0.0) for j in combo)
                if best is None or weight < best[0] - 1e-12:
                    best = (weight, frozenset(combo))
    return best
