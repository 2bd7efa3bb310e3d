"""Exhaustive optimum and closed-form approximation-ratio bounds.

The exhaustive search enumerates candidate subsets by size, then
lexicographically, so the first optimum found is also the tie-rule winner
(lowest cost, then fewest nodes, then lexicographically smallest id set).
A cost floor per subset size prunes the tail once the incumbent is provably
optimal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from hopnet.errors import SizeLimitError
from hopnet.graphs import hop_bfs, node_mask, path_to_root
from hopnet.model import Route, make_design


def exact_optimum(instance, limit=20):
    """Minimum-cost design by enumerating sink and relay subsets.

    Returns None when no subset serves every source within the hop bound.
    Raises SizeLimitError when there are more than ``limit`` candidate nodes
    (the search is exponential in the candidate count).
    """
    candidates = sorted(set(instance.relays) | set(instance.sinks))
    if len(candidates) > limit:
        raise SizeLimitError(
            f"{len(candidates)} candidate nodes exceed the exhaustive search limit {limit}"
        )
    g = instance.graph
    n = instance.n
    h = instance.h_max
    sources = instance.sources
    sink_set = set(instance.sinks)
    c_s, c_r = instance.c_s, instance.c_r
    unit = min(c_r, c_s)

    best_cost = None
    best_combo = None
    for k in range(1, len(candidates) + 1):
        # any subset of size k costs at least one sink plus k-1 cheapest nodes
        floor_k = c_s + (k - 1) * unit
        if best_cost is not None and best_cost <= floor_k:
            break
        for combo in itertools.combinations(candidates, k):
            picked_sinks = [x for x in combo if x in sink_set]
            if not picked_sinks:
                continue
            cost = c_s * len(picked_sinks) + c_r * (k - len(picked_sinks))
            if best_cost is not None and cost >= best_cost:
                continue
            mask = node_mask(n, sources, combo)
            dist, _ = hop_bfs(g, picked_sinks, mask)
            if all(0 <= dist[q] <= h for q in sources):
                best_cost = cost
                best_combo = combo

    if best_combo is None:
        return None
    picked_sinks = [x for x in best_combo if x in sink_set]
    picked_relays = [x for x in best_combo if x not in sink_set]
    mask = node_mask(n, sources, best_combo)
    dist, parent = hop_bfs(g, picked_sinks, mask)
    routes = {}
    for q in sources:
        path = tuple(path_to_root(parent, q))
        routes[q] = Route(sink=path[-1], path=path)
    return make_design(instance, picked_sinks, picked_relays, routes)


@dataclass(frozen=True)
class TheoreticalBounds:
    """Worst-case cost ratios versus the optimum, as exact fractions.

    ``universal`` holds for any algorithm that serves each round's cheapest
    per-source sink; ``greedy`` is the tighter bound specific to the greedy
    selection rule.
    """

    universal: Fraction
    greedy: Fraction


def theoretical_bounds(m, m_bar, h_max, c_s, c_r):
    """Closed-form ratio bounds for m sources when no sink covers more than
    m_bar of them.

    Requires m > m_bar >= 1 and c_s >= m_bar * (m_bar + 1) * (h_max - 1) * c_r;
    outside that regime the formulas do not apply and ValueError is raised.
    """
    if not (isinstance(m, int) and isinstance(m_bar, int)):
        raise ValueError("m and m_bar must be integers")
    if not m > m_bar >= 1:
        raise ValueError(f"hypothesis violated: need m > m_bar >= 1, got m={m}, m_bar={m_bar}")
    if h_max < 1:
        raise ValueError("h_max must be a positive integer")
    c_s = Fraction(c_s)
    c_r = Fraction(c_r)
    if c_s < m_bar * (m_bar + 1) * (h_max - 1) * c_r:
        raise ValueError(
            "hypothesis violated: need c_s >= m_bar*(m_bar+1)*(h_max-1)*c_r, "
            f"got c_s={c_s}, c_r={c_r}"
        )
    slack = Fraction(1, m_bar * (m_bar + 1))
    universal = m * (1 + slack)
    q = Fraction(m, m_bar + 1)
    eps = math.ceil(q) - q
    greedy = max(eps + Fraction(m, m_bar), Fraction(m, 2) * (1 + slack))
    return TheoreticalBounds(universal=universal, greedy=greedy)
