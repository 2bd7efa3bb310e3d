"""Shared builders for hand-made and randomized test instances."""

from __future__ import annotations

import math

from hopnet.model import Instance, Node, NodeKind, build_geometric
from hopnet.rng import SplitMix64
from hopnet.scenarios import ScenarioSpec, generate

KIND_CODE = {"q": NodeKind.SOURCE, "r": NodeKind.RELAY, "b": NodeKind.SINK}


def mk(kinds, edges, c_s=10, c_r=1, h_max=3):
    """Explicit-edge instance from a kind string: q=source, r=relay, b=sink."""
    nodes = tuple(Node(id=i, kind=KIND_CODE[c]) for i, c in enumerate(kinds))
    return Instance(nodes=nodes, edges=frozenset(edges), c_s=c_s, c_r=c_r, h_max=h_max)


def chain4(h_max=3):
    """source - relay - relay - sink."""
    return mk("qrrb", [(0, 1), (1, 2), (2, 3)], h_max=h_max)


def star5():
    """Four sources around one sink, all adjacent."""
    return mk("qqqqb", [(0, 4), (1, 4), (2, 4), (3, 4)], h_max=2)


def tiny_spec(seed):
    """Shapes for small randomized instances: <=4 sources, <=6 relays, <=3 sinks."""
    rng = SplitMix64(seed * 2654435761 + 17)
    return ScenarioSpec(
        sources=1 + rng.randrange(4),
        relays=rng.randrange(7),
        sinks=1 + rng.randrange(3),
        side=24.0 + rng.uniform(22.0),
        r_max=14.0,
        h_max=2 + rng.randrange(3),
    )


def random_tiny(seed):
    return generate(tiny_spec(seed), seed)


def ring_layout(rng, count, center, lo, hi):
    """Points at uniform angles and radii in [lo, hi) around a center."""
    points = []
    for _ in range(count):
        angle = rng.uniform(2 * math.pi)
        radius = lo + rng.uniform(hi - lo)
        points.append((center[0] + radius * math.cos(angle), center[1] + radius * math.sin(angle)))
    return points


def covered_disc_instance(seed):
    """Random geometric instance where sink 0's 1-hop disc holds every source.

    Sink index comes first in the sink block; by construction every source is
    within r_max of it, so one sink alone serves everything with no relays.
    """
    rng = SplitMix64(seed)
    r_max = 20.0
    center = (50.0, 50.0)
    nodes = []
    idx = 0
    for pos in ring_layout(rng, 6, center, 0.0, r_max * 0.95):
        nodes.append(Node(id=idx, kind=NodeKind.SOURCE, pos=pos))
        idx += 1
    for _ in range(8):
        nodes.append(Node(id=idx, kind=NodeKind.RELAY, pos=(rng.uniform(100.0), rng.uniform(100.0))))
        idx += 1
    nodes.append(Node(id=idx, kind=NodeKind.SINK, pos=center))
    idx += 1
    for _ in range(3):
        nodes.append(Node(id=idx, kind=NodeKind.SINK, pos=(rng.uniform(100.0), rng.uniform(100.0))))
        idx += 1
    return build_geometric(nodes, r_max, 10, 1, 5)


def random_family(seed, max_elements=8, max_subsets=6):
    """Random covering set family; every element appears in some subset."""
    rng = SplitMix64(seed * 7919 + 3)
    m = 3 + rng.randrange(max_elements - 2)
    count = 2 + rng.randrange(max_subsets - 1)
    subsets = []
    for _ in range(count):
        size = 1 + rng.randrange(m)
        subsets.append(frozenset(rng.sample_indices(list(range(m)), size)))
    covered = set().union(*subsets)
    for e in range(m):
        if e not in covered:
            k = rng.randrange(count)
            subsets[k] = subsets[k] | {e}
    return [frozenset(s) for s in subsets], m
