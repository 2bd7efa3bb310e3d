"""Instance generators.

Three standard layouts plus a set-cover reduction family.  Generation is a
pure function of (spec, seed): coordinates come from a SplitMix64 stream in a
fixed draw order (per node: x then y; lattice layouts instead draw a partial
Fisher-Yates sample over the row-major lattice points), so instances are
reproducible across machines and versions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from hopnet.model import Instance, Node, NodeKind, build_geometric
from hopnet.rng import SplitMix64


@dataclass(frozen=True)
class ScenarioSpec:
    """Random-layout parameters: node counts, square side, range, hop bound.

    ``grid`` switches to lattice placement: nodes are sampled without
    replacement from the corner points of a ``grid``-pitch square lattice
    spanning the side.
    """

    sources: int
    relays: int
    sinks: int
    side: float
    r_max: float
    h_max: int
    grid: float | None = None
    c_s: Fraction = Fraction(10)
    c_r: Fraction = Fraction(1)


SETUPS = {
    1: ScenarioSpec(sources=20, relays=30, sinks=10, side=100.0, r_max=20.0, h_max=5),
    2: ScenarioSpec(sources=40, relays=50, sinks=15, side=140.0, r_max=20.0, h_max=5),
    3: ScenarioSpec(sources=30, relays=50, sinks=15, side=140.0, r_max=30.0, h_max=5, grid=10.0),
}


def generate(setup, seed):
    """Build the instance for a setup number (1..3) or a ScenarioSpec."""
    if isinstance(setup, int):
        if setup not in SETUPS:
            raise ValueError(f"unknown setup {setup}; choose one of {sorted(SETUPS)}")
        spec = SETUPS[setup]
    else:
        spec = setup
    rng = SplitMix64(seed)
    total = spec.sources + spec.relays + spec.sinks
    if spec.grid is not None:
        per_axis = int(round(spec.side / spec.grid)) + 1
        lattice = [
            (i * spec.grid, j * spec.grid) for i in range(per_axis) for j in range(per_axis)
        ]
        if total > len(lattice):
            raise ValueError(f"{total} nodes do not fit on a {per_axis}x{per_axis} lattice")
        positions = rng.sample_indices(lattice, total)
    else:
        positions = []
        for _ in range(total):
            x = rng.uniform(spec.side)
            y = rng.uniform(spec.side)
            positions.append((x, y))
    nodes = []
    kinds = (
        [NodeKind.SOURCE] * spec.sources
        + [NodeKind.RELAY] * spec.relays
        + [NodeKind.SINK] * spec.sinks
    )
    for i, (kind, pos) in enumerate(zip(kinds, positions)):
        nodes.append(Node(id=i, kind=kind, pos=pos))
    return build_geometric(nodes, spec.r_max, spec.c_s, spec.c_r, spec.h_max)


def generate_setcover_reduction(subsets, num_elements=None, h_max=2, c_s=Fraction(10)):
    """Encode a set-cover family as a placement instance with free relays.

    Element i becomes source i; subset k becomes sink ``m + k``; each
    (subset, element) incidence gets its own relay chain from the sink to the
    source (one relay when h_max >= 2, a direct edge when h_max == 1), so a
    sink reaches exactly its subset's sources within the hop bound.  With
    c_r = 0 a design's cost is its sink count times c_s, i.e. the cover size.

    Every element must appear in some subset.
    """
    subsets = [frozenset(s) for s in subsets]
    m = num_elements if num_elements is not None else max((max(s) for s in subsets if s), default=-1) + 1
    if m < 1:
        raise ValueError("the element universe is empty")
    covered = set().union(*subsets) if subsets else set()
    for e in range(m):
        if e not in covered:
            raise ValueError(f"element {e} is not covered by any subset")
    for s in subsets:
        for e in s:
            if not (0 <= e < m):
                raise ValueError(f"subset element {e} is outside the universe 0..{m - 1}")
    if h_max < 1:
        raise ValueError("h_max must be a positive integer")

    nodes = [Node(id=i, kind=NodeKind.SOURCE) for i in range(m)]
    for k in range(len(subsets)):
        nodes.append(Node(id=m + k, kind=NodeKind.SINK))
    edges = set()
    next_id = m + len(subsets)
    for k, subset in enumerate(subsets):
        sink = m + k
        for e in sorted(subset):
            if h_max == 1:
                edges.add((e, sink))
            else:
                relay = next_id
                next_id += 1
                nodes.append(Node(id=relay, kind=NodeKind.RELAY))
                edges.add((sink, relay))
                edges.add((relay, e))
    return Instance(
        nodes=tuple(nodes),
        edges=frozenset(edges),
        c_s=Fraction(c_s),
        c_r=Fraction(0),
        h_max=h_max,
        r_max=None,
    )
