"""Greedy sink and relay selection.

The solver picks sinks one at a time.  Each candidate sink is scored by the
cost of serving its still-uncovered sources, relays included, divided by how
many sources that covers; the cheapest per-source candidate wins.  Relays
bought in earlier rounds are free for later ones, which is what makes shared
relay trees attractive to the greedy.

Sink locations are never path interiors.  Sources are always usable as
interiors, covered or not.  A relay can appear in a path interior only when
it is selected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from hopnet.errors import InfeasibleInstanceError
from hopnet.graphs import hop_bfs, node_mask, path_to_root
from hopnet.model import Route, make_design


@dataclass(frozen=True)
class FeasibilityReport:
    """Best hop count per source over all potential sinks with every relay usable.

    ``witness`` is the smallest-id source out of reach when infeasible.
    """

    feasible: bool
    best_hops: dict[int, int | None]
    witness: int | None = None


@dataclass(frozen=True)
class SinkEvaluation:
    """Outcome of serving a target set from one sink.

    ``relays`` is the pruned relay selection, ``covered`` the targets actually
    reachable within the hop bound, ``excluded`` the ones that were not.
    ``per_source_cost`` charges the sink plus the positive-cost relays, spread
    over the covered targets.
    """

    sink: int
    relays: frozenset[int]
    covered: frozenset[int]
    per_source_cost: Fraction
    routes: dict[int, Route]
    excluded: frozenset[int] = frozenset()


@dataclass(frozen=True)
class PickRecord:
    """One greedy round: the chosen sink and what it bought."""

    sink: int
    relays: frozenset[int]
    covered: frozenset[int]
    per_source_cost: Fraction


@dataclass
class CoverState:
    """Trace of a greedy run, kept for diagnostics and for the repair phase."""

    sink_pool: tuple[int, ...]
    covers: dict[int, frozenset[int]] = field(default_factory=dict)
    candidate_relays: dict[int, frozenset[int]] = field(default_factory=dict)
    picked: list[PickRecord] = field(default_factory=list)
    covered: set[int] = field(default_factory=set)
    zero_cost_relays: set[int] = field(default_factory=set)
    via_single_sink: bool = False

    @property
    def iterations(self):
        return len(self.picked)


@dataclass(frozen=True)
class GreedyResult:
    design: object
    state: CoverState


def _resolve_pool(instance, sink_pool):
    if sink_pool is None:
        return tuple(instance.sinks)
    pool = sorted(set(sink_pool))
    sink_set = set(instance.sinks)
    for b in pool:
        if b not in sink_set:
            raise ValueError(f"node {b} is not a potential sink")
    return tuple(pool)


def single_sink_no_relay(instance, sink_pool=None):
    """Cheapest possible design: one sink, zero relays, if any sink suffices.

    Checks each candidate sink over the sources-plus-that-sink restriction and
    returns the qualifying design with the lowest sink id, or None.
    """
    pool = _resolve_pool(instance, sink_pool)
    g = instance.graph
    sources = instance.sources
    h = instance.h_max
    for b in pool:
        mask = node_mask(instance.n, sources, (b,))
        dist, parent = hop_bfs(g, [b], mask)
        if all(0 <= dist[q] <= h for q in sources):
            routes = {q: Route(sink=b, path=tuple(path_to_root(parent, q))) for q in sources}
            return make_design(instance, [b], [], routes)
    return None


def check_feasibility(instance, sink_pool=None):
    """Whether every source can reach some potential sink within h_max hops.

    Uses every potential relay; one search per candidate sink because sinks
    cannot serve as interiors for each other.
    """
    pool = _resolve_pool(instance, sink_pool)
    g = instance.graph
    sources = instance.sources
    relays = instance.relays
    best = {q: None for q in sources}
    for b in pool:
        mask = node_mask(instance.n, sources, relays, (b,))
        dist, _ = hop_bfs(g, [b], mask)
        for q in sources:
            if dist[q] >= 0 and (best[q] is None or dist[q] < best[q]):
                best[q] = dist[q]
    witness = None
    for q in sources:
        if best[q] is None or best[q] > instance.h_max:
            witness = q
            break
    return FeasibilityReport(feasible=witness is None, best_hops=best, witness=witness)


def compute_covers(instance, sink_pool=None):
    """Per-sink cover sets: sources within h_max hops, relays within h_max - 1.

    Raises InfeasibleInstanceError when the source covers do not union to all
    sources.
    """
    pool = _resolve_pool(instance, sink_pool)
    g = instance.graph
    sources = instance.sources
    relays = instance.relays
    h = instance.h_max
    source_covers = {}
    relay_covers = {}
    covered_union = set()
    for b in pool:
        mask = node_mask(instance.n, sources, relays, (b,))
        dist, _ = hop_bfs(g, [b], mask)
        source_covers[b] = frozenset(q for q in sources if 0 <= dist[q] <= h)
        relay_covers[b] = frozenset(r for r in relays if 0 <= dist[r] <= h - 1)
        covered_union |= source_covers[b]
    for q in sources:
        if q not in covered_union:
            raise InfeasibleInstanceError(q)
    return source_covers, relay_covers


def minimize_relays(instance, sink, targets, candidates, zero_cost_relays=frozenset()):
    """Serve ``targets`` from ``sink`` using few positive-cost relays.

    Builds the shortest-path tree over sources plus ``candidates``, keeps the
    relays it uses, then greedily drops positive-cost relays (descending id;
    relay costs are uniform) whenever every reachable target still makes the
    hop bound without them.  Targets out of reach within the bound are
    excluded and reported on the evaluation.

    Returns None when no target is reachable.  Raises ValueError on an empty
    target set.
    """
    targets = frozenset(targets)
    if not targets:
        raise ValueError("empty target set")
    g = instance.graph
    n = instance.n
    h = instance.h_max
    sources = instance.sources
    candidates = frozenset(candidates)

    mask = node_mask(n, sources, candidates, (sink,))
    dist, parent = hop_bfs(g, [sink], mask)
    reachable = [t for t in sorted(targets) if 0 <= dist[t] <= h]
    excluded = targets - set(reachable)
    if not reachable:
        return None

    relay_kind = set(instance.relays)
    selected = set()
    for t in reachable:
        for v in path_to_root(parent, t):
            if v in relay_kind:
                selected.add(v)

    # prune: a relay stays only if dropping it pushes some target past h_max
    mask = node_mask(n, sources, selected, (sink,))
    changed = True
    while changed:
        changed = False
        for r in sorted(selected - zero_cost_relays, reverse=True):
            mask[r] = 0
            trial, _ = hop_bfs(g, [sink], mask)
            if all(0 <= trial[t] <= h for t in reachable):
                selected.discard(r)
                changed = True
            else:
                mask[r] = 1

    dist, parent = hop_bfs(g, [sink], mask)
    routes = {t: Route(sink=sink, path=tuple(path_to_root(parent, t))) for t in reachable}
    positive = len(selected - zero_cost_relays)
    cost = Fraction(instance.c_s + instance.c_r * positive, len(reachable))
    return SinkEvaluation(
        sink=sink,
        relays=frozenset(selected),
        covered=frozenset(reachable),
        per_source_cost=cost,
        routes=routes,
        excluded=frozenset(excluded),
    )


def smart_select(instance, sink_pool=None):
    """Greedy design construction.

    Shortcut: if one sink alone covers every source with no relays, take the
    lowest-id such sink and stop.  Otherwise pick, round by round, the sink
    whose evaluation has the lowest per-source cost (ties: more sources
    covered, then lower sink id) until every source is covered.  Relays bought
    in earlier rounds count as zero-cost in later evaluations.

    Returns a GreedyResult carrying the design and the round-by-round trace.
    Raises InfeasibleInstanceError (with a witness source) when some source
    cannot be served at all.
    """
    pool = _resolve_pool(instance, sink_pool)
    state = CoverState(sink_pool=pool)

    shortcut = single_sink_no_relay(instance, pool)
    if shortcut is not None:
        state.via_single_sink = True
        state.covered = set(instance.sources)
        return GreedyResult(design=shortcut, state=state)

    report = check_feasibility(instance, pool)
    if not report.feasible:
        raise InfeasibleInstanceError(report.witness)

    source_covers, relay_covers = compute_covers(instance, pool)
    state.covers = source_covers
    state.candidate_relays = relay_covers

    sources = set(instance.sources)
    uncovered = {b: set(source_covers[b]) for b in pool}
    remaining = set(pool)
    covered = set()
    zero_cost = set()
    sel_sinks = []
    sel_relays = set()
    routes = {}

    while covered != sources:
        best = None
        best_key = None
        for b in sorted(remaining):
            targets = uncovered[b]
            if not targets:
                continue
            ev = minimize_relays(instance, b, targets, relay_covers[b], frozenset(zero_cost))
            if ev is None or not ev.covered:
                continue
            key = (ev.per_source_cost, -len(ev.covered), b)
            if best_key is None or key < best_key:
                best, best_key = ev, key
        if best is None:
            missing = min(sources - covered)
            raise InfeasibleInstanceError(missing)

        sel_sinks.append(best.sink)
        sel_relays |= best.relays
        zero_cost |= best.relays
        covered |= best.covered
        routes.update(best.routes)
        remaining.discard(best.sink)
        for b in remaining:
            uncovered[b] -= best.covered
        state.picked.append(
            PickRecord(
                sink=best.sink,
                relays=best.relays,
                covered=best.covered,
                per_source_cost=best.per_source_cost,
            )
        )

    state.covered = covered
    state.zero_cost_relays = zero_cost
    design = make_design(instance, sel_sinks, sel_relays, routes)
    return GreedyResult(design=design, state=state)
