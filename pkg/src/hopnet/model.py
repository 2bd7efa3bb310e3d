"""Problem model: instances, designs, validation, and JSON serialization.

An Instance fixes the node universe (sources that must be served, potential
relay locations, potential sink locations), the usable edges, exact rational
costs, and the hop bound.  A Design selects sinks and relays and routes every
source to a selected sink.  Hop counts are edge counts.

Costs are Fractions end to end so cost comparisons and recomputation are
exact.  JSON emission is canonical (fixed key order, id-sorted arrays, two
space indent, trailing newline), which makes identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from hopnet.errors import SchemaError
from hopnet.graphs import Graph, hop_bfs, node_mask


class NodeKind(enum.Enum):
    SOURCE = "source"
    RELAY = "relay"
    SINK = "sink"


@dataclass(frozen=True)
class Node:
    """A network location.  ``pos`` is (x, y) or None for explicit-edge instances."""

    id: int
    kind: NodeKind
    pos: tuple[float, float] | None = None


class Route(NamedTuple):
    """Path from a source to its serving sink, endpoints included."""

    sink: int
    path: tuple[int, ...]

    @property
    def hops(self):
        return len(self.path) - 1


def as_cost(value):
    """Coerce a JSON-ish number to an exact Fraction.

    Floats go through their decimal literal so e.g. 0.3 means 3/10.
    """
    if isinstance(value, bool):
        raise ValueError("cost must be a number")
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class Instance:
    """Immutable problem instance over dense node ids 0..n-1."""

    nodes: tuple[Node, ...]
    edges: frozenset[tuple[int, int]]
    c_s: Fraction
    c_r: Fraction
    h_max: int
    r_max: float | None = None

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda nd: nd.id))
        object.__setattr__(self, "nodes", nodes)
        ids = [nd.id for nd in nodes]
        seen = set()
        for i in ids:
            if i in seen:
                raise ValueError(f"duplicate node id {i}")
            seen.add(i)
        n = len(nodes)
        if n == 0:
            raise ValueError("instance has no nodes")
        if ids != list(range(n)):
            missing = next(i for i in range(n) if i not in seen)
            raise ValueError(f"node ids must be dense from 0; id {missing} is missing")
        with_pos = sum(1 for nd in nodes if nd.pos is not None)
        if with_pos not in (0, n):
            raise ValueError("positions must be present for all nodes or none")
        object.__setattr__(self, "c_s", as_cost(self.c_s))
        object.__setattr__(self, "c_r", as_cost(self.c_r))
        if self.c_s <= 0:
            raise ValueError("sink cost must be positive")
        if self.c_r < 0:
            raise ValueError("relay cost must be nonnegative")
        if not isinstance(self.h_max, int) or self.h_max < 1:
            raise ValueError("h_max must be a positive integer")
        if self.r_max is not None and not self.r_max > 0:
            raise ValueError("r_max must be positive")

        kinds = tuple(nd.kind for nd in nodes)
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references an unknown node")
            if kinds[u] is NodeKind.SINK and kinds[v] is NodeKind.SINK:
                raise ValueError(f"edge ({u}, {v}) joins two potential sinks")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))

        if not any(k is NodeKind.SOURCE for k in kinds):
            raise ValueError("instance has no sources")
        if not any(k is NodeKind.SINK for k in kinds):
            raise ValueError("instance has no potential sinks")
        if self.is_geometric:
            rr = self.r_max * self.r_max
            for u, v in sorted(norm):
                dx = nodes[u].pos[0] - nodes[v].pos[0]
                dy = nodes[u].pos[1] - nodes[v].pos[1]
                if dx * dx + dy * dy > rr:
                    raise ValueError(f"edge ({u}, {v}) is longer than r_max")

    @property
    def n(self):
        return len(self.nodes)

    @property
    def is_geometric(self):
        return self.r_max is not None and self.nodes[0].pos is not None

    @cached_property
    def kinds(self):
        return tuple(nd.kind for nd in self.nodes)

    @cached_property
    def sources(self):
        return tuple(nd.id for nd in self.nodes if nd.kind is NodeKind.SOURCE)

    @cached_property
    def relays(self):
        return tuple(nd.id for nd in self.nodes if nd.kind is NodeKind.RELAY)

    @cached_property
    def sinks(self):
        return tuple(nd.id for nd in self.nodes if nd.kind is NodeKind.SINK)

    @cached_property
    def graph(self):
        return Graph(self.n, self.edges)

    def kind_of(self, node_id):
        return self.kinds[node_id]


@dataclass(frozen=True)
class Design:
    """Selected sinks and relays plus one route per source."""

    sinks: frozenset[int]
    relays: frozenset[int]
    routes: dict[int, Route]
    cost: Fraction

    def __post_init__(self):
        object.__setattr__(self, "sinks", frozenset(self.sinks))
        object.__setattr__(self, "relays", frozenset(self.relays))
        object.__setattr__(self, "cost", as_cost(self.cost))


def design_cost(instance, sinks, relays):
    return instance.c_s * len(set(sinks)) + instance.c_r * len(set(relays))


def make_design(instance, sinks, relays, routes):
    """Build a Design with the cost recomputed from the selection."""
    return Design(
        sinks=frozenset(sinks),
        relays=frozenset(relays),
        routes=dict(routes),
        cost=design_cost(instance, sinks, relays),
    )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = field(default=())


def build_geometric(nodes, r_max, c_s, c_r, h_max):
    """Instance over positioned nodes: edges join pairs within range r_max.

    Sink-to-sink pairs are excluded (a route never hops between sinks).
    Duplicate ids and missing positions are rejected up front.
    """
    if not r_max > 0:
        raise ValueError("r_max must be positive")
    seen = set()
    for nd in nodes:
        if nd.id in seen:
            raise ValueError(f"duplicate node id {nd.id}")
        seen.add(nd.id)
        if nd.pos is None:
            raise ValueError(f"node {nd.id} has no position")
    ordered = sorted(nodes, key=lambda nd: nd.id)
    rr = r_max * r_max
    edges = set()
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            if a.kind is NodeKind.SINK and b.kind is NodeKind.SINK:
                continue
            dx = a.pos[0] - b.pos[0]
            dy = a.pos[1] - b.pos[1]
            if dx * dx + dy * dy <= rr:
                edges.add((a.id, b.id))
    return Instance(
        nodes=tuple(ordered),
        edges=frozenset(edges),
        c_s=as_cost(c_s),
        c_r=as_cost(c_r),
        h_max=h_max,
        r_max=float(r_max),
    )


def hop_distances(instance, root, allowed):
    """Hop count from ``root`` to every allowed node; None marks unreachable.

    ``allowed`` is the set of usable node ids and must contain the root.
    Parents inside the underlying search are deterministic (smallest id on
    the previous level), so derived shortest-path trees are reproducible.
    """
    allowed = set(allowed)
    for i in allowed:
        if not (0 <= i < instance.n):
            raise ValueError(f"allowed set references unknown node {i}")
    if root not in allowed:
        raise ValueError(f"root {root} is not in the allowed set")
    mask = node_mask(instance.n, allowed)
    dist, _ = hop_bfs(instance.graph, [root], mask)
    return {i: (dist[i] if dist[i] >= 0 else None) for i in sorted(allowed)}


def validate(instance, design):
    """Check a design against an instance; every violation names the ids involved."""
    v = []
    kinds = instance.kinds
    n = instance.n

    def known(i):
        return isinstance(i, int) and 0 <= i < n

    for b in sorted(design.sinks):
        if not known(b) or kinds[b] is not NodeKind.SINK:
            v.append(f"selected sink {b} is not a potential sink")
    for r in sorted(design.relays):
        if not known(r) or kinds[r] is not NodeKind.RELAY:
            v.append(f"selected relay {r} is not a potential relay")

    sources = set(instance.sources)
    for q in sorted(sources):
        if q not in design.routes:
            v.append(f"source {q} has no route")
    for q in sorted(design.routes):
        if q not in sources:
            v.append(f"route given for non-source node {q}")

    edges = instance.edges
    for q in sorted(design.routes):
        if q not in sources:
            continue
        route = design.routes[q]
        path = route.path
        if len(path) == 0:
            v.append(f"route for source {q}: empty path")
            continue
        if any(not known(x) for x in path):
            bad = next(x for x in path if not known(x))
            v.append(f"route for source {q}: unknown node id {bad}")
            continue
        if path[0] != q:
            v.append(f"route for source {q}: path does not start at the source")
        if path[-1] != route.sink:
            v.append(f"route for source {q}: path does not end at its sink")
        if route.sink not in design.sinks or not known(route.sink) or kinds[route.sink] is not NodeKind.SINK:
            v.append(f"route for source {q}: ends at unselected sink {route.sink}")
        hops = len(path) - 1
        if hops > instance.h_max:
            v.append(f"route for source {q}: hop bound exceeded ({hops} > {instance.h_max})")
        for a, b in zip(path, path[1:]):
            key = (a, b) if a < b else (b, a)
            if key not in edges:
                v.append(f"route for source {q}: uses missing edge ({a}, {b})")
        for x in path[1:-1]:
            if kinds[x] is NodeKind.SINK:
                v.append(f"route for source {q}: sink location {x} used in path interior")
            elif kinds[x] is NodeKind.RELAY and x not in design.relays:
                v.append(f"route for source {q}: unselected interior node {x}")

    expected = design_cost(instance, design.sinks, design.relays)
    if design.cost != expected:
        v.append(f"cost mismatch: stated {design.cost}, expected {expected}")
    return ValidationReport(ok=not v, violations=tuple(v))


# --- JSON serialization ----------------------------------------------------

_KIND_TO_JSON = {NodeKind.SOURCE: "source", NodeKind.RELAY: "relay", NodeKind.SINK: "sink"}
_JSON_TO_KIND = {s: k for k, s in _KIND_TO_JSON.items()}


def _num(value):
    """Fraction -> JSON number: int when integral, float otherwise."""
    f = Fraction(value)
    return int(f) if f.denominator == 1 else float(f)


def _check_number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, "expected a number")
    return value


def _check_int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "expected an integer")
    return value


def instance_to_dict(instance):
    nodes = []
    for nd in instance.nodes:
        entry = {"id": nd.id, "kind": _KIND_TO_JSON[nd.kind]}
        if nd.pos is not None:
            entry["x"] = float(nd.pos[0])
            entry["y"] = float(nd.pos[1])
        nodes.append(entry)
    doc = {
        "nodes": nodes,
        "edges": [list(e) for e in sorted(instance.edges)],
        "c_s": _num(instance.c_s),
        "c_r": _num(instance.c_r),
        "h_max": instance.h_max,
    }
    if instance.r_max is not None:
        doc["r_max"] = float(instance.r_max)
    return doc


def instance_from_dict(doc):
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    for key in ("nodes", "edges", "c_s", "c_r", "h_max"):
        if key not in doc:
            raise SchemaError(key, "missing required field")
    if not isinstance(doc["nodes"], list):
        raise SchemaError("nodes", "expected an array")
    nodes = []
    for i, entry in enumerate(doc["nodes"]):
        if not isinstance(entry, dict):
            raise SchemaError(f"nodes[{i}]", "expected an object")
        node_id = _check_int(entry.get("id"), f"nodes[{i}].id")
        kind = entry.get("kind")
        if kind not in _JSON_TO_KIND:
            raise SchemaError(f"nodes[{i}].kind", "expected one of source|relay|sink")
        has_x, has_y = "x" in entry, "y" in entry
        if has_x != has_y:
            raise SchemaError(f"nodes[{i}]", "x and y must be given together")
        pos = None
        if has_x:
            pos = (
                float(_check_number(entry["x"], f"nodes[{i}].x")),
                float(_check_number(entry["y"], f"nodes[{i}].y")),
            )
        nodes.append(Node(id=node_id, kind=_JSON_TO_KIND[kind], pos=pos))
    if not isinstance(doc["edges"], list):
        raise SchemaError("edges", "expected an array")
    edges = set()
    for i, pair in enumerate(doc["edges"]):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"edges[{i}]", "expected a pair of node ids")
        u = _check_int(pair[0], f"edges[{i}][0]")
        v = _check_int(pair[1], f"edges[{i}][1]")
        edges.add((u, v))
    try:
        c_s = as_cost(_check_number(doc["c_s"], "c_s"))
        c_r = as_cost(_check_number(doc["c_r"], "c_r"))
    except ValueError as exc:
        raise SchemaError("c_s", str(exc)) from exc
    h_max = _check_int(doc["h_max"], "h_max")
    r_max = None
    if "r_max" in doc and doc["r_max"] is not None:
        r_max = float(_check_number(doc["r_max"], "r_max"))
    return Instance(nodes=tuple(nodes), edges=frozenset(edges), c_s=c_s, c_r=c_r, h_max=h_max, r_max=r_max)


def design_to_dict(design):
    return {
        "sinks": sorted(design.sinks),
        "relays": sorted(design.relays),
        "routes": [
            {"source": q, "sink": design.routes[q].sink, "path": list(design.routes[q].path)}
            for q in sorted(design.routes)
        ],
        "cost": _num(design.cost),
    }


def design_from_dict(doc):
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    for key in ("sinks", "relays", "routes", "cost"):
        if key not in doc:
            raise SchemaError(key, "missing required field")
    for key in ("sinks", "relays"):
        if not isinstance(doc[key], list):
            raise SchemaError(key, "expected an array")
    sinks = frozenset(_check_int(x, f"sinks[{i}]") for i, x in enumerate(doc["sinks"]))
    relays = frozenset(_check_int(x, f"relays[{i}]") for i, x in enumerate(doc["relays"]))
    if not isinstance(doc["routes"], list):
        raise SchemaError("routes", "expected an array")
    routes = {}
    for i, entry in enumerate(doc["routes"]):
        if not isinstance(entry, dict):
            raise SchemaError(f"routes[{i}]", "expected an object")
        for key in ("source", "sink", "path"):
            if key not in entry:
                raise SchemaError(f"routes[{i}].{key}", "missing required field")
        source = _check_int(entry["source"], f"routes[{i}].source")
        sink = _check_int(entry["sink"], f"routes[{i}].sink")
        if not isinstance(entry["path"], list):
            raise SchemaError(f"routes[{i}].path", "expected an array")
        path = tuple(_check_int(x, f"routes[{i}].path[{j}]") for j, x in enumerate(entry["path"]))
        if source in routes:
            raise SchemaError(f"routes[{i}].source", f"duplicate route for source {source}")
        routes[source] = Route(sink=sink, path=path)
    try:
        cost = as_cost(_check_number(doc["cost"], "cost"))
    except ValueError as exc:
        raise SchemaError("cost", str(exc)) from exc
    return Design(sinks=sinks, relays=relays, routes=routes, cost=cost)


def dumps(doc):
    """Canonical JSON text: 2-space indent, preserved key order, newline at EOF."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def read_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return instance_from_dict(doc)


def write_instance(instance, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(instance_to_dict(instance)))


def read_design(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return design_from_dict(doc)


def write_design(design, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(design_to_dict(design)))
