"""Lower bounds from a node-cut linear relaxation.

The instance is augmented with a virtual super-sink adjacent to every
potential sink, so "source reaches some selected sink" becomes "source
reaches the super-sink through selected nodes".  The relaxation has, per
source k, node usage variables y[j,k] plus global selection variables y[j]
for the purchasable nodes (relays and sinks), with

    - every k-to-supersink node cut gets total y[.,k] weight at least 1,
    - sum_j y[j,k] <= h_max   (a route may use at most h_max intermediates),
    - y[j,k] <= y[j]          (usage only on selected nodes),

all variables in [0, 1], minimizing the selection cost.  Cut constraints are
generated lazily: a minimum-weight vertex cut (node-splitting max-flow) per
source finds a violated inequality or proves none exists.  Each LP value
along the way is a valid lower bound on the optimal design cost; the loop
stops when no cut is violated or after max_rounds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from hopnet.errors import InfeasibleInstanceError, LpSolveError
from hopnet.graphs import Graph, hop_bfs, node_mask
from hopnet.greedy import check_feasibility

_EPS = 1e-12


@dataclass(frozen=True)
class AugmentedGraph:
    """Base instance plus a virtual super-sink wired to every potential sink."""

    base: object
    virtual_sink: int
    edges: frozenset[tuple[int, int]]
    graph: Graph
    pool: tuple[int, ...]  # purchasable nodes: relays and sinks
    costs: dict[int, Fraction]

    @property
    def edge_budget(self):
        """Max edges on a source-to-supersink route: h_max intermediates."""
        return self.base.h_max + 1


def augment(instance):
    b0 = instance.n
    edges = set(instance.edges)
    for b in instance.sinks:
        edges.add((b, b0))
    pool = tuple(sorted(set(instance.relays) | set(instance.sinks)))
    costs = {r: instance.c_r for r in instance.relays}
    costs.update({b: instance.c_s for b in instance.sinks})
    return AugmentedGraph(
        base=instance,
        virtual_sink=b0,
        edges=frozenset(edges),
        graph=Graph(instance.n + 1, edges),
        pool=pool,
        costs=costs,
    )


@dataclass(frozen=True)
class CutConstraint:
    """Node set whose removal separates ``source`` from the super-sink."""

    source: int
    cut: frozenset[int]


def is_node_cut(aug, source, cut):
    """Check by BFS that deleting ``cut`` disconnects source from the super-sink."""
    b0 = aug.virtual_sink
    if source in cut or b0 in cut:
        return False
    n = aug.graph.n
    allowed = bytearray(b"\x01" * n)
    for j in cut:
        allowed[j] = 0
    dist, _ = hop_bfs(aug.graph, [source], allowed)
    return dist[b0] < 0


class _MaxFlow:
    """Dinic's algorithm with float capacities and deterministic edge order."""

    def __init__(self, n):
        self.n = n
        self.head = [[] for _ in range(n)]
        self.to = []
        self.cap = []

    def add(self, u, v, cap):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0.0)

    def _levels(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if level[v] < 0 and self.cap[e] > _EPS:
                    level[v] = level[u] + 1
                    queue.append(v)
        self.level = level
        return level[t] >= 0

    def _push(self, u, t, limit, it):
        if u == t:
            return limit
        while it[u] < len(self.head[u]):
            e = self.head[u][it[u]]
            v = self.to[e]
            if self.cap[e] > _EPS and self.level[v] == self.level[u] + 1:
                pushed = self._push(v, t, min(limit, self.cap[e]), it)
                if pushed > _EPS:
                    self.cap[e] -= pushed
                    self.cap[e ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0.0

    def max_flow(self, s, t):
        flow = 0.0
        while self._levels(s, t):
            it = [0] * self.n
            while True:
                pushed = self._push(s, t, float("inf"), it)
                if pushed <= _EPS:
                    break
                flow += pushed
        return flow

    def residual_side(self, s):
        seen = [False] * self.n
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if not seen[v] and self.cap[e] > _EPS:
                    seen[v] = True
                    queue.append(v)
        return seen


def min_vertex_cut(aug, source, weights):
    """Minimum-weight set of nodes separating ``source`` from the super-sink.

    ``weights`` maps node id to a nonnegative weight (missing ids weigh 0);
    the source and the super-sink are not removable.  Returns
    ``(weight, cut)``.  Standard node-splitting: each removable node becomes
    an arc of its weight, undirected edges become a pair of effectively
    uncapacitated arcs, and the saturated node arcs on the residual source
    side form the cut.
    """
    b0 = aug.virtual_sink
    n = aug.graph.n
    w = [0.0] * n
    for j in range(n):
        if j != source and j != b0:
            w[j] = max(float(weights.get(j, 0.0)), 0.0)
    inf = 1.0 + sum(w)
    net = _MaxFlow(2 * n)
    for j in range(n):
        cap = inf if j in (source, b0) else w[j]
        net.add(2 * j, 2 * j + 1, cap)
    for u, v in sorted(aug.edges):
        net.add(2 * u + 1, 2 * v, inf)
        net.add(2 * v + 1, 2 * u, inf)
    flow = net.max_flow(2 * source + 1, 2 * b0)
    side = net.residual_side(2 * source + 1)
    cut = frozenset(
        j for j in range(n) if j != source and j != b0 and side[2 * j] and not side[2 * j + 1]
    )
    return flow, cut


def separate(aug, source, weights, tolerance=1e-6):
    """Most violated cut inequality for ``source``, or None when all hold."""
    weight, cut = min_vertex_cut(aug, source, weights)
    if weight < 1.0 - tolerance:
        return CutConstraint(source=source, cut=cut)
    return None


@dataclass(frozen=True)
class LpCertificate:
    """Solved relaxation: the bound, the generated cut pool, and the point."""

    bound: float
    rounds: int
    constraints: tuple[CutConstraint, ...]
    y_nodes: dict[int, float]
    y_assignments: dict[tuple[int, int], float]
    bound_history: tuple[float, ...]
    tolerance: float
    early_stopped: bool


def lp_lower_bound(instance, tolerance=1e-6, max_rounds=200):
    """Cut-generation lower bound on the optimal design cost.

    Raises InfeasibleInstanceError before solving when some source cannot be
    served at all, and LpSolveError if the solver fails mid-loop.  When the
    round limit stops generation early the certificate is flagged but its
    bound is still valid.
    """
    report = check_feasibility(instance)
    if not report.feasible:
        raise InfeasibleInstanceError(report.witness)

    aug = augment(instance)
    n = instance.n
    sources = instance.sources

    col = {}
    for k in sources:
        for j in range(n):
            if j != k:
                col[(k, j)] = len(col)
    node_col = {}
    for j in aug.pool:
        node_col[j] = len(col) + len(node_col)
    ncols = len(col) + len(node_col)

    c = np.zeros(ncols)
    for j in aug.pool:
        c[node_col[j]] = float(aug.costs[j])

    rows = []

    def append_row(cols, vals, rhs):
        rows.append((cols, vals, rhs))

    for k in sources:
        append_row([col[(k, j)] for j in range(n) if j != k], None, float(instance.h_max))
    for k in sources:
        for j in aug.pool:
            append_row([col[(k, j)], node_col[j]], [1.0, -1.0], 0.0)

    constraints = []
    seen_cuts = set()

    def add_cut(k, cut):
        key = (k, tuple(sorted(cut)))
        if key in seen_cuts:
            return False
        if not is_node_cut(aug, k, cut):
            raise LpSolveError(len(history) + 1, f"separation produced a non-cut for source {k}")
        seen_cuts.add(key)
        constraints.append(CutConstraint(source=k, cut=frozenset(cut)))
        append_row([col[(k, j)] for j in sorted(cut)], [-1.0] * len(cut), -1.0)
        return True

    for k in sources:
        add_cut(k, frozenset(instance.sinks))

    history = []
    x = None
    early_stopped = True
    for _ in range(max_rounds):
        data, ri, ci, rhs = [], [], [], []
        for r, (cols, vals, b) in enumerate(rows):
            for idx, cc in enumerate(cols):
                data.append(1.0 if vals is None else vals[idx])
                ri.append(r)
                ci.append(cc)
            rhs.append(b)
        a_ub = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), ncols))
        res = linprog(c, A_ub=a_ub, b_ub=rhs, bounds=(0.0, 1.0), method="highs")
        if res.status != 0:
            raise LpSolveError(len(history) + 1, res.message)
        history.append(float(res.fun))
        x = res.x
        added = 0
        for k in sources:
            weights = {j: float(x[col[(k, j)]]) for j in range(n) if j != k}
            found = separate(aug, k, weights, tolerance)
            if found is not None and add_cut(k, found.cut):
                added += 1
        if added == 0:
            early_stopped = False
            break

    return LpCertificate(
        bound=history[-1],
        rounds=len(history),
        constraints=tuple(constraints),
        y_nodes={j: float(x[node_col[j]]) for j in aug.pool},
        y_assignments={(k, j): float(x[col[(k, j)]]) for k in sources for j in range(n) if j != k},
        bound_history=tuple(history),
        tolerance=tolerance,
        early_stopped=early_stopped,
    )


def certificate_to_dict(cert):
    return {
        "bound": cert.bound,
        "rounds": cert.rounds,
        "constraints": [
            {"source": con.source, "cut": sorted(con.cut)} for con in cert.constraints
        ],
        "early_stopped": cert.early_stopped,
    }
