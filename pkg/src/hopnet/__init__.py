"""Hop-constrained multi-sink and relay placement toolkit.

Given sources that must report to a sink within a hop budget, potential sink
and relay locations with placement costs, and a feasible-link graph, the
package builds low-cost placements (greedy construction plus a
destroy-and-repair pass), certifies them against an LP lower bound from
generated node cuts, and solves small instances exactly.
"""

from hopnet import _kernels
from hopnet.bench import BenchOptions, BenchReport, BenchRow, emit_report, run_batch
from hopnet.errors import (
    HopnetError,
    InfeasibleInstanceError,
    LpSolveError,
    SchemaError,
    SizeLimitError,
)
from hopnet.exact import TheoreticalBounds, exact_optimum, theoretical_bounds
from hopnet.greedy import (
    CoverState,
    FeasibilityReport,
    GreedyResult,
    SinkEvaluation,
    check_feasibility,
    compute_covers,
    minimize_relays,
    single_sink_no_relay,
    smart_select,
)
from hopnet.lpbound import (
    AugmentedGraph,
    CutConstraint,
    LpCertificate,
    augment,
    lp_lower_bound,
    min_vertex_cut,
    separate,
)
from hopnet.model import (
    Design,
    Instance,
    Node,
    NodeKind,
    Route,
    ValidationReport,
    build_geometric,
    design_from_dict,
    design_to_dict,
    hop_distances,
    instance_from_dict,
    instance_to_dict,
    make_design,
    read_design,
    read_instance,
    validate,
    write_design,
    write_instance,
)
from hopnet.repair import RepairConfig, RepairResult, destroy_and_repair
from hopnet.scenarios import SETUPS, ScenarioSpec, generate, generate_setcover_reduction


def kernel_backend():
    """Which BFS kernel is active: "compiled" or "python"."""
    return _kernels.BACKEND


__all__ = [
    "BenchOptions",
    "BenchReport",
    "BenchRow",
    "emit_report",
    "run_batch",
    "HopnetError",
    "InfeasibleInstanceError",
    "LpSolveError",
    "SchemaError",
    "SizeLimitError",
    "TheoreticalBounds",
    "exact_optimum",
    "theoretical_bounds",
    "CoverState",
    "FeasibilityReport",
    "GreedyResult",
    "SinkEvaluation",
    "check_feasibility",
    "compute_covers",
    "minimize_relays",
    "single_sink_no_relay",
    "smart_select",
    "AugmentedGraph",
    "CutConstraint",
    "LpCertificate",
    "augment",
    "lp_lower_bound",
    "min_vertex_cut",
    "separate",
    "Design",
    "Instance",
    "Node",
    "NodeKind",
    "Route",
    "ValidationReport",
    "build_geometric",
    "design_from_dict",
    "design_to_dict",
    "hop_distances",
    "instance_from_dict",
    "instance_to_dict",
    "make_design",
    "read_design",
    "read_instance",
    "validate",
    "write_design",
    "write_instance",
    "RepairConfig",
    "RepairResult",
    "destroy_and_repair",
    "SETUPS",
    "ScenarioSpec",
    "generate",
    "generate_setcover_reduction",
    "kernel_backend",
]
