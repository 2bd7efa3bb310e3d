"""Destroy-and-repair improvement on top of the greedy solver.

Each sweep walks the incumbent's sinks in ascending id order.  For every sink
it tries two rebuilds with that sink banned: one restricted to the incumbent's
other sinks, one over all other potential sinks (relays unrestricted in both).
A rebuild replaces the incumbent only when strictly cheaper, so the incumbent
cost is monotone and the loop stops after a sweep with no update or after
``max_iterations`` sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from hopnet.errors import InfeasibleInstanceError
from hopnet.greedy import smart_select


@dataclass(frozen=True)
class RepairConfig:
    max_iterations: int = 25
    record_trace: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class RepairStep:
    """One accepted replacement: sink ``removed`` was banned during ``sweep``."""

    sweep: int
    removed: int
    candidate: str  # "restricted" or "global"
    old_cost: Fraction
    new_cost: Fraction


@dataclass(frozen=True)
class RepairResult:
    design: object
    trace: tuple[RepairStep, ...]
    sweeps: int


def destroy_and_repair(instance, initial=None, config=None):
    """Improve ``initial`` (greedy design by default) by sink removal rebuilds.

    Infeasible rebuilds (banning a load-bearing sink) are skipped.  The result
    never costs more than the initial design.
    """
    config = config or RepairConfig()
    if initial is None:
        initial = smart_select(instance).design
    best = initial
    trace = []
    all_sinks = set(instance.sinks)
    sweeps = 0

    for sweep in range(1, config.max_iterations + 1):
        sweeps = sweep
        improved = False
        # the sink list scanned this sweep is frozen at the sweep-start design
        sweep_sinks = sorted(best.sinks)
        for banned in sweep_sinks:
            pools = (
                ("restricted", [b for b in sweep_sinks if b != banned]),
                ("global", sorted(all_sinks - {banned})),
            )
            for label, pool in pools:
                try:
                    candidate = smart_select(instance, sink_pool=pool).design
                except InfeasibleInstanceError:
                    continue
                if candidate.cost < best.cost:
                    if config.record_trace:
                        trace.append(
                            RepairStep(
                                sweep=sweep,
                                removed=banned,
                                candidate=label,
                                old_cost=best.cost,
                                new_cost=candidate.cost,
                            )
                        )
                    best = candidate
                    improved = True
        if not improved:
            break

    return RepairResult(design=best, trace=tuple(trace), sweeps=sweeps)
