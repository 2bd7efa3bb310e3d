"""Benchmark harness: run solvers across seeds and aggregate quality ratios.

Each seed yields one row (costs, LP bound, wall times); aggregates divide the
mean algorithm cost by the mean LP bound (a ratio of means, not a mean of
ratios) and report the worst per-instance ratio plus repair improvement
percentages.  Rows are deterministic, so everything except the timing fields
is reproducible; timings always live under "timing" keys so consumers can
strip them.

Batches run per-seed in worker processes; HOPNET_THREADS caps the worker
count (default: available parallelism).
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from time import perf_counter

from hopnet.errors import SizeLimitError
from hopnet.exact import exact_optimum, theoretical_bounds
from hopnet.greedy import check_feasibility, smart_select
from hopnet.lpbound import lp_lower_bound
from hopnet.model import _num, dumps
from hopnet.repair import RepairConfig, destroy_and_repair
from hopnet.scenarios import SETUPS, generate


@dataclass(frozen=True)
class BenchOptions:
    with_dr: bool = True
    with_lp: bool = False
    with_exact: bool = False
    exact_limit: int = 20
    max_iterations: int = 25
    lp_tolerance: float = 1e-6
    lp_max_rounds: int = 200


@dataclass(frozen=True)
class BenchRow:
    seed: int
    feasible: bool
    ss_cost: Fraction | None = None
    dr_cost: Fraction | None = None
    exact_cost: Fraction | None = None
    lp_bound: float | None = None
    notes: tuple[str, ...] = ()
    error: str | None = None
    timing: dict[str, float] | None = None


@dataclass(frozen=True)
class BenchReport:
    setup: object
    seeds: tuple[int, ...]
    options: BenchOptions
    rows: tuple[BenchRow, ...]
    aggregates: dict


def _compute_row(setup, seed, options):
    timing = {}
    notes = []
    try:
        instance = generate(setup, seed)
        if not check_feasibility(instance).feasible:
            return BenchRow(seed=seed, feasible=False, timing=timing)
        t0 = perf_counter()
        ss = smart_select(instance).design
        timing["ss"] = perf_counter() - t0
        dr_cost = None
        if options.with_dr:
            t0 = perf_counter()
            dr = destroy_and_repair(
                instance, initial=ss, config=RepairConfig(max_iterations=options.max_iterations)
            )
            timing["dr"] = perf_counter() - t0
            dr_cost = dr.design.cost
        lp = None
        if options.with_lp:
            t0 = perf_counter()
            cert = lp_lower_bound(
                instance, tolerance=options.lp_tolerance, max_rounds=options.lp_max_rounds
            )
            timing["lp"] = perf_counter() - t0
            lp = cert.bound
            if cert.early_stopped:
                notes.append("lp stopped at the round limit")
        exact_cost = None
        if options.with_exact:
            try:
                t0 = perf_counter()
                best = exact_optimum(instance, limit=options.exact_limit)
                timing["exact"] = perf_counter() - t0
                exact_cost = best.cost if best is not None else None
            except SizeLimitError:
                notes.append("exact skipped (candidate count over limit)")
        return BenchRow(
            seed=seed,
            feasible=True,
            ss_cost=ss.cost,
            dr_cost=dr_cost,
            exact_cost=exact_cost,
            lp_bound=lp,
            notes=tuple(notes),
            timing=timing,
        )
    except Exception as exc:  # a bad seed must not sink the batch
        return BenchRow(seed=seed, feasible=False, error=f"{type(exc).__name__}: {exc}", timing=timing)


def _worker(args):
    return _compute_row(*args)


def worker_count(n_jobs):
    env = os.environ.get("HOPNET_THREADS", "").strip()
    if env:
        workers = int(env)
        if workers < 1:
            raise ValueError("HOPNET_THREADS must be a positive integer")
    else:
        workers = os.cpu_count() or 1
    return max(1, min(workers, n_jobs))


def run_batch(setup, seeds, options=None, workers=None):
    """Solve every seed of a setup (number or ScenarioSpec) and aggregate."""
    options = options or BenchOptions()
    seeds = tuple(seeds)
    if workers is None:
        workers = worker_count(len(seeds))
    jobs = [(setup, seed, options) for seed in seeds]
    if workers <= 1 or len(seeds) <= 1:
        rows = [_compute_row(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_worker, jobs))
    return BenchReport(
        setup=setup,
        seeds=seeds,
        options=options,
        rows=tuple(rows),
        aggregates=_aggregate(setup, rows, options),
    )


def _mean(values):
    values = list(values)
    return sum(values) / len(values) if values else None


def _aggregate(setup, rows, options):
    ok = [r for r in rows if r.feasible and r.error is None]
    agg = {
        "instances": len(rows),
        "feasible": len(ok),
        "errors": sum(1 for r in rows if r.error is not None),
    }
    mean_ss = _mean(float(r.ss_cost) for r in ok if r.ss_cost is not None)
    mean_dr = _mean(float(r.dr_cost) for r in ok if r.dr_cost is not None)
    agg["mean_cost_ss"] = mean_ss
    agg["mean_cost_dr"] = mean_dr
    agg["mean_cost_exact"] = _mean(float(r.exact_cost) for r in ok if r.exact_cost is not None)

    lp_rows = [r for r in ok if r.lp_bound is not None and r.lp_bound > 0]
    mean_lp = _mean(r.lp_bound for r in lp_rows)
    agg["mean_lp_bound"] = mean_lp
    if lp_rows and all(r.ss_cost is not None for r in lp_rows):
        agg["alpha_ss"] = _mean(float(r.ss_cost) for r in lp_rows) / mean_lp
        agg["worst_ratio_ss"] = max(float(r.ss_cost) / r.lp_bound for r in lp_rows)
    else:
        agg["alpha_ss"] = None
        agg["worst_ratio_ss"] = None
    if lp_rows and all(r.dr_cost is not None for r in lp_rows):
        agg["alpha_dr"] = _mean(float(r.dr_cost) for r in lp_rows) / mean_lp
        agg["worst_ratio_dr"] = max(float(r.dr_cost) / r.lp_bound for r in lp_rows)
    else:
        agg["alpha_dr"] = None
        agg["worst_ratio_dr"] = None

    imp = [
        100.0 * (float(r.ss_cost) - float(r.dr_cost)) / float(r.ss_cost)
        for r in ok
        if r.ss_cost is not None and r.dr_cost is not None and r.ss_cost > 0
    ]
    agg["mean_improvement_pct"] = _mean(imp)
    agg["max_improvement_pct"] = max(imp) if imp else None

    spec = SETUPS.get(setup) if isinstance(setup, int) else setup
    agg["theoretical_greedy_bound"] = None
    if spec is not None:
        try:
            bounds = theoretical_bounds(spec.sources, 1, spec.h_max, spec.c_s, spec.c_r)
            agg["theoretical_greedy_bound"] = float(bounds.greedy)
        except ValueError:
            pass

    timing = {}
    for phase in ("ss", "dr", "lp", "exact"):
        values = [r.timing[phase] for r in rows if r.timing and phase in r.timing]
        if values:
            timing[phase] = {"mean": _mean(values), "max": max(values)}
    agg["timing"] = timing
    return agg


def _row_dict(row):
    return {
        "seed": row.seed,
        "feasible": row.feasible,
        "ss_cost": _num(row.ss_cost) if row.ss_cost is not None else None,
        "dr_cost": _num(row.dr_cost) if row.dr_cost is not None else None,
        "exact_cost": _num(row.exact_cost) if row.exact_cost is not None else None,
        "lp_bound": row.lp_bound,
        "notes": list(row.notes),
        "error": row.error,
        "timing": dict(row.timing or {}),
    }


def report_to_dict(report):
    setup = report.setup
    return {
        "setup": setup if isinstance(setup, int) else "custom",
        "seeds": list(report.seeds),
        "options": {
            "with_dr": report.options.with_dr,
            "with_lp": report.options.with_lp,
            "with_exact": report.options.with_exact,
            "exact_limit": report.options.exact_limit,
            "max_iterations": report.options.max_iterations,
        },
        "rows": [_row_dict(r) for r in report.rows],
        "aggregates": report.aggregates,
    }


def _fmt(value, digits=4):
    if value is None:
        return "n/a"
    if isinstance(value, float):
        return f"{value:.{digits}f}"
    return str(value)


def emit_report(report, fmt="table"):
    """Render a report as an aligned text table, JSON, or CSV."""
    if fmt == "json":
        return dumps(report_to_dict(report))
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(
            [
                "seed",
                "feasible",
                "ss_cost",
                "dr_cost",
                "exact_cost",
                "lp_bound",
                "ratio_ss",
                "ratio_dr",
                "improvement_pct",
                "time_ss",
                "time_dr",
                "time_lp",
                "time_exact",
                "error",
            ]
        )
        for r in report.rows:
            ratio_ss = ratio_dr = imp = None
            if r.lp_bound and r.ss_cost is not None:
                ratio_ss = float(r.ss_cost) / r.lp_bound
            if r.lp_bound and r.dr_cost is not None:
                ratio_dr = float(r.dr_cost) / r.lp_bound
            if r.ss_cost and r.dr_cost is not None:
                imp = 100.0 * (float(r.ss_cost) - float(r.dr_cost)) / float(r.ss_cost)
            timing = r.timing or {}
            writer.writerow(
                [
                    r.seed,
                    int(r.feasible),
                    _fmt(_num(r.ss_cost) if r.ss_cost is not None else None),
                    _fmt(_num(r.dr_cost) if r.dr_cost is not None else None),
                    _fmt(_num(r.exact_cost) if r.exact_cost is not None else None),
                    _fmt(r.lp_bound),
                    _fmt(ratio_ss),
                    _fmt(ratio_dr),
                    _fmt(imp, 2),
                    _fmt(timing.get("ss")),
                    _fmt(timing.get("dr")),
                    _fmt(timing.get("lp")),
                    _fmt(timing.get("exact")),
                    r.error or "",
                ]
            )
        return out.getvalue()
    if fmt != "table":
        raise ValueError(f"unknown report format {fmt!r}")

    agg = report.aggregates
    lines = []
    setup_label = report.setup if isinstance(report.setup, int) else "custom"
    lines.append(f"setup {setup_label}: {agg['instances']} instances, {agg['feasible']} feasible")
    header = f"{'seed':>6} {'feas':>4} {'ss':>8} {'dr':>8} {'exact':>8} {'lp':>10} note"
    lines.append(header)
    for r in report.rows:
        note = r.error or "; ".join(r.notes)
        lines.append(
            f"{r.seed:>6} {('yes' if r.feasible else 'no'):>4} "
            f"{_fmt(_num(r.ss_cost) if r.ss_cost is not None else None):>8} "
            f"{_fmt(_num(r.dr_cost) if r.dr_cost is not None else None):>8} "
            f"{_fmt(_num(r.exact_cost) if r.exact_cost is not None else None):>8} "
            f"{_fmt(r.lp_bound):>10} {note}"
        )
    lines.append("")
    lines.append(f"mean cost         ss={_fmt(agg['mean_cost_ss'])} dr={_fmt(agg['mean_cost_dr'])}")
    lines.append(f"mean lp bound     {_fmt(agg['mean_lp_bound'])}")
    lines.append(f"alpha (mean/mean) ss={_fmt(agg['alpha_ss'])} dr={_fmt(agg['alpha_dr'])}")
    lines.append(
        f"worst ratio       ss={_fmt(agg['worst_ratio_ss'])} dr={_fmt(agg['worst_ratio_dr'])}"
    )
    lines.append(
        "improvement pct   "
        f"mean={_fmt(agg['mean_improvement_pct'], 2)} max={_fmt(agg['max_improvement_pct'], 2)}"
    )
    lines.append(f"greedy bound      {_fmt(agg['theoretical_greedy_bound'], 2)}")
    for phase, stats in agg["timing"].items():
        lines.append(
            f"time {phase:<6} mean={stats['mean']:.4f}s max={stats['max']:.4f}s"
        )
    return "\n".join(lines) + "\n"


def dump_layout(instance, path):
    """Write node coordinates as plain text: ``id kind x y`` per line."""
    with open(path, "w", encoding="utf-8") as fh:
        for nd in instance.nodes:
            if nd.pos is None:
                raise ValueError(f"node {nd.id} has no position to dump")
            fh.write(f"{nd.id} {nd.kind.value} {nd.pos[0]!r} {nd.pos[1]!r}\n")
