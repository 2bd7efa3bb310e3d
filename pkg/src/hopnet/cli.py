"""Command-line interface.

Subcommands: generate, solve, bound, verify, bench.  Exit codes: 0 success,
1 infeasible or invalid input, 2 usage error.  All JSON output is canonical,
and timing lives under a dedicated "timing" key so repeated runs differ only
there (files written with --out never contain timing).
"""

from __future__ import annotations

import argparse
import sys
from time import perf_counter

from hopnet import bench as bench_mod
from hopnet import model
from hopnet.errors import HopnetError, InfeasibleInstanceError, SchemaError, SizeLimitError
from hopnet.exact import exact_optimum
from hopnet.greedy import smart_select
from hopnet.lpbound import certificate_to_dict, lp_lower_bound
from hopnet.repair import RepairConfig, destroy_and_repair
from hopnet.scenarios import SETUPS, generate


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_generate(args):
    instance = generate(args.setup, args.seed)
    _write_text(args.out, model.dumps(model.instance_to_dict(instance)))
    return 0


def _cmd_solve(args):
    instance = model.read_instance(getattr(args, "in"))
    t0 = perf_counter()
    if args.algo == "smartselect":
        design = smart_select(instance).design
    elif args.algo == "dr":
        design = destroy_and_repair(
            instance, config=RepairConfig(max_iterations=args.max_iterations)
        ).design
    else:
        design = exact_optimum(instance, limit=args.limit)
        if design is None:
            print("infeasible: no sink and relay subset serves every source", file=sys.stderr)
            return 1
    elapsed = perf_counter() - t0
    if args.out:
        model.write_design(design, args.out)
    if args.format == "json":
        doc = {
            "algo": args.algo,
            "design": model.design_to_dict(design),
            "timing": {"seconds": elapsed},
        }
        sys.stdout.write(model.dumps(doc))
    else:
        print(
            f"cost {model._num(design.cost)} "
            f"sinks {len(design.sinks)} relays {len(design.relays)}"
        )
    return 0


def _cmd_bound(args):
    instance = model.read_instance(getattr(args, "in"))
    t0 = perf_counter()
    cert = lp_lower_bound(instance, tolerance=args.tolerance, max_rounds=args.max_rounds)
    elapsed = perf_counter() - t0
    if args.out:
        _write_text(args.out, model.dumps(certificate_to_dict(cert)))
    if args.format == "json":
        doc = {"certificate": certificate_to_dict(cert), "timing": {"seconds": elapsed}}
        sys.stdout.write(model.dumps(doc))
    else:
        print(f"bound {cert.bound} rounds {cert.rounds} cuts {len(cert.constraints)}")
    return 0


def _cmd_verify(args):
    instance = model.read_instance(args.instance)
    design = model.read_design(args.design)
    report = model.validate(instance, design)
    if args.format == "json":
        doc = {"ok": report.ok, "violations": list(report.violations)}
        sys.stdout.write(model.dumps(doc))
    elif report.ok:
        print("ok")
    else:
        for violation in report.violations:
            print(violation)
    return 0 if report.ok else 1


def _parse_seeds(text):
    seeds = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        elif part:
            seeds.append(int(part))
    if not seeds:
        raise ValueError("no seeds given")
    return seeds


def _cmd_bench(args):
    algos = {a.strip() for a in args.algos.split(",") if a.strip()}
    unknown = algos - {"ss", "dr"}
    if unknown:
        print(f"unknown algorithms: {', '.join(sorted(unknown))}", file=sys.stderr)
        return 2
    seeds = _parse_seeds(args.seeds)
    options = bench_mod.BenchOptions(
        with_dr="dr" in algos,
        with_lp=args.lp,
        with_exact=args.exact,
        exact_limit=args.exact_limit,
        max_iterations=args.max_iterations,
    )
    report = bench_mod.run_batch(args.setup, seeds, options=options)
    if args.dump_layout:
        import os

        os.makedirs(args.dump_layout, exist_ok=True)
        for seed in seeds:
            instance = generate(args.setup, seed)
            bench_mod.dump_layout(
                instance, os.path.join(args.dump_layout, f"setup{args.setup}_seed{seed}.txt")
            )
    _write_text(args.out, bench_mod.emit_report(report, args.format))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hopnet",
        description="Hop-constrained sink and relay placement tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated instance as JSON")
    p.add_argument("--setup", type=int, choices=sorted(SETUPS), required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("solve", help="run a solver on an instance file")
    p.add_argument("--algo", choices=["smartselect", "dr", "exact"], default="smartselect")
    p.add_argument("--in", required=True, help="instance JSON file")
    p.add_argument("--out", default=None, help="write the design JSON here")
    p.add_argument("--max-iterations", type=int, default=25, help="dr sweep limit")
    p.add_argument("--limit", type=int, default=20, help="exact candidate limit")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bound", help="LP lower bound with generated node cuts")
    p.add_argument("--in", required=True, help="instance JSON file")
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--max-rounds", type=int, default=200)
    p.add_argument("--out", default=None, help="write the certificate JSON here")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("verify", help="validate a design against an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--design", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="run solvers over a seed range and report")
    p.add_argument("--setup", type=int, choices=sorted(SETUPS), required=True)
    p.add_argument("--seeds", required=True, help='e.g. "0..19" or "1,5,7"')
    p.add_argument("--algos", default="ss,dr", help="comma list from: ss, dr")
    p.add_argument("--lp", action="store_true", help="compute LP lower bounds")
    p.add_argument("--exact", action="store_true", help="try the exhaustive optimum")
    p.add_argument("--exact-limit", type=int, default=20)
    p.add_argument("--max-iterations", type=int, default=25)
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--dump-layout", default=None, help="directory for coordinate files")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except InfeasibleInstanceError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except (SchemaError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (HopnetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
