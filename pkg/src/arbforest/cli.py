"""Command-line harness: generate instances, run, experiment, verify.

Exit codes: 0 ok, 1 usage error, 2 verification failure, 3 I/O or
instance-format error.  The ARBFOREST_OUTDIR environment variable sets
the default directory for outputs whose path is not given explicitly.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import asdict
from pathlib import Path

from . import files
from .arrivals import bidirected_path_adversary, uniform_random_sequence
from .engine import EngineInvariantError, VerifyLevel, run_sequence
from .experiments import ExperimentConfig, run_experiment
from .kernels import backend_name
from .mincost import (CertificationError, WeightedDigraph,
                      brute_force_min_arborescence, chu_liu_edmonds,
                      incremental_recourse, min_arborescence_with_certificate,
                      triangle_adversary, verify_dual_certificate)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3


def _out_dir() -> Path:
    return Path(os.environ.get("ARBFOREST_OUTDIR", "."))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arbforest",
        description="Incremental maximum arborescence forest harness")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("kind",
                     choices=["random", "adversarial", "mincost-adversarial"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, help="arc count (random only)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", type=Path)
    gen.add_argument("--force", action="store_true",
                     help="overwrite an existing output file")

    run = sub.add_parser("run", help="run an instance through the engine")
    run.add_argument("instance", type=Path)
    run.add_argument("--trace", type=Path)
    run.add_argument("--summary", type=Path)
    run.add_argument("--verify", choices=["off", "sampled", "full"],
                     default="off")
    run.add_argument("--oracle-every", type=int, default=32)

    exp = sub.add_parser("experiment", help="seeded scaling experiment")
    exp.add_argument("--n-list", required=True,
                     help="comma-separated vertex counts, e.g. 128,256")
    exp.add_argument("--trials", type=int, required=True)
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--m-mult", type=float, default=1.0,
                     help="multiplier on the default m = ceil(n*log2(n))")
    exp.add_argument("--verify", choices=["off", "sampled", "full"],
                     default="off")
    exp.add_argument("--oracle-every", type=int, default=32)
    exp.add_argument("--jobs", type=int, default=1)
    exp.add_argument("--out-dir", type=Path)

    mc = sub.add_parser("mincost", help="min-cost arborescence with certificate")
    mc.add_argument("instance", type=Path)
    mc.add_argument("--verify-dual", action="store_true")
    mc.add_argument("--verify-brute", action="store_true")
    mc.add_argument("--incremental", action="store_true",
                    help="re-solve per insertion and report recourse")
    mc.add_argument("--initial", type=int, default=0,
                    help="rows forming the starting graph (incremental mode)")
    mc.add_argument("--report", type=Path)

    ver = sub.add_parser("verify", help="re-check a trace against an instance")
    ver.add_argument("instance", type=Path)
    ver.add_argument("trace", type=Path)
    return parser


def _cmd_gen(args) -> int:
    if args.kind == "random":
        if args.m is None:
            print("gen random requires --m", file=sys.stderr)
            return EXIT_USAGE
        seq = uniform_random_sequence(args.n, args.m, args.seed)
        instance = files.Instance.from_sequence(seq)
        default_name = f"random_n{args.n}_m{args.m}_s{args.seed}.txt"
    elif args.kind == "adversarial":
        seq = bidirected_path_adversary(args.n)
        instance = files.Instance.from_sequence(seq)
        default_name = f"adversarial_n{args.n}.txt"
    else:
        tri = triangle_adversary(args.n)
        rows = tri.all_arcs
        instance = files.Instance(
            n=tri.n, entries=[(t, h) for t, h, _ in rows],
            weights=[w for _, _, w in rows])
        default_name = f"mincost_adversarial_n{args.n}.txt"
    out = args.out if args.out is not None else _out_dir() / default_name
    files.write_instance(out, instance, force=args.force)
    print(f"wrote {instance.m} arcs to {out}")
    return EXIT_OK


def _cmd_run(args) -> int:
    instance = files.read_instance(args.instance)
    if instance.weighted:
        print("weighted instance: use the mincost subcommand", file=sys.stderr)
        return EXIT_USAGE
    trace = run_sequence(instance.n, instance.engine_entries(),
                         verify=VerifyLevel(args.verify),
                         oracle_every=args.oracle_every)
    trace_path = args.trace if args.trace is not None \
        else _out_dir() / (args.instance.stem + ".trace.csv")
    summary_path = args.summary if args.summary is not None \
        else _out_dir() / (args.instance.stem + ".summary.json")
    files.write_trace_csv(trace_path, trace)
    files.write_json(summary_path, files.trace_summary_dict(trace))
    print(f"n={trace.n} m={trace.m} total_recourse={trace.total_recourse} "
          f"backend={backend_name()}")
    return EXIT_OK


def _cmd_experiment(args) -> int:
    try:
        n_list = [int(x) for x in args.n_list.split(",") if x]
    except ValueError:
        print(f"bad --n-list {args.n_list!r}", file=sys.stderr)
        return EXIT_USAGE
    config = ExperimentConfig(
        n_list=n_list, trials=args.trials, base_seed=args.seed,
        m_multiplier=args.m_mult, verify=args.verify,
        oracle_every=args.oracle_every, jobs=args.jobs)
    summary = run_experiment(config)
    out_dir = args.out_dir if args.out_dir is not None else _out_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    files.write_json(out_dir / "summary.json", summary.to_json_dict())
    rows = [asdict(t) for t in summary.trials]
    with (out_dir / "trials.csv").open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    for n, agg in summary.aggregate().items():
        print(f"n={n} trials={agg['trials']} "
              f"ratio_total={agg['mean_ratio_total']:.4f} "
              f"ratio_phase1={agg['mean_ratio_phase1']:.4f} "
              f"sc_ok={agg['strongly_connected_within_threshold']} "
              f"gap_violations={agg['gap_violations']}")
    return EXIT_OK


def _cmd_mincost(args) -> int:
    instance = files.read_instance(args.instance)
    if not instance.weighted:
        print("mincost requires a weighted instance", file=sys.stderr)
        return EXIT_USAGE
    rows = [(t, h, w) for (t, h), w in zip(instance.entries, instance.weights)]
    report: dict = {"schema_version": files.SUMMARY_SCHEMA_VERSION,
                    "n": instance.n, "m": instance.m, "root": 0}

    gw = WeightedDigraph(instance.n, root=0)
    for t, h, w in rows:
        gw.add_arc(t, h, w)
    missing = gw.unreachable()
    if missing:
        print(f"vertices unreachable from root 0: {sorted(missing)}",
              file=sys.stderr)
        return EXIT_VERIFY

    try:
        certified = min_arborescence_with_certificate(gw)
        report["cost"] = certified.cost
        report["certified"] = True
        report["restarts"] = certified.restarts
        report["packing_value"] = certified.packing.value
        if args.verify_dual:
            ok, problems = verify_dual_certificate(
                gw, certified.arcs, certified.packing)
            report["dual_ok"] = ok
            report["dual_problems"] = problems
    except CertificationError as exc:
        # Divergence is data: fall back to the classic algorithm and record.
        _, cost = chu_liu_edmonds(gw)
        report["cost"] = cost
        report["certified"] = False
        report["certification_error"] = str(exc)
    report["chu_liu_cost"] = chu_liu_edmonds(gw)[1]
    if args.verify_brute:
        _, brute_cost = brute_force_min_arborescence(gw)
        report["brute_cost"] = brute_cost
    if args.incremental:
        num_initial = args.initial
        if num_initial == 0:
            # Default split: the shortest prefix admitting a spanning
            # arborescence forms the starting graph.
            probe = WeightedDigraph(instance.n, root=0)
            for i, (t, h, w) in enumerate(rows, start=1):
                probe.add_arc(t, h, w)
                if not probe.unreachable():
                    num_initial = i
                    break
        total, per_step = incremental_recourse(
            instance.n, 0, rows, num_initial=num_initial)
        report["incremental"] = {
            "initial_rows": num_initial,
            "total_recourse": total,
            "per_step": per_step,
        }
        print(f"incremental recourse {total} over {len(per_step)} insertions")
    if args.report is not None:
        files.write_json(args.report, report)
    print(f"cost={report['cost']} certified={report['certified']}")
    mismatches = [k for k in ("chu_liu_cost", "brute_cost")
                  if k in report and report[k] != report["cost"]]
    if mismatches:
        print(f"cost mismatch against {mismatches}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_verify(args) -> int:
    instance = files.read_instance(args.instance)
    if instance.weighted:
        print("verify works on unweighted instances", file=sys.stderr)
        return EXIT_USAGE
    expected = files.read_trace_csv(args.trace)
    trace = run_sequence(instance.n, instance.engine_entries(),
                         verify=VerifyLevel.FULL)
    if trace.records != expected:
        for got, want in zip(trace.records, expected):
            if got != want:
                print(f"trace mismatch at step {want.step}: "
                      f"recomputed {got}, file has {want}", file=sys.stderr)
                return EXIT_VERIFY
        print(f"trace length mismatch: recomputed {len(trace.records)}, "
              f"file has {len(expected)}", file=sys.stderr)
        return EXIT_VERIFY
    print(f"verified {len(expected)} steps, all invariants hold")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    handlers = {
        "gen": _cmd_gen,
        "run": _cmd_run,
        "experiment": _cmd_experiment,
        "mincost": _cmd_mincost,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except EngineInvariantError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_VERIFY
    except files.InstanceFormatError as exc:
        print(f"{args.instance if hasattr(args, 'instance') else ''}: {exc}",
              file=sys.stderr)
        return EXIT_IO
    except FileExistsError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
