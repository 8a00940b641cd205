"""Command-line front door.

Subcommands: generate-corridor, generate-pm, analyze, homology, bounds,
johnson-oracle, experiment. Exit code 0 iff every verification passed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import experiments, serialize
from .corridor import ProcessConfig, run
from .errors import CorridorForgeError
from .gf2 import reduced_betti
from .pm import PmConfig, pm_run


def _write_json(obj, out: str | None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_generate_corridor(args) -> int:
    cfg = ProcessConfig(
        n=args.n,
        d=args.d,
        seed=args.seed,
        record_every=args.record_every,
        track_random=args.track_random,
    )
    report = run(cfg)
    text = serialize.report_json(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.record_every > 0:
        traj = args.traj_out or _default_traj_path(args.out)
        if traj:
            serialize.write_trajectory_csv(
                report.records, 3 * args.d + 1, traj, args.d, args.n
            )
    return 0


def _cmd_generate_pm(args) -> int:
    cfg = PmConfig(
        n=args.n,
        d=args.d,
        seed=args.seed,
        record_every=args.record_every,
        track_random=args.track_random,
    )
    report = pm_run(cfg)
    text = serialize.report_json(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.record_every > 0:
        traj = args.traj_out or _default_traj_path(args.out)
        if traj:
            serialize.write_trajectory_csv(
                report.records, 3 * args.d + 4, traj, args.d, args.n
            )
    return 0


def _default_traj_path(out: str | None) -> str | None:
    if not out:
        return None
    p = Path(out)
    return str(p.with_suffix(".trajectory.csv"))


def _cmd_analyze(args) -> int:
    X = serialize.load_complex(args.input)
    _write_json(experiments.analyze_complex(X), args.out)
    return 0


def _cmd_homology(args) -> int:
    X = serialize.load_complex(args.input)
    betti = [reduced_betti(X, k) for k in range(X.dim + 1)]
    _write_json({"betti": betti}, args.out)
    return 0


def _cmd_bounds(args) -> int:
    rows = experiments.bounds_table(args.n, args.d)
    if args.format == "csv":
        writer = csv.DictWriter(
            sys.stdout if not args.out else open(args.out, "w", newline=""),
            fieldnames=list(rows[0].keys()),
        )
        writer.writeheader()
        writer.writerows(rows)
    else:
        _write_json(rows, args.out)
    return 0


def _cmd_johnson_oracle(args) -> int:
    value = experiments.johnson_oracle(args.n, args.d)
    _write_json({"n": args.n, "d": args.d, "longest_induced_path": value}, args.out)
    return 0


def _cmd_experiment(args) -> int:
    with open(args.spec) as fh:
        spec = experiments.ExperimentSpec.from_dict(json.load(fh))
    summary = experiments.run_experiment(spec, args.out_dir)
    _write_json(summary, None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corridor-forge",
        description="High-diameter simplicial complexes via randomized "
        "corridor mapping, with structural verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--record-every", type=int, default=0)
        p.add_argument("--track-random", type=int, default=10)
        p.add_argument("--out", default=None)
        p.add_argument("--traj-out", default=None)

    p = sub.add_parser("generate-corridor", help="run the corridor process")
    add_run_flags(p)
    p.set_defaults(func=_cmd_generate_corridor)

    p = sub.add_parser("generate-pm", help="run the pseudomanifold process")
    add_run_flags(p)
    p.set_defaults(func=_cmd_generate_pm)

    p = sub.add_parser("analyze", help="diameter/connectivity/f-vector report")
    p.add_argument("input")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("homology", help="reduced GF(2) Betti numbers")
    p.add_argument("input")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("bounds", help="exact and first-order diameter bounds")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--d", type=int, nargs="+", required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("johnson-oracle", help="brute-force longest induced path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_johnson_oracle)

    p = sub.add_parser("experiment", help="grid-file driven experiment run")
    p.add_argument("--spec", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CorridorForgeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
