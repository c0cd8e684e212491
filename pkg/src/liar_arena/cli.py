"""Command-line front end.

Exit codes: 0 success, 1 bound or verification violation, 2 invalid
configuration or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import bounds, harness
from .adversaries import ADVERSARIES
from .core import GameKind
from .exact import GuardError, check_guard, game_value
from .graph import from_transcript
from .solvers import SOLVERS

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _kind(text: str) -> GameKind:
    try:
        return GameKind.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"kind must be max or maxmin, not {text!r}")


def _csv_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_play(args) -> int:
    adversary = args.adversary + ("+claim1" if args.claim1 == "on" else "")
    try:
        if args.n < 1 or args.k < 0:
            raise ConfigError("need --n >= 1 and --k >= 0")
        if args.solver != "random" and args.kind not in harness.make_solver(args.solver).kinds:
            raise ConfigError(f"solver {args.solver} does not play {args.kind.value}")
        result = harness.play(args.solver, adversary, args.n, args.k, args.kind,
                              args.seed, args.query_cap)
    except (ConfigError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    print(result.to_json())
    if args.dump_transcript:
        _write(args.dump_transcript, result.transcript.dumps())
    if args.dump_graph:
        _write(args.dump_graph, from_transcript(result.transcript).dumps())
    return EXIT_OK if result.verified else EXIT_VIOLATION


def cmd_exact(args) -> int:
    if args.table:
        points = [
            (n, k, kind)
            for kind in (GameKind.MAX, GameKind.MAXMIN)
            for n in range(2, args.n_max + 1)
            for k in range(args.k_max + 1)
            if harness.in_guard(n, k)
        ]
        out = ["n,k,kind,value"]
        for n, k, kind, value in sorted(harness.exact_table(points),
                                        key=lambda r: (r[0], r[1], r[2].value)):
            out.append(f"{n},{k},{kind.value},{value}")
        _write(args.output, "\n".join(out) + "\n")
        return EXIT_OK
    if args.n is None or args.k is None:
        print("error: exact needs --n and --k (or --table)", file=sys.stderr)
        return EXIT_CONFIG
    try:
        check_guard(args.n, args.k)
    except GuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    print(game_value(args.n, args.k, args.kind))
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        cfg = harness.SweepConfig(
            n_range=(args.n_min, args.n_max),
            k_range=(args.k_min, args.k_max),
            solvers=_csv_list(args.solvers),
            adversaries=_csv_list(args.adversaries),
            kind=args.kind,
            seed=args.seed,
            output=args.output,
            format=args.format,
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    rows = harness.run_sweep(cfg)
    try:
        _write(cfg.output, harness.format_rows(rows, cfg.format))
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.audit:
        bad = bounds.identity_audit(range(2, args.n_max + 1), range(args.k_max + 1))
        print(f"identity audit n=2..{args.n_max} k=0..{args.k_max}: {len(bad)} false point(s)")
        for n, k, lhs, rhs in bad:
            print(f"  n={n} k={k} lower={lhs} identity_rhs={rhs}")
        return EXIT_OK
    rows = bounds.bounds_table(args.n_max, args.k_max)
    fields = ["n", "k", "pohl", "rgl_max", "thm1_lower", "identity_ok"]
    try:
        if args.output and args.output != "-":
            fh = open(args.output, "w", newline="")
        else:
            fh = sys.stdout
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({**r, "identity_ok": str(r["identity_ok"]).lower()})
        if fh is not sys.stdout:
            fh.close()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def cmd_verify_bounds(args) -> int:
    k_values = [args.k] if args.k is not None else list(range(args.k_max + 1))
    n_values = range(args.n_min, args.n_max + 1)
    if args.exact:
        for n in n_values:
            for k in k_values:
                if not harness.in_guard(n, k):
                    print(f"error: (n={n}, k={k}) outside the exact solver guard", file=sys.stderr)
                    return EXIT_CONFIG
        report = harness.verify_exact(args.kind, n_values, k_values)
    else:
        report = harness.verify_adversary(args.kind, n_values, k_values, args.trials)
    mode = "exact" if args.exact else "adversary"
    print(f"verify-bounds {mode} kind={args.kind.value}: {report.checks} checks, "
          f"{report.games} games, {len(report.violations)} violation(s)")
    if report.cap_exhausted:
        print(f"note: {report.cap_exhausted} game(s) hit the query cap without a claim")
    for v in report.violations:
        print(f"VIOLATION {v}")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liar-arena",
                                     description="Comparison search games with up to k lies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("play", help="run one game and print its result as JSON")
    p.add_argument("--solver", choices=SOLVERS, required=True)
    p.add_argument("--adversary", choices=ADVERSARIES, required=True)
    p.add_argument("--claim1", choices=("on", "off"), default="off")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kind", type=_kind, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--query-cap", type=int, default=None)
    p.add_argument("--dump-transcript", metavar="PATH", help="'-' for stdout")
    p.add_argument("--dump-graph", metavar="PATH", help="'-' for stdout")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("exact", help="exact minimax query count for a tiny game")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--kind", type=_kind, default=GameKind.MAX)
    p.add_argument("--table", action="store_true", help="CSV of every in-guard instance")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sweep", help="run a grid of games, write CSV or JSON rows")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k-min", type=int, default=0)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--solvers", required=True, help="comma-separated")
    p.add_argument("--adversaries", required=True,
                   help="comma-separated; append +claim1 to wrap, e.g. topbottom+claim1")
    p.add_argument("--kind", type=_kind, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="closed-form bounds table")
    p.add_argument("--table", action="store_true")
    p.add_argument("--audit", action="store_true", help="list points where the identity fails")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-bounds", help="machine-check the bounds; exit 1 on violation")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--adversary", action="store_true")
    p.add_argument("--kind", type=_kind, required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k-max", type=int, default=0)
    p.add_argument("--k", type=int, default=None, help="single k instead of 0..k-max")
    p.add_argument("--trials", type=int, default=200, help="seeded random solvers per point")
    p.set_defaults(func=cmd_verify_bounds)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
