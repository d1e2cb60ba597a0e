"""Command-line interface.

Subcommands: generate, analyze, report, table.  Exit codes: 0 success,
2 validation error, 3 degenerate-input exhaustion, 4 I/O error.
"""

import argparse
import json
import sys

from .errors import (
    MalformedDataset,
    RandpolyError,
    TooManyDegenerateResamples,
    ValidationError,
)
from .pipeline import PRESETS, RunConfig, analyze, generate, report, table

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4

_DISTS = ("cube", "l1ball", "l2ball", "gaussian", "halfball")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randpoly",
        description="Random polytope f-vector experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample hulls and persist f-vectors")
    g.add_argument("--dist", required=True, choices=_DISTS)
    g.add_argument("--d", required=True, type=int)
    g.add_argument("--n", required=True, type=int)
    g.add_argument("--N", required=True, type=int)
    g.add_argument("--seed", required=True, type=int)
    g.add_argument("--out", required=True)
    g.add_argument("--threads", type=int, default=None)

    a = sub.add_parser("analyze", help="whiten a dataset and compute D_K")
    a.add_argument("--in", dest="dataset", required=True)
    a.add_argument("--M", required=True, type=int)
    a.add_argument("--seed", required=True, type=int)
    a.add_argument("--rel-tol", type=float, default=1e-8)
    a.add_argument("--out", required=True)

    r = sub.add_parser("report", help="emit histogram and scatter CSVs")
    r.add_argument("--in", dest="dataset", required=True)
    r.add_argument("--summary", required=True)
    r.add_argument("--out-dir", required=True)

    t = sub.add_parser("table", help="run a batch of configs and print a table")
    group = t.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=sorted(PRESETS))
    group.add_argument("--config", help="JSON file with a list of run configs")
    t.add_argument("--work-dir", default="randpoly-table")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--out", default=None, help="aggregate CSV path")
    return parser


def _cmd_generate(args) -> int:
    cfg = RunConfig(
        kind=args.dist, d=args.d, n=args.n, N=args.N,
        seed=args.seed, threads=args.threads,
    )
    res = generate(cfg, args.out)
    print(
        f"wrote {res.N} f-vectors to {res.path} "
        f"({res.resample_count} resamples, {res.wall_time:.2f}s)"
    )
    return EXIT_OK


def _cmd_analyze(args) -> int:
    summary = analyze(
        args.dataset, M=args.M, seed=args.seed,
        rel_tol=args.rel_tol, out_path=args.out,
    )
    print(f"p={summary.p}  D_K={summary.D_K:.6g}  -> {args.out}")
    return EXIT_OK


def _cmd_report(args) -> int:
    written = report(args.dataset, args.summary, args.out_dir)
    for path in written:
        print(path)
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.preset:
        configs = PRESETS[args.preset]
    else:
        with open(args.config) as fh:
            configs = json.load(fh)
        if not isinstance(configs, list):
            raise ValidationError("config file must hold a JSON list of configs")
    rows = table(configs, work_dir=args.work_dir, seed=args.seed, out_csv=args.out)
    print(f"{'distribution':<12} {'d':>2} {'n':>6} {'N':>6} {'M':>7} "
          f"{'p':>2} {'D_K':>10} {'time(s)':>8}")
    for r in rows:
        print(f"{r.kind:<12} {r.d:>2} {r.n:>6} {r.N:>6} {r.M:>7} "
              f"{r.p:>2} {r.D_K:>10.6f} {r.wall_time:>8.1f}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "analyze": _cmd_analyze,
        "report": _cmd_report,
        "table": _cmd_table,
    }
    try:
        return handlers[args.command](args)
    except TooManyDegenerateResamples as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValidationError, MalformedDataset, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RandpolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
