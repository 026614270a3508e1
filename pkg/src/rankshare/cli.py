"""``rankshare`` command line.

Every subcommand prints a CSV (default) or JSON series to stdout or
``--out``.  Exit status is 0 on success, 1 on a domain error (bad N/k/T,
unparseable input) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import analysis, combinatorics, model, montecarlo
from ._format import fmt
from .errors import RankShareError


def _int_at_least(lo):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {v}")
        return v
    return parse


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {v}")
    return v


def _num(x):
    return float(fmt(x))


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(doc):
    return json.dumps(doc, indent=2) + "\n"


def _threads(args):
    if args.threads is not None:
        return args.threads
    env = os.environ.get("RANKSHARE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise RankShareError(f"RANKSHARE_THREADS must be an integer, got {env!r}") from None
    return 1


def cmd_enumerate(args):
    p = combinatorics.SplitParams(args.t, args.n)
    hist = combinatorics.count_rank_share_fast(p, threads=_threads(args))
    return hist.to_json() if args.format == "json" else hist.to_csv()


def _grid(N, k, points):
    lo, hi = (float(b) for b in model.support_bounds(N, k))
    return np.linspace(lo, hi, points)


def _curve(args, fn, name):
    if args.n < 2:
        raise RankShareError(f"{name} needs N >= 2")
    if not 1 <= args.k <= args.n:
        raise RankShareError(f"rank k must be in 1..{args.n}")
    S = _grid(args.n, args.k, args.points)
    vals = fn(args.n, args.k, S)
    if args.format == "json":
        return _json({"n": args.n, "k": args.k,
                      "points": [{"S": _num(s), "value": _num(v)} for s, v in zip(S, vals)]})
    return _csv(["S", "value"], [[fmt(s), fmt(v)] for s, v in zip(S, vals)])


def cmd_pdf(args):
    return _curve(args, model.pdf, "pdf")


def cmd_cdf(args):
    return _curve(args, model.cdf, "cdf")


def cmd_expected(args):
    prof = model.rank_profile(args.n)
    if args.format == "json":
        return _json({"n": args.n, "expected": [_num(v) for v in prof.expected]})
    return _csv(["k", "value"], [[k, fmt(v)] for k, v in enumerate(prof.expected, start=1)])


def cmd_zipf(args):
    series = model.zipf_series(args.n)
    if args.format == "json":
        return _json({"n": args.n,
                      "points": [{"log10_k": _num(x), "log10_share": _num(y)} for x, y in series]})
    return _csv(["log10_k", "log10_share"], [[fmt(x), fmt(y)] for x, y in series])


def cmd_table(args):
    if args.n < 3:
        raise RankShareError("polynomial tables need N >= 3")
    if args.k is not None and not 1 <= args.k <= args.n:
        raise RankShareError(f"rank k must be in 1..{args.n}")
    ranks = [args.k] if args.k is not None else range(1, args.n + 1)
    tables = [model.piecewise_pdf(args.n, k) for k in ranks]
    if args.format == "json":
        docs = [t.to_dict() for t in tables]
        return _json(docs[0] if args.k is not None else docs)
    header = ["k", "d", "lower", "upper"] + [f"a{i}" for i in range(1, args.n + 1)]
    rows = [[t.k, s.d, fmt(s.lower), fmt(s.upper), *s.coeffs]
            for t in tables for s in t.segments]
    return _csv(header, rows)


def cmd_simulate(args):
    if args.seed is None:
        raise _UsageError("simulate requires --seed")
    cfg = montecarlo.SimConfig(args.n, args.samples, args.seed, mode=args.mode, T=args.t)
    emp = montecarlo.simulate(cfg, threads=_threads(args))
    rows = list(emp.histogram_rows(args.bin_width))
    if args.format == "json":
        return _json({
            "n": args.n, "samples": args.samples, "seed": args.seed, "mode": args.mode,
            "means": [_num(m) for m in emp.means()],
            "bins": [{"rank": k, "bin_lower": _num(a), "bin_upper": _num(b), "count": c,
                      "empirical_density": _num(dens)} for k, a, b, c, dens in rows],
        })
    return emp.histogram_csv(args.bin_width)


def cmd_fit(args):
    opts = analysis.ParseOptions(
        delimiter="\t" if args.delimiter == "tab" else ",",
        total_row_pattern=args.total_row_pattern,
        drop_incomplete=args.drop_incomplete,
    )
    if args.input == "-":
        data = analysis.parse_table(sys.stdin, opts)
    else:
        try:
            with open(args.input, newline="", encoding="utf-8") as fh:
                data = analysis.parse_table(fh, opts)
        except OSError as exc:
            raise RankShareError(f"cannot read {args.input}: {exc.strerror}") from None
    report = analysis.fit_report(data, renormalize=not args.no_renormalize)
    return report.to_json() if args.format == "json" else report.to_csv()


class _UsageError(Exception):
    pass


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", help="write here instead of stdout")

    threads = argparse.ArgumentParser(add_help=False)
    threads.add_argument("--threads", type=_int_at_least(1),
                         help="worker threads (default: $RANKSHARE_THREADS or 1)")

    parser = argparse.ArgumentParser(
        prog="rankshare", description="Rank-share distribution tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common, threads],
                       help="exact rank-share histogram of T units among N participants")
    p.add_argument("--t", type=_int_at_least(0), required=True)
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.set_defaults(func=cmd_enumerate)

    for name, func, what in (("pdf", cmd_pdf, "density"), ("cdf", cmd_cdf, "distribution function")):
        p = sub.add_parser(name, parents=[common], help=f"{what} of rank k on a share grid")
        p.add_argument("--n", type=_int_at_least(1), required=True)
        p.add_argument("--k", type=_int_at_least(1), required=True)
        p.add_argument("--points", type=_int_at_least(2), default=201)
        p.set_defaults(func=func)

    p = sub.add_parser("expected", parents=[common], help="expected share per rank")
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.set_defaults(func=cmd_expected)

    p = sub.add_parser("zipf", parents=[common], help="expected shares on log10-log10 axes")
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.set_defaults(func=cmd_zipf)

    p = sub.add_parser("table", parents=[common], help="piecewise polynomial coefficients")
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.add_argument("--k", type=_int_at_least(1))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", parents=[common, threads],
                       help="Monte Carlo histogram of ranked shares")
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.add_argument("--samples", type=_int_at_least(1), default=500_000)
    p.add_argument("--seed", type=_int_at_least(0))
    p.add_argument("--mode", choices=["continuous", "discrete"], default="continuous")
    p.add_argument("--t", type=_int_at_least(1), default=100, help="grid size in discrete mode")
    p.add_argument("--bin-width", type=_positive_float, default=0.002)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", parents=[common], help="rank a category table and correlate")
    p.add_argument("--input", required=True, help="table file, or - for stdin")
    p.add_argument("--no-renormalize", action="store_true",
                   help="treat values as percents instead of rescaling each entity")
    p.add_argument("--total-row-pattern", default="Total")
    p.add_argument("--delimiter", choices=["comma", "tab"], default="comma")
    p.add_argument("--drop-incomplete", action="store_true",
                   help="drop entities with empty cells instead of failing")
    p.set_defaults(func=cmd_fit)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        text = args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"rankshare: error: {exc}", file=sys.stderr)
        return 2
    except RankShareError as exc:
        print(f"rankshare: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())
