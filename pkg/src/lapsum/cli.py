"""Command line entry point: ``lapsum verify | family | spectrum | bounds``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from lapsum.graph import GraphError, degree_sequence, parse_graph6, write_graph6
from lapsum.pipeline import CHECKS, FAMILY_ARITY, RunConfig, build_family, run_verification
from lapsum.spectra import ConvergenceError, laplacian_spectrum, top_sum
from lapsum.streams import LABELED_CAP
from lapsum.threshold import conjugate_degrees, is_split, threshold_recognize
from lapsum.verify import TOL_EQ, bound_report, full_brouwer, ng_check

EXIT_CLEAN, EXIT_FOUND, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_ks(text: str) -> tuple[int, ...] | None:
    if text == "all":
        return None
    try:
        ks = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"--k expects 'all' or a comma list of integers, got {text!r}") from None
    if not ks or min(ks) < 1:
        raise UsageError("--k values must be positive")
    return ks


def _parse_checks(text: str) -> tuple[str, ...]:
    checks = tuple(t.strip() for t in text.split(",") if t.strip())
    bad = [c for c in checks if c not in CHECKS]
    if bad or not checks:
        raise UsageError(f"--checks must be a comma list drawn from {','.join(CHECKS)}")
    return checks


def _fmt(x: float) -> str:
    return f"{x:.6f}".rstrip("0").rstrip(".") if abs(x - round(x)) > 1e-9 else str(int(round(x)))


def cmd_verify(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.input is None):
        raise UsageError("verify needs exactly one of --n or --input")
    common = dict(
        ks=_parse_ks(args.k),
        checks=_parse_checks(args.checks),
        tol_eq=args.tol_eq,
        jobs=args.jobs,
        out=args.out,
        fmt=args.format,
        labeled_cap=args.cap,
    )
    try:
        if args.input is not None:
            cfg = RunConfig("graph6", path=args.input, **common)
        else:
            cfg = RunConfig(args.mode, n=args.n, **common)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = run_verification(cfg)
    _report(summary, args.json)
    return EXIT_CLEAN if summary.clean else EXIT_FOUND


def _report(summary, as_json: bool) -> None:
    if as_json:
        print(json.dumps(summary.as_dict(), indent=2))
    else:
        print(summary.format())


def cmd_family(args: argparse.Namespace) -> int:
    g = build_family(args.name, args.params)
    if args.emit_graph6:
        print(write_graph6(g))
        return EXIT_CLEAN
    cfg = RunConfig(
        "family",
        family=(args.name, tuple(args.params)),
        checks=_parse_checks(args.checks),
        tol_eq=args.tol_eq,
        out=args.out,
        fmt=args.format,
    )
    summary = run_verification(cfg, sink=None if args.out else sys.stdout)
    if not args.out:
        print()
    _report(summary, args.json)
    return EXIT_CLEAN if summary.clean else EXIT_FOUND


def cmd_spectrum(args: argparse.Namespace) -> int:
    g = parse_graph6(args.graph6)
    spec = laplacian_spectrum(g)
    d = degree_sequence(g)
    conj = conjugate_degrees(d)
    seq = threshold_recognize(g)
    print(f"graph6     {write_graph6(g)}")
    print(f"n, m       {g.n}, {g.m}")
    print("mu         " + " ".join(_fmt(x) for x in spec.values))
    print("d          " + " ".join(map(str, d)))
    print("d*         " + " ".join(map(str, conj.values)))
    print(f"trace T    {conj.trace}")
    print(f"threshold  {'yes (' + str(seq) + ')' if seq is not None else 'no'}")
    print(f"split      {'yes' if is_split(g) else 'no'}")
    if g.n >= 2:
        print()
        print(f"{'k':>3} {'s_k':>12} {'e+C(k+1,2)':>11} {'slack':>12}  class")
        for v in full_brouwer(g, args.tol_eq):
            print(f"{v.k:>3} {v.s_k:>12.6f} {v.bound:>11} {v.slack:>12.6f}  {v.verdict.value}")
    return EXIT_CLEAN


def cmd_bounds(args: argparse.Namespace) -> int:
    g = parse_graph6(args.graph6)
    if not 1 <= args.k <= g.n - 1:
        raise UsageError(f"--k must lie in 1..{g.n - 1}")
    rep = bound_report(g, args.k)
    ng = ng_check(g, args.k, args.tol_eq)
    rows = [
        ("s_k", rep.s_k),
        ("brouwer  e+C(k+1,2)", rep.brouwer),
        ("grone-merris  sum d*", rep.grone_merris),
        ("wang (connected)", rep.wang),
        ("zhou (k <= n-2)", rep.zhou),
        ("s_k + s_k(complement)", rep.ng_sum),
        ("nordhaus-gaddum bound", ng.rhs),
        ("degree-spread NG bound", rep.ng_spread),
        ("adjacency tail sum", rep.nikiforov_lhs),
        ("  its bound sqrt(2k)(n/2+k)", rep.nikiforov_rhs),
    ]
    for label, value in rows:
        shown = "n/a" if value is None else _fmt(float(value))
        print(f"{label:<28} {shown}")
    failed = rep.failures(args.tol_eq)
    print(f"{'failures':<28} {', '.join(failed) if failed else 'none'}")
    return EXIT_FOUND if failed or not ng.consistent else EXIT_CLEAN


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lapsum", description="Laplacian eigenvalue sums and their upper bounds.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, with_checks=True):
        if with_checks:
            p.add_argument("--checks", default="brouwer", help=f"comma list from {','.join(CHECKS)}")
        p.add_argument("--tol-eq", type=float, default=TOL_EQ, help="slack tolerance for equality")
        p.add_argument("--json", action="store_true", help="print the summary as JSON")

    v = sub.add_parser("verify", help="run checks over an exhaustive stream or a graph6 file")
    v.add_argument("--n", type=int, help="order for the exhaustive streams")
    v.add_argument("--input", help="graph6 file, one graph per line")
    v.add_argument("--mode", choices=("labeled", "threshold"), default="labeled")
    v.add_argument("--k", default="all", help="'all' or a comma list")
    v.add_argument("--out", help="record file")
    v.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--cap", type=int, default=LABELED_CAP, help="largest n allowed for labeled enumeration")
    add_common(v)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("family", help="build a named family member and check it")
    f.add_argument("name", choices=sorted(FAMILY_ARITY))
    f.add_argument("params", nargs="+")
    f.add_argument("--emit-graph6", action="store_true")
    f.add_argument("--out")
    f.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    add_common(f)
    f.set_defaults(func=cmd_family)

    s = sub.add_parser("spectrum", help="spectrum, degree data and s_k table of one graph")
    s.add_argument("--graph6", required=True)
    add_common(s, with_checks=False)
    s.set_defaults(func=cmd_spectrum)

    b = sub.add_parser("bounds", help="every upper bound on s_k for one graph")
    b.add_argument("--graph6", required=True)
    b.add_argument("--k", type=int, required=True)
    add_common(b, with_checks=False)
    b.set_defaults(func=cmd_bounds)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CLEAN if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GraphError) as exc:
        print(f"lapsum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lapsum: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"lapsum: {exc}", file=sys.stderr)
        return EXIT_FOUND


if __name__ == "__main__":
    sys.exit(main())
