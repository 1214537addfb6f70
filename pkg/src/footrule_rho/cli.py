"""Command-line interface: ``footrule-rho <command> ...``.

Exit status is 0 on success, 1 when an input fails validation (including
malformed JSON) and 2 on usage errors.  Results go to standard output as
JSON, diagnostics to standard error.
"""
import argparse
import json
import sys

from . import serialization
from .bounds import attained_curve, lower_bound_curve, upper_estimate_curve
from .copulas import ShuffleOfM, check_copula, is_doubly_symmetric_shuffle
from .exceptions import (DomainError, InvalidCopulaError, InvalidDiagonalError,
                         NotDoublySymmetricError, QuadratureError, ReductionError,
                         UnsupportedCopulaError)
from .generators import GENERATORS
from .measures import MeasureReport, diagonal_mass, measure_report
from .reduction import approx_doubly_symmetric, reduce_to_diagonals
from .region import compute_ksm, read_csv, scan_region, write_csv, write_svg

VALIDATION_ERRORS = (DomainError, InvalidCopulaError, InvalidDiagonalError,
                     NotDoublySymmetricError, UnsupportedCopulaError, QuadratureError,
                     ReductionError, OSError)
VERIFY_TOL = 1e-10


def _emit(obj):
    print(json.dumps(obj, indent=2))


def cmd_measure(args):
    c = serialization.load(args.copula)
    report = measure_report(c, mc=args.mc, seed=args.seed)
    if args.format == "csv":
        print(MeasureReport.csv_header())
        print(report.csv_row())
    else:
        _emit(report.to_dict())
    return 0


def cmd_bounds(args):
    x = args.at
    _emit({"x": x, "lower": lower_bound_curve(x), "r": attained_curve(x),
           "upper": upper_estimate_curve(x)})
    return 0


def cmd_family(args):
    c = serialization.load(args.descriptor)
    if args.emit is None:
        _emit({"copula": serialization.to_dict(c), "measures": measure_report(c).to_dict()})
        return 0
    text = serialization.dumps(c, indent=2) + "\n"
    if args.emit == "-":
        sys.stdout.write(text)
    else:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_scan(args):
    points = scan_region(args.count, args.seed, args.generators)
    write_csv(points, args.out)
    if args.svg:
        # Render from the CSV just written so the figure depends on it alone.
        write_svg(read_csv(args.out), args.svg)
    bad = [p for p in points if p.violation() > 0.0]
    _emit({"points": len(points), "violations": len(bad), "csv": args.out, "svg": args.svg})
    for p in bad:
        print(f"region violation: {p}", file=sys.stderr)
    return 1 if bad else 0


def cmd_reduce(args):
    s = serialization.load(args.shuffle)
    if not isinstance(s, ShuffleOfM):
        raise InvalidCopulaError("reduce expects a shuffle of M")
    final, trace = reduce_to_diagonals(s)
    if args.trace:
        trace.write_jsonl(args.trace)
    _emit({"steps": len(trace.steps), "initial": vars(trace.initial), "final": vars(trace.final),
           "cases": [st.case for st in trace.steps], "copula": serialization.to_dict(final)})
    return 0


def cmd_ksm(args):
    _emit(vars(compute_ksm(args.truncation)))
    return 0


def cmd_approx(args):
    c = serialization.load(args.copula)
    _emit(serialization.to_dict(approx_doubly_symmetric(c, args.m)))
    return 0


def cmd_verify(args):
    c = serialization.load(args.copula)
    rep = check_copula(c, tol=VERIFY_TOL)
    out = {"valid": rep.ok, "grounded": rep.grounded, "marginals": rep.marginals,
           "frechet": rep.frechet, "two_increasing": rep.two_increasing, "tol": rep.tol}
    if isinstance(c, ShuffleOfM):
        ds = is_doubly_symmetric_shuffle(c)
        out["doubly_symmetric_shuffle"] = ds.ok
        if not ds.ok:
            out["doubly_symmetric_clause"] = ds.clause
        out["diagonal_mass"] = diagonal_mass(c)
    _emit(out)
    return 0 if rep.ok else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="footrule-rho",
        description="Spearman's footrule and rho of structured copulas.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="all five measures of a copula")
    m.add_argument("copula", help="inline JSON or path to a JSON file")
    m.add_argument("--mc", type=int, default=None, metavar="N",
                   help="attach Monte Carlo estimates from N draws")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--format", choices=("json", "csv"), default="json")
    m.set_defaults(func=cmd_measure)

    b = sub.add_parser("bounds", help="lower bound, attained curve and upper estimate at x")
    b.add_argument("--at", type=float, required=True, metavar="X")
    b.set_defaults(func=cmd_bounds)

    f = sub.add_parser("family", help="build a family copula")
    f.add_argument("descriptor", help='e.g. \'{"family": "Ca", "a": 0.25}\'')
    f.add_argument("--emit", nargs="?", const="-", default=None, metavar="PATH",
                   help="write the copula JSON to PATH (stdout without PATH)")
    f.set_defaults(func=cmd_family)

    s = sub.add_parser("scan", help="scan the (footrule, rho) region")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, metavar="CSV")
    s.add_argument("--svg", default=None, metavar="SVG")
    s.add_argument("--generators", nargs="+", choices=sorted(GENERATORS), default=None)
    s.set_defaults(func=cmd_scan)

    r = sub.add_parser("reduce", help="push a doubly symmetric shuffle onto the diagonals")
    r.add_argument("shuffle")
    r.add_argument("--trace", default=None, metavar="JSONL")
    r.set_defaults(func=cmd_reduce)

    k = sub.add_parser("ksm", help="bracket of the (footrule, rho) similarity measure")
    k.add_argument("--truncation", type=int, default=10**5)
    k.set_defaults(func=cmd_ksm)

    a = sub.add_parser("approx", help="doubly symmetric shuffle approximation on an m x m grid")
    a.add_argument("copula")
    a.add_argument("--m", type=int, required=True)
    a.set_defaults(func=cmd_approx)

    v = sub.add_parser("verify", help="check the copula axioms on a test grid")
    v.add_argument("copula")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
