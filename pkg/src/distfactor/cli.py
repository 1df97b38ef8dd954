"""Command-line front end.

Subcommands
-----------
construct   print the graph6 line of an extremal graph
radius      distance spectral radius of graph6 input
alphaf      fractional matching number (as 2*alpha_f) with deficiency witness
factor      {K2, Ck}-factor or star-factor existence, with violating set
verify      theorem-level verification report
search      randomized counterexample search report

Exit status: 0 computed / passed, 1 verification failed, 2 usage or parse
error, 3 size cap exceeded.  Errors are also written to stderr as JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import verify as V
from .errors import (
    BracketingError,
    CapabilityError,
    ConvergenceError,
    DisconnectedGraphError,
    GraphParseError,
    InvalidParameterError,
)
from .graph import ExtremalParams, Graph, all_pairs_distances, extremal_graph, read_graph6_lines, to_graph6
from .matching import max_deficiency
from .spectral import (
    POWER_TOL,
    RESIDUAL_TOL,
    distance_spectral_radius,
    equitable_partition,
    perron_root,
    quotient_matrix,
)

DEFAULT_SEED = 42
EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAPABILITY = 0, 1, 2, 3

CSV_COLUMNS = ["n", "delta", "k", "s", "mu_quotient", "mu_full", "alpha_f_times2", "factor_flags"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="distfactor", description=__doc__.split("\n\n")[0])
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_input(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--in", dest="infile", help="file of graph6 lines ('-' for stdin)")
        src.add_argument("--g6", help="inline graph6 string")

    p = sub.add_parser("construct", parents=[common], help="extremal graph as graph6")
    p.add_argument("--family", choices=["A", "B"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("radius", parents=[common], help="distance spectral radius")
    graph_input(p)
    p.add_argument("--method", choices=["power", "quotient"], default="power")
    p.add_argument("--tol", type=float, default=POWER_TOL)
    p.add_argument("--residual-tol", type=float, default=RESIDUAL_TOL)

    p = sub.add_parser("alphaf", parents=[common], help="fractional matching number")
    graph_input(p)
    p.add_argument("--mode", choices=["exhaustive", "pruned"], default="exhaustive")

    p = sub.add_parser("factor", parents=[common], help="factor existence")
    graph_input(p)
    p.add_argument("--kind", choices=["k2ck", "star"], required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--mode", choices=["exhaustive", "pruned"], default="exhaustive")

    for name in ("verify", "search"):
        p = sub.add_parser(name, parents=[common], help=f"{name} report")
        choices = ["fm", "fpm", "k2ck", "star"]
        if name == "verify":
            choices += ["quotient", "edgemono", "mono-s"]
        p.add_argument("--theorem", choices=choices, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--delta", type=int, default=1)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--family", choices=["A", "B"], default=None,
                       help="extremal family for quotient / mono-s (default A)")
        p.add_argument("--samples", type=int, default=100 if name == "verify" else 1000)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--margin", type=float, default=V.STRICT_MARGIN)
        p.add_argument("--equal-tol", type=float, default=V.EQUAL_TOL)
        p.add_argument("--edge-margin", type=float, default=V.EDGE_MARGIN)
    return parser


def _read_graphs(args) -> list[Graph]:
    if args.g6 is not None:
        return read_graph6_lines([args.g6])
    if args.infile == "-":
        return read_graph6_lines(sys.stdin)
    with open(args.infile, encoding="ascii") as fh:
        return read_graph6_lines(fh)


def _emit(records: list[dict], fmt: str, out) -> None:
    if not records:
        return
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec) + "\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow({k: json.dumps(v) if isinstance(v, list) else v for k, v in rec.items()})
    else:
        for rec in records:
            out.write(" ".join(f"{k}={v}" for k, v in rec.items()) + "\n")


def _cmd_construct(args, out) -> int:
    g = extremal_graph(ExtremalParams(args.family, args.n, args.s, args.k))
    out.write(to_graph6(g) + "\n")
    return EXIT_OK


def _cmd_radius(args, out) -> int:
    records = []
    for g in _read_graphs(args):
        d = all_pairs_distances(g)
        kw = {"tol": args.tol, "residual_tol": args.residual_tol}
        rec = {"graph6": to_graph6(g), "n": g.order, "method": args.method}
        if args.method == "power":
            res = distance_spectral_radius(d, **kw)
        else:
            blocks = equitable_partition(d)
            q = quotient_matrix(d, blocks)
            res = perron_root(q.entries, **kw)
            rec["block_sizes"] = list(q.block_sizes)
        rec.update(mu=res.radius, iterations=res.iterations, residual=res.residual)
        records.append(rec)
    _emit(records, args.format, out)
    return EXIT_OK


def _cmd_alphaf(args, out) -> int:
    records = []
    for g in _read_graphs(args):
        dres = max_deficiency(g, 1, args.mode)
        twice = g.order - dres.value
        records.append({
            "graph6": to_graph6(g),
            "n": g.order,
            "twice_value": twice,
            "alpha_f": str(Fraction(twice, 2)),
            "deficiency": dres.value,
            "witness": list(dres.witness),
        })
    _emit(records, args.format, out)
    return EXIT_OK


def _cmd_factor(args, out) -> int:
    if args.kind == "star" and args.k < 2:
        raise InvalidParameterError("star factor needs --k >= 2")
    weight = args.k if args.kind == "star" else 1
    records = []
    for g in _read_graphs(args):
        dres = max_deficiency(g, weight, args.mode)
        exists = dres.value <= 0
        rec = {"graph6": to_graph6(g), "kind": args.kind, "exists": exists}
        if args.kind == "star":
            rec["k"] = args.k
        rec["violating_set"] = None if exists else list(dres.witness)
        records.append(rec)
    _emit(records, args.format, out)
    return EXIT_OK


def _family(args) -> str:
    return args.family or "A"


def _sweep_csv(args, out) -> None:
    family = _family(args)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in V.sweep_table(family, args.n, args.delta, args.k):
        writer.writerow(row)
    out.write(buf.getvalue())


def _cmd_verify(args, out) -> int:
    theorem = V.normalize_theorem(args.theorem)
    if args.command == "search":
        report = V.search_counterexamples(
            theorem, args.n, args.delta, args.k, args.samples, args.seed, margin=args.margin
        )
    elif theorem in ("FM", "FPM", "K2CK", "STAR"):
        report = V.verify_sharpness(theorem, args.n, args.delta, args.k, tol=args.equal_tol)
    elif theorem == "QUOTIENT":
        p = ExtremalParams(_family(args), args.n, args.delta, args.k)
        report = V.verify_quotient_equality(p, tol=args.equal_tol)
    elif theorem == "EDGE_MONO":
        report = V.verify_edge_monotonicity(args.n, args.samples, args.seed, margin=args.edge_margin)
    else:
        report = V.verify_monotonicity_in_s(_family(args), args.n, args.delta, args.k, margin=args.margin)
    if args.format == "csv" and theorem in ("MONO_S", "QUOTIENT"):
        _sweep_csv(args, out)
    elif args.format == "plain":
        out.write(f"{report.theorem} {report.status} pass={report.passed}\n")
        for c in report.checks:
            out.write(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}: expected {c.expected}, observed {c.observed}\n")
        for g6 in report.counterexamples:
            out.write(f"  counterexample {g6}\n")
    else:
        out.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAILED


_COMMANDS = {
    "construct": _cmd_construct,
    "radius": _cmd_radius,
    "alphaf": _cmd_alphaf,
    "factor": _cmd_factor,
    "verify": _cmd_verify,
    "search": _cmd_verify,
}


def _error(kind: str, message: str, err, **extra) -> None:
    err.write(json.dumps({"error": kind, "message": message, **extra}) + "\n")


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        _error("usage", str(exc), err)
        return EXIT_USAGE
    except GraphParseError as exc:
        _error("parse", str(exc), err, offset=exc.offset)
        return EXIT_USAGE
    except (InvalidParameterError, DisconnectedGraphError, OSError) as exc:
        _error(type(exc).__name__, str(exc), err)
        return EXIT_USAGE
    except CapabilityError as exc:
        _error("capability", str(exc), err)
        return EXIT_CAPABILITY
    except ConvergenceError as exc:
        _error("convergence", str(exc), err, last_estimate=exc.last_estimate)
        return EXIT_FAILED
    except BracketingError as exc:
        _error("bracketing", str(exc), err)
        return EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
