"""Command-line surface.

Five subcommands: ``generate`` (family -> edge list), ``curvature`` (pair
table), ``spectrum`` (eigenvalues or a raw operator dump), ``verify`` (full
check report) and ``selftest`` (the eleven-criterion acceptance gate).

Exit codes: 0 success, 1 at least one asserted check or criterion failed,
2 usage or input errors.  Output is byte-deterministic for a fixed argv and
input: no timestamps, no environment lookups, floats printed with 17
significant digits in machine formats and 6 in text tables.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .acceptance import run_all
from .curvature import ricci, ricci_all_adjacent
from .errors import EdgeRicciError, InvalidParameterError
from .graph_core import generate, parse_edgelist, parse_weighted, serialize_edgelist
from .laplacian import OPERATORS, WEIGHTINGS, assemble, canonical_orientation, dump_matrix
from .spectra import spectrum_of
from .verify import (
    _json_value,
    curvature_to_csv,
    report_to_json,
    report_to_text,
    verification_report,
)

_FORMATS = ("json", "csv", "text")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="edge-ricci",
        description="Edge curvature, combinatorial Laplacians, and spectral "
                    "bound verification for finite graphs.")
    sub = top.add_subparsers(dest="command", required=True)

    def add_input(p, need_weighted_flag=True):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="FILE",
                         help="read the graph from FILE (edge list, or the "
                              "weighted JSON document with --weighted)")
        src.add_argument("--family", metavar="SPEC",
                         help="build a named family, e.g. complete:5, "
                              "bipartite:2:3, circulant:9:1,2, petersen")
        if need_weighted_flag:
            p.add_argument("--weighted", action="store_true",
                           help="treat --input as the weighted JSON document")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized families (default 0)")

    def add_output(p):
        p.add_argument("--output", metavar="FILE",
                       help="write to FILE instead of stdout")

    p = sub.add_parser("generate", help="emit a family graph as an edge list")
    p.add_argument("--family", metavar="SPEC", required=True)
    p.add_argument("--seed", type=int, default=0)
    add_output(p)

    p = sub.add_parser("curvature", help="curvature of edge pairs")
    add_input(p)
    p.add_argument("--all-pairs", action="store_true",
                   help="every distinct pair, not only adjacent ones")
    p.add_argument("--format", choices=_FORMATS, default="text")
    add_output(p)

    p = sub.add_parser("spectrum", help="eigenvalues of a graph operator")
    add_input(p)
    p.add_argument("--operator", choices=OPERATORS, default="edge")
    p.add_argument("--weighting", choices=WEIGHTINGS, default="degree")
    p.add_argument("--zero-tol", type=float, default=None,
                   help="absolute zero threshold (default: 1e-8 * max(1, largest eigenvalue))")
    p.add_argument("--dump-matrix", choices=OPERATORS, metavar="KIND",
                   help="print the assembled KIND operator matrix instead of eigenvalues")
    p.add_argument("--format", choices=_FORMATS, default="text")
    add_output(p)

    p = sub.add_parser("verify", help="run every check and print a report")
    add_input(p)
    p.add_argument("--zero-tol", type=float, default=None)
    p.add_argument("--format", choices=_FORMATS, default="text",
                   help="csv emits the curvature table only")
    add_output(p)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the randomized corpora (default 0)")
    add_output(p)

    return top


def _load_graph(args):
    """Input source -> Graph or WeightedGraph per the flags."""
    if args.input is not None:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidParameterError(f"cannot read {args.input}: {exc.strerror}")
        return parse_weighted(text) if getattr(args, "weighted", False) \
            else parse_edgelist(text)
    if getattr(args, "weighted", False):
        raise InvalidParameterError(
            "--weighted needs --input with the weighted JSON document; "
            "families are unweighted")
    return generate(args.family, seed=args.seed)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _kappa_float(kappa) -> float:
    return float(kappa) if isinstance(kappa, Fraction) else kappa


def _cmd_generate(args) -> int:
    _emit(serialize_edgelist(generate(args.family, seed=args.seed)), args.output)
    return 0


def _curvature_rows(g, all_pairs: bool):
    base = g.graph if hasattr(g, "graph") else g
    if all_pairs:
        pairs = ((e, f) for e in range(base.n_edges)
                 for f in range(e + 1, base.n_edges))
        table = {(e, f): ricci(g, e, f) for e, f in pairs}
    else:
        table = ricci_all_adjacent(g)
    return [(base.edge_name(e), base.edge_name(f), _kappa_float(cp.kappa))
            for (e, f), cp in sorted(table.items())]


def _cmd_curvature(args) -> int:
    rows = _curvature_rows(_load_graph(args), args.all_pairs)
    if args.format == "json":
        body = ",\n    ".join(_json_value(list(r)) for r in rows)
        text = '{\n  "curvature": [\n    ' + body + "\n  ]\n}\n" if rows \
            else '{\n  "curvature": []\n}\n'
    elif args.format == "csv":
        lines = ["e,e2,kappa"]
        lines += [f"{e},{f},{k:.17g}" for e, f, k in rows]
        text = "\n".join(lines) + "\n"
    else:
        width = max([len(e) for e, _, _ in rows] + [len(f) for _, f, _ in rows] + [4])
        lines = [f"{'e':<{width}}  {'e2':<{width}}  kappa"]
        lines += [f"{e:<{width}}  {f:<{width}}  {k:.6g}" for e, f, k in rows]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def _cmd_spectrum(args) -> int:
    g = _load_graph(args)
    if args.dump_matrix is not None:
        base = g.graph if hasattr(g, "graph") else g
        orientation = canonical_orientation(base)
        matrix = assemble(g, args.dump_matrix, args.weighting, orientation)
        _emit(dump_matrix(matrix, args.dump_matrix, orientation), args.output)
        return 0
    spec = spectrum_of(g, args.operator, args.weighting, zero_tol=args.zero_tol)
    values = spec.values
    if args.format == "json":
        payload = {
            "operator": args.operator,
            "weighting": args.weighting,
            "zero_tol": spec.zero_tol,
            "values": list(values),
            "zero_multiplicity": spec.zero_multiplicity,
            "lambda1": spec.lambda1 if spec.zero_multiplicity < len(values) else None,
        }
        text = _json_value(payload) + "\n"
    elif args.format == "csv":
        text = "\n".join(["index,value"] + [f"{i},{v:.17g}" for i, v in enumerate(values)]) + "\n"
    else:
        lines = [f"{args.operator} operator, {args.weighting} weighting: "
                 f"{len(values)} eigenvalues, {spec.zero_multiplicity} zero "
                 f"(tol {spec.zero_tol:.6g})"]
        lines += [f"  {i:3d}  {v:.6g}" for i, v in enumerate(values)]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return 0


def _cmd_verify(args) -> int:
    report = verification_report(_load_graph(args), zero_tol=args.zero_tol)
    if args.format == "json":
        text = report_to_json(report)
    elif args.format == "csv":
        text = curvature_to_csv(report)
    else:
        text = report_to_text(report)
    _emit(text, args.output)
    return 1 if report.failed() else 0


def _cmd_selftest(args) -> int:
    results = run_all(seed=args.seed)
    lines = [r.line() for r in results]
    bad = [r for r in results if not r.passed]
    lines.append(f"{len(results) - len(bad)}/{len(results)} criteria passed")
    _emit("\n".join(lines) + "\n", args.output)
    return 1 if bad else 0


_DISPATCH = {
    "generate": _cmd_generate,
    "curvature": _cmd_curvature,
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
    "selftest": _cmd_selftest,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except EdgeRicciError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
