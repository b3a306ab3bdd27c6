"""Command-line front end.

Exit codes: 0 all checks pass, 1 a property was refuted (witness on stdout),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .asano import AScheme, contract_graph, specialize
from .graph import (
    GraphError,
    OrientedGraph,
    UndirectedGraph,
    check_bipartite,
    deg2,
    double,
    graph_to_dict,
    parse_graph,
)
from .poly import IntPoly
from .roots import (
    NotIntegral,
    certify_deg2_bound,
    certify_purely_imaginary,
    certify_real_negative,
    numeric_roots,
    to_int_poly,
)
from .subgraphs import (
    closed_form_oriented_unbranched,
    closed_form_oriented_unbranched_even,
    poly_family,
    poly_undirected_unbranched,
    poly_v0,
)
from .suites import SUITES, dump_report, run_suite

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(doc, out: str | None) -> None:
    text = doc if isinstance(doc, str) else json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_graph(path: str):
    return parse_graph(_read(path))


def _oriented(g, what: str) -> OrientedGraph:
    if not isinstance(g, OrientedGraph):
        raise UsageError(f"{what} needs a directed graph; run 'double' on undirected input first")
    return g


def _undirected(g, what: str) -> UndirectedGraph:
    if not isinstance(g, UndirectedGraph):
        raise UsageError(f"{what} needs an undirected graph")
    return g


def _id_list(raw: str | None) -> list[str]:
    if not raw:
        return []
    return [s for s in raw.split(",") if s]


def _load_poly(args) -> tuple[IntPoly, OrientedGraph | None]:
    """Polynomial from --coeffs, a polynomial JSON file, or a graph file."""
    if args.coeffs is not None:
        try:
            return IntPoly(tuple(int(c) for c in args.coeffs.split(",") if c.strip())), None
        except ValueError:
            raise UsageError("--coeffs takes comma-separated integers") from None
    if args.input is None:
        raise UsageError("give a polynomial or graph file, or --coeffs")
    doc = json.loads(_read(args.input))
    if isinstance(doc, dict) and "coeffs" in doc:
        return IntPoly.from_dict(doc), None
    g = parse_graph(json.dumps(doc))
    if isinstance(g, UndirectedGraph):
        g = double(g).graph
    if getattr(args, "property", None) == "imaginary":
        return _even_poly(g), g
    return poly_family(g, "U"), g


def _even_poly(g: OrientedGraph) -> IntPoly:
    # raises NotBipartite; an arcless graph may colour everything into V1
    check_bipartite(g)
    return poly_family(g, "U_even", strict=False)


# -- subcommands -----------------------------------------------------------


def cmd_validate(args) -> int:
    g = _load_graph(args.input)
    info = {
        "valid": True,
        "directed": g.directed,
        "vertices": len(g.vertices),
        "edges": len(g.arcs) if g.directed else len(g.edges),
        "bipartition_supplied": g.bipartition is not None,
    }
    if not g.directed:
        info["simple"] = g.simple
    else:
        info["deg2"] = deg2(g)
    _emit(info, args.out)
    return EXIT_OK


def cmd_double(args) -> int:
    g = _undirected(_load_graph(args.input), "double")
    _emit(graph_to_dict(double(g).graph), args.out)
    return EXIT_OK


def cmd_poly(args) -> int:
    g = _load_graph(args.input)
    fam = args.family
    if fam == "unbranched":
        p = poly_family(_oriented(g, "unbranched"), "U")
    elif fam == "even":
        p = _even_poly(_oriented(g, "even"))
    elif fam == "v0":
        p = poly_v0(_oriented(g, "v0"), _id_list(args.v0))
    elif fam == "undirected":
        p = poly_undirected_unbranched(_undirected(g, "undirected"))
    elif fam == "closed31":
        p = closed_form_oriented_unbranched(_undirected(g, "closed31"))
    else:
        p = closed_form_oriented_unbranched_even(_undirected(g, "closed32"), literal=args.literal)
    if p.is_zero:
        sys.stderr.write("note: polynomial vanishes identically\n")
    _emit(p.to_dict(), args.out)
    return EXIT_OK


def cmd_engine(args) -> int:
    g = _oriented(_load_graph(args.input), "engine")
    if args.scheme == "ones":
        scheme = AScheme.ones(g)
    elif args.scheme == "zeta":
        scheme = AScheme.zeta_bipartite(g, check_bipartite(g))
    else:
        scheme = AScheme.from_v0(g, _id_list(args.v0))
    scheme = scheme.with_tilde(_id_list(args.tilde))
    P = contract_graph(g, scheme)
    if not args.specialize:
        _emit(P.to_dict(), args.out)
        return EXIT_OK
    coeffs = specialize(P)
    try:
        doc = to_int_poly(coeffs).to_dict()
    except NotIntegral:
        doc = {"cyc8_coeffs": [c.to_dict() for c in coeffs]}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    p, g = _load_poly(args)
    if p.is_zero:
        raise UsageError("polynomial vanishes identically; nothing to certify")
    prop = args.property
    if prop == "real-negative":
        cert = certify_real_negative(p)
    elif prop == "real-nonpositive":
        cert = certify_real_negative(p, allow_zero_root=True)
    elif prop == "imaginary":
        cert = certify_purely_imaginary(p)
    else:
        d2 = args.deg2
        if d2 is None:
            if g is None:
                raise UsageError("--property deg2 needs --deg2 or a graph input")
            d2 = deg2(g)
        cert = certify_deg2_bound(p, d2)
    doc = cert.to_dict()
    doc["polynomial"] = p.to_dict()["coeffs"]
    if not cert.proven and g is not None:
        doc["witness"] = graph_to_dict(g)
    _emit(doc, args.out)
    return EXIT_OK if cert.proven else EXIT_REFUTED


def cmd_roots(args) -> int:
    p, _ = _load_poly(args)
    if p.is_zero or p.degree < 1:
        raise UsageError("roots needs a polynomial of degree >= 1")
    report = numeric_roots(p, args.tol)
    doc = {"polynomial": p.to_dict()["coeffs"], **report.to_dict()}
    _emit(doc, args.out)
    return EXIT_OK if report.converged else EXIT_REFUTED


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.trials, args.seed, args.max_edges, timing=args.timing)
    _emit(dump_report(report), args.out)
    return EXIT_OK if not report["failures"] else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zerograph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_io(p, positional=True):
        if positional:
            p.add_argument("input", help="JSON file, or - for stdin")
        p.add_argument("--out", help="write JSON here instead of stdout")
        return p

    with_io(sub.add_parser("validate", help="check a graph file")).set_defaults(func=cmd_validate)
    with_io(sub.add_parser("double", help="replace each edge by two opposite arcs")).set_defaults(
        func=cmd_double
    )

    p = with_io(sub.add_parser("poly", help="graph-counting polynomial by enumeration"))
    p.add_argument(
        "--family",
        required=True,
        choices=["unbranched", "even", "v0", "undirected", "closed31", "closed32"],
    )
    p.add_argument("--v0", help="comma-separated vertex ids for --family v0")
    p.add_argument("--literal", action="store_true", help="closed32 with the (2z)^s factor")
    p.set_defaults(func=cmd_poly)

    p = with_io(sub.add_parser("engine", help="P(Z) by vertex factors and Asano contraction"))
    p.add_argument("--scheme", default="ones", choices=["ones", "zeta", "v0"])
    p.add_argument("--v0", help="comma-separated vertex ids for --scheme v0")
    p.add_argument("--tilde", help="comma-separated vertices that get 1 + p_x")
    p.add_argument("--specialize", action="store_true", help="set every arc variable to z")
    p.set_defaults(func=cmd_engine)

    for name, helptext in (("certify", "exact root-location certificate"),
                           ("roots", "numeric roots (Aberth-Ehrlich)")):
        p = with_io(sub.add_parser(name, help=helptext), positional=False)
        p.add_argument("input", nargs="?", help="polynomial or graph JSON file")
        p.add_argument("--coeffs", help="ascending integer coefficients, e.g. 1,1,1")
        if name == "certify":
            p.add_argument(
                "--property",
                required=True,
                choices=["real-negative", "real-nonpositive", "imaginary", "deg2"],
            )
            p.add_argument("--deg2", type=int, help="deg2 value for --property deg2")
            p.set_defaults(func=cmd_certify)
        else:
            p.add_argument("--tol", type=float, default=1e-12)
            p.set_defaults(func=cmd_roots)

    p = sub.add_parser("verify", help="seeded verification campaign")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"zerograph: error: {exc}\n")
        return EXIT_USAGE
    except (GraphError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"zerograph: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
