"""Command-line interface.

Exit codes: 0 success / all claims verified, 1 ``verify-kgp`` found a violating
geodesic, 2 a reproduced claim was refuted, 3 a budget was exhausted, 4 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import families as fam
from .certificates import Certificate, witness_from_dict
from .checker import scan_common_geodesic
from .errors import BudgetExceededError, GeoposError, InvalidInputError
from .graph import Graph, default_budget, format_edge_list, read_edge_list
from .reproduce import SCOPES, exit_code, format_table, reproduce
from .solvers import enumerate_geodesics, gcover_exact, gpart_exact, kgp_exact
from .theta import is_partial_cube, theta_classes

EXIT_OK, EXIT_FALSE, EXIT_REFUTED, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3, 4


def load_graph(source: str) -> Graph:
    """A family spec such as ``benes:3``, or a path to an edge-list file."""
    path = Path(source)
    if path.is_file():
        return read_edge_list(path)
    try:
        return fam.generate(fam.parse_spec(source))
    except InvalidInputError as exc:
        raise InvalidInputError(f"{source!r} is neither a readable file nor a valid family spec ({exc})") from None


def load_edge_set(g: Graph, source: str) -> frozenset:
    """Read ``u v`` lines, or the witness of a certificate JSON document."""
    text = Path(source).read_text()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        if doc.get("witness", {}).get("type") != "edge_set":
            raise InvalidInputError("certificate does not carry an edge_set witness")
        return g.edge_set(witness_from_dict(doc))
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise InvalidInputError(f"{source}:{lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return g.edge_set(edges)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_gen(args) -> int:
    g = fam.generate(fam.parse_spec(args.spec))
    _emit(format_edge_list(g), args.out)
    return EXIT_OK


def cmd_verify_kgp(args) -> int:
    if args.k < 3:
        raise InvalidInputError(f"k must be >= 3, got {args.k}")
    g = load_graph(args.graph)
    s = load_edge_set(g, args.edgeset)
    scan = scan_common_geodesic(g, s)
    ok = scan.max_marked <= args.k - 1
    doc = {
        "k": args.k,
        "edges": len(s),
        "is_edge_kgp": ok,
        "max_marked": scan.max_marked,
        "pairs_swept": scan.pairs_swept,
        "violating_geodesic": None if ok or scan.witness is None else list(scan.witness.vertices),
    }
    _emit(_dump(doc), args.out)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    params = {"graph": args.graph}
    try:
        if args.problem == "kgp":
            if args.k is None:
                raise InvalidInputError("solve kgp needs -k")
            params["k"] = args.k
            catalog = enumerate_geodesics(g, maximal_only=True, budget=args.budget)
            res = kgp_exact(g, args.k, catalog, budget=args.budget)
        elif args.problem == "gcover":
            catalog = enumerate_geodesics(g, maximal_only=True, budget=args.budget)
            res = gcover_exact(g, catalog, budget=args.budget)
        else:
            res = gpart_exact(g, budget=args.budget)
    except BudgetExceededError as exc:
        doc = {"problem": args.problem, "params": params, "optimal": False, "lower": exc.lower, "upper": exc.upper, "reached": exc.reached, "error": str(exc)}
        _emit(_dump(doc), args.out)
        return EXIT_BUDGET
    stats = {}
    if res.problem == "kgp":
        scan = scan_common_geodesic(g, res.witness)
        stats = {"max_marked": scan.max_marked, "pairs_swept": scan.pairs_swept}
    cert = Certificate(f"solve:{res.problem}", params, res.optimum, res.witness, True, res.method, **stats)
    doc = cert.to_dict()
    doc["claim"]["params"]["nodes_explored"] = res.nodes_explored
    _emit(_dump(doc), args.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    rows = reproduce(args.scope, budget=args.budget)
    if args.json:
        text = _dump([r.to_dict(timing=args.timing) for r in rows])
    else:
        text = format_table(rows, timing=args.timing)
    _emit(text, args.out)
    return exit_code(rows)


def cmd_theta_classes(args) -> int:
    g = load_graph(args.graph)
    tc = theta_classes(g)
    doc = {"classes": len(tc), "sizes": tc.sizes(), "transitive": tc.transitive, "partial_cube": is_partial_cube(g)}
    _emit(_dump(doc), args.out)
    return EXIT_OK


def cmd_geodesics(args) -> int:
    g = load_graph(args.graph)
    cat = enumerate_geodesics(g, maximal_only=args.maximal_only, budget=args.budget)
    doc = {"count": len(cat), "maximal_only": cat.maximal_only, "max_length": cat.max_length}
    if args.list:
        doc["geodesics"] = [list(p.vertices) for p in cat.geodesics]
    _emit(_dump(doc), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--json", action="store_true", help="JSON output where a text form exists")
    common.add_argument("--budget", type=int, default=None, help="node/candidate budget for exhaustive work (default: $GEOPOS_BUDGET or 10^7)")

    p = argparse.ArgumentParser(prog="geopos", description="Edge general position sets and edge geodesic covers/partitions.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="write a family graph as an edge list")
    s.add_argument("spec", help="path:n | cycle:n | hypercube:d | torus:nxm | butterfly:r | benes:r | prod:<spec>,<spec>")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify-kgp", parents=[common], help="check that an edge set is an edge k-gp set")
    s.add_argument("graph", help="family spec or edge-list file")
    s.add_argument("edgeset", help="file of 'u v' lines or a certificate JSON")
    s.add_argument("-k", type=int, required=True)
    s.set_defaults(func=cmd_verify_kgp)

    s = sub.add_parser("solve", parents=[common], help="exactly solve kgp, gcover or gpart")
    s.add_argument("graph", help="family spec or edge-list file")
    s.add_argument("problem", choices=["kgp", "gcover", "gpart"])
    s.add_argument("-k", type=int)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("reproduce", parents=[common], help="regenerate the table of closed-form values")
    s.add_argument("scope", nargs="?", default="all", choices=["all", *SCOPES])
    s.add_argument("--timing", action="store_true", help="include wall times (output is then not byte-stable)")
    s.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("theta-classes", parents=[common], help="Θ-class sizes and partial-cube test as JSON")
    s.add_argument("graph")
    s.set_defaults(func=cmd_theta_classes)

    s = sub.add_parser("geodesics", parents=[common], help="count (or list) geodesics")
    s.add_argument("graph")
    s.add_argument("--maximal-only", action="store_true")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_geodesics)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "budget", None) is None:
            args.budget = default_budget()
        return args.func(args)
    except (GeoposError, OSError, json.JSONDecodeError, KeyError) as exc:
        if isinstance(exc, BudgetExceededError):
            print(f"budget exhausted: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
