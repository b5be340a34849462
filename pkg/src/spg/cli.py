"""Command-line front end.

Exit codes: 0 success (including NotSpg verdicts), 1 malformed input or
unwritable output, 2 unreachable endpoints, 3 geodesic cap or work budget
exceeded, 4 precondition failed, 5 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from spg.classifier import InternalInconsistency, classify, forbidden_structures
from spg.formats import GraphFormatError, parse_edge_list, parse_graph_json
from spg.geodesics import DEFAULT_GEODESIC_CAP, GeodesicCapExceeded, SpgGraph, Unreachable, build_spg
from spg.graph import Graph
from spg.structure import DEFAULT_WORK_BUDGET, BudgetExhausted
from spg.synthesis import NotSynthesizable, SynthesisError, synthesize, verify

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_UNREACHABLE = 2
EXIT_CAP = 3
EXIT_PRECONDITION = 4
EXIT_INTERNAL = 5

FORMATS_HELP = """\
input formats (detected from content):
  edge list   first line "n m", then m lines "u v" (0 <= u, v < n); '#' lines are comments
  graph JSON  {"n": int, "edges": [[u, v], ...]}
  SPG JSON    {"geodesics": [[v, ...], ...], "edges": [[i, j, label], ...], "a": int, "b": int}
              (as written by "compute --out json"; the SPG itself is used as the graph)

environment:
  SPG_MAX_PATHS    default geodesic cap (default %d)
  SPG_WORK_BUDGET  node-expansion budget for hole searches (default %d)

exit codes:
  0 ok (verdicts such as NotSpg are data, not failures)
  1 malformed input or unwritable output path
  2 unreachable endpoints
  3 geodesic cap or work budget exceeded
  4 precondition failed (e.g. synthesize on a graph not certified as an SPG)
  5 internal inconsistency
""" % (DEFAULT_GEODESIC_CAP, DEFAULT_WORK_BUDGET)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise CliError(EXIT_MALFORMED, f"{name}={raw!r} is not an integer") from None
    if value < 1:
        raise CliError(EXIT_MALFORMED, f"{name} must be positive")
    return value


def read_graph(path: str) -> Graph:
    """Load a graph from an edge-list, graph JSON or SPG JSON file (``-`` for stdin)."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_MALFORMED, f"cannot read {path}: {exc}") from None
    try:
        if text.lstrip().startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise GraphFormatError(f"invalid JSON: {exc}") from None
            if isinstance(data, dict) and "geodesics" in data:
                return SpgGraph.from_dict(data).graph
            return parse_graph_json(text)
        return parse_edge_list(text)
    except (GraphFormatError, ValueError) as exc:
        raise CliError(EXIT_MALFORMED, f"{path}: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise CliError(EXIT_MALFORMED, f"cannot write {path}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


# -- verbs ------------------------------------------------------------------------


def cmd_compute(args) -> int:
    g = read_graph(args.graph)
    cap = args.max_paths or _env_int("SPG_MAX_PATHS", DEFAULT_GEODESIC_CAP)
    for v in (args.source, args.target):
        if not 0 <= v < g.n:
            raise CliError(EXIT_MALFORMED, f"endpoint {v} out of range for n={g.n}")
    if args.source == args.target:
        raise CliError(EXIT_MALFORMED, "source and target must differ")
    try:
        spg = build_spg(g, args.source, args.target, cap)
    except Unreachable as exc:
        raise CliError(EXIT_UNREACHABLE, str(exc)) from None
    except GeodesicCapExceeded as exc:
        raise CliError(EXIT_CAP, str(exc)) from None
    _write(args.output, spg.to_dot() if args.out == "dot" else _dump(spg.to_dict()))
    return EXIT_OK


def cmd_classify(args) -> int:
    g = read_graph(args.graph)
    budget = _env_int("SPG_WORK_BUDGET", DEFAULT_WORK_BUDGET)
    verdict = classify(g, budget=budget)
    _write(args.output, _dump(verdict.to_dict()))
    return EXIT_OK


def cmd_forbidden(args) -> int:
    g = read_graph(args.graph)
    budget = _env_int("SPG_WORK_BUDGET", DEFAULT_WORK_BUDGET)
    _write(args.output, _dump([w.to_dict() for w in forbidden_structures(g, budget=budget)]))
    return EXIT_OK


def _synthesize_or_fail(g: Graph, strict: bool):
    try:
        return synthesize(g, strict=strict)
    except NotSynthesizable as exc:
        print(_dump(exc.verdict.to_dict()), file=sys.stderr)
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    except SynthesisError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None


def cmd_synthesize(args) -> int:
    g = read_graph(args.graph)
    cert = _synthesize_or_fail(g, not args.fast)
    _write(args.out, _dump(cert.to_dict()))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    _synthesize_or_fail(g, not args.fast)
    result = verify(g, strict=not args.fast)
    status = "PASS" if result.passed else "FAIL"
    print(status)
    print(_dump({
        "status": status,
        "index_levels": result.certificate.index_levels,
        "correspondence": {str(t): i for t, i in (result.correspondence or {}).items()},
    }))
    return EXIT_OK if result.passed else EXIT_INTERNAL


def cmd_search(args) -> int:
    from spg.oracle import SpgCatalog, exhaustive_search, property_suite

    if args.max_base_vertices < 3:
        raise CliError(EXIT_PRECONDITION, "--max-base-vertices must be at least 3")
    cap = _env_int("SPG_MAX_PATHS", DEFAULT_GEODESIC_CAP)
    before = 0
    if args.catalog:
        path = Path(args.catalog)
        try:
            if path.exists():
                before = len(SpgCatalog.load(path))
            with open(path, "a"):
                pass
        except OSError as exc:
            raise CliError(EXIT_MALFORMED, f"catalog path {path} is not writable: {exc}") from None
        except (ValueError, KeyError) as exc:
            raise CliError(EXIT_MALFORMED, f"catalog {path} is malformed: {exc}") from None
    catalog = exhaustive_search(args.max_base_vertices, cap=cap, path=args.catalog, workers=args.workers)
    results = property_suite(catalog)
    print(f"catalog: {len(catalog)} SPGs ({len(catalog) - before} new), "
          f"base graphs up to {catalog.max_base_vertices} vertices, {len(catalog.exclusions)} exclusions")
    for r in results:
        print(f"{r.status.upper():4}  {r.check}  ({r.checked} checked)")
    if args.report:
        _write(args.report, _dump([r.to_dict() for r in results]))
    return EXIT_OK if all(r.status == "pass" for r in results) else EXIT_INTERNAL


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spg",
        description="Shortest path graphs: compute, classify, synthesize and verify.",
        epilog=FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, description=help, epilog=FORMATS_HELP,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    p = verb("compute", "compute the shortest path graph S(G, a, b)")
    p.add_argument("graph", help="base graph file ('-' for stdin)")
    p.add_argument("--source", "-a", type=int, required=True)
    p.add_argument("--target", "-b", type=int, required=True)
    p.add_argument("--max-paths", type=int, default=None, help="geodesic cap (all-or-nothing)")
    p.add_argument("--out", choices=("dot", "json"), default="json")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_compute)

    p = verb("classify", "JSON verdict for a graph: SpgByTheorem, NotSpg or UnknownContainsC4")
    p.add_argument("graph")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_classify)

    p = verb("forbidden", "list one witness per forbidden or gating induced structure found")
    p.add_argument("graph")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_forbidden)

    p = verb("synthesize", "write a certificate: a two-index-level base graph realising the graph")
    p.add_argument("graph")
    p.add_argument("--out", default=None, help="certificate file (default stdout)")
    p.add_argument("--fast", action="store_true", help="skip per-step recomputation checks")
    p.set_defaults(func=cmd_synthesize)

    p = verb("verify", "synthesize, recompute the SPG and check it is isomorphic to the graph")
    p.add_argument("graph")
    p.add_argument("--fast", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = verb("search", "exhaustive catalog of small SPGs plus the structural property suite")
    p.add_argument("--max-base-vertices", "-n", type=int, required=True)
    p.add_argument("--catalog", default=None, help="append-only catalog file (JSON lines)")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--report", default=None, help="write the JSON report here")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"spg {args.verb}: {exc}", file=sys.stderr)
        return exc.code
    except (GeodesicCapExceeded, BudgetExhausted) as exc:
        print(f"spg {args.verb}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalInconsistency as exc:
        print(f"spg {args.verb}: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
