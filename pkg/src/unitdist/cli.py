"""Command-line interface.

Reports go to standard output as JSON; a one-line human summary goes to
standard error.  Exit status: 0 pass, 1 property failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from . import properties
from .cnf import emit_dimacs, encode
from .constructions import CONSTRUCTION_IDS, FIXTURES, UnknownConstructionError, build
from .graph import GraphFormatError, UnitDistanceGraph, stats
from .render import render_svg
from .solver import InvalidColouring, constraint_from_json, validate_colouring

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CHECKS: dict[str, tuple[Callable[..., properties.Verdict], str | None]] = {
    "h-classes": (lambda g=None: properties.check_h_classes(), None),
    "j-linking": (lambda g=None: properties.check_j_linking_property(g), "J"),
    "k-diagonals": (lambda g=None: properties.check_k_diagonal_property(g), "K"),
    "l-property": (lambda g=None: properties.check_l_property(g), "L"),
    "m-property": (lambda g=None: properties.check_m_property(g), "M"),
    "g-5colouring": (lambda g=None: properties.check_g_colouring(g), "G"),
}


class UsageError(Exception):
    pass


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def load_graph(source: str) -> UnitDistanceGraph:
    """A construction name or the path of a JSON graph file."""
    if source in CONSTRUCTION_IDS:
        return build(source)
    path = Path(source)
    if not path.exists():
        raise UsageError(
            f"{source!r} is neither a construction ({', '.join(CONSTRUCTION_IDS)}) nor a file"
        )
    try:
        return UnitDistanceGraph.loads(path.read_text())
    except GraphFormatError as exc:
        raise UsageError(f"{source}: {exc}") from exc


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def cmd_build(args) -> int:
    try:
        g = build(args.name)
    except UnknownConstructionError as exc:
        raise UsageError(exc.args[0]) from None
    _write(g.dumps() + "\n", args.out)
    _say(f"{args.name}: {g.n} vertices, {len(g.edges)} edges")
    return EXIT_PASS


def cmd_stats(args) -> int:
    g = load_graph(args.graph)
    s = stats(g).as_dict()
    _emit(s)
    _say(", ".join(f"{k}={v}" for k, v in s.items()))
    return EXIT_PASS


def cmd_check(args) -> int:
    fn, _ = CHECKS[args.property]
    g = load_graph(args.graph) if args.graph else None
    t = time.perf_counter()
    try:
        verdict = fn(g)
    except properties.MissingAnnotation as exc:
        raise UsageError(str(exc)) from exc
    report = verdict.as_dict()
    report["seconds"] = round(time.perf_counter() - t, 3)
    _emit(report)
    _say(f"{args.property}: {'PASS' if verdict.passed else 'FAIL'} ({report['seconds']} s)")
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def _parse_constraints(source: str | None, g: UnitDistanceGraph):
    if not source:
        return []
    if source == "triple-free":
        return properties.triple_free_constraints(g)
    try:
        data = json.loads(Path(source).read_text())
        return [constraint_from_json(d) for d in data]
    except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad constraints {source!r}: {exc}") from exc


def cmd_cnf(args) -> int:
    g = load_graph(args.graph)
    if args.k < 1:
        raise UsageError("--k must be positive")
    constraints = _parse_constraints(args.constraints, g)
    try:
        f = encode(g, args.k, constraints)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    f.comments.append(f"{g.n}-vertex unit-distance graph, {args.k} colours, variable = vertex*k + colour")
    _write(emit_dimacs(f), args.out)
    _say(f"p cnf {f.num_vars} {len(f.clauses)}")
    return EXIT_PASS


def cmd_render(args) -> int:
    g = load_graph(args.graph)
    colouring = None
    if args.colouring:
        try:
            colouring = json.loads(Path(args.colouring).read_text())
            validate_colouring(g, colouring)
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError(f"bad colouring: {exc}") from exc
    _write(render_svg(g, colouring), args.out)
    _say(f"rendered {g.n} vertices, {len(g.edges)} edges")
    return EXIT_PASS


def fixture_report(names: Sequence[str]) -> dict:
    out = {}
    for name in names:
        s = stats(build(name)).as_dict()
        expected = FIXTURES[name]
        out[name] = {
            "expected": expected,
            "actual": {k: s[k] for k in expected},
            "passed": all(s[k] == v for k, v in expected.items()),
        }
    return out


def cmd_verify_all(args) -> int:
    report: dict = {}
    names = [n for n in FIXTURES if not (args.skip_slow and n == "N")]
    t = time.perf_counter()
    report["fixtures"] = fixture_report(names)
    ok = all(v["passed"] for v in report["fixtures"].values())
    _say(f"fixtures: {'PASS' if ok else 'FAIL'}")
    checks = ["h-classes", "j-linking", "k-diagonals", "l-property"]
    if not args.skip_slow:
        checks.append("m-property")
    for name in checks:
        v = CHECKS[name][0]()
        report[name] = v.as_dict()
        _say(f"{name}: {'PASS' if v.passed else 'FAIL'}")
        ok = ok and v.passed
    report["passed"] = ok
    report["seconds"] = round(time.perf_counter() - t, 3)
    _emit(report)
    return EXIT_PASS if ok else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unitdist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a named graph and write it as JSON")
    b.add_argument("name")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("stats", help="vertex/edge/H-copy/spindle/triangle counts")
    s.add_argument("graph", help="construction name or JSON graph file")
    s.set_defaults(func=cmd_stats)

    c = sub.add_parser("check", help="run one colouring property check")
    c.add_argument("property", choices=sorted(CHECKS))
    c.add_argument("--graph", help="JSON graph file to check instead of the built-in one")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("cnf", help="write a DIMACS CNF for k-colourability")
    f.add_argument("graph", help="construction name or JSON graph file")
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--constraints", help="'triple-free' or a JSON file of constraints")
    f.add_argument("--out")
    f.set_defaults(func=cmd_cnf)

    r = sub.add_parser("render", help="draw a graph as SVG")
    r.add_argument("graph", help="construction name or JSON graph file")
    r.add_argument("--out")
    r.add_argument("--colouring", help="JSON array of colours in vertex order")
    r.set_defaults(func=cmd_render)

    v = sub.add_parser("verify-all", help="fixtures plus every property check")
    v.add_argument("--skip-slow", action="store_true")
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _say(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
