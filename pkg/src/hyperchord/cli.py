"""Command-line front end: ``hyperchord generate|delta|check|verify``.

Exit codes: 0 holds/pass, 1 fails, 2 bad arguments or unreadable input,
3 disconnected graph, 4 inconclusive (a budget stopped the search).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import reports
from .chordality import (
    IMPLICATION_ALIASES,
    IMPLICATIONS,
    Outcome,
    VerifyBudget,
    check_densely_path_chordal,
    check_edge_chordal,
    check_path_chordal,
    check_triangle_chordal,
    resolve_threads,
    verify_theorems,
)
from .cycles import CycleBudget, CycleError, cycle_from_vertices
from .families import (
    gen_complete,
    gen_cycle,
    gen_grid,
    gen_hyperapprox_line,
    gen_mod4,
    gen_mod8,
    gen_path,
    gen_quadrant,
    gen_star,
    gen_tree,
    gen_zxp3,
)
from .graph import DisconnectedGraph, GraphError, format_graph, read_graph
from .hyperbolicity import four_point_delta, rips_delta

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_DISCONNECTED, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4

PROPERTIES = ("edge-chordal", "path-chordal", "densely-path-chordal", "triangle-chordal")


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError(f"{text!r}: use an integer or num/den")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational") from None


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _family(args):
    n = args.n
    fam = args.family
    if fam in ("zxp3", "quadrant", "mod4", "mod8", "hyperapprox", "cycle", "path", "complete", "tree") and n is None:
        raise UsageError(f"{fam} needs --n")
    if fam == "zxp3":
        return gen_zxp3(n)
    if fam == "quadrant":
        return gen_quadrant(n)
    if fam == "mod4":
        return gen_mod4(n, args.chain_length)
    if fam == "mod8":
        return gen_mod8(n, args.chain_length)
    if fam == "hyperapprox":
        return gen_hyperapprox_line(n, args.extra_levels, args.margin)
    if fam == "cycle":
        return gen_cycle(n)
    if fam == "path":
        return gen_path(n)
    if fam == "complete":
        return gen_complete(n)
    if fam == "tree":
        return gen_tree(n, args.seed)
    if fam == "grid":
        if args.a is None or args.b is None:
            raise UsageError("grid needs --a and --b")
        return gen_grid(args.a, args.b)
    if fam == "star":
        return gen_star(args.legs, args.leg_length)
    raise UsageError(f"unknown family {fam!r}")


def cmd_generate(args, argv):
    start = time.perf_counter()
    try:
        fam = _family(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out is None:
        sys.stdout.write(format_graph(fam.graph))
        return EXIT_OK
    fam.write(args.out)
    result = {
        "kind": "generate",
        "family": fam.name,
        "params": {k: v for k, v in fam.params.items()},
        "graph_file": args.out,
        "sidecar_file": f"{args.out}.json",
        "cycles": sorted(fam.cycles),
        "paths": sorted(fam.paths),
    }
    _emit(argv, fam.graph, result, {}, start)
    return EXIT_OK


def _emit(argv, graph, result, budgets, start):
    wall = int((time.perf_counter() - start) * 1000)
    rep = reports.envelope(argv, graph, result, budgets, wall)
    sys.stdout.write(reports.dumps(rep) + "\n")


def _load(path):
    try:
        return read_graph(path)
    except DisconnectedGraph:
        raise
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_delta(args, argv):
    start = time.perf_counter()
    g = _load(args.graph)
    if args.method == "fourpoint":
        res = reports.fourpoint_json(g, four_point_delta(g))
        budgets = {}
    else:
        corners = args.corners
        est = rips_delta(g, args.resolution, geodesic_cap=args.geodesic_cap,
                         triple_cap=args.triple_cap, corners=corners)
        res = reports.rips_json(g, est, args.triple_cap)
        budgets = {"resolution": args.resolution, "geodesic_cap": args.geodesic_cap,
                   "triple_cap": args.triple_cap, "corners": corners}
    _emit(argv, g, res, budgets, start)
    return EXIT_OK


def _cycles_from_file(g, path, names):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read cycle file {path}: {exc}") from None
    table = data.get("cycles", {})
    names = names or list(table)
    out = []
    for name in names:
        if name not in table:
            raise UsageError(f"cycle {name!r} not in {path}")
        try:
            out.append(cycle_from_vertices(g, table[name]))
        except CycleError as exc:
            raise UsageError(f"cycle {name!r}: {exc}") from None
    return out


def default_max_length(k: Fraction) -> Fraction:
    """Default cycle scope when none is given: lengths up to max(2k, 16)."""
    return max(2 * k, Fraction(16))


def cmd_check(args, argv):
    start = time.perf_counter()
    prop = args.property
    if prop in ("densely-path-chordal", "triangle-chordal") and args.eps is None:
        raise UsageError(f"{prop} needs --eps")
    if prop in ("edge-chordal", "triangle-chordal") and args.m is None:
        raise UsageError(f"{prop} needs --m")
    g = _load(args.graph)
    cycles = _cycles_from_file(g, args.cycle_file, args.cycle) if args.cycle_file else None
    max_length = args.max_length if args.max_length is not None else default_max_length(args.k)
    budget = CycleBudget(max_cycles=args.max_cycles, max_length=max_length)
    common = {"cycles": cycles, "max_certificates": args.max_certificates, "threads": args.threads}
    if prop == "edge-chordal":
        v = check_edge_chordal(g, args.k, args.m, budget, **common)
    elif prop == "path-chordal":
        v = check_path_chordal(g, args.k, args.m, budget, **common)
    elif prop == "densely-path-chordal":
        v = check_densely_path_chordal(g, args.eps, args.k, args.m, budget, **common)
    else:
        v = check_triangle_chordal(g, args.eps, args.k, args.m, triple_cap=args.triple_cap,
                                   geodesic_cap=args.geodesic_cap, h=args.resolution,
                                   max_certificates=args.max_certificates, threads=args.threads)
    budgets = {"max_cycles": args.max_cycles, "max_length": max_length,
               "cycle_file": args.cycle_file, "threads": resolve_threads(args.threads)}
    if prop == "triangle-chordal":
        budgets = {"triple_cap": args.triple_cap, "geodesic_cap": args.geodesic_cap,
                   "resolution": args.resolution, "threads": resolve_threads(args.threads)}
    _emit(argv, g, reports.verdict_json(v), budgets, start)
    return {Outcome.HOLDS: EXIT_OK, Outcome.FAILS: EXIT_FAILS, Outcome.INCONCLUSIVE: EXIT_INCONCLUSIVE}[v.outcome]


def cmd_verify(args, argv):
    start = time.perf_counter()
    g = _load(args.graph)
    which = args.theorem or ["all"]
    names = []
    for w in which:
        if w == "all":
            names.extend(IMPLICATIONS)
        else:
            names.append(IMPLICATION_ALIASES.get(w, w))
    names = list(dict.fromkeys(names))
    budget = VerifyBudget(
        cycles=CycleBudget(max_cycles=args.max_cycles, max_length=args.max_length),
        h=args.resolution,
        rips_triple_cap=args.triple_cap,
        triangle_triple_cap=args.triangle_triple_cap,
        triangle_geodesic_cap=args.geodesic_cap,
        k=args.k, m=args.m, eps=args.eps,
        threads=args.threads,
    )
    rep = verify_theorems(g, budget, names)
    budgets = {"max_cycles": args.max_cycles, "max_length": args.max_length, "resolution": args.resolution,
               "triple_cap": args.triple_cap, "triangle_triple_cap": args.triangle_triple_cap,
               "geodesic_cap": args.geodesic_cap, "threads": resolve_threads(args.threads)}
    _emit(argv, g, reports.verify_json(g, rep), budgets, start)
    return {"pass": EXIT_OK, "fail": EXIT_FAILS, "inconclusive": EXIT_INCONCLUSIVE}[rep.status]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperchord", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=positive_int, default=None,
                   help="worker threads (default: HYPERCHORD_THREADS or 1); results do not depend on it")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a family instance and its sidecar")
    gen.add_argument("family", choices=["zxp3", "quadrant", "mod4", "mod8", "hyperapprox",
                                        "cycle", "path", "grid", "complete", "tree", "star"])
    gen.add_argument("--n", type=positive_int)
    gen.add_argument("--chain-length", type=positive_int, default=1)
    gen.add_argument("--extra-levels", type=int, default=1)
    gen.add_argument("--margin", type=int, default=None)
    gen.add_argument("--a", type=positive_int)
    gen.add_argument("--b", type=positive_int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--legs", type=positive_int, default=3)
    gen.add_argument("--leg-length", type=positive_int, default=1)
    gen.add_argument("-o", "--out", help="graph file; the sidecar goes to <out>.json (default: print graph)")

    de = sub.add_parser("delta", help="hyperbolicity estimate")
    de.add_argument("graph")
    de.add_argument("--method", choices=["fourpoint", "rips"], default="rips")
    de.add_argument("--resolution", type=rational, default=Fraction(1, 4))
    de.add_argument("--geodesic-cap", type=positive_int, default=None,
                    help="restrict each side to its first N geodesics (default: all)")
    de.add_argument("--triple-cap", type=positive_int, default=None)
    de.add_argument("--corners", choices=["junction", "vertices"], default="junction")

    ch = sub.add_parser("check", help="decide a chordality property")
    ch.add_argument("graph")
    ch.add_argument("--property", required=True, choices=PROPERTIES)
    ch.add_argument("--k", type=rational, required=True)
    ch.add_argument("--m", type=rational, default=None)
    ch.add_argument("--eps", type=rational, default=None)
    ch.add_argument("--max-cycles", type=positive_int, default=1_000_000)
    ch.add_argument("--max-length", type=rational, default=None,
                    help="cycle scope (default: max(2k, 16))")
    ch.add_argument("--cycle-file", default=None, help="sidecar JSON; check its cycles instead of enumerating")
    ch.add_argument("--cycle", action="append", default=None, help="cycle name from --cycle-file (repeatable)")
    ch.add_argument("--max-certificates", type=int, default=100)
    ch.add_argument("--resolution", type=rational, default=Fraction(1, 4))
    ch.add_argument("--triple-cap", type=positive_int, default=None)
    ch.add_argument("--geodesic-cap", type=positive_int, default=4)

    ve = sub.add_parser("verify", help="check the implications between the properties")
    ve.add_argument("graph")
    ve.add_argument("--theorem", action="append",
                    choices=["all", *IMPLICATIONS, *IMPLICATION_ALIASES], default=None)
    ve.add_argument("--k", type=rational, default=Fraction(5))
    ve.add_argument("--m", type=rational, default=Fraction(2))
    ve.add_argument("--eps", type=rational, default=Fraction(3))
    ve.add_argument("--max-cycles", type=positive_int, default=200_000)
    ve.add_argument("--max-length", type=rational, default=Fraction(20))
    ve.add_argument("--resolution", type=rational, default=Fraction(1, 4))
    ve.add_argument("--triple-cap", type=positive_int, default=200_000)
    ve.add_argument("--triangle-triple-cap", type=positive_int, default=200_000)
    ve.add_argument("--geodesic-cap", type=positive_int, default=4)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for name in ("resolution", "k", "m", "eps", "max_length"):
        val = getattr(args, name, None)
        if val is not None and (val < 0 or (name in ("resolution", "eps", "max_length") and val <= 0)):
            print(f"hyperchord: --{name.replace('_', '-')} out of range", file=sys.stderr)
            return EXIT_USAGE
    handler = {"generate": cmd_generate, "delta": cmd_delta, "check": cmd_check, "verify": cmd_verify}
    try:
        return handler[args.command](args, ["hyperchord", *argv])
    except DisconnectedGraph as exc:
        print(f"hyperchord: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except (UsageError, GraphError, ValueError) as exc:
        print(f"hyperchord: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
