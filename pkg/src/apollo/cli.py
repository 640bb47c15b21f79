"""Command-line entry point.

Exit codes: 0 ok, 1 verification failure, 2 usage or input error,
3 a resource guard tripped (raise the relevant limit).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .depth import DEFAULT_MAX_STEPS, depth_triple, depth_z, depth_z_algorithm
from .errors import ApolloError, ResourceGuardError
from .numerics import INF, ComplexScalar, Scalar, point, to_scalar
from .packing import (
    DEFAULT_MAX_DISKS,
    belt_seed,
    build_tricycle_graph,
    generate_packing,
    graph_depth,
    packing_to_csv,
    packing_to_json,
    seed_from_curvatures,
    window_seed,
)
from .render import render_depth, render_packing_svg, render_tessellation_svg, write_ppm
from .symmetry import XI_GENERATORS, apply_word_coordinates, canonicalize_to_P, orbit_sample
from .verify import SUITES, run_suite

# a value for this triple that circulates in print; the literal rule gives 4
_QUOTED_DEPTHS = {(23, 62, 179): 3}


def scalar_arg(s: str) -> Scalar:
    try:
        return to_scalar(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None


def jnum(v):
    """Exact values as int or "p/q" strings, floats as floats."""
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, int):
        return v
    return float(v)


def jpoint(z):
    if z is INF:
        return "inf"
    return {"x": jnum(z.re), "y": jnum(z.im)}


def tpoint(z) -> str:
    if z is INF:
        return "inf"
    return f"({z.re}, {z.im})"


def _emit(args, doc, text_lines: List[str]):
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        for line in text_lines:
            print(line)


# --- subcommands ----------------------------------------------------------------


def cmd_depth(args) -> int:
    warnings = []
    if args.triple:
        r = depth_triple(args.triple, max_steps=args.max_steps)
        key = tuple(sorted(int(v) for v in args.triple if isinstance(v, Fraction) and v.denominator == 1))
        if len(key) == 3 and key in _QUOTED_DEPTHS and _QUOTED_DEPTHS[key] != r.depth:
            warnings.append(
                f"depth {_QUOTED_DEPTHS[key]} is often quoted for this triple; stepping literally "
                f"(replace the largest entry until a value <= 0 appears) takes {r.depth} moves"
            )
        walk = None
    else:
        z = point(*args.z)
        r = depth_z(z, max_steps=args.max_steps)
        walk = depth_z_algorithm(z, max_steps=args.max_steps)
    for w in warnings:
        print(f"WARNING: {w}", file=sys.stderr)
    doc = {"depth": r.depth, "exact": r.exact, "warnings": warnings}
    lines = [f"depth {r.depth}"]
    if args.trace:
        doc["chain"] = [[jnum(v) for v in t] for t in r.chain]
        lines += ["chain:"] + ["  (" + ", ".join(str(v) for v in t) + ")" for t in r.chain]
        if walk is not None:
            doc["word"] = walk.word_string()
            doc["moves"] = list(walk.moves)
            lines.append(f"word: {walk.word_string() or '(empty)'}")
            lines.append("moves: " + (" ".join(walk.moves) or "(none)"))
    _emit(args, doc, lines)
    return 0


def cmd_render_depth(args) -> int:
    r = render_depth(args.window, args.size[0], args.size[1], args.max_depth, args.mode, workers=args.threads)
    write_ppm(r, args.out)
    doc = {"out": args.out, "width": r.width, "height": r.height, "max_depth_seen": int(r.depths.max())}
    _emit(args, doc, [f"wrote {args.out} ({r.width}x{r.height})"])
    return 0


def cmd_canonicalize(args) -> int:
    z = point(*args.z)
    c = canonicalize_to_P(z, max_steps=args.max_steps)
    if c.boundary:
        print("WARNING: the representative lies on the boundary of P", file=sys.stderr)
    doc = {"point": jpoint(c.point), "word": list(c.word), "boundary": c.boundary}
    _emit(args, doc, [f"zP {tpoint(c.point)}", "word " + (" ".join(c.word) or "(empty)"),
                      f"boundary {'yes' if c.boundary else 'no'}"])
    return 0


def cmd_orbit(args) -> int:
    z = point(*args.z)
    if args.word is not None:
        names = args.word.replace(",", " ").split()
        w = apply_word_coordinates(names, z)
        doc = {"word": names, "image": jpoint(w)}
        _emit(args, doc, [tpoint(w)])
        return 0
    pts = orbit_sample(z, args.length)
    doc = {"length": args.length, "count": len(pts), "points": [jpoint(p) for p in pts]}
    _emit(args, doc, [f"{len(pts)} points"] + [tpoint(p) for p in pts])
    return 0


def _seed_from_args(args):
    if args.preset == "window":
        return window_seed()
    if args.preset == "belt":
        return belt_seed()
    if not args.seed:
        raise SystemExit("packing: give --seed a b c d or --preset")
    a, b, c, d = args.seed
    return seed_from_curvatures(a, b, c, d)


def _packing_from_args(args):
    bounds = tuple(float(v) for v in args.bounds) if args.bounds else None
    return generate_packing(_seed_from_args(args), args.max_curvature, max_level=args.max_level,
                            bounds=bounds, max_disks=args.max_disks)


def cmd_packing(args) -> int:
    p = _packing_from_args(args)
    kind = args.export
    if kind is None:
        kind = args.out.rsplit(".", 1)[-1].lower() if args.out and "." in args.out else "json"
    if kind == "svg":
        text = render_packing_svg(p, labels=args.labels)
    elif kind == "csv":
        text = packing_to_csv(p)
    elif kind == "json":
        text = packing_to_json(p)
    else:
        raise SystemExit(f"packing: unknown export format {kind!r}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        doc = {"out": args.out, "disks": len(p.disks), "export": kind}
        _emit(args, doc, [f"wrote {args.out} ({len(p.disks)} disks)"])
    else:
        sys.stdout.write(text)
    return 0


def cmd_tessellation(args) -> int:
    svg = render_tessellation_svg(args.words, args.window, width=args.width)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        _emit(args, {"out": args.out}, [f"wrote {args.out}"])
    else:
        sys.stdout.write(svg)
    return 0


def cmd_graph_depth(args) -> int:
    p = _packing_from_args(args)
    g = build_tricycle_graph(p)
    found = g.find(args.vertex)
    if not found:
        print("error: no tricycle with these curvatures in the generated packing", file=sys.stderr)
        return 2
    rows = []
    for v in found:
        r = graph_depth(g, v)
        rows.append({"disks": list(v), "graph_depth": r.depth, "complete": r.complete,
                     "greedy_depth": depth_triple(g.curvatures(v)).depth})
    lines = [f"tricycle {r['disks']}: graph depth {r['graph_depth']}"
             f"{'' if r['complete'] else ' (ball pruned)'}, greedy depth {r['greedy_depth']}" for r in rows]
    _emit(args, {"vertices": rows}, lines)
    return 0


def cmd_verify(args) -> int:
    claims = run_suite(args.suite)
    hard = [c for c in claims if not c.discrepancy]
    soft = [c for c in claims if c.discrepancy]
    ok = all(c.passed for c in hard)
    doc = {
        "suite": args.suite,
        "passed": ok,
        "claims": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in hard],
        "discrepancies": [{"name": c.name, "holds": c.passed, "detail": c.detail} for c in soft],
    }
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail else "") for c in hard]
    if soft:
        lines.append("known discrepancies (not counted):")
        lines += [f"  {'holds' if c.passed else 'differs'}  {c.name}  [{c.detail}]" for c in soft]
    lines.append("all claims pass" if ok else "some claims FAILED")
    _emit(args, doc, lines)
    return 0 if ok else 1


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="report format (default text)")

    ap = argparse.ArgumentParser(prog="apollo", description="Apollonian depth, symmetry and packing tools")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("depth", parents=[common], help="depth of a curvature triple or a point z")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--triple", nargs=3, type=scalar_arg, metavar=("A", "B", "C"))
    g.add_argument("--z", nargs=2, type=scalar_arg, metavar=("X", "Y"))
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS, help="step guard (default %(default)s)")
    s.add_argument("--trace", action="store_true", help="print the chain (and the walk word for --z)")
    s.set_defaults(func=cmd_depth)

    s = sub.add_parser("render-depth", parents=[common], help="render the depth fractal as PPM")
    s.add_argument("--window", nargs=4, type=scalar_arg, default=[-3, 3, 0, 1],
                   metavar=("XMIN", "XMAX", "YMIN", "YMAX"), help="default -3 3 0 1")
    s.add_argument("--size", nargs=2, type=int, default=[600, 200], metavar=("W", "H"), help="default 600 200")
    s.add_argument("--mode", choices=("spinor", "web"), default="spinor")
    s.add_argument("--max-depth", type=int, default=64, help="overflow cutoff (default %(default)s)")
    s.add_argument("--threads", type=int, default=None, help="worker count (default APOLLO_THREADS or CPU count)")
    s.add_argument("--out", required=True, help="output .ppm path")
    s.set_defaults(func=cmd_render_depth)

    s = sub.add_parser("canonicalize", parents=[common], help="reduce z to its representative in P")
    s.add_argument("--z", nargs=2, type=scalar_arg, required=True, metavar=("X", "Y"))
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    s.set_defaults(func=cmd_canonicalize)

    s = sub.add_parser("orbit", parents=[common], help="apply a word to z, or sample its orbit")
    s.add_argument("--z", nargs=2, type=scalar_arg, required=True, metavar=("X", "Y"))
    g = s.add_mutually_exclusive_group()
    g.add_argument("--word", help=f"generator names applied left to right, e.g. 'T S F' (from {', '.join(XI_GENERATORS)}, R, P)")
    g.add_argument("--length", type=int, default=2, help="orbit sample word length <= 8 (default %(default)s)")
    s.set_defaults(func=cmd_orbit)

    packing_flags = argparse.ArgumentParser(add_help=False)
    packing_flags.add_argument("--seed", nargs=4, type=scalar_arg, metavar=("A", "B", "C", "D"),
                               help="Descartes quadruple of curvatures")
    packing_flags.add_argument("--preset", choices=("window", "belt"), help="use a standard seed instead")
    packing_flags.add_argument("--max-curvature", type=scalar_arg, default=None)
    packing_flags.add_argument("--max-level", type=int, default=None, help="generation cap")
    packing_flags.add_argument("--bounds", nargs=4, type=float, metavar=("XMIN", "XMAX", "YMIN", "YMAX"),
                               help="drop disks outside this box (needed for seeds with lines)")
    packing_flags.add_argument("--max-disks", type=int, default=DEFAULT_MAX_DISKS)

    s = sub.add_parser("packing", parents=[common, packing_flags], help="generate a packing (JSON/CSV/SVG)")
    s.add_argument("--out", help="output path; format inferred from the extension")
    s.add_argument("--export", choices=("json", "csv", "svg"), help="override the output format")
    s.add_argument("--labels", action="store_true", help="curvature labels in SVG output")
    s.set_defaults(func=cmd_packing)

    s = sub.add_parser("tessellation", parents=[common], help="SVG of the mirror tessellation")
    s.add_argument("--words", type=int, default=4, help="maximum word length <= 8 (default %(default)s)")
    s.add_argument("--window", nargs=4, type=float, default=[-2, 2, -1.5, 2.5],
                   metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    s.add_argument("--width", type=int, default=800)
    s.add_argument("--out", help="output .svg path (default stdout)")
    s.set_defaults(func=cmd_tessellation)

    s = sub.add_parser("graph-depth", parents=[common, packing_flags], help="BFS depth in the tricycle graph")
    s.add_argument("--vertex", nargs=3, type=scalar_arg, required=True, metavar=("A", "B", "C"),
                   help="curvatures of the tricycle")
    s.set_defaults(func=cmd_graph_depth)

    s = sub.add_parser("verify", parents=[common], help="run claim suites")
    s.add_argument("--suite", choices=("all",) + SUITES, default="all")
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceGuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ApolloError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:
        if isinstance(e.code, str):
            print(e.code, file=sys.stderr)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
