"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from .diamonds import (
    DEFAULT_RANK_BOUND,
    classify,
    diamond_of,
    first_generating_point,
    lepotier_curve,
    lepotier_map,
    roofs_curve,
)
from .errors import DomainError, VertexNotFound
from .exact import parse_q
from .lattice import ChernCharacter, Point, line_of
from .local import discrete_directions, oracle_report
from .rankzero import first_wall_of_character
from .svg import Style, Window, render_diagram, render_segments, render_triangles
from .tree import enumerate as enumerate_triangles
from .tree import exceptionals_in_window, line_bundle, locate_by_x, window_of

EXIT_PARSE = 2
EXIT_DOMAIN = 3


# ---------------------------------------------------------------- argument types


def _rational(text: str) -> Fraction:
    try:
        return parse_q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _rationals(text: str, count: int) -> list[Fraction]:
    parts = text.split(",")
    if len(parts) != count:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated rationals, got {text!r}")
    return [_rational(p.strip()) for p in parts]


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {n}")
    return n


def _positive(text: str) -> int:
    n = _nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _twist_range(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected k or a..b, got {text!r}")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) is not None else a
    if b < a:
        raise argparse.ArgumentTypeError(f"empty twist range {text!r}")
    return range(a, b + 1)


def _window(text: str) -> Window:
    x0, y0, x1, y1 = _rationals(text, 4)
    try:
        return Window(x0, y0, x1, y1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _point(text: str) -> Point:
    return Point(*_rationals(text, 2))


def _triple(text: str) -> tuple[Fraction, Fraction, Fraction]:
    r, d, e = _rationals(text, 3)
    if r.denominator != 1 or d.denominator != 1:
        raise argparse.ArgumentTypeError("ch0 and ch1 must be integers")
    return r, d, e


def _chern(values) -> ChernCharacter:
    r, d, e = values
    return ChernCharacter(int(r), int(d), e)


# ---------------------------------------------------------------- output


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _error_kind(exc: Exception) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "-", type(exc).__name__).lower()


def _style(args) -> Style:
    return Style(stroke=args.stroke_width, roof_stroke=args.roof_stroke_width, shading=not args.no_shading)


# ---------------------------------------------------------------- commands


def cmd_triangles(args) -> str:
    tris = list(enumerate_triangles(args.depth, args.twist))
    if args.format == "svg":
        return render_triangles(tris, args.window, _style(args))
    return _json({"count": len(tris), "triangles": [t.to_json() for t in tris]})


def _vertex_character(args) -> ChernCharacter:
    if args.char is not None:
        g = _chern(args.char)
        try:
            diamond_of(g)
        except DomainError as exc:
            raise VertexNotFound(str(exc)) from exc
        return g
    g = locate_by_x(args.x)
    if g is None:
        raise VertexNotFound(f"no exceptional vertex at x = {args.x}")
    return g


def cmd_local(args) -> str:
    g = _vertex_character(args)
    D = diamond_of(g)
    ls = D.cone()
    report = oracle_report(ls.m1, ls.m2, args.order)
    data = {
        "vertex": D.base.to_json(),
        "character": g.to_json(),
        "D": ls.D,
        "m1": ls.m1.to_json(),
        "m2": ls.m2.to_json(),
        "cone": ls.to_json()["cone"],
        "discrete": [m.to_json() for m in discrete_directions(ls.m1, ls.m2, args.i_max)],
        "oracle": report.to_json(),
        "agreement": "pass" if report.agrees else "fail",
    }
    return _json(data)


def cmd_firstwall(args) -> str:
    g = _chern(args.chern)
    if g.r == 0:
        return _json(first_wall_of_character(g, args.rank_bound).to_json())
    return _json(first_generating_point(g, args.half, args.rank_bound).to_json())


def cmd_classify(args) -> str:
    return _json(classify(args.point, args.rank_bound).to_json())


def cmd_lepotier(args) -> str:
    w = args.window
    segs = lepotier_curve(w.x0 - Fraction(3, 2), w.x1 - Fraction(3, 2), args.rank_bound)
    if args.format == "svg":
        return render_segments(w, segs, _style(args))
    return _json({"segments": [s.to_json() for s in segs]})


def _diamonds_in(window: Window, bound: int):
    out = []
    for k in range(window_of(window.x0), window_of(window.x1) + 1):
        for g in exceptionals_in_window(bound, k):
            D = diamond_of(g)
            if window.x0 <= D.base.x <= window.x1:
                out.append(D)
    return out


def cmd_render(args) -> str:
    w = args.window
    twists = args.twist if args.twist_given else range(window_of(w.x0), window_of(w.x1) + 1)
    tris = list(enumerate_triangles(args.depth, twists))
    roofs = roofs_curve(w.x0, w.x1, args.rank_bound)
    diamonds = _diamonds_in(w, args.rank_bound)
    lines = [line_of(line_bundle(n)) for n in range(floor(w.x0) - 1, ceil(w.x1) + 2)]
    overlay = None
    if args.lepotier:
        li = lepotier_curve(w.x0, w.x1, args.rank_bound)
        overlay = [type(s)(s.base_character, s.side, s.line, lepotier_map(s.start), lepotier_map(s.end)) for s in li]
    if args.format == "svg":
        return render_diagram(w, tris, lines, roofs, diamonds, overlay, _style(args))
    data = {
        "window": [str(w.x0), str(w.y0), str(w.x1), str(w.y1)],
        "initial_lines": [l.to_json() for l in lines],
        "triangles": [t.to_json() for t in tris],
        "roofs": [s.to_json() for s in roofs],
        "diamonds": [D.to_json() for D in diamonds],
    }
    if overlay is not None:
        data["lepotier"] = [s.to_json() for s in overlay]
    return _json(data)


# ---------------------------------------------------------------- parser


def _add_style(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--stroke-width", type=float, default=1.0)
    p.add_argument("--roof-stroke-width", type=float, default=1.5)
    p.add_argument("--no-shading", action="store_true", help="do not fill dense diamonds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="p2scatter", description="Exact stability scattering diagram of the plane.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangles", help="enumerate the triangle complex")
    p.add_argument("--depth", type=_nonneg, default=3)
    p.add_argument("--twist", type=_twist_range, default=range(0, 1), help="k or a..b")
    p.add_argument("--window", type=_window, help="x0,y0,x1,y1 (svg only)")
    _add_style(p)
    p.set_defaults(func=cmd_triangles)

    p = sub.add_parser("local", help="local structure at an exceptional vertex")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--x", type=_rational, help="x-coordinate of the vertex")
    src.add_argument("--char", type=_triple, help="r,d,e of the exceptional class")
    p.add_argument("--order", type=_positive, default=6)
    p.add_argument("--i-max", type=_positive, default=3)
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("firstwall", help="first wall of a Chern character")
    p.add_argument("--chern", type=_triple, required=True, help="r,d,e")
    p.add_argument("--half", choices=("plus", "minus"), default="minus")
    p.add_argument("--rank-bound", type=_positive, default=DEFAULT_RANK_BOUND)
    p.set_defaults(func=cmd_firstwall)

    p = sub.add_parser("classify", help="region containing a point")
    p.add_argument("--point", type=_point, required=True, help="x,y")
    p.add_argument("--rank-bound", type=_positive, default=DEFAULT_RANK_BOUND)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lepotier", help="Le Potier curve in the slope plane")
    p.add_argument("--window", type=_window, default=Window(Fraction(1), Fraction(0), Fraction(2), Fraction(2)))
    p.add_argument("--rank-bound", type=_positive, default=29)
    _add_style(p)
    p.set_defaults(func=cmd_lepotier)

    p = sub.add_parser("render", help="draw the diagram")
    p.add_argument(
        "--window", type=_window, default=Window(Fraction(-3, 2), Fraction(-1), Fraction(3, 2), Fraction(5, 2))
    )
    p.add_argument("--depth", type=_nonneg, default=3)
    p.add_argument("--twist", type=_twist_range, default=None, help="k or a..b (default: windows met)")
    p.add_argument("--rank-bound", type=_positive, default=29)
    p.add_argument("--lepotier", action="store_true", help="overlay the Le Potier curve")
    _add_style(p)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad flags
    if args.command == "render":
        args.twist_given = args.twist is not None
    try:
        text = args.func(args)
    except DomainError as exc:
        sys.stdout.write(_json({"error": _error_kind(exc), "message": str(exc)}))
        print(f"p2scatter: {_error_kind(exc)}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(text, getattr(args, "out", None))
    return 0


if __name__ == "__main__":
    sys.exit(main())
