"""SVG output. The only place where exact values become floats."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import Line, Point, SurdPoint

SVG_NS = "http://www.w3.org/2000/svg"


def num(v) -> str:
    """17 significant digits."""
    return format(float(v), ".17g")


def as_xy(p) -> tuple[float, float]:
    if isinstance(p, SurdPoint):
        return p.floats()
    if isinstance(p, Point):
        return float(p.x), float(p.y)
    return float(p[0]), float(p[1])


@dataclass(frozen=True)
class Window:
    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction

    def __post_init__(self) -> None:
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("window must be nonempty")

    def clip_line(self, line: Line) -> tuple[Point, Point] | None:
        """Exact intersection of a rational line with the closed window."""
        pts: set[Point] = set()
        for x in (self.x0, self.x1):
            if line.A != 0:
                y = line.y_at(x)
                if self.y0 <= y <= self.y1:
                    pts.add(Point(x, y))
        for y in (self.y0, self.y1):
            if line.B != 0:
                x = (line.C - line.A * y) / line.B
                if self.x0 <= x <= self.x1:
                    pts.add(Point(x, y))
        if len(pts) < 2:
            return None
        ordered = sorted(pts, key=lambda p: (p.x, p.y))
        return ordered[0], ordered[-1]


@dataclass
class Style:
    stroke: float = 1.0
    roof_stroke: float = 1.5
    shading: bool = True
    width: int = 800


@dataclass
class Canvas:
    window: Window
    style: Style = field(default_factory=Style)

    def __post_init__(self) -> None:
        w = self.window
        self.scale = self.style.width / float(w.x1 - w.x0)
        height = float(w.y1 - w.y0) * self.scale
        self.root = ET.Element(
            "svg",
            {
                "xmlns": SVG_NS,
                "width": num(self.style.width),
                "height": num(height),
                "viewBox": f"0 0 {num(self.style.width)} {num(height)}",
            },
        )
        self.groups: dict[str, ET.Element] = {}

    def _map(self, p) -> tuple[str, str]:
        x, y = as_xy(p)
        return num((x - float(self.window.x0)) * self.scale), num((float(self.window.y1) - y) * self.scale)

    def group(self, name: str, **attrs: str) -> ET.Element:
        if name not in self.groups:
            self.groups[name] = ET.SubElement(self.root, "g", {"id": name, **attrs})
        return self.groups[name]

    def polyline(self, group: str, points: Sequence, **attrs: str) -> ET.Element:
        coords = " ".join(",".join(self._map(p)) for p in points)
        return ET.SubElement(self.group(group), "polyline", {"points": coords, "fill": "none", **attrs})

    def polygon(self, group: str, points: Sequence, **attrs: str) -> ET.Element:
        coords = " ".join(",".join(self._map(p)) for p in points)
        return ET.SubElement(self.group(group), "polygon", {"points": coords, **attrs})

    def line(self, group: str, line: Line, **attrs: str) -> ET.Element | None:
        seg = self.window.clip_line(line)
        if seg is None:
            return None
        return self.polyline(group, seg, **attrs)

    def parabola(self, group: str, offset: Fraction, samples: int = 200, **attrs: str) -> ET.Element:
        """y = -x^2/2 + offset."""
        w = self.window
        step = (w.x1 - w.x0) / samples
        pts = [(w.x0 + i * step, -((w.x0 + i * step) ** 2) / 2 + offset) for i in range(samples + 1)]
        return self.polyline(group, pts, **attrs)

    def to_string(self) -> str:
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode") + "\n"


def bounding_window(points: Iterable[Point], margin: Fraction = Fraction(1, 10)) -> Window:
    pts = list(points)
    xs, ys = [p.x for p in pts], [p.y for p in pts]
    return Window(min(xs) - margin, min(ys) - margin, max(xs) + margin, max(ys) + margin)


def render_triangles(triangles, window: Window | None = None, style: Style | None = None) -> str:
    triangles = list(triangles)
    if window is None:
        window = bounding_window(v for t in triangles for v in t.vertices)
    canvas = Canvas(window, style or Style())
    for t in triangles:
        canvas.polygon(
            "triangles",
            t.vertices,
            fill="none",
            stroke="black",
            **{"stroke-width": num(canvas.style.stroke), "data-path": t.triple.path or "root"},
        )
    return canvas.to_string()


def render_diagram(
    window: Window,
    triangles,
    initial_lines: Iterable[Line],
    roofs,
    diamonds,
    lepotier=None,
    style: Style | None = None,
) -> str:
    canvas = Canvas(window, style or Style())
    st = canvas.style
    canvas.parabola("boundary", Fraction(0), stroke="gray", **{"stroke-width": num(st.stroke)})
    for d in diamonds:
        fill = "#cfe3f5" if st.shading else "none"
        canvas.polygon(
            "diamonds",
            [d.base, d.right_vertex, d.apex, d.left_vertex],
            fill=fill,
            stroke="steelblue",
            **{"stroke-width": num(st.stroke)},
        )
    for line in initial_lines:
        canvas.line("initial", line, stroke="black", **{"stroke-width": num(st.stroke)})
    for t in triangles:
        canvas.polygon("rays", t.vertices, fill="none", stroke="darkred", **{"stroke-width": num(st.stroke)})
    for s in roofs:
        canvas.polyline("roofs", [s.start, s.end], stroke="darkgreen", **{"stroke-width": num(st.roof_stroke)})
    for s in lepotier or ():
        canvas.polyline(
            "lepotier",
            [s.start, s.end],
            stroke="orange",
            **{"stroke-width": num(st.stroke), "stroke-dasharray": "4 3"},
        )
    return canvas.to_string()


def render_segments(window: Window, segments, style: Style | None = None) -> str:
    canvas = Canvas(window, style or Style())
    for s in segments:
        canvas.polyline("segments", [s.start, s.end], stroke="darkgreen", **{"stroke-width": num(canvas.style.roof_stroke)})
    return canvas.to_string()
