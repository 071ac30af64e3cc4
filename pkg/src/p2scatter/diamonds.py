"""Diamonds, roofs, the region classification, and first generating points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .errors import BGViolation, DomainError, NonExceptional, NotOnRoofs, Undetermined
from .exact import Number, Surd, cmp, fmt_q
from .lattice import (
    ChernCharacter,
    LatticeVector,
    Line,
    Point,
    SurdPoint,
    line_of,
    line_through,
    region_R_floor,
    twist,
)
from .local import LocalStructure, local_structure, r_infinity, r_infinity_inverse
from .tree import (
    ExceptionalTriple,
    O1,
    O2,
    describe,
    exceptionals_in_window,
    is_exceptional,
    is_exceptional_character,
    line_bundle_triple,
    mutate,
    root_triple,
    shift3,
    triangle_of,
    triple_with_middle,
    vertex_of,
    window_of,
)

DEFAULT_RANK_BOUND = 433
HALF = Fraction(1, 2)


def floor_number(x: Number) -> int:
    """Exact floor of a rational or surd."""
    if not isinstance(x, Surd):
        return math.floor(x)
    n = math.floor(float(x))
    while Surd.of(n) > x:
        n -= 1
    while Surd.of(n + 1) <= x:
        n += 1
    return n


def surd_window(x: Number) -> int:
    return floor_number(x + HALF)


def _y_on(line: Line, x: Number) -> Number:
    if line.A == 0:
        raise ValueError("vertical line")
    return (Surd.of(line.C) - x * line.B) / line.A if isinstance(x, Surd) else (line.C - line.B * x) / line.A


def _meet(l1: Line, l2: Line) -> Point | None:
    det = l1.A * l2.B - l2.A * l1.B
    if det == 0:
        return None
    # A y + B x = C
    x = Fraction(l1.A * l2.C - l2.A * l1.C, det)
    y = Fraction(l1.C * l2.B - l2.C * l1.B, det)
    return Point(x, y)


def _vec(p: Point, q: Point) -> tuple[Fraction, Fraction]:
    return (q.x - p.x, q.y - p.y)


def _primitive_of(v: tuple[Fraction, Fraction]) -> LatticeVector:
    den = v[0].denominator * v[1].denominator
    a, b = int(v[0] * den), int(v[1] * den)
    return LatticeVector(a, b).primitive()


# ---------------------------------------------------------------- diamonds


@dataclass(frozen=True)
class RoofInterval:
    character: ChernCharacter
    lo: Surd
    hi: Surd
    center: Fraction

    def contains(self, x: Number) -> bool:
        return cmp(self.lo, x) < 0 and cmp(x, self.hi) < 0

    def to_json(self) -> dict:
        return {
            "character": self.character.to_json(),
            "lo": self.lo.to_json(),
            "hi": self.hi.to_json(),
            "center": fmt_q(self.center),
        }


def half_width(r: int) -> Surd:
    return Fraction(3, 2) - Surd.sqrt(9 * r * r - 4) / (2 * r)


def roof_interval(g: ChernCharacter) -> RoofInterval:
    if not is_exceptional_character(g):
        raise NonExceptional(f"{describe(g)} is not exceptional")
    c = vertex_of(g).x
    delta = half_width(g.r)
    return RoofInterval(g, Surd.of(c) - delta, Surd.of(c) + delta, c)


@dataclass(frozen=True)
class Diamond:
    base: Point
    base_character: ChernCharacter
    apex: Point
    left_vertex: SurdPoint
    right_vertex: SurdPoint
    left_roof: Line  # on the line of E(-3)
    right_roof: Line  # on the line of E
    generators: tuple[ChernCharacter, ChernCharacter]  # lower edges of the outer diamond
    kind: Literal["initial", "standard"]
    triple: ExceptionalTriple

    @property
    def r(self) -> int:
        return self.base_character.r

    def outer_vertices(self) -> tuple[Point, Point]:
        left = _meet(line_of(self.generators[0]), self.left_roof)
        right = _meet(line_of(self.generators[1]), self.right_roof)
        assert left is not None and right is not None
        return left, right

    def cone(self) -> LocalStructure:
        """Dense cone at the base: base - (a m1 + b m2) with b/a in the open ladder range."""
        m1 = LatticeVector(self.generators[0].r, -self.generators[0].d)
        m2 = -LatticeVector(self.generators[1].r, -self.generators[1].d)
        return local_structure(m1, m2)

    def in_dense_cone(self, p: Point) -> bool:
        ls = self.cone()
        dx, dy = _vec(p, self.base)  # base - p = a m1 + b m2
        det = ls.m1.wedge(ls.m2)
        a = (dx * ls.m2.b - dy * ls.m2.a) / det
        b = (ls.m1.a * dy - ls.m1.b * dx) / det
        return ls.dense_member(a, b)

    def roof_y(self, x: Number) -> Number:
        line = self.left_roof if cmp(x, self.base.x) <= 0 else self.right_roof
        return _y_on(line, x)

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "base_character": self.base_character.to_json(),
            "apex": self.apex.to_json(),
            "left_vertex": self.left_vertex.to_json(),
            "right_vertex": self.right_vertex.to_json(),
            "roofs": {"left": self.left_roof.to_json(), "right": self.right_roof.to_json()},
            "generators": [g.to_json() for g in self.generators],
            "kind": self.kind,
        }


def apex_of(g: ChernCharacter) -> Point:
    r, d, e = g.r, g.d, g.e
    return Point(Fraction(d, r) - Fraction(3, 2), e / r - Fraction(d * d, r * r) + Fraction(3 * d, 2 * r))


def diamond_of(g: ChernCharacter) -> Diamond:
    if not is_exceptional(g):
        raise NonExceptional(f"{describe(g)} is not exceptional")
    C = triple_with_middle(g)
    base = vertex_of(g)
    apex = apex_of(g)
    left_roof, right_roof = line_of(shift3(g)), line_of(g)
    iv = roof_interval(g)
    left = SurdPoint(iv.lo, _y_on(left_roof, iv.lo))
    right = SurdPoint(iv.hi, _y_on(right_roof, iv.hi))
    kind = "initial" if g.r == 1 else "standard"
    return Diamond(base, g, apex, left, right, left_roof, right_roof, (C.e0, shift3(C.e2)), kind, C)


def initial_diamond(n: int) -> Diamond:
    """The diamond at the meeting point of the initial rays on the lines of O(n) and O(n+1)."""
    return diamond_of(ChernCharacter(1, n + 2, Fraction((n + 2) ** 2, 2)))


# ---------------------------------------------------------------- roof search


def _column_in_window(x: Number, bound: int) -> tuple[ChernCharacter, ExceptionalTriple] | None:
    """Exceptional E in window 0 or its neighbours with x in the open roof interval of E."""
    for g in (O1, O2):
        if roof_interval(g).contains(x):
            return g, triple_with_middle(g)
    C = root_triple()
    while C.e1.r <= bound:
        iv = roof_interval(C.e1)
        if iv.contains(x):
            return C.e1, C
        C = mutate(C, "L" if cmp(x, iv.center) < 0 else "R")
    return None


def column_of(x: Number, bound: int = DEFAULT_RANK_BOUND) -> ChernCharacter | None:
    """The exceptional class whose roof interval contains x, up to a rank bound."""
    k = surd_window(x)
    if not isinstance(x, Surd) or x.is_rational:
        bound = max(bound, (Surd.of(x).a + Fraction(3, 2)).denominator)
    found = _column_in_window(x - k, bound)
    return twist(k, found[0]) if found else None


@dataclass(frozen=True)
class RoofSegment:
    base_character: ChernCharacter
    side: Literal["left", "right"]
    line: Line
    start: SurdPoint
    end: SurdPoint

    def to_json(self) -> dict:
        return {
            "base": self.base_character.to_json(),
            "side": self.side,
            "line": self.line.to_json(),
            "start": self.start.to_json(),
            "end": self.end.to_json(),
        }


def _clip(lo: Number, hi: Number, x0: Fraction, x1: Fraction) -> tuple[Number, Number] | None:
    a = lo if cmp(lo, x0) > 0 else Surd.of(x0)
    b = hi if cmp(hi, x1) < 0 else Surd.of(x1)
    if cmp(a, b) >= 0:
        return None
    return Surd.of(a), Surd.of(b)


def roofs_curve(x0: Fraction, x1: Fraction, bound: int = DEFAULT_RANK_BOUND) -> list[RoofSegment]:
    """Roof segments of diamonds with base rank <= bound meeting [x0, x1], left to right."""
    x0, x1 = Fraction(x0), Fraction(x1)
    if x0 > x1:
        raise ValueError("empty window")
    out = []
    for k in range(window_of(x0) - 1, window_of(x1) + 2):
        for g in exceptionals_in_window(bound, k):
            iv = roof_interval(g)
            c = Surd.of(iv.center)
            for side, lo, hi, line in (
                ("left", iv.lo, c, line_of(shift3(g))),
                ("right", c, iv.hi, line_of(g)),
            ):
                clipped = _clip(lo, hi, x0, x1)
                if clipped is None:
                    continue
                a, b = clipped
                out.append(RoofSegment(g, side, line, SurdPoint(a, _y_on(line, a)), SurdPoint(b, _y_on(line, b))))
    out.sort(key=lambda s: (float(s.start.x), s.side))
    return out


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class RegionTag:
    region: Literal[
        "triangle-interior",
        "triangle-edge",
        "diamond-interior",
        "diamond-boundary",
        "roof-point",
        "unbounded",
        "below-all",
    ]
    character: ChernCharacter | None = None  # base of the diamond, or the line carrying an edge
    triple: ExceptionalTriple | None = None
    part: str | None = None

    def to_json(self) -> dict:
        out: dict = {"region": self.region}
        if self.character is not None:
            out["character"] = self.character.to_json()
        if self.triple is not None:
            out["triple"] = self.triple.to_json()
        if self.part is not None:
            out["part"] = self.part
        return out


def _edge_character(C: ExceptionalTriple, p: Point) -> ChernCharacter | None:
    T = triangle_of(C)
    for line, ch in zip(T.edge_lines, T.edge_characters()):
        if line.contains(p):
            return ch
    return None


def classify(sigma: Point, bound: int = DEFAULT_RANK_BOUND) -> RegionTag:
    if sigma.y < region_R_floor(sigma.x):
        return RegionTag("below-all")
    k = window_of(sigma.x)
    p = twist(-k, sigma)

    def back(tag: RegionTag) -> RegionTag:
        ch = twist(k, tag.character) if tag.character is not None else None
        tr = tag.triple.twisted(k) if tag.triple is not None else None
        return RegionTag(tag.region, ch, tr, tag.part)

    # triangle vertices are diamond bases
    base = _vertex_at(p)
    if base is not None:
        return back(RegionTag("diamond-boundary", base, None, "base"))

    # a rational x lies under a roof of rank at most the denominator of x + 3/2
    found = _column_in_window(p.x, max(bound, (p.x + Fraction(3, 2)).denominator))
    if found is None:
        raise Undetermined(f"no roof interval contains x = {fmt_q(p.x)}")
    g, _ = found
    D = diamond_of(g)
    roof = D.roof_y(p.x)
    if p.y > roof:
        return back(RegionTag("unbounded"))
    if p.y == roof:
        part = "apex" if p.x == D.base.x else "degenerate"
        return back(RegionTag("roof-point", g, None, part))
    if D.in_dense_cone(p):
        return back(RegionTag("diamond-interior", g))

    C = root_triple()
    for _ in range(4 * bound + 8):
        where = triangle_of(C).locate(p)
        if where == "interior":
            return back(RegionTag("triangle-interior", None, C))
        if where in ("edge", "vertex"):
            return back(RegionTag("triangle-edge", _edge_character(C, p), C))
        C = mutate(C, "L" if p.x < vertex_of(C.e1).x else "R")
        if C.e1.r > bound:
            break
    raise Undetermined(f"point {p} not resolved below rank {bound}")


def _vertex_at(p: Point) -> ChernCharacter | None:
    from .tree import locate_by_x

    for g in (O1, O2):
        if vertex_of(g) == p:
            return g
    g = locate_by_x(p.x)
    if g is not None and vertex_of(g) == p and window_of(p.x) == 0:
        return g
    return None


# ---------------------------------------------------------------- dense cones at roof points


@dataclass(frozen=True)
class RoofCone:
    """Cone of directions w at a roof point.

    kind "degenerate": w = -(a m_discrete + b m_dense), a, b > 0, a/b <= 3D.
    kind "apex": w = a m + (0, b) for m in (m_left, m_right), a, b > 0, a/b <= 3r.
    """

    vertex: Point
    kind: Literal["apex", "degenerate"]
    m_discrete: LatticeVector | None = None
    m_dense: LatticeVector | None = None
    D: int | None = None
    m_left: LatticeVector | None = None
    m_right: LatticeVector | None = None
    rank: int | None = None

    def contains_direction(self, w: tuple[Fraction, Fraction] | LatticeVector) -> bool:
        wx, wy = (Fraction(w.a), Fraction(w.b)) if isinstance(w, LatticeVector) else (Fraction(w[0]), Fraction(w[1]))
        if self.kind == "degenerate":
            m1, m2 = self.m_discrete, self.m_dense
            det = m1.wedge(m2)
            # -w = a m1 + b m2
            a = (-wx * m2.b + wy * m2.a) / det
            b = (-m1.a * wy + m1.b * wx) / det
            return a > 0 and b > 0 and a <= 3 * self.D * b
        if wx == 0:
            return False
        m = self.m_left if wx > 0 else self.m_right
        a = wx / m.a
        b = wy - a * m.b
        return a > 0 and b > 0 and a <= 3 * self.rank * b

    def boundary_directions(self) -> list[LatticeVector]:
        if self.kind == "degenerate":
            return [-(3 * self.D * self.m_discrete + self.m_dense), -self.m_dense]
        r3 = 3 * self.rank
        return [r3 * self.m_right + LatticeVector(0, 1), r3 * self.m_left + LatticeVector(0, 1)]

    def boundary_lines(self) -> list[Line]:
        out = []
        for v in self.boundary_directions():
            q = Point(self.vertex.x + v.a, self.vertex.y + v.b)
            out.append(line_through(self.vertex, q))
        return out

    def to_json(self) -> dict:
        out = {"vertex": self.vertex.to_json(), "kind": self.kind}
        out["boundary"] = [v.to_json() for v in self.boundary_directions()]
        out["boundary_lines"] = [l.to_json() for l in self.boundary_lines()]
        return out


def _roof_point(p: Point, bound: int) -> tuple[Diamond, str, int]:
    k = window_of(p.x)
    q = twist(-k, p)
    found = _column_in_window(q.x, bound)
    if found is None:
        raise NotOnRoofs(f"{p} is not on a roof of rank <= {bound}")
    D = diamond_of(found[0])
    if D.roof_y(q.x) != q.y:
        raise NotOnRoofs(f"{p} is not on a roof")
    return D, ("apex" if q.x == D.base.x else ("left" if q.x < D.base.x else "right")), k


def dense_cone_at(sigma: Point, bound: int = DEFAULT_RANK_BOUND) -> RoofCone:
    D, where, k = _roof_point(sigma, bound)
    g = D.base_character
    if where == "apex":
        m_left = LatticeVector(g.r, 3 * g.r - g.d)
        m_right = LatticeVector(-g.r, g.d)
        return RoofCone(sigma, "apex", m_left=twist(k, m_left), m_right=twist(k, m_right), rank=g.r)
    q = twist(-k, sigma)
    m_disc = LatticeVector(g.r, -g.d) if where == "right" else LatticeVector(-g.r, g.d - 3 * g.r)
    m_dense = _primitive_of(_vec(q, D.base))
    Dsig = abs(m_disc.wedge(m_dense))
    return RoofCone(sigma, "degenerate", twist(k, m_disc), twist(k, m_dense), Dsig)


# ---------------------------------------------------------------- first generating point


@dataclass(frozen=True)
class GeneratingPoint:
    point: Point
    case: Literal["roof-dense", "diamond-base", "unbounded", "discrete-ray", "initial-ray"]
    roof_point: Point | None = None
    base_character: ChernCharacter | None = None
    half: str = "minus"

    def to_json(self) -> dict:
        out = {"point": self.point.to_json(), "case": self.case, "half": self.half}
        if self.roof_point is not None:
            out["roof_point"] = self.roof_point.to_json()
        if self.base_character is not None:
            out["base_character"] = self.base_character.to_json()
        return out


def _primitive_class(g: ChernCharacter) -> ChernCharacter:
    n = math.gcd(math.gcd(g.r, g.d), (g.e * 2).numerator)
    while n > 1:
        try:
            return ChernCharacter(g.r // n, g.d // n, g.e / n)
        except DomainError:
            n -= 1
            while n > 1 and (g.r % n or g.d % n):
                n -= 1
    return g


def _walk_start(g: ChernCharacter, half: str) -> tuple[Number, LatticeVector]:
    """Start x on the boundary of U and the walking direction for rank r > 0."""
    disc = Fraction(g.d * g.d) - 2 * g.r * g.e
    root = Surd.sqrt(disc) / g.r
    c = Surd.of(Fraction(g.d, g.r))
    if half == "plus":
        return (c - root), LatticeVector(-g.r, g.d)
    return (c + root), LatticeVector(g.r, -g.d)


def first_generating_point(
    gamma: ChernCharacter,
    half: Literal["plus", "minus"] = "minus",
    bound: int = DEFAULT_RANK_BOUND,
) -> GeneratingPoint:
    """First point on the chosen half of the line of gamma lying on a ray.

    half "plus" walks from the smaller root of the line on the boundary of U in
    direction -m_gamma; "minus" walks from the larger root in direction +m_gamma.
    """
    if half not in ("plus", "minus"):
        raise ValueError(f"unknown half {half!r}")
    if gamma.r == 0:
        from .rankzero import first_wall_of_character

        answer = first_wall_of_character(gamma, bound)
        case = "diamond-base" if answer.kind == "discrete-diagonal" else "roof-dense"
        if answer.kind == "initial":
            case = "diamond-base"
        return GeneratingPoint(answer.wall_point, case, None, answer.base_character, half)
    if gamma.r < 0:
        gamma = -gamma
        half = "minus" if half == "plus" else "plus"
    disc = Fraction(gamma.d * gamma.d) - 2 * gamma.r * gamma.e
    if disc < 0:
        raise BGViolation(f"{describe(gamma)} violates the Bogomolov-Gieseker inequality")

    prim = _primitive_class(gamma)
    if is_exceptional(prim):
        return _special_line(prim, half)

    x_start, w = _walk_start(gamma, half)
    # first point where the line sits at height 5/8 above the boundary of U
    rad = Surd.sqrt(Fraction(gamma.d * gamma.d, gamma.r**2) - 2 * gamma.e / gamma.r + Fraction(5, 4))
    c = Surd.of(Fraction(gamma.d, gamma.r))
    x_star = c - rad if half == "plus" else c + rad
    k = surd_window(x_star)
    g = twist(-k, gamma)
    L = line_of(g)
    found = _column_in_window(x_star - k, bound)
    if found is None:
        raise Undetermined(f"crossing lies beyond rank bound {bound}")
    E, _ = found
    D = diamond_of(E)
    iv = roof_interval(E)
    hits = []
    for roof, lo, hi in ((D.left_roof, iv.lo, Surd.of(D.base.x)), (D.right_roof, Surd.of(D.base.x), iv.hi)):
        p = _meet(L, roof)
        if p is not None and cmp(lo, p.x) <= 0 and cmp(p.x, hi) <= 0:
            hits.append(p)
    if not hits:
        raise Undetermined("line does not meet the roof of its column")
    p = max(hits, key=lambda q: q.x) if half == "plus" else min(hits, key=lambda q: q.x)
    wx, wy = (-gamma.r, gamma.d) if half == "plus" else (gamma.r, -gamma.d)
    w = twist(-k, LatticeVector(wx, wy))
    p_glob = twist(k, p)
    if L.contains(D.base):
        return GeneratingPoint(twist(k, D.base), "diamond-base", p_glob, twist(k, E), half)
    cone = dense_cone_at(p, bound)
    if cone.contains_direction(w):
        return GeneratingPoint(p_glob, "roof-dense", p_glob, twist(k, E), half)
    return GeneratingPoint(p_glob, "unbounded", p_glob, twist(k, E), half)


def _special_line(F: ChernCharacter, half: str) -> GeneratingPoint:
    """Lines carrying an initial or discrete ray."""
    if F.r == 1:
        n = F.d
        return GeneratingPoint(Point(n, Fraction(-n * n, 2)), "initial-ray", None, F, half)
    if half == "plus":
        # right roof of F's diamond, running left from the right neighbour
        start = vertex_of(triple_with_middle(F).e2)
    else:
        # left roof of the diamond of F(3), running right from its left neighbour
        start = vertex_of(triple_with_middle(twist(3, F)).e0)
    return GeneratingPoint(start, "discrete-ray", None, F, half)


# ---------------------------------------------------------------- Le Potier


def lepotier_map(p, direction: Literal["to_scattering", "to_li"] = "to_scattering"):
    """(X, Y) -> (X - 3/2, 3X/2 - Y - 1) and its inverse."""
    x, y = p.x, p.y
    if direction == "to_scattering":
        nx, ny = x - Fraction(3, 2), x * Fraction(3, 2) - y - 1
    elif direction == "to_li":
        nx, ny = x + Fraction(3, 2), x * Fraction(3, 2) - y + Fraction(5, 4)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if isinstance(p, SurdPoint):
        return SurdPoint(Surd.of(nx), Surd.of(ny))
    return Point(nx, ny)


def li_vertex(g: ChernCharacter) -> Point:
    """(ch1/ch0, ch2/ch0)."""
    if g.r == 0:
        raise DomainError("rank-zero class has no point in the slope plane")
    return Point(Fraction(g.d, g.r), g.e / g.r)


def lepotier_curve(x0: Fraction, x1: Fraction, bound: int = DEFAULT_RANK_BOUND) -> list[RoofSegment]:
    """Images of the roof segments in the (slope, discriminant) plane."""
    out = []
    for s in roofs_curve(x0, x1, bound):
        a, b = lepotier_map(s.start, "to_li"), lepotier_map(s.end, "to_li")
        out.append(RoofSegment(s.base_character, s.side, s.line, a, b))
    return out
