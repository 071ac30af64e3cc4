"""Strong exceptional triples, mutation, and the binary tree of triangles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, Iterator, Literal

from .errors import DegenerateCharacter, DomainError
from .exact import fmt_q
from .lattice import ChernCharacter, Line, Point, line_of, line_through, twist

Side = Literal["L", "R"]

O1 = ChernCharacter(1, 1, Fraction(1, 2))
TANGENT = ChernCharacter(2, 3, Fraction(3, 2))
O2 = ChernCharacter(1, 2, Fraction(2))
STRUCTURE = ChernCharacter(1, 0, Fraction(0))


def line_bundle(n: int) -> ChernCharacter:
    return ChernCharacter(1, n, Fraction(n * n, 2))


def shift3(g: ChernCharacter) -> ChernCharacter:
    """g twisted by O(-3)."""
    return twist(-3, g)


@dataclass(frozen=True)
class ExceptionalTriple:
    e0: ChernCharacter
    e1: ChernCharacter
    e2: ChernCharacter
    path: str = ""
    twist: int = 0
    bottom: ChernCharacter | None = None  # class whose line carries the edge V_e0 V_e2

    def members(self) -> tuple[ChernCharacter, ChernCharacter, ChernCharacter]:
        return (self.e0, self.e1, self.e2)

    def ranks(self) -> tuple[int, int, int]:
        return (self.e0.r, self.e1.r, self.e2.r)

    def twisted(self, k: int) -> "ExceptionalTriple":
        bottom = twist(k, self.bottom) if self.bottom is not None else None
        return ExceptionalTriple(
            twist(k, self.e0), twist(k, self.e1), twist(k, self.e2), self.path, self.twist + k, bottom
        )

    def to_json(self) -> dict:
        return {
            "e0": self.e0.to_json(),
            "e1": self.e1.to_json(),
            "e2": self.e2.to_json(),
            "path": self.path,
            "twist": self.twist,
        }


def root_triple(k: int = 0) -> ExceptionalTriple:
    root = ExceptionalTriple(O1, TANGENT, O2, "", 0, STRUCTURE)
    return root.twisted(k) if k else root


def hom_dims(C: ExceptionalTriple) -> tuple[int, int, int]:
    (r0, d0, _), (r1, d1, _), (r2, d2, _) = (g.as_tuple() for g in C.members())
    h01 = 3 * (d1 * r0 - d0 * r1)
    h12 = 3 * (d2 * r1 - d1 * r2)
    h20 = 3 * (3 * r0 * r2 + d0 * r2 - d2 * r0)
    if min(h01, h12, h20) <= 0:
        raise DomainError(f"nonpositive Hom dimension for {C.members()}")
    return h01, h12, h20


def mutate(C: ExceptionalTriple, side: Side) -> ExceptionalTriple:
    h01, h12, _ = hom_dims(C)
    if side == "R":
        middle = h01 * C.e1 - C.e0
        return ExceptionalTriple(C.e1, middle, C.e2, C.path + "R", C.twist, C.e0)
    if side == "L":
        middle = h12 * C.e1 - C.e2
        return ExceptionalTriple(C.e0, middle, C.e1, C.path + "L", C.twist, shift3(C.e2))
    raise ValueError(f"unknown side {side!r}")


def follow(path: str, k: int = 0) -> ExceptionalTriple:
    C = root_triple(k)
    for side in path:
        C = mutate(C, side)  # type: ignore[arg-type]
    return C


def is_exceptional_character(g: ChernCharacter | tuple) -> bool:
    """r^2 - d^2 + 2re = 1 with gcd(r, d) = 1; raw (r, d, e) triples are accepted."""
    r, d, e = g.as_tuple() if isinstance(g, ChernCharacter) else (int(g[0]), int(g[1]), Fraction(g[2]))
    return r >= 1 and r * r - d * d + 2 * r * e == 1 and gcd(r, d) == 1


def vertex_of(g: ChernCharacter) -> Point:
    if g.r == 0:
        raise DegenerateCharacter("rank-zero class has no vertex")
    return Point(Fraction(g.d, g.r) - Fraction(3, 2), (3 * g.d - g.chi) / g.r)


@dataclass(frozen=True)
class Triangle:
    triple: ExceptionalTriple
    vertices: tuple[Point, Point, Point]  # V_e0, V_e1, V_e2
    roles: tuple[str, str, str]
    edge_lines: tuple[Line, Line, Line]  # V0V1, V1V2, V0V2
    determinants: tuple[int, int, int]

    @property
    def markov(self) -> tuple[int, int, int]:
        return self.determinants

    def x_range(self) -> tuple[Fraction, Fraction]:
        return self.vertices[0].x, self.vertices[2].x

    def locate(self, p: Point) -> Literal["interior", "edge", "vertex", "outside"]:
        """Position of p relative to the closed triangle."""
        if p in self.vertices:
            return "vertex"
        signs = []
        for line, opposite in zip(self.edge_lines, (self.vertices[2], self.vertices[0], self.vertices[1])):
            s = line.value(p.x, p.y)
            ref = line.value(opposite.x, opposite.y)
            signs.append(0 if s == 0 else (1 if (s > 0) == (ref > 0) else -1))
        if -1 in signs:
            return "outside"
        return "edge" if 0 in signs else "interior"

    def edge_characters(self) -> tuple[ChernCharacter, ChernCharacter, ChernCharacter | None]:
        C = self.triple
        return (shift3(C.e2), C.e0, C.bottom)

    def to_json(self) -> dict:
        return {
            "triple": self.triple.to_json(),
            "vertices": [v.to_json() for v in self.vertices],
            "roles": list(self.roles),
            "edges": [l.to_json() for l in self.edge_lines],
            "determinants": list(self.determinants),
        }


def _det_at(l1: Line, l2: Line) -> int:
    return abs(l1.direction().wedge(l2.direction()))


def triangle_of(C: ExceptionalTriple) -> Triangle:
    v0, v1, v2 = (vertex_of(g) for g in C.members())
    e01, e12, e02 = line_through(v0, v1), line_through(v1, v2), line_through(v0, v2)
    dets = (_det_at(e01, e02), _det_at(e01, e12), _det_at(e12, e02))
    if dets != C.ranks():
        raise DomainError(f"determinants {dets} differ from ranks {C.ranks()}")
    r0, r2 = C.e0.r, C.e2.r
    if r0 == r2:
        roles = ("hybrid", "incoming", "hybrid")
    elif r0 > r2:
        roles = ("hybrid", "incoming", "outgoing")
    else:
        roles = ("outgoing", "incoming", "hybrid")
    return Triangle(C, (v0, v1, v2), roles, (e01, e12, e02), dets)


def window_of(x: Fraction) -> int:
    """The twist k with x in [k - 1/2, k + 1/2)."""
    return floor(x + Fraction(1, 2))


def enumerate_triples(depth: int, twists: Iterable[int] = (0,)) -> Iterator[ExceptionalTriple]:
    """Twist, then breadth first, L before R."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    for k in twists:
        level = [root_triple(k)]
        for _ in range(depth + 1):
            yield from level
            level = [mutate(C, s) for C in level for s in ("L", "R")]


def enumerate(depth: int, twists: Iterable[int] = (0,)) -> Iterator[Triangle]:
    for C in enumerate_triples(depth, twists):
        yield triangle_of(C)


def triples_up_to_rank(bound: int, k: int = 0) -> Iterator[ExceptionalTriple]:
    """Tree triples whose new middle rank is at most `bound`, breadth first."""
    queue = deque([root_triple(k)])
    while queue:
        C = queue.popleft()
        if C.e1.r > bound:
            continue
        yield C
        queue.extend(mutate(C, s) for s in ("L", "R"))


def exceptionals_in_window(bound: int, k: int = 0) -> list[ChernCharacter]:
    """Exceptional classes of rank <= bound with vertex x in window k, sorted by x."""
    out = [twist(k, O1)] if bound >= 1 else []
    out += [C.e1 for C in triples_up_to_rank(bound, k)]
    return sorted(out, key=lambda g: Fraction(g.d, g.r))


def locate_by_x(q: Fraction) -> ChernCharacter | None:
    """The exceptional class whose vertex has x-coordinate q, if any."""
    q = Fraction(q)
    k = window_of(q)
    x = q - k
    target = (x + Fraction(3, 2)).denominator
    if x == Fraction(-1, 2):
        return twist(k, O1)
    C = root_triple()
    while True:
        x1 = vertex_of(C.e1).x
        if x == x1:
            return twist(k, C.e1)
        # every vertex below this node is a new middle of larger rank
        if C.e1.r >= target:
            return None
        C = mutate(C, "L" if x < x1 else "R")


def line_bundle_triple(n: int) -> ExceptionalTriple:
    """(O(n-1), O(n), O(n+1))."""
    return ExceptionalTriple(line_bundle(n - 1), line_bundle(n), line_bundle(n + 1))


def triple_with_middle(g: ChernCharacter) -> ExceptionalTriple:
    """The triple whose middle member is the exceptional class g."""
    if g.r == 1 and g.e == Fraction(g.d * g.d, 2):
        return line_bundle_triple(g.d)
    x = vertex_of(g).x
    k = window_of(x)
    C = root_triple()
    local = twist(-k, g)
    while C.e1.r <= g.r:
        if C.e1 == local:
            return C.twisted(k)
        C = mutate(C, "L" if x - k < vertex_of(C.e1).x else "R")
    raise DomainError(f"{describe(g)} is not an exceptional class")


def is_exceptional(g: ChernCharacter) -> bool:
    """Numerical test confirmed by the mutation tree."""
    if not is_exceptional_character(g):
        return False
    if g.r == 1:
        return True
    return locate_by_x(vertex_of(g).x) == g


def describe(g: ChernCharacter) -> str:
    return f"({g.r}, {g.d}, {fmt_q(g.e)})"
