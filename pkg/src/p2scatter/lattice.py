"""The charge lattice of P^2, stability-plane geometry and the twist symmetry."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Literal, TypeVar, Union

from .errors import DegenerateCharacter, LatticeViolation, OutsideU
from .exact import Q, RationalLike, Surd, fmt_q, parse_q


@dataclass(frozen=True, order=True)
class LatticeVector:
    """Element (a, b) of M = Z^2."""

    a: int
    b: int

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.a, -self.b)

    def __mul__(self, k: int) -> "LatticeVector":
        return LatticeVector(k * self.a, k * self.b)

    __rmul__ = __mul__

    def wedge(self, other: "LatticeVector") -> int:
        return self.a * other.b - self.b * other.a

    def content(self) -> int:
        return gcd(self.a, self.b)

    def is_primitive(self) -> bool:
        return self.content() == 1

    def primitive(self) -> "LatticeVector":
        g = self.content()
        if g == 0:
            raise ValueError("zero vector has no primitive part")
        return LatticeVector(self.a // g, self.b // g)

    def check(self, other: "LatticeVector") -> int:
        """The skew form <self, other>, normalised by <e1, e2> = -3."""
        return -3 * self.wedge(other)

    def to_json(self) -> list[int]:
        return [self.a, self.b]


def skew(m: LatticeVector, n: LatticeVector) -> int:
    return m.check(n)


@dataclass(frozen=True)
class ChernCharacter:
    """A class (ch0, ch1, ch2) = (r, d, e) with d/2 + e integral."""

    ch0: int
    ch1: int
    ch2: Fraction

    def __post_init__(self) -> None:
        e = Q(self.ch2)
        object.__setattr__(self, "ch2", e)
        if (Fraction(self.ch1, 2) + e).denominator != 1:
            raise LatticeViolation(f"d/2 + e not integral for ({self.ch0}, {self.ch1}, {fmt_q(e)})")

    @property
    def r(self) -> int:
        return self.ch0

    @property
    def d(self) -> int:
        return self.ch1

    @property
    def e(self) -> Fraction:
        return self.ch2

    @property
    def chi(self) -> Fraction:
        return self.ch2 + Fraction(3, 2) * self.ch1 + self.ch0

    @property
    def slope(self) -> Fraction:
        return Fraction(self.ch1, self.ch0)

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.ch0 + other.ch0, self.ch1 + other.ch1, self.ch2 + other.ch2)

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.ch0 - other.ch0, self.ch1 - other.ch1, self.ch2 - other.ch2)

    def __neg__(self) -> "ChernCharacter":
        return ChernCharacter(-self.ch0, -self.ch1, -self.ch2)

    def __mul__(self, k: int) -> "ChernCharacter":
        return ChernCharacter(k * self.ch0, k * self.ch1, k * self.ch2)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[int, int, Fraction]:
        return (self.ch0, self.ch1, self.ch2)

    def __repr__(self) -> str:
        return f"({self.ch0}, {self.ch1}, {fmt_q(self.ch2)})"

    def to_json(self) -> dict:
        return {"ch0": self.ch0, "ch1": self.ch1, "ch2": fmt_q(self.ch2)}

    @classmethod
    def from_json(cls, data: dict) -> "ChernCharacter":
        return cls(int(data["ch0"]), int(data["ch1"]), parse_q(str(data["ch2"])))


def make_character(r: int, d: int, third: RationalLike, mode: Literal["chern", "euler"] = "chern") -> ChernCharacter:
    third = Q(third)
    if mode == "euler":
        if third.denominator != 1:
            raise LatticeViolation("Euler characteristic must be an integer")
        return ChernCharacter(r, d, third - Fraction(3, 2) * d - r)
    if mode != "chern":
        raise ValueError(f"unknown mode {mode!r}")
    return ChernCharacter(r, d, third)


def euler_pairing(g: ChernCharacter, h: ChernCharacter) -> Fraction:
    r, d, chi = g.r, g.d, g.chi
    r2, d2, chi2 = h.r, h.d, h.chi
    return -3 * d * r2 - r * r2 - d * d2 + r * chi2 + chi * r2


def opposite_vector(g: ChernCharacter) -> LatticeVector:
    if g.r == 0 and g.d == 0:
        raise DegenerateCharacter("opposite vector of a class with r = d = 0")
    return LatticeVector(g.r, -g.d)


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", Q(self.x))
        object.__setattr__(self, "y", Q(self.y))

    def __add__(self, v) -> "Point":
        return Point(self.x + v[0], self.y + v[1])

    def __sub__(self, other: "Point") -> tuple[Fraction, Fraction]:
        return (self.x - other.x, self.y - other.y)

    def in_U(self) -> bool:
        return self.y > -self.x * self.x / 2

    def to_json(self) -> list[str]:
        return [fmt_q(self.x), fmt_q(self.y)]


@dataclass(frozen=True)
class SurdPoint:
    """A point whose coordinates may be quadratic irrationals."""

    x: Surd
    y: Surd

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    def floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


@dataclass(frozen=True)
class Line:
    """A*y + B*x = C with gcd(A, B) = 1 and (A > 0, or A = 0 and B > 0)."""

    A: int
    B: int
    C: Fraction

    @classmethod
    def normalized(cls, A: RationalLike, B: RationalLike, C: RationalLike) -> "Line":
        A, B, C = Q(A), Q(B), Q(C)
        if A == 0 and B == 0:
            raise DegenerateCharacter("line with zero normal")
        scale = A.denominator * B.denominator // gcd(A.denominator, B.denominator)
        A, B, C = A * scale, B * scale, C * scale
        g = gcd(int(A), int(B))
        A, B, C = A / g, B / g, C / g
        if A < 0 or (A == 0 and B < 0):
            A, B, C = -A, -B, -C
        return cls(int(A), int(B), C)

    def value(self, x, y):
        return self.A * y + self.B * x - self.C

    def contains(self, p: Point) -> bool:
        return self.value(p.x, p.y) == 0

    def y_at(self, x):
        if self.A == 0:
            raise ValueError("vertical line")
        return (self.C - self.B * x) / self.A

    def direction(self) -> LatticeVector:
        return LatticeVector(self.A, -self.B)

    def __repr__(self) -> str:
        return f"Line({self.A}y + {self.B}x = {fmt_q(self.C)})"

    def to_json(self) -> dict:
        return {"A": self.A, "B": self.B, "C": fmt_q(self.C)}


def line_of(g: ChernCharacter) -> Line:
    if g.ch0 == 0 and g.ch1 == 0:
        raise DegenerateCharacter("skyscraper classes have no line")
    return Line.normalized(g.ch0, g.ch1, g.ch2)


def line_through(p: Point, q: Point) -> Line:
    dx, dy = q - p
    # normal (A on y, B on x) orthogonal to (dx, dy)
    return Line.normalized(dx, -dy, dx * p.y - dy * p.x)


def central_charge(sigma: Point, g: ChernCharacter) -> tuple[Fraction, Surd]:
    if not sigma.in_U():
        raise OutsideU(f"{sigma} is not in U")
    x, y = sigma.x, sigma.y
    re = g.r * y + g.d * x - g.e
    im = (g.d - g.r * x) * Surd.sqrt(x * x + 2 * y)
    return re, im


def phi(sigma: Point, m: LatticeVector) -> Fraction:
    return 2 * (-m.a * sigma.x - m.b)


T = TypeVar("T", ChernCharacter, Point, LatticeVector, SurdPoint)


def twist(k: int, obj: T) -> T:
    """Apply T^k: tensoring by O(k) on classes, the affine map on the plane."""
    if isinstance(obj, ChernCharacter):
        r, d, e = obj.as_tuple()
        return ChernCharacter(r, d + k * r, e + k * d + Fraction(k * k * r, 2))
    if isinstance(obj, Point):
        return Point(obj.x + k, -k * obj.x + obj.y - Fraction(k * k, 2))
    if isinstance(obj, SurdPoint):
        return SurdPoint(obj.x + k, -k * obj.x + obj.y - Fraction(k * k, 2))
    if isinstance(obj, LatticeVector):
        return LatticeVector(obj.a, obj.b - k * obj.a)
    raise TypeError(f"cannot twist {type(obj).__name__}")


def twist_line(k: int, line: Line) -> Line:
    """Image of a line under T^k."""
    # substitute the inverse map (x, y) -> (x - k, y + k(x - k) + k^2/2)
    A, B, C = line.A, line.B, line.C
    return Line.normalized(A, B + A * k, C + B * k + Fraction(A * k * k, 2))


def bg_roots(g: ChernCharacter) -> list[Fraction | Surd]:
    """x-coordinates where L_g meets the boundary of U, sorted."""
    if g.r == 0:
        raise DegenerateCharacter("rank-zero class: use the vertical line")
    disc = Q(g.d * g.d) - 2 * g.r * g.e
    if disc < 0:
        return []
    centre = Fraction(g.d, g.r)
    if disc == 0:
        return [centre]
    half = Surd.sqrt(disc) / abs(g.r)
    roots = [Surd.of(centre) - half, Surd.of(centre) + half]
    return [z.a if z.is_rational else z for z in roots]


def region_R_floor(x: Fraction) -> Fraction:
    """Lower boundary of R at x: the polyline cut out by the initial rays."""
    n = x.__floor__()
    return min(Fraction(m * m, 2) - m * x for m in (n, n + 1))


def in_region_R(p: Point) -> bool:
    return p.y >= region_R_floor(p.x)
