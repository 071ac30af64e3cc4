"""First walls and generators for one-dimensional rank-zero classes (0, u, v)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Literal

from .errors import DegenerateCharacter, DenseInput, DomainError, NonPrimitive, Undetermined
from .exact import Q, RationalLike, fmt_q
from .lattice import ChernCharacter, Point, line_through, twist
from .tree import ExceptionalTriple, describe, is_exceptional, shift3, triple_with_middle, vertex_of

DEFAULT_RANK_BOUND = 433
RANK_CEILING = 10**12


def character_of_vertical(q: RationalLike) -> ChernCharacter:
    """The primitive (0, u, v) in the lattice with v/u = q and u > 0."""
    q = Q(q)
    s, p = q.denominator, q.numerator
    g = gcd(s, 2 * p)
    u, w = s // g, 2 * p // g  # w = 2v
    if (u + w) % 2:
        u, w = 2 * u, 2 * w
    return ChernCharacter(0, u, Fraction(w, 2))


def is_primitive_vertical(u: int, v: RationalLike) -> bool:
    return u > 0 and character_of_vertical(Q(v) / u) == ChernCharacter(0, u, Q(v))


def _check(u: int, v: RationalLike) -> Fraction:
    v = Q(v)
    ChernCharacter(0, u, v)  # lattice check
    if u <= 0:
        raise DegenerateCharacter("expected u > 0")
    if not is_primitive_vertical(u, v):
        prim = character_of_vertical(v / u)
        raise NonPrimitive(f"(0, {u}, {fmt_q(v)}) is {u // prim.d} times {describe(prim)}")
    return v


def exceptional_of_diagonal(u: int, v: RationalLike) -> ChernCharacter | None:
    """The exceptional class whose diamond has diagonal x = v/u, or None when v/u is dense."""
    v = _check(u, v)
    d = v + Fraction(3 * u, 2)
    if d.denominator != 1:
        return None
    e = (1 + v * v) / (2 * u) + Fraction(5 * u, 8) + Fraction(3, 2) * v
    if (d / 2 + e).denominator != 1:
        return None
    g = ChernCharacter(u, int(d), e)
    return g if is_exceptional(g) else None


@dataclass(frozen=True)
class WallAnswer:
    query: ChernCharacter
    wall_point: Point
    kind: Literal["discrete-diagonal", "dense-roof", "initial"]
    left_generator: ChernCharacter
    right_generator: ChernCharacter
    base_character: ChernCharacter
    markov: tuple[int, int, int]
    path: str
    multiple: int = 1  # r'' g' - r' g'' = multiple * (0, u, v)
    orientation: Literal["sheaf", "dual"] = "sheaf"

    def to_json(self) -> dict:
        return {
            "query": self.query.to_json(),
            "wall": self.wall_point.to_json(),
            "kind": self.kind,
            "left_generator": self.left_generator.to_json(),
            "right_generator": self.right_generator.to_json(),
            "base_character": self.base_character.to_json(),
            "markov": list(self.markov),
            "path": self.path,
            "multiple": self.multiple,
            "orientation": self.orientation,
        }


def _pair_multiple(left: ChernCharacter, right: ChernCharacter, target: ChernCharacter) -> int:
    combo = right.r * left - left.r * right
    ratio = Fraction(combo.d, target.d)
    if combo != ratio * target or ratio.denominator != 1:
        raise DomainError(f"generators {describe(left)}, {describe(right)} do not span {describe(target)}")
    return int(ratio)


def generators(u: int, v: RationalLike) -> tuple[ChernCharacter, ChernCharacter]:
    """Left and right generators at the base of the diamond with diagonal x = v/u."""
    E = exceptional_of_diagonal(u, v)
    if E is None:
        raise DenseInput(f"v/u = {fmt_q(Q(v) / u)} is not the diagonal of a diamond")
    C = triple_with_middle(E)
    return C.e0, shift3(C.e2)


def diamond_char_from_generators(left: ChernCharacter, right: ChernCharacter) -> tuple[ChernCharacter, Fraction]:
    """(0, D, r''e' - r'e'') and the point count D^2/2 + r''e' - r'e''."""
    if left.r <= 0 or right.r <= 0:
        raise DomainError("generators must have positive rank")
    D = right.r * left.d - left.r * right.d
    if D <= 0:
        raise DomainError("nonpositive determinant")
    e = right.r * left.e - left.r * right.e
    return ChernCharacter(0, D, e), Fraction(D * D, 2) + e


def _dense_generator(E: ChernCharacter, p: Point) -> ChernCharacter:
    """Primitive positive-rank class whose line joins the base of E to p."""
    line = line_through(vertex_of(E), p)
    lam = 1
    while True:
        try:
            return ChernCharacter(lam * line.A, lam * line.B, lam * line.C)
        except DomainError:
            lam += 1


def first_wall(u: int, v: RationalLike, bound: int = DEFAULT_RANK_BOUND) -> WallAnswer:
    v = _check(u, v)
    query = ChernCharacter(0, u, v)
    q = v / u
    E = exceptional_of_diagonal(u, v)
    if E is not None:
        C = triple_with_middle(E)
        left, right = C.e0, shift3(C.e2)
        point = Point(q, Fraction(5, 8) - (1 + v * v) / (2 * u * u))
        kind = "initial" if E.r == 1 else "discrete-diagonal"
        mult = _pair_multiple(left, right, query)
        return WallAnswer(query, point, kind, left, right, E, C.ranks(), C.path, mult)

    from .diamonds import _column_in_window, diamond_of
    from .tree import window_of

    k = window_of(q)
    found = None
    b = max(bound, (q + Fraction(3, 2)).denominator)
    while found is None:
        found = _column_in_window(q - k, b)
        if found is None:
            if b >= RANK_CEILING:
                raise Undetermined(f"no roof interval found for x = {fmt_q(q)} below rank {b}")
            b = min(4 * b, RANK_CEILING)
    g, C = found
    E = twist(k, g)
    C = C.twisted(k)
    D = diamond_of(E)
    p = Point(q, D.roof_y(q))
    F = _dense_generator(E, p)
    if q > D.base.x:
        # right roof lies on the line of E
        left, right = E, F
    else:
        # left roof lies on the line of E(-3); listed with positive rank
        left, right = F, shift3(E)
    mult = _pair_multiple(left, right, query)
    if mult <= 0:
        raise DomainError(f"generators of {describe(query)} have the wrong orientation")
    return WallAnswer(query, p, "dense-roof", left, right, E, C.ranks(), C.path, mult)


def first_wall_of_character(g: ChernCharacter, bound: int = DEFAULT_RANK_BOUND) -> WallAnswer:
    """first_wall for (0, u, v) or (0, -u, -v); both share the wall point."""
    if g.r != 0:
        raise DomainError("expected a rank-zero class")
    if g.d == 0:
        raise DegenerateCharacter("skyscraper classes have no vertical line")
    orientation = "sheaf" if g.d > 0 else "dual"
    h = g if g.d > 0 else -g
    ans = first_wall(h.d, h.e, bound)
    if orientation == "dual":
        ans = WallAnswer(
            g, ans.wall_point, ans.kind, ans.left_generator, ans.right_generator,
            ans.base_character, ans.markov, ans.path, ans.multiple, "dual",
        )
    return ans
