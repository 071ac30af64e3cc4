"""Closed-form structure where two dilogarithm walls of index D collide."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Literal

from .errors import DependentInputs, NonPrimitive
from .exact import Surd
from .lattice import LatticeVector


@lru_cache(maxsize=None)
def _ladder(D: int, j: int) -> int:
    if j <= 1:
        return j
    return 3 * D * _ladder(D, j - 1) - _ladder(D, j - 2)


def _ladder_closed(D: int, j: int) -> int:
    if j == 0:
        return 0
    total = 0
    for l in range(0, (j - 1) // 2 + 1):
        total += (-1) ** l * comb(j - l - 1, l) * (3 * D) ** (j - 2 * l - 1)
    return total


def R_seq(D: int, j: int, method: Literal["recursive", "closed"] = "recursive") -> int:
    if j < 0:
        raise ValueError("ladder index must be non-negative")
    if method == "closed":
        return _ladder_closed(D, j)
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    # iterative fill keeps the cache shallow
    for i in range(2, j):
        _ladder(D, i)
    return _ladder(D, j)


def r_infinity(D: int) -> Surd:
    return (Surd.of(3 * D) + Surd.sqrt(9 * D * D - 4)) / 2


def r_infinity_inverse(D: int) -> Surd:
    return (Surd.of(3 * D) - Surd.sqrt(9 * D * D - 4)) / 2


def _check_pair(m1: LatticeVector, m2: LatticeVector) -> int:
    if not (m1.is_primitive() and m2.is_primitive()):
        raise NonPrimitive("colliding directions must be primitive")
    D = abs(m1.wedge(m2))
    if D == 0:
        raise DependentInputs("colliding directions are parallel")
    return D


def discrete_directions(m1: LatticeVector, m2: LatticeVector, i_max: int) -> list[LatticeVector]:
    """m_{i,1}, m_{i,2} for 1 <= i <= i_max, in that order."""
    D = _check_pair(m1, m2)
    out = []
    for i in range(1, i_max + 1):
        a, b = R_seq(D, i + 1), R_seq(D, i)
        out.append(a * m1 + b * m2)
        out.append(b * m1 + a * m2)
    return out


@dataclass(frozen=True)
class LocalStructure:
    m1: LatticeVector
    m2: LatticeVector
    D: int

    @property
    def cone(self) -> tuple[Surd, Surd]:
        """Open bounds on b/a for directions a*m1 + b*m2."""
        return r_infinity_inverse(self.D), r_infinity(self.D)

    def discrete(self) -> Iterator[LatticeVector]:
        i = 1
        while True:
            yield from discrete_directions(self.m1, self.m2, i)[-2:]
            i += 1

    def coordinates(self, m: LatticeVector) -> tuple[Fraction, Fraction]:
        """(a, b) with m = a*m1 + b*m2."""
        det = self.m1.wedge(self.m2)
        return Fraction(m.wedge(self.m2), det), Fraction(self.m1.wedge(m), det)

    def dense_member(self, a, b) -> bool:
        """r_inf^-1 < b/a < r_inf, for a > 0."""
        a, b = Fraction(a), Fraction(b)
        if a <= 0 or b <= 0:
            return False
        ratio = b / a
        lo, hi = self.cone
        assert lo.compare(ratio) != 0 and hi.compare(ratio) != 0
        return lo < ratio and Surd.of(ratio) < hi

    def contains_direction(self, m: LatticeVector) -> bool:
        a, b = self.coordinates(m)
        return self.dense_member(a, b)

    def discrete_index(self, m: LatticeVector, i_max: int = 64) -> tuple[int, int] | None:
        """(i, j) with m_{i,j} = m, or None."""
        a, b = self.coordinates(m)
        if a.denominator != 1 or b.denominator != 1 or a <= 0 or b <= 0:
            return None
        for i in range(1, i_max + 1):
            hi, lo = R_seq(self.D, i + 1), R_seq(self.D, i)
            if (a, b) == (hi, lo):
                return (i, 1)
            if (a, b) == (lo, hi):
                return (i, 2)
            if lo > max(a, b):
                break
        return None

    def to_json(self) -> dict:
        lo, hi = self.cone
        return {
            "m1": self.m1.to_json(),
            "m2": self.m2.to_json(),
            "D": self.D,
            "cone": {"lo": lo.to_json(), "hi": hi.to_json()},
        }


def local_structure(m1: LatticeVector, m2: LatticeVector) -> LocalStructure:
    return LocalStructure(m1, m2, _check_pair(m1, m2))


def jth_ray_along(
    ray_direction: LatticeVector,
    crossing_direction: LatticeVector,
    D: int,
    j: int,
    mode: Literal["standard", "opposite"] = "standard",
) -> LatticeVector:
    if j < 0:
        raise ValueError("j must be non-negative")
    lo, hi = R_seq(D, j), R_seq(D, j + 1)
    if mode == "standard":
        return hi * ray_direction + lo * crossing_direction
    if mode == "opposite":
        return lo * ray_direction + hi * crossing_direction
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class OracleReport:
    structure: LocalStructure
    order: int
    discrete_found: tuple[LatticeVector, ...]
    discrete_expected: tuple[LatticeVector, ...]
    dense_found: tuple[LatticeVector, ...]
    stray: tuple[LatticeVector, ...]  # neither discrete nor dense
    leading_ok: bool
    consistent: bool

    @property
    def agrees(self) -> bool:
        return (
            not self.stray
            and self.leading_ok
            and self.consistent
            and set(self.discrete_found) == set(self.discrete_expected)
        )

    def to_json(self) -> dict:
        return {
            "structure": self.structure.to_json(),
            "order": self.order,
            "discrete": [m.to_json() for m in self.discrete_found],
            "discrete_expected": [m.to_json() for m in self.discrete_expected],
            "dense": [m.to_json() for m in self.dense_found],
            "stray": [m.to_json() for m in self.stray],
            "leading_ok": self.leading_ok,
            "consistent": self.consistent,
            "agreement": "pass" if self.agrees else "fail",
        }


def oracle_report(m1: LatticeVector, m2: LatticeVector, order: int) -> OracleReport:
    """Complete two dilogarithm walls and compare with the closed-form structure."""
    from .series import dilog_line, h_to_f, is_consistent, ks_complete

    ls = local_structure(m1, m2)
    lines = [dilog_line(m1, order, "t1"), dilog_line(m2, order, "t2")]
    rays = ks_complete(lines, order)
    discrete, dense, stray = [], [], []
    leading_ok = True
    for ray in rays:
        m = ray.direction
        idx = ls.discrete_index(m)
        if idx is not None:
            discrete.append(m)
            a, b = ls.coordinates(m)
            f = h_to_f(ray.function)
            key, coeff = f.leading()
            leading_ok &= key == (1, int(a), int(b)) and coeff == 3
        elif ls.contains_direction(m):
            dense.append(m)
        else:
            stray.append(m)
    expected = []
    i = 1
    while R_seq(ls.D, i + 1) + R_seq(ls.D, i) <= order:
        expected.extend(discrete_directions(m1, m2, i)[-2:])
        i += 1
    return OracleReport(
        ls,
        order,
        tuple(discrete),
        tuple(expected),
        tuple(dense),
        tuple(stray),
        leading_ok,
        is_consistent(lines + rays, order),
    )
