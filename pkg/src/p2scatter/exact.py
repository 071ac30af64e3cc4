"""Exact rationals and real quadratic surds a + b*sqrt(s)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import factorint

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def Q(value: RationalLike, den: int = 1) -> Fraction:
    """Coerce to Fraction; strings accept "p/q"."""
    if isinstance(value, float):
        raise TypeError("floats are not exact")
    return Fraction(value) / den


def fmt_q(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_q(text: str) -> Fraction:
    text = text.strip()
    if not text or any(c in text for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return (f, s) with n = f*f*s and s square-free."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    f, s = 1, 1
    for p, k in factorint(n).items():
        f *= p ** (k // 2)
        if k % 2:
            s *= p
    return f, s


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _sign_ab(a: Fraction, b: Fraction, s: int) -> int:
    """Sign of a + b*sqrt(s)."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0 or s == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    diff = a * a - b * b * s
    return sa if diff > 0 else (sb if diff < 0 else 0)


@dataclass(frozen=True)
class Surd:
    """The real number a + b*sqrt(s) with s square-free; rationals use b = 0, s = 1."""

    a: Fraction
    b: Fraction = Fraction(0)
    s: int = 1

    def __post_init__(self) -> None:
        a, b, s = Fraction(self.a), Fraction(self.b), int(self.s)
        if s < 0:
            raise ValueError("radicand must be non-negative")
        f, s = squarefree_split(s)
        b *= f
        if s == 1 or b == 0:
            a, b, s = a + b, Fraction(0), 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "s", s)

    @classmethod
    def sqrt(cls, q: RationalLike) -> "Surd":
        q = Q(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        n, d = q.numerator, q.denominator
        f, s = squarefree_split(n * d)
        return cls(Fraction(0), Fraction(f, d), s)

    @classmethod
    def of(cls, value: "Surd | RationalLike") -> "Surd":
        return value if isinstance(value, Surd) else cls(Q(value))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.s)

    def sign(self) -> int:
        return _sign_ab(self.a, self.b, self.s)

    def _common(self, other: "Surd") -> int:
        if self.b and other.b and self.s != other.s:
            raise ValueError(f"incompatible radicands {self.s} and {other.s}")
        return self.s if self.b else other.s

    def __add__(self, other):
        other = Surd.of(other)
        return Surd(self.a + other.a, self.b + other.b, self._common(other))

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd(-self.a, -self.b, self.s)

    def __sub__(self, other):
        return self + (-Surd.of(other))

    def __rsub__(self, other):
        return Surd.of(other) - self

    def __mul__(self, other):
        other = Surd.of(other)
        s = self._common(other)
        return Surd(self.a * other.a + self.b * other.b * s, self.a * other.b + self.b * other.a, s)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        norm = self.a * self.a - self.b * self.b * self.s
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        return Surd(self.a / norm, -self.b / norm, self.s)

    def __truediv__(self, other):
        return self * Surd.of(other).inverse()

    def __rtruediv__(self, other):
        return Surd.of(other) * self.inverse()

    def square(self) -> "Surd":
        return self * self

    def compare(self, other: "Surd | RationalLike") -> int:
        """Exact sign of self - other, also across different radicands."""
        other = Surd.of(other)
        if not self.b or not other.b or self.s == other.s:
            return (self - other).sign()
        x = Surd(self.a - other.a, self.b, self.s)
        y_coef = -other.b
        sx, sy = x.sign(), _sign(y_coef)
        if sx == 0 or sx == sy:
            return sy if sx == 0 else sx
        if sy == 0:
            return sx
        gap = x.square() - y_coef * y_coef * other.s
        return sx if gap.sign() > 0 else -sx

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, Surd):
            return NotImplemented
        return (self.a, self.b, self.s) == (other.a, other.b, other.s)

    def __hash__(self) -> int:
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.s))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.s ** 0.5

    def __repr__(self) -> str:
        if not self.b:
            return f"Surd({fmt_q(self.a)})"
        return f"Surd({fmt_q(self.a)} + {fmt_q(self.b)}*sqrt({self.s}))"

    def to_json(self) -> dict:
        return {"a": fmt_q(self.a), "b": fmt_q(self.b), "s": self.s}

    @classmethod
    def from_json(cls, data: dict) -> "Surd":
        return cls(parse_q(data["a"]), parse_q(data["b"]), int(data["s"]))


Number = Union[Fraction, Surd]


def cmp(x: Number | int, y: Number | int) -> int:
    """Exact three-way comparison of rationals and surds."""
    if isinstance(x, Surd) or isinstance(y, Surd):
        return Surd.of(x).compare(y)
    return (x > y) - (x < y)
