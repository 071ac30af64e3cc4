"""Truncated series over the group ring of M with two deformation parameters.

Monomials are z^m * t1^e1 * t2^e2.  Truncation is by total deformation degree
e1 + e2, so every series used as an exponent must have positive degree terms only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Literal, Mapping, Sequence

from .errors import NonPrimitive, UnsortedInput
from .lattice import LatticeVector

# ---------------------------------------------------------------- dict algebra
# keys are integer tuples whose last two entries are (e1, e2)


def _deg(key: tuple[int, ...]) -> int:
    return key[-1] + key[-2]


def _add_keys(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def s_add(p: Mapping, q: Mapping, scale: Fraction = Fraction(1)) -> dict:
    out = dict(p)
    for k, v in q.items():
        w = out.get(k, 0) + scale * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def s_scale(p: Mapping, c) -> dict:
    return {k: c * v for k, v in p.items() if c * v}


def s_mul(p: Mapping, q: Mapping, order: int) -> dict:
    out: dict = {}
    for k1, v1 in p.items():
        d1 = _deg(k1)
        if d1 > order:
            continue
        for k2, v2 in q.items():
            if d1 + _deg(k2) > order:
                continue
            k = _add_keys(k1, k2)
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _check_nilpotent(p: Mapping) -> None:
    if any(_deg(k) <= 0 for k in p):
        raise ValueError("series has terms of zero deformation degree")


def s_exp(p: Mapping, order: int, unit: tuple[int, ...]) -> dict:
    _check_nilpotent(p)
    out = {unit: Fraction(1)}
    term = {unit: Fraction(1)}
    for n in range(1, order + 1):
        term = s_scale(s_mul(term, p, order), Fraction(1, n))
        if not term:
            break
        out = s_add(out, term)
    return out


def s_log(p: Mapping, order: int, unit: tuple[int, ...]) -> dict:
    """Logarithm of a series with constant term 1."""
    if p.get(unit) != 1:
        raise ValueError("logarithm needs constant term 1")
    rest = {k: v for k, v in p.items() if k != unit}
    _check_nilpotent(rest)
    out: dict = {}
    term = {unit: Fraction(1)}
    for n in range(1, order + 1):
        term = s_mul(term, rest, order)
        if not term:
            break
        out = s_add(out, term, Fraction((-1) ** (n + 1), n))
    return out


def s_truncate(p: Mapping, order: int) -> dict:
    return {k: v for k, v in p.items() if _deg(k) <= order and v}


# ---------------------------------------------------------------- graded series

Key = tuple[int, int, int]


@dataclass(frozen=True)
class GradedSeries:
    """Sum of c * z^(k m) t1^e1 t2^e2 over keys (k, e1, e2).

    kind "H" is the Lie-algebra form (k >= 1); kind "f" is the multiplicative
    form and carries the constant term under key (0, 0, 0).
    """

    direction: LatticeVector
    coeffs: Mapping[Key, Fraction]
    order: int
    kind: Literal["H", "f"] = "H"

    def __post_init__(self) -> None:
        if not self.direction.is_primitive():
            raise NonPrimitive(f"direction {self.direction} is not primitive")
        clean = {tuple(k): Fraction(v) for k, v in self.coeffs.items() if v and _deg(k) <= self.order}
        for k in clean:
            if k[1] < 0 or k[2] < 0 or (self.kind == "H" and k[0] < 1):
                raise ValueError(f"invalid key {k}")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.direction, self.coeffs, self.order, self.kind) == (
            other.direction,
            other.coeffs,
            other.order,
            other.kind,
        )

    def __hash__(self) -> int:
        return hash((self.direction, tuple(self.coeffs.items()), self.order, self.kind))

    def truncate(self, order: int) -> "GradedSeries":
        return GradedSeries(self.direction, self.coeffs, min(order, self.order), self.kind)

    def leading(self) -> tuple[Key, Fraction]:
        """Term of smallest (degree, k) other than the constant."""
        keys = [k for k in self.coeffs if k != (0, 0, 0)]
        if not keys:
            raise ValueError("series has no non-constant term")
        k = min(keys, key=lambda t: (t[1] + t[2], t[0], t))
        return k, self.coeffs[k]

    def is_zero(self) -> bool:
        return not [k for k in self.coeffs if k != (0, 0, 0)] and (
            self.kind == "H" or self.coeffs.get((0, 0, 0), 0) == 1
        )

    def to_json(self) -> dict:
        return {
            "direction": self.direction.to_json(),
            "kind": self.kind,
            "order": self.order,
            "terms": [[k[0], k[1], k[2], str(v)] for k, v in self.coeffs.items()],
        }


def dilog_wall(m: LatticeVector, order: int, slot: Literal["t1", "t2"] = "t1") -> GradedSeries:
    """-Li2(-t z^m): coefficient -(-1)^k / k^2 on t^k z^(k m)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    if not m.is_primitive():
        raise NonPrimitive(f"direction {m} is not primitive")
    coeffs = {}
    for k in range(1, order + 1):
        key = (k, k, 0) if slot == "t1" else (k, 0, k)
        coeffs[key] = Fraction(-((-1) ** k), k * k)
    return GradedSeries(m, coeffs, order)


def _log_derivative(H: GradedSeries) -> dict:
    """sum k h_k z^(k m) as a series keyed like H."""
    return {k: k[0] * v for k, v in H.coeffs.items()}


def h_to_f(H: GradedSeries) -> GradedSeries:
    if H.kind != "H":
        raise ValueError("expected a Lie-algebra series")
    f = s_exp(s_scale(_log_derivative(H), 3), H.order, (0, 0, 0))
    return GradedSeries(H.direction, f, H.order, "f")


def f_to_h(f: GradedSeries) -> GradedSeries:
    if f.kind != "f":
        raise ValueError("expected a multiplicative series")
    log = s_log(f.coeffs, f.order, (0, 0, 0))
    coeffs = {k: v / (3 * k[0]) for k, v in log.items()}
    return GradedSeries(f.direction, coeffs, f.order)


def f_power(H: GradedSeries, n: int) -> GradedSeries:
    """f^(n/3) = exp(n * sum k h_k z^(k m))."""
    out = s_exp(s_scale(_log_derivative(H), n), H.order, (0, 0, 0))
    return GradedSeries(H.direction, out, H.order, "f")


def transport(H: GradedSeries, m_prime: LatticeVector, order: int, sign: int = 1) -> GradedSeries:
    """The factor f^(sign * <m, m'>/3) multiplying z^m' under the wall automorphism."""
    pairing = H.direction.check(m_prime)
    if pairing % 3:
        raise ArithmeticError("non-integer exponent: lattice bookkeeping is inconsistent")
    return f_power(H.truncate(order), sign * pairing // 3)


# ---------------------------------------------------------------- automorphisms

MKey = tuple[int, int, int, int]  # (mx, my, e1, e2)
_UNIT: MKey = (0, 0, 0, 0)


def _as_mseries(H: GradedSeries) -> dict:
    """sum k h_k z^(k m) as a series over M x N^2."""
    m = H.direction
    return {(k * m.a, k * m.b, e1, e2): k * v for (k, e1, e2), v in H.coeffs.items()}


@dataclass
class Automorphism:
    """theta(z^(1,0)) = z^(1,0) * A, theta(z^(0,1)) = z^(0,1) * B, t fixed."""

    A: dict
    B: dict
    order: int
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def identity(cls, order: int) -> "Automorphism":
        return cls({_UNIT: Fraction(1)}, {_UNIT: Fraction(1)}, order)

    @classmethod
    def of_wall(cls, H: GradedSeries, sign: int, order: int) -> "Automorphism":
        L = s_truncate(_as_mseries(H), order)
        m = H.direction
        A = s_exp(s_scale(L, sign * m.check(LatticeVector(1, 0))), order, _UNIT)
        B = s_exp(s_scale(L, sign * m.check(LatticeVector(0, 1))), order, _UNIT)
        return cls(A, B, order)

    def _power(self, which: str, n: int) -> dict:
        key = (which, n)
        if key not in self._powers:
            base = self.A if which == "A" else self.B
            log = s_log(base, self.order, _UNIT)
            self._powers[key] = s_exp(s_scale(log, n), self.order, _UNIT) if log else {_UNIT: Fraction(1)}
        return self._powers[key]

    def apply(self, series: Mapping) -> dict:
        """Image of a series over M x N^2 (coefficients of z^m t^e)."""
        out: dict = {}
        for (mx, my, e1, e2), c in series.items():
            if e1 + e2 > self.order:
                continue
            factor = s_mul(self._power("A", mx), self._power("B", my), self.order - e1 - e2)
            out = s_add(out, {(mx + k[0], my + k[1], e1 + k[2], e2 + k[3]): v for k, v in factor.items()}, c)
        return out

    def compose(self, inner: "Automorphism") -> "Automorphism":
        """self o inner."""
        order = min(self.order, inner.order)
        A = s_mul(self.A, self.apply(inner.A), order)
        B = s_mul(self.B, self.apply(inner.B), order)
        return Automorphism(A, B, order)

    def defect(self) -> dict:
        """Non-trivial part of the multipliers."""
        return {
            "A": {k: v for k, v in self.A.items() if k != _UNIT or v != 1},
            "B": {k: v for k, v in self.B.items() if k != _UNIT or v != 1},
        }

    def is_identity(self) -> bool:
        d = self.defect()
        return not d["A"] and not d["B"]

    def lowest_degree(self) -> int | None:
        d = self.defect()
        degs = [_deg(k) for part in d.values() for k in part]
        return min(degs) if degs else None

    def log_at_degree(self, degree: int) -> dict:
        """Lie element sum c z^m t^e of an automorphism trivial below `degree`."""
        low = self.lowest_degree()
        if low is not None and low < degree:
            raise ValueError("automorphism is not trivial below the requested degree")
        out: dict = {}
        keys = {k for k in self.A if _deg(k) == degree} | {k for k in self.B if _deg(k) == degree}
        for k in keys:
            mx, my = k[0], k[1]
            if my:
                c = Fraction(self.A.get(k, 0)) / (3 * my)
            else:
                c = Fraction(self.B.get(k, 0)) / (-3 * mx)
            if c:
                out[k] = c
        return out

    def to_json(self) -> dict:
        def enc(p):
            return [[*k, str(v)] for k, v in sorted(p.items())]

        return {"order": self.order, "z(1,0)": enc(self.A), "z(0,1)": enc(self.B)}


# ---------------------------------------------------------------- local diagrams


@dataclass(frozen=True)
class LocalRay:
    """A wall through the origin: a full line R*m or a half-ray -R_{>=0} m."""

    support: Literal["full-line", "half-ray"]
    direction: LatticeVector
    function: GradedSeries

    def __post_init__(self) -> None:
        if self.function.direction != self.direction:
            raise ValueError("function direction differs from ray direction")
        if self.support not in ("full-line", "half-ray"):
            raise ValueError(f"unknown support {self.support!r}")


@dataclass(frozen=True)
class Crossing:
    ray: LocalRay
    position: LatticeVector  # a point of the support where the loop crosses
    sign: int


def _half(v: LatticeVector) -> int:
    return 0 if (v.b > 0 or (v.b == 0 and v.a > 0)) else 1


def angle_cmp(u: LatticeVector, v: LatticeVector) -> int:
    """Counterclockwise angle order on [0, 2 pi) from the positive x-axis."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    w = u.wedge(v)
    return -1 if w > 0 else (1 if w < 0 else 0)


def crossing_sign(m: LatticeVector, position: LatticeVector) -> int:
    """+1 when the check of m evaluated on the counterclockwise tangent is negative."""
    tangent = LatticeVector(-position.b, position.a)
    return 1 if m.check(tangent) < 0 else -1


def loop_crossings(rays: Iterable[LocalRay], start: int = 0) -> list[Crossing]:
    """Crossings of a small counterclockwise loop, beginning at the `start`-th one."""
    found = []
    for ray in rays:
        positions = [-ray.direction]
        if ray.support == "full-line":
            positions.append(ray.direction)
        for p in positions:
            found.append(Crossing(ray, p, crossing_sign(ray.direction, p)))
    found.sort(key=cmp_to_key(lambda c1, c2: angle_cmp(c1.position, c2.position)))
    if found:
        start %= len(found)
        found = found[start:] + found[:start]
    return found


def _check_sorted(crossings: Sequence[Crossing]) -> None:
    descents = 0
    n = len(crossings)
    for i in range(n - 1):
        if angle_cmp(crossings[i].position, crossings[i + 1].position) > 0:
            descents += 1
    if descents > 1 or (descents == 1 and angle_cmp(crossings[-1].position, crossings[0].position) > 0):
        raise UnsortedInput("crossings are not in counterclockwise order")


def path_ordered_product(crossings: Sequence[Crossing], order: int) -> Automorphism:
    """theta_n o ... o theta_1 for the crossings in loop order."""
    _check_sorted(crossings)
    total = Automorphism.identity(order)
    for c in crossings:
        total = Automorphism.of_wall(c.ray.function.truncate(order), c.sign, order).compose(total)
    return total


def dilog_line(m: LatticeVector, order: int, slot: Literal["t1", "t2"]) -> LocalRay:
    return LocalRay("full-line", m, dilog_wall(m, order, slot))


def ks_complete(lines: Sequence[LocalRay], order: int, start: int = 0, reverse: bool = False) -> list[LocalRay]:
    """Outgoing half-rays making the local diagram consistent to `order`.

    Corrections are found degree by degree from the logarithm of the loop
    product; `start` moves the loop base point and `reverse` flips the order
    in which the corrections of one degree are inserted.
    """
    if any(l.support != "full-line" for l in lines):
        raise ValueError("ks_complete expects full lines as input")
    added: dict[LatticeVector, dict] = {}

    def current() -> list[LocalRay]:
        extra = [LocalRay("half-ray", m, GradedSeries(m, c, order)) for m, c in added.items() if c]
        return list(lines) + extra

    for degree in range(1, order + 1):
        theta = path_ordered_product(loop_crossings(current(), start), degree)
        log = theta.log_at_degree(degree)
        items = sorted(log.items(), reverse=reverse)
        for (mx, my, e1, e2), c in items:
            n = LatticeVector(mx, my)
            m = n.primitive()
            k = n.content()
            sign = crossing_sign(m, -m)
            slot = added.setdefault(m, {})
            key = (k, e1, e2)
            slot[key] = slot.get(key, 0) - c / sign
            if not slot[key]:
                del slot[key]
    rays = [r for r in current() if r.support == "half-ray"]
    rays.sort(key=cmp_to_key(lambda r1, r2: angle_cmp(-r1.direction, -r2.direction)))
    return rays


def is_consistent(rays: Sequence[LocalRay], order: int) -> bool:
    return path_ordered_product(loop_crossings(rays), order).is_identity()


def binomial_f(exponent: int, base_key: Key, direction: LatticeVector, order: int) -> GradedSeries:
    """(1 + z^(k m) t^e)^exponent as an f-form series."""
    k0, a, b = base_key
    coeffs = {}
    j = 0
    while j * (a + b) <= order:
        coeffs[(j * k0, j * a, j * b)] = Fraction(math.comb(exponent, j)) if exponent >= 0 else _gbinom(exponent, j)
        j += 1
        if a + b == 0:
            break
    return GradedSeries(direction, coeffs, order, "f")


def _gbinom(n: int, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out *= Fraction(n - i, i + 1)
    return out
