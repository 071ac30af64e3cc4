from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from p2scatter.errors import DegenerateCharacter, LatticeViolation, OutsideU
from p2scatter.exact import Surd
from p2scatter.lattice import (
    ChernCharacter,
    LatticeVector,
    Line,
    Point,
    bg_roots,
    central_charge,
    euler_pairing,
    in_region_R,
    line_of,
    make_character,
    opposite_vector,
    phi,
    region_R_floor,
    twist,
    twist_line,
)

from .strategies import characters, points, vectors

F = Fraction
O = ChernCharacter(1, 0, 0)
T = ChernCharacter(2, 3, F(3, 2))


def test_make_character():
    assert make_character(1, 0, 0) == O
    assert make_character(2, 3, 8, "euler") == T
    with pytest.raises(LatticeViolation):
        make_character(0, 3, 1)
    with pytest.raises(LatticeViolation):
        make_character(1, 0, F(1, 2), "euler")


def test_euler_pairing():
    assert euler_pairing(O, O) == 1
    assert euler_pairing(T, T) == 1
    assert euler_pairing(O, ChernCharacter(1, 1, F(1, 2))) == 3


def test_opposite_vector():
    assert opposite_vector(O) == LatticeVector(1, 0)
    assert opposite_vector(T) == LatticeVector(2, -3)
    assert opposite_vector(ChernCharacter(0, 2, 0)) == LatticeVector(0, -2)
    with pytest.raises(DegenerateCharacter):
        opposite_vector(ChernCharacter(0, 0, 1))


def test_line_of():
    assert line_of(O) == Line(1, 0, F(0))
    assert line_of(ChernCharacter(0, 1, F(1, 2))) == Line(0, 1, F(1, 2))
    assert line_of(T) == Line(2, 3, F(3, 2))
    with pytest.raises(DegenerateCharacter):
        line_of(ChernCharacter(0, 0, 1))


def test_central_charge():
    assert central_charge(Point(0, F(1, 2)), ChernCharacter(0, 0, 1)) == (-1, Surd.of(0))
    assert central_charge(Point(F(1, 2), 0), ChernCharacter(0, 1, F(1, 2))) == (0, Surd.of(F(1, 2)))
    assert central_charge(Point(0, F(1, 2)), T) == (F(-1, 2), Surd.of(3))
    with pytest.raises(OutsideU):
        central_charge(Point(0, -1), T)


def test_phi():
    assert phi(Point(0, 0), LatticeVector(0, -1)) == 2
    assert phi(Point(0, F(1, 2)), LatticeVector(1, 0)) == 0
    assert phi(Point(1, F(-1, 2)), LatticeVector(-1, 1)) == 0


def test_twist_examples():
    assert twist(1, Point(0, 0)) == Point(1, F(-1, 2))
    assert twist(1, O) == ChernCharacter(1, 1, F(1, 2))
    assert twist(-3, ChernCharacter(1, 2, 2)) == ChernCharacter(1, -1, F(1, 2))


def test_bg_roots():
    assert bg_roots(O) == [0]
    lo, hi = bg_roots(T)
    assert lo == Surd(F(3, 2), F(-1, 2), 3) and hi == Surd(F(3, 2), F(1, 2), 3)
    assert bg_roots(ChernCharacter(1, 0, 1)) == []


def test_region_R_floor():
    # peak of the tent between the rays from (0, 0) and (1, -1/2)
    assert region_R_floor(F(1, 2)) == 0
    assert region_R_floor(F(3, 4)) == F(-1, 4)
    assert region_R_floor(F(-1)) == F(-1, 2)
    assert in_region_R(Point(F(3, 4), F(-1, 5)))
    assert not in_region_R(Point(F(3, 4), F(-1, 3)))


@given(points(), st.integers(min_value=-5, max_value=5))
def test_twist_inverse_on_points(p, k):
    assert twist(-k, twist(k, p)) == p


@given(characters(), characters(), st.integers(min_value=-5, max_value=5))
def test_pairing_is_twist_invariant(g, h, k):
    assert euler_pairing(twist(k, g), twist(k, h)) == euler_pairing(g, h)


@given(characters(), st.integers(min_value=-4, max_value=4))
def test_twist_carries_lines(g, k):
    if g.r == 0 and g.d == 0:
        return
    assert twist_line(k, line_of(g)) == line_of(twist(k, g))


@given(characters(), points(), st.integers(min_value=-4, max_value=4))
def test_twist_preserves_incidence(g, p, k):
    if g.r == 0 and g.d == 0:
        return
    assert line_of(g).contains(p) == line_of(twist(k, g)).contains(twist(k, p))


@given(characters(), points())
def test_real_part_vanishes_on_line(g, p):
    if (g.r == 0 and g.d == 0) or not p.in_U():
        return
    re, _ = central_charge(p, g)
    assert (re == 0) == line_of(g).contains(p)


@given(vectors(nonzero=True), vectors(nonzero=True))
def test_check_is_three_times_wedge(m, n):
    assert m.check(n) == -3 * m.wedge(n)
    assert m.check(n) == -n.check(m)


@given(characters())
def test_json_round_trip(g):
    assert ChernCharacter.from_json(g.to_json()) == g
