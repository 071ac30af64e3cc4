"""Shared hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from p2scatter.lattice import ChernCharacter, LatticeVector, Point
from p2scatter.tree import follow, twist

small = st.integers(min_value=-12, max_value=12)
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=24)


@st.composite
def characters(draw, rank=small):
    r, d = draw(rank), draw(small)
    # d/2 + e must be an integer
    n = draw(st.integers(min_value=-20, max_value=20))
    return ChernCharacter(r, d, Fraction(n) - Fraction(d, 2))


@st.composite
def vectors(draw, nonzero=False):
    a, b = draw(small), draw(small)
    if nonzero and a == 0 and b == 0:
        a = 1
    return LatticeVector(a, b)


@st.composite
def points(draw):
    return Point(draw(rationals), draw(rationals))


paths = st.text(alphabet="LR", max_size=6)


@st.composite
def exceptionals(draw, max_depth=6):
    """Middle members of tree triples, twisted."""
    C = follow(draw(st.text(alphabet="LR", max_size=max_depth)))
    return twist(draw(st.integers(min_value=-3, max_value=3)), C.e1)
