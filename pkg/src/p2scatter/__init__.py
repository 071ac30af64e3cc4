"""Exact stability scattering diagram of the projective plane."""

from types import ModuleType as _ModuleType

from .diamonds import (
    Diamond,
    GeneratingPoint,
    RegionTag,
    RoofCone,
    RoofInterval,
    RoofSegment,
    apex_of,
    classify,
    column_of,
    dense_cone_at,
    diamond_of,
    first_generating_point,
    initial_diamond,
    lepotier_curve,
    lepotier_map,
    li_vertex,
    roof_interval,
    roofs_curve,
)
from .errors import DomainError
from .exact import Surd, parse_q
from .lattice import (
    ChernCharacter,
    LatticeVector,
    Line,
    Point,
    central_charge,
    euler_pairing,
    line_of,
    make_character,
    twist,
)
from .local import R_seq, discrete_directions, local_structure, oracle_report, r_infinity
from .rankzero import first_wall, generators
from .series import Automorphism, GradedSeries, ks_complete, path_ordered_product
from .tree import (
    ExceptionalTriple,
    Triangle,
    follow,
    is_exceptional,
    locate_by_x,
    mutate,
    root_triple,
    triangle_of,
    vertex_of,
)

__all__ = sorted(n for n, v in globals().items() if not n.startswith("_") and not isinstance(v, _ModuleType))
