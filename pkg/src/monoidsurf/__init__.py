"""Exact-arithmetic toolkit for monoid hypersurfaces.

A monoid hypersurface of degree d is an irreducible projective
hypersurface with a point of multiplicity d-1; normalized here so that
point is (1:0:...:0) and the equation splits as x0*f_{d-1} + f_d.  The
package validates such surfaces, parameterizes them, enumerates and
types their singularities, classifies quartic tangent cones (including
real forms), and constructs surfaces realizing prescribed singularity
configurations.  All computation is exact over Q.
"""

from .construct import (
    ConstructionSpec,
    build_quartic_case,
    extreme_a_monoid,
    max_real_nodes_monoid,
)
from .errors import MonoidError
from .hpoly import HPoly, ProjPoint, RationalMap, parse_hpoly, render_hpoly
from .intersect import (
    intersection_multiplicity_at,
    intersection_profile,
    is_transversal,
    pullback_multiplicities,
)
from .monoid import Monoid, base_point_profile, build_monoid, natural_param
from .quartic import quartic_report, tangent_cone_type
from .ratpoly import BinaryForm, UPoly
from .singclass import extra_singularities, monoid_point_milnor

__all__ = [
    "MonoidError",
    "HPoly",
    "ProjPoint",
    "RationalMap",
    "parse_hpoly",
    "render_hpoly",
    "BinaryForm",
    "UPoly",
    "Monoid",
    "build_monoid",
    "natural_param",
    "base_point_profile",
    "intersection_profile",
    "intersection_multiplicity_at",
    "is_transversal",
    "pullback_multiplicities",
    "extra_singularities",
    "monoid_point_milnor",
    "tangent_cone_type",
    "quartic_report",
    "ConstructionSpec",
    "build_quartic_case",
    "extreme_a_monoid",
    "max_real_nodes_monoid",
]

__version__ = "0.1.0"
