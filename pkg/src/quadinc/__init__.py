"""Exact point-plane incidences on quadric surfaces.

The top-level namespace re-exports the pieces most scripts need; the
submodules hold the rest.
"""

from .bounds import (
    eval_bound_general,
    eval_bound_quadric,
    eval_bound_small_m,
    eval_bound_weak,
    eval_ngek_bound,
)
from .crossratio import (
    Mobius,
    count_congruent_pentuples,
    cross_ratio,
    distinct_cross_ratios,
    grid_incidence_crosscheck,
    grid_instance,
    mobius_apply,
    mobius_from_pairs,
    plane_of_mobius,
    rich_transformations,
)
from .decomposition import Decomposition, LineFactor, audit_decomposition, bound_report, build_L, decompose
from .geometry import (
    Circle2,
    Line3,
    Plane,
    Point3,
    dualize_plane,
    dualize_point,
    generic_rotation,
    lift_circle,
    lift_point,
    line_in_plane,
    point_on_plane,
)
from .incidence import classify_degenerate_planes, incidence_graph, rich_planes
from .quadric import (
    CONE,
    HYPERBOLIC_PARABOLOID,
    ONE_SHEET_HYPERBOLOID,
    PARABOLOID,
    UNIT_SPHERE,
    Quadric,
    QuadricKind,
    classify_quadric,
    curve_pair_intersections,
    line_in_quadric,
    lines_in_plane_section,
    lines_through_point,
    point_on_quadric,
)

__version__ = "0.1.0"

__all__ = [
    "CONE", "HYPERBOLIC_PARABOLOID", "ONE_SHEET_HYPERBOLOID", "PARABOLOID", "UNIT_SPHERE",
    "Circle2", "Decomposition", "Line3", "LineFactor", "Mobius", "Plane", "Point3", "Quadric", "QuadricKind",
    "audit_decomposition", "bound_report", "build_L", "classify_degenerate_planes", "classify_quadric",
    "count_congruent_pentuples", "cross_ratio", "curve_pair_intersections", "decompose",
    "distinct_cross_ratios", "dualize_plane", "dualize_point", "eval_bound_general", "eval_bound_quadric",
    "eval_bound_small_m", "eval_bound_weak", "eval_ngek_bound", "generic_rotation",
    "grid_incidence_crosscheck", "grid_instance", "incidence_graph", "lift_circle", "lift_point",
    "line_in_plane", "line_in_quadric", "lines_in_plane_section", "lines_through_point", "mobius_apply",
    "mobius_from_pairs", "plane_of_mobius", "point_on_plane", "point_on_quadric", "rich_planes",
    "rich_transformations",
]
