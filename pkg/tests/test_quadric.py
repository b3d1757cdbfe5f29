import math
from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from quadinc.exact import cross, matmul, transpose
from quadinc.geometry import Circle2, Line3, Plane, Point3, lift_circle, line_in_plane
from quadinc.quadric import (
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
    line_quadric_intersections,
    lines_in_plane_section,
    lines_through_point,
    plane_plane_line,
    point_on_quadric,
)

from conftest import small_rationals

K = QuadricKind


@pytest.mark.parametrize("V, kind", [
    (HYPERBOLIC_PARABOLOID, K.DOUBLY_RULED),
    (PARABOLOID, K.NON_RULED),
    (UNIT_SPHERE, K.NON_RULED),
    (ONE_SHEET_HYPERBOLOID, K.DOUBLY_RULED),
    (Quadric.from_polynomial(xx=1, yy=1, zz=-1, c=1), K.NON_RULED),  # two sheets
    (Quadric.from_polynomial(xx=1, yy=1, zz=1, c=1), K.NON_RULED),  # empty ellipsoid
    (Quadric.from_polynomial(xx=1, yy=-1, c=-1), K.RANK3_OTHER),  # hyperbolic cylinder
    (Quadric.from_polynomial(xx=1, z=-1), K.RANK3_OTHER),  # parabolic cylinder
    (Quadric.from_polynomial(xx=1, yy=1, zz=1), K.RANK3_OTHER),  # imaginary cone, one real point
    (Quadric.from_polynomial(xy=1), K.REDUCIBLE),
    (Quadric.from_polynomial(xx=1), K.REDUCIBLE),
    (Quadric.from_polynomial(x=1, y=2, c=3), K.LINEAR),
])
def test_classify(V, kind):
    assert classify_quadric(V).kind == kind


def test_cone_apex():
    cls = classify_quadric(CONE)
    assert cls.kind == K.CONE and cls.apex == Point3.of(0, 0, 0)
    shifted = Quadric.from_polynomial(xx=1, yy=1, zz=-1, x=-2, z=6, c=-8)  # (x-1)^2 + y^2 - (z-3)^2
    assert classify_quadric(shifted).apex == Point3.of(1, 0, 3)


def test_zero_matrix_rejected():
    with pytest.raises(ValueError):
        classify_quadric(Quadric(((0,) * 4,) * 4))


affine_maps = st.lists(st.integers(-3, 3), min_size=12, max_size=12).map(
    lambda v: [v[0:3] + [v[9]], v[3:6] + [v[10]], v[6:9] + [v[11]], [0, 0, 0, 1]]
)


@given(affine_maps, st.sampled_from([HYPERBOLIC_PARABOLOID, PARABOLOID, UNIT_SPHERE, CONE, ONE_SHEET_HYPERBOLOID]))
@settings(max_examples=80)
def test_classification_is_affine_invariant(T, V):
    Tm = [[F(x) for x in row] for row in T]
    assume(np.linalg.matrix_rank(np.array(T, dtype=float)) == 4)
    W = Quadric(tuple(map(tuple, matmul(transpose(Tm), matmul(V.matrix, Tm)))))
    assert W.kind == V.kind
    if V.kind == K.CONE:
        # apex of W maps to the apex of V under T
        a = W.classification.apex
        img = [sum(Tm[i][j] * c for j, c in enumerate((a.x, a.y, a.z, 1))) for i in range(3)]
        assert Point3(*img) == V.classification.apex


def test_point_on_quadric_examples():
    assert point_on_quadric(Point3.of(2, 3, 6), HYPERBOLIC_PARABOLOID)
    assert point_on_quadric(Point3.of(1, 1, 2), PARABOLOID)
    assert not point_on_quadric(Point3.of(1, 1, 1), PARABOLOID)


def test_line_in_quadric_examples():
    x_axis = Line3(Point3.of(0, 0, 0), (1, 0, 0))
    assert line_in_quadric(x_axis, HYPERBOLIC_PARABOLOID)
    assert not line_in_quadric(x_axis, PARABOLOID)
    assert line_in_quadric(Line3(Point3.of(1, 1, 1), (1, 0, 1)), HYPERBOLIC_PARABOLOID)


def test_lines_through_point_examples():
    r = lines_through_point(Point3.of(1, 1, 1), HYPERBOLIC_PARABOLOID)
    assert {line.direction for line in r.lines} == {(1, 0, 1), (0, 1, 1)}
    assert lines_through_point(Point3.of(0, 0, 0), PARABOLOID).count == 0
    assert lines_through_point(Point3.of(0, 0, 0), CONE).apex
    with pytest.raises(ValueError):
        lines_through_point(Point3.of(1, 1, 5), HYPERBOLIC_PARABOLOID)


def test_irrational_rulings_are_counted():
    V = Quadric.from_polynomial(xx=1, yy=1, zz=-1, c=-5)
    r = lines_through_point(Point3.of(3, 0, 2), V)
    assert r.lines == () and r.irrational == 2


def _brute_force_directions(p, V, box=3):
    """Integer directions in a box whose line through p lies in V, up to scaling."""
    found = set()
    for d in product(range(-box, box + 1), repeat=3):
        if d != (0, 0, 0) and line_in_quadric(Line3(p, d), V):
            found.add(Line3(p, d).direction)
    return found


@pytest.mark.parametrize("V, params", [
    (HYPERBOLIC_PARABOLOID, [(1, 1), (2, -1), (F(1, 2), 3)]),
    (ONE_SHEET_HYPERBOLOID, [(0, 0), (1, 1), (2, -1)]),
    (CONE, [(0, 1), (1, 2), (2, -1)]),
    (PARABOLOID, [(1, 1), (0, 2)]),
])
def test_lines_through_point_brute_force(V, params):
    from quadinc.harness import _draw_point
    kind = {HYPERBOLIC_PARABOLOID: "hyperbolic-paraboloid", ONE_SHEET_HYPERBOLOID: "one-sheet-hyperboloid",
            CONE: "cone", PARABOLOID: "paraboloid"}[V]
    for a, b in params:
        p = _draw_point(kind, F(a), F(b))
        got = lines_through_point(p, V)
        assert all(line_in_quadric(line, V) and line.contains(p) for line in got.lines)
        brute = _brute_force_directions(p, V)
        assert brute <= {line.direction for line in got.lines}
        assert got.count <= 2


@given(small_rationals, small_rationals)
def test_saddle_points_have_two_rational_rulings(x, y):
    p = Point3(x, y, x * y)
    r = lines_through_point(p, HYPERBOLIC_PARABOLOID)
    assert len(r.lines) == 2 and r.irrational == 0
    assert all(line_in_quadric(line, HYPERBOLIC_PARABOLOID) and line.contains(p) for line in r.lines)


def test_section_examples():
    s = lines_in_plane_section(Plane(-1, 1, 1, -1), HYPERBOLIC_PARABOLOID)  # z - x + y - 1 = 0
    assert s.count == 2
    assert set(s.lines) == {Line3(Point3.of(-1, 0, 0), (0, 1, -1)), Line3(Point3.of(0, 1, 0), (1, 0, 1))}
    assert lines_in_plane_section(Plane(0, 0, 1, -1), PARABOLOID).count == 0
    tangent = lines_in_plane_section(Plane(0, 0, 1, 0), PARABOLOID)
    assert tangent.count == 0 and tangent.isolated_point == Point3.of(0, 0, 0)
    # x = 0 meets z = xy in one affine line (the other component is at infinity)
    assert lines_in_plane_section(Plane(1, 0, 0, 0), HYPERBOLIC_PARABOLOID).count == 1
    # tangent plane of the cone along a ruling: a double line
    assert lines_in_plane_section(Plane(1, 0, -1, 0), CONE).lines == (Line3(Point3.of(0, 0, 0), (1, 0, 1)),)
    # irrational line pair through the apex
    assert lines_in_plane_section(Plane(1, 0, 0, 0), Quadric.from_polynomial(xx=1, yy=2, zz=-1)).count == 2


def test_section_plane_inside_quadric_rejected():
    with pytest.raises(ValueError):
        lines_in_plane_section(Plane(1, 0, 0, 0), Quadric.from_polynomial(xy=1))


plane_coeffs = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-6, 6))


@given(plane_coeffs, st.sampled_from([HYPERBOLIC_PARABOLOID, PARABOLOID, UNIT_SPHERE, CONE, ONE_SHEET_HYPERBOLOID]))
@settings(max_examples=300)
def test_section_lines_are_sound(c, V):
    assume(c[:3] != (0, 0, 0))
    h = Plane(*c)
    s = lines_in_plane_section(h, V)
    assert s.count <= 2
    for line in s.lines:
        assert line_in_plane(line, h) and line_in_quadric(line, V)
    if s.isolated_point is not None:
        assert point_on_quadric(s.isolated_point, V)


@given(small_rationals, small_rationals, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_section_finds_rulings_through_a_plane(x, y, u, v, w):
    # a plane containing a ruling must report it
    p = Point3(x, y, x * y)
    line = lines_through_point(p, HYPERBOLIC_PARABOLOID).lines[0]
    normal = cross(line.direction, (u, v, w))
    assume(normal != (0, 0, 0))
    h = Plane.from_normal(normal, p)
    assert line in lines_in_plane_section(h, HYPERBOLIC_PARABOLOID).lines


def test_curve_pair_examples():
    assert curve_pair_intersections(Plane(0, 0, 1, 0), Plane(-2, 0, 1, 0), PARABOLOID) == 1
    assert curve_pair_intersections(Plane(0, 0, 1, -1), Plane(0, 0, 1, -3), PARABOLOID) == 0
    with pytest.raises(ValueError):
        curve_pair_intersections(Plane(0, 0, 1, 0), Plane(0, 0, 2, 0), PARABOLOID)
    # both planes contain the x-axis, which lies in z = xy
    assert curve_pair_intersections(Plane(0, 0, 1, 0), Plane(0, 1, 1, 0), HYPERBOLIC_PARABOLOID) == math.inf


def _planar_circle_intersections(c1: Circle2, c2: Circle2) -> int:
    (a1, b1), (a2, b2) = c1.center, c2.center
    if (a1, b1) == (a2, b2):
        return 0
    # radical line u x + v y + w = 0
    u, v = 2 * (a2 - a1), 2 * (b2 - b1)
    w = (a1 * a1 + b1 * b1 - c1.radius_squared) - (a2 * a2 + b2 * b2 - c2.radius_squared)
    dist2_num = (u * a1 + v * b1 + w) ** 2
    rhs = c1.radius_squared * (u * u + v * v)
    return 2 if dist2_num < rhs else (1 if dist2_num == rhs else 0)


circles = st.builds(
    Circle2,
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
    st.integers(1, 20),
)


@given(circles, circles)
@settings(max_examples=400)
def test_lifted_circle_pairs_match_planar_count(c1, c2):
    assume(c1 != c2)
    got = curve_pair_intersections(lift_circle(c1), lift_circle(c2), PARABOLOID)
    assert got == _planar_circle_intersections(c1, c2)


@given(plane_coeffs, plane_coeffs, st.sampled_from([HYPERBOLIC_PARABOLOID, PARABOLOID, UNIT_SPHERE, CONE, ONE_SHEET_HYPERBOLOID]))
@settings(max_examples=400)
def test_integer_route_matches_fraction_route(c1, c2, V):
    assume(c1[:3] != (0, 0, 0) and c2[:3] != (0, 0, 0))
    h1, h2 = Plane(*c1), Plane(*c2)
    assume(h1 != h2)
    line = plane_plane_line(h1, h2)
    expected = 0 if line is None else line_quadric_intersections(line, V)
    assert curve_pair_intersections(h1, h2, V) == expected
