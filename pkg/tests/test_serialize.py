import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from quadinc import serialize as ser
from quadinc.decomposition import decompose
from quadinc.geometry import Circle2, Line3, Plane, Point3
from quadinc.harness import InstanceSpec, generate_instance
from quadinc.quadric import CONE, Quadric

from conftest import points3, small_rationals


@given(points3)
def test_point_round_trip(p):
    assert ser.point_from_json(json.loads(json.dumps(ser.point_to_json(p)))) == p


@given(small_rationals, small_rationals, small_rationals, small_rationals)
def test_plane_round_trip(a, b, c, d):
    if (a, b, c) == (0, 0, 0):
        return
    h = Plane(a, b, c, d)
    assert ser.plane_from_json(ser.plane_to_json(h)) == h


@given(points3, st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)))
def test_line_round_trip(p, d):
    if d == (0, 0, 0):
        return
    line = Line3(p, d)
    assert ser.line_from_json(ser.line_to_json(line)) == line


def test_formats():
    assert ser.point_to_json(Point3(F(1, 2), F(0), F(-3))) == {"x": "1/2", "y": "0", "z": "-3"}
    q = ser.quadric_to_json(CONE)
    assert q["classification"] == "cone"
    assert ser.quadric_from_json(q) == CONE
    c = Circle2((F(1), F(2)), F(5, 4))
    assert ser.circle_to_json(c) == {"center": ["1", "2"], "radius_squared": "5/4"}
    assert ser.circle_from_json(ser.circle_to_json(c)) == c
    assert ser.rationals_from_json(ser.rationals_to_json([F(1, 3), F(-2)])) == [F(1, 3), F(-2)]


def test_reducible_quadric_has_classification():
    V = Quadric.from_polynomial(xy=1)
    assert ser.quadric_to_json(V)["classification"] == "reducible"


def test_floats_rejected():
    with pytest.raises(ValueError):
        ser.point_from_json({"x": 0.5, "y": "0", "z": "0"})
    with pytest.raises(ValueError):
        ser.point_from_json({"x": "abc", "y": "0", "z": "0"})


def test_instance_and_decomposition_round_trip(tmp_path):
    P, H, V = generate_instance(InstanceSpec("cone", 20, 20, "ruling-planes", seed=1))
    path = tmp_path / "inst.json"
    ser.save(path, ser.instance_to_json(P, H, V))
    assert ser.instance_from_json(ser.load(path)) == (P, H, V)
    D = decompose(P, H, V)
    obj = json.loads(ser.dumps(ser.decomposition_to_json(D)))
    assert ser.factors_from_json(obj) == D.factors
    assert [tuple(e) for e in obj["residual"]] == list(D.residual)
    assert [tuple(e) for e in obj["apex_incidences"]] == list(D.apex_incidences)


def test_dumps_is_canonical():
    assert ser.dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
