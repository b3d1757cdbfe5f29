"""JSON encodings shared by every file format in the package.

Rationals are strings ``"p/q"`` (``"p"`` when q = 1)::

    point     {"x": "1/2", "y": "0", "z": "-3"}
    plane     {"a": "1", "b": "0", "c": "-2", "d": "1/3"}       a x + b y + c z + d = 0
    line      {"base": <point>, "direction": ["1", "0", "1"]}
    quadric   {"matrix": [[...4 rationals...] x 4], "classification": "cone"}
    circle    {"center": ["1", "2"], "radius_squared": "5/4"}
    instance  {"points": [<point>...], "planes": [<plane>...], "quadric": <quadric>?}

``classification`` is written for information and ignored on input.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from .decomposition import Decomposition, LineFactor
from .exact import format_rational, parse_rational
from .geometry import Circle2, Line3, Plane, Point3
from .quadric import Quadric

R = format_rational


def _q(value: Any):
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise ValueError(f"expected a rational string, got {value!r}")


def point_to_json(p: Point3) -> dict:
    return {"x": R(p.x), "y": R(p.y), "z": R(p.z)}


def point_from_json(obj: dict) -> Point3:
    return Point3(_q(obj["x"]), _q(obj["y"]), _q(obj["z"]))


def plane_to_json(h: Plane) -> dict:
    return {"a": R(h.a), "b": R(h.b), "c": R(h.c), "d": R(h.d)}


def plane_from_json(obj: dict) -> Plane:
    return Plane(_q(obj["a"]), _q(obj["b"]), _q(obj["c"]), _q(obj["d"]))


def line_to_json(line: Line3) -> dict:
    return {"base": point_to_json(line.base), "direction": [str(v) for v in line.direction]}


def line_from_json(obj: dict) -> Line3:
    return Line3(point_from_json(obj["base"]), [_q(v) for v in obj["direction"]])


def quadric_to_json(V: Quadric) -> dict:
    out = {"matrix": [[R(v) for v in row] for row in V.matrix]}
    try:
        out["classification"] = V.kind.value
    except ValueError:
        pass
    return out


def quadric_from_json(obj: dict) -> Quadric:
    return Quadric(tuple(tuple(_q(v) for v in row) for row in obj["matrix"]))


def circle_to_json(c: Circle2) -> dict:
    return {"center": [R(v) for v in c.center], "radius_squared": R(c.radius_squared)}


def circle_from_json(obj: dict) -> Circle2:
    return Circle2(tuple(_q(v) for v in obj["center"]), _q(obj["radius_squared"]))


def rationals_to_json(values: Sequence) -> list[str]:
    return [R(v) for v in values]


def rationals_from_json(values: Sequence) -> list:
    return [_q(v) for v in values]


def instance_to_json(P: Sequence[Point3], H: Sequence[Plane], V: Quadric | None = None) -> dict:
    out: dict[str, Any] = {
        "points": [point_to_json(p) for p in P],
        "planes": [plane_to_json(h) for h in H],
    }
    if V is not None:
        out["quadric"] = quadric_to_json(V)
    return out


def instance_from_json(obj: dict) -> tuple[list[Point3], list[Plane], Quadric | None]:
    P = [point_from_json(p) for p in obj.get("points", [])]
    H = [plane_from_json(h) for h in obj.get("planes", [])]
    V = quadric_from_json(obj["quadric"]) if "quadric" in obj else None
    return P, H, V


def decomposition_to_json(D: Decomposition) -> dict:
    return {
        "residual": [list(e) for e in D.residual],
        "factors": [
            {"line": line_to_json(f.line), "points": list(f.points), "planes": list(f.planes)}
            for f in D.factors
        ],
        "apex_incidences": [list(e) for e in D.apex_incidences],
        "irrational_ruling_count": D.irrational_ruling_count,
    }


def factors_from_json(obj: dict) -> tuple[LineFactor, ...]:
    return tuple(
        LineFactor(line_from_json(f["line"]), tuple(f["points"]), tuple(f["planes"]))
        for f in obj["factors"]
    )


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load(path: str | Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def save(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
