"""Rational primitives in 3-space and the coordinate transforms used on them.

Points, planes and lines are frozen dataclasses over ``Fraction``. Planes and
lines are stored in canonical form, so ``==`` and ``hash`` are geometric
equality and instances can be deduplicated with a plain ``set``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exact import (
    as_rational,
    cross,
    dot,
    identity,
    integer_row,
    matmul,
    matvec,
    primitive_integer_vector,
    transpose,
)


@dataclass(frozen=True, order=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def of(cls, x, y, z) -> "Point3":
        return cls(as_rational(x), as_rational(y), as_rational(z))

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    @cached_property
    def homogeneous_int(self) -> tuple[int, int, int, int]:
        """Integer homogeneous coordinates (positive last entry)."""
        return integer_row((self.x, self.y, self.z, Fraction(1)))

    def __sub__(self, other: "Point3") -> tuple[Fraction, Fraction, Fraction]:
        return (self.x - other.x, self.y - other.y, self.z - other.z)

    def shifted(self, v: Sequence, t=1) -> "Point3":
        return Point3(self.x + t * v[0], self.y + t * v[1], self.z + t * v[2])


@dataclass(frozen=True, init=False)
class Plane:
    """The plane ``a x + b y + c z + d = 0``, first nonzero coefficient scaled to 1."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __init__(self, a, b, c, d):
        coeffs = [as_rational(v) for v in (a, b, c, d)]
        if coeffs[0] == coeffs[1] == coeffs[2] == 0:
            raise ValueError("plane normal (a, b, c) must be nonzero")
        lead = next(v for v in coeffs if v != 0)
        for name, v in zip("abcd", coeffs):
            object.__setattr__(self, name, v / lead)

    @classmethod
    def through(cls, p: Point3, q: Point3, r: Point3) -> "Plane":
        n = cross(q - p, r - p)
        if n == (0, 0, 0):
            raise ValueError("points are collinear")
        return cls(n[0], n[1], n[2], -dot(n, p.coords))

    @classmethod
    def from_normal(cls, normal: Sequence, point: Point3) -> "Plane":
        return cls(normal[0], normal[1], normal[2], -dot(normal, point.coords))

    @property
    def normal(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    @cached_property
    def homogeneous_int(self) -> tuple[int, int, int, int]:
        return integer_row(self.coeffs)

    def evaluate(self, p: Point3) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c * p.z + self.d

    def __lt__(self, other: "Plane") -> bool:
        return self.coeffs < other.coeffs


@dataclass(frozen=True, init=False)
class Line3:
    """A line ``base + t * direction``.

    ``direction`` is a primitive integer vector whose first nonzero entry is
    positive. ``base`` is the unique point of the line whose coordinate along
    the first nonzero direction axis is 0.
    """

    base: Point3
    direction: tuple[int, int, int]

    def __init__(self, base: Point3, direction: Sequence):
        d = primitive_integer_vector([as_rational(v) for v in direction])
        i = next(k for k in range(3) if d[k] != 0)
        t = base.coords[i] / d[i]
        object.__setattr__(self, "base", base.shifted(d, -t))
        object.__setattr__(self, "direction", d)

    @classmethod
    def through(cls, p: Point3, q: Point3) -> "Line3":
        if p == q:
            raise ValueError("a line needs two distinct points")
        return cls(p, q - p)

    def point_at(self, t) -> Point3:
        return self.base.shifted(self.direction, as_rational(t))

    def contains(self, p: Point3) -> bool:
        return cross(p - self.base, self.direction) == (0, 0, 0)

    def __lt__(self, other: "Line3") -> bool:
        return (self.direction, self.base) < (other.direction, other.base)


@dataclass(frozen=True)
class Circle2:
    center: tuple[Fraction, Fraction]
    radius_squared: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(as_rational(v) for v in self.center))
        object.__setattr__(self, "radius_squared", as_rational(self.radius_squared))
        if self.radius_squared <= 0:
            raise ValueError("radius_squared must be positive")

    def contains(self, q: Sequence) -> bool:
        a, b = self.center
        return (q[0] - a) ** 2 + (q[1] - b) ** 2 == self.radius_squared


def point_on_plane(p: Point3, h: Plane) -> bool:
    return h.evaluate(p) == 0


def point_on_line(p: Point3, line: Line3) -> bool:
    return line.contains(p)


def line_in_plane(line: Line3, h: Plane) -> bool:
    return point_on_plane(line.base, h) and dot(line.direction, h.normal) == 0


def lift_point(q: Sequence) -> Point3:
    """Lift a planar point onto the paraboloid ``z = x^2 + y^2``."""
    x, y = as_rational(q[0]), as_rational(q[1])
    return Point3(x, y, x * x + y * y)


def lift_circle(circle: Circle2) -> Plane:
    """The plane ``z = 2a x + 2b y + (r^2 - a^2 - b^2)`` of a circle centred at (a, b)."""
    a, b = circle.center
    return Plane(-2 * a, -2 * b, 1, -(circle.radius_squared - a * a - b * b))


class VerticalPlaneError(ValueError):
    """Raised when dualizing a plane parallel to the z-axis; re-tilt the frame first."""


def dualize_point(p: Point3) -> Plane:
    """Point (a, b, c) to the plane ``z = a x + b y - c``."""
    return Plane(-p.x, -p.y, 1, p.z)


def dualize_plane(h: Plane) -> Point3:
    """Plane ``z = p x + q y - r`` to the point (p, q, r)."""
    if h.c == 0:
        raise VerticalPlaneError(f"cannot dualize vertical plane {h}")
    return Point3(-h.a / h.c, -h.b / h.c, h.d / h.c)


# -- generic frames ---------------------------------------------------------

Matrix3 = tuple[tuple[Fraction, ...], ...]


def _shear(i: int, j: int, s: Fraction) -> list[list[Fraction]]:
    M = identity(3)
    M[i][j] = s
    return M


def generic_rotation(seed: int, max_num: int = 5, max_den: int = 4) -> tuple[Matrix3, Matrix3]:
    """A seeded rational invertible 3x3 matrix and its exact inverse.

    Seed 0 is the identity. Other seeds multiply six shears with small random
    rational factors, one per ordered axis pair, so the inverse is the product
    of the negated shears in reverse order.
    """
    M = identity(3)
    Minv = identity(3)
    if seed != 0:
        rng = random.Random(seed)
        pairs = [(i, j) for i in range(3) for j in range(3) if i != j]
        rng.shuffle(pairs)
        for i, j in pairs:
            s = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
            M = matmul(_shear(i, j, s), M)
            Minv = matmul(Minv, _shear(i, j, -s))
    return tuple(map(tuple, M)), tuple(map(tuple, Minv))


def transform_point(M: Matrix3, p: Point3) -> Point3:
    return Point3(*matvec(M, p.coords))


def transform_plane(Minv: Matrix3, h: Plane) -> Plane:
    """Image of ``h`` under ``x -> M x`` given ``M^-1``: normal becomes ``M^-T n``."""
    n = matvec(transpose(Minv), h.normal)
    return Plane(n[0], n[1], n[2], h.d)


def transform_line(M: Matrix3, line: Line3) -> Line3:
    return Line3(transform_point(M, line.base), matvec(M, line.direction))


def project_xy(p: Point3) -> tuple[Fraction, Fraction]:
    return (p.x, p.y)


def find_generic_frame(
    points: Sequence[Point3], planes: Sequence[Plane], max_seeds: int = 64
) -> int:
    """Smallest seed whose frame has no vertical plane and injective xy-projection of ``points``.

    Raises RuntimeError if no seed below ``max_seeds`` works.
    """
    for seed in range(max_seeds):
        M, Minv = generic_rotation(seed)
        if any(transform_plane(Minv, h).c == 0 for h in planes):
            continue
        shadows = {project_xy(transform_point(M, p)) for p in points}
        if len(shadows) == len(set(points)):
            return seed
    raise RuntimeError(f"no generic frame found among {max_seeds} seeds")
