"""Quadric surfaces: exact classification, ruling lines, and plane sections."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exact import (
    as_rational,
    cross,
    dot,
    inertia,
    is_square,
    matmul,
    matvec,
    nullspace,
    quadratic_form,
    rank,
    rational_sqrt,
    transpose,
)
from .geometry import Line3, Plane, Point3


class QuadricKind(str, Enum):
    REDUCIBLE = "reducible"
    LINEAR = "linear"
    CONE = "cone"
    DOUBLY_RULED = "doubly-ruled-nondegenerate"
    NON_RULED = "non-ruled-nondegenerate"
    RANK3_OTHER = "cylinder-or-other-rank3"


#: kinds accepted by the decomposition (nonlinear, irreducible, not a cylinder)
SURFACE_KINDS = frozenset({QuadricKind.CONE, QuadricKind.DOUBLY_RULED, QuadricKind.NON_RULED})


@dataclass(frozen=True)
class Classification:
    kind: QuadricKind
    apex: Point3 | None = None


@dataclass(frozen=True)
class Quadric:
    """Zero set of ``(x, y, z, 1) Q (x, y, z, 1)^T`` for a symmetric rational 4x4 ``Q``."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_rational(v) for v in row) for row in self.matrix)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("quadric matrix must be 4x4")
        if any(rows[i][j] != rows[j][i] for i in range(4) for j in range(4)):
            raise ValueError("quadric matrix must be symmetric")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_polynomial(cls, xx=0, yy=0, zz=0, xy=0, xz=0, yz=0, x=0, y=0, z=0, c=0) -> "Quadric":
        """Build from the coefficients of ``xx*x^2 + ... + xy*x*y + ... + x*x + ... + c``."""
        h = Fraction(1, 2)
        xx, yy, zz, xy, xz, yz, x, y, z, c = (as_rational(v) for v in (xx, yy, zz, xy, xz, yz, x, y, z, c))
        return cls((
            (xx, h * xy, h * xz, h * x),
            (h * xy, yy, h * yz, h * y),
            (h * xz, h * yz, zz, h * z),
            (h * x, h * y, h * z, c),
        ))

    @property
    def quadratic_part(self) -> list[list[Fraction]]:
        return [list(row[:3]) for row in self.matrix[:3]]

    def evaluate(self, p: Point3) -> Fraction:
        return quadratic_form(self.matrix, (p.x, p.y, p.z, Fraction(1)))

    def gradient_half(self, p: Point3) -> list[Fraction]:
        """Half the gradient of the defining polynomial at ``p``."""
        return matvec(self.matrix, (p.x, p.y, p.z, Fraction(1)))[:3]

    @cached_property
    def integer_matrix(self) -> tuple[tuple[int, ...], ...]:
        """``Q`` times the positive common denominator of its entries."""
        L = math.lcm(*(v.denominator for row in self.matrix for v in row))
        return tuple(tuple(int(v * L) for v in row) for row in self.matrix)

    @cached_property
    def classification(self) -> Classification:
        return classify_quadric(self)

    @property
    def kind(self) -> QuadricKind:
        return self.classification.kind


# Named surfaces used throughout the tests, demos and harness.
HYPERBOLIC_PARABOLOID = Quadric.from_polynomial(xy=1, z=-1)  # z = xy
PARABOLOID = Quadric.from_polynomial(xx=1, yy=1, z=-1)  # z = x^2 + y^2
UNIT_SPHERE = Quadric.from_polynomial(xx=1, yy=1, zz=1, c=-1)
CONE = Quadric.from_polynomial(xx=1, yy=1, zz=-1)  # x^2 + y^2 = z^2
ONE_SHEET_HYPERBOLOID = Quadric.from_polynomial(xx=1, yy=1, zz=-1, c=-1)


def classify_quadric(V: Quadric) -> Classification:
    """Classify by exact ranks and inertia of ``Q`` and its quadratic block.

    rank(Q) <= 2 is a plane pair (or worse); an all-zero quadratic block is a
    plane. At rank 3 a kernel vector with nonzero last coordinate is an affine
    singular point, which is the apex of a real cone when Q is indefinite. At
    rank 4, inertia (2, 2) means doubly ruled; anything else carries no lines.
    """
    Q = V.matrix
    if all(v == 0 for row in Q for v in row):
        raise ValueError("zero matrix does not define a quadric")
    if all(v == 0 for row in V.quadratic_part for v in row):
        return Classification(QuadricKind.LINEAR)
    r = rank(Q)
    if r <= 2:
        return Classification(QuadricKind.REDUCIBLE)
    pos, neg, _ = inertia(Q)
    if r == 3:
        (k,) = nullspace(Q)
        if k[3] != 0 and pos > 0 and neg > 0:
            apex = Point3(k[0] / k[3], k[1] / k[3], k[2] / k[3])
            return Classification(QuadricKind.CONE, apex)
        return Classification(QuadricKind.RANK3_OTHER)
    if pos == 2 and neg == 2:
        return Classification(QuadricKind.DOUBLY_RULED)
    return Classification(QuadricKind.NON_RULED)


def point_on_quadric(p: Point3, V: Quadric) -> bool:
    return V.evaluate(p) == 0


def _restriction_coefficients(V: Quadric, base: Point3, direction: Sequence):
    """(c0, c1, c2) with ``F(base + t d) = c0 + 2 c1 t + c2 t^2``."""
    X = (base.x, base.y, base.z, Fraction(1))
    D = (*direction, Fraction(0))
    QX = matvec(V.matrix, X)
    return dot(X, QX), dot(D, QX), quadratic_form(V.matrix, D)


def line_in_quadric(line: Line3, V: Quadric) -> bool:
    return all(c == 0 for c in _restriction_coefficients(V, line.base, line.direction))


# -- lines through a point --------------------------------------------------

@dataclass(frozen=True)
class PointRulings:
    """Lines of a quadric through one of its points.

    ``lines`` holds the rational lines, ``irrational`` counts the real lines
    whose direction needs a square root, and ``apex`` marks a cone apex (where
    every ruling passes, so no finite list exists).
    """

    lines: tuple[Line3, ...] = ()
    irrational: int = 0
    apex: bool = False

    @property
    def count(self) -> int:
        return len(self.lines) + self.irrational


def _binary_form_roots(a, b, c) -> tuple[list[tuple[Fraction, Fraction]], int]:
    """Real projective roots (s:t) of ``a s^2 + 2 b s t + c t^2``.

    Returns the rational roots and the number of irrational ones. The form must
    not vanish identically.
    """
    disc = b * b - a * c
    if disc < 0:
        return [], 0
    if disc == 0:
        if a != 0:
            return [(-b, a)], 0
        return [(Fraction(1), Fraction(0))], 0
    if not is_square(disc):
        return [], 2
    r = rational_sqrt(disc)
    if a != 0:
        return [(-b + r, a), (-b - r, a)], 0
    return [(Fraction(1), Fraction(0)), (-c, 2 * b)], 0


def lines_through_point(p: Point3, V: Quadric) -> PointRulings:
    """All lines of ``V`` through ``p``.

    A direction ``d`` works iff it is tangent (``grad F(p) . d = 0``) and
    asymptotic (``d^T A d = 0`` for the quadratic block A). Restricted to the
    tangent plane, the second condition is a binary quadratic form.
    """
    cls = V.classification
    if cls.kind in (QuadricKind.REDUCIBLE, QuadricKind.LINEAR):
        raise ValueError(f"quadric is {cls.kind.value}; rulings are not finite")
    if not point_on_quadric(p, V):
        raise ValueError(f"{p} does not lie on the quadric")
    g = V.gradient_half(p)
    if all(v == 0 for v in g):
        return PointRulings(apex=True)
    u, v = nullspace([g])
    A = V.quadratic_part
    a = quadratic_form(A, u)
    b = quadratic_form(A, u, v)
    c = quadratic_form(A, v)
    if a == b == c == 0:
        raise ValueError("tangent plane lies inside the quadric (reducible surface)")
    roots, irrational = _binary_form_roots(a, b, c)
    lines = tuple(sorted(
        Line3(p, [s * ui + t * vi for ui, vi in zip(u, v)]) for s, t in roots
    ))
    return PointRulings(lines=lines, irrational=irrational)


# -- plane sections ---------------------------------------------------------

@dataclass(frozen=True)
class SectionLines:
    """Lines contained in the conic ``h ∩ V``.

    ``count`` is the exact number of real affine lines; ``lines`` lists those
    with rational coordinates. ``isolated_point`` is set when the section is a
    pair of conjugate imaginary lines meeting at a single real point.
    """

    count: int
    lines: tuple[Line3, ...]
    conic_rank: int
    isolated_point: Point3 | None = None


def _plane_frame(h: Plane) -> list[list[Fraction]]:
    """4x3 matrix mapping plane coordinates (s, t, w) to homogeneous 3-space."""
    n = h.normal
    i = next(k for k in range(3) if n[k] != 0)
    origin = [Fraction(0)] * 3
    origin[i] = -h.d / n[i]
    e1, e2 = nullspace([list(n)])
    return [
        [e1[0], e2[0], origin[0]],
        [e1[1], e2[1], origin[1]],
        [e1[2], e2[2], origin[2]],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]


def _projective_line_to_affine(P1: Sequence, P2: Sequence) -> Line3 | None:
    """Affine line spanned by two homogeneous points, None for the line at infinity."""
    w1, w2 = P1[3], P2[3]
    if w1 == 0 and w2 == 0:
        return None
    if w1 == 0:
        P1, P2, w1, w2 = P2, P1, w2, w1
    base = Point3(P1[0] / w1, P1[1] / w1, P1[2] / w1)
    direction = [w1 * P2[i] - w2 * P1[i] for i in range(3)]
    return Line3(base, direction)


def lines_in_plane_section(h: Plane, V: Quadric) -> SectionLines:
    """Exact line content of the plane conic ``h ∩ V``."""
    M = _plane_frame(h)
    C = matmul(transpose(M), matmul(V.matrix, M))
    r = rank(C)
    if r == 0:
        raise ValueError(f"plane {h} is contained in the quadric")
    if r == 3:
        return SectionLines(0, (), 3)
    to_space = lambda k: matvec(M, k)  # noqa: E731
    if r == 1:
        k1, k2 = nullspace(C)
        line = _projective_line_to_affine(to_space(k1), to_space(k2))
        return SectionLines(int(line is not None), (line,) if line else (), 1)

    (k,) = nullspace(C)
    u, v = nullspace([k])
    a = quadratic_form(C, u)
    b = quadratic_form(C, u, v)
    c = quadratic_form(C, v)
    disc = b * b - a * c
    K = to_space(k)
    if disc < 0:
        iso = Point3(K[0] / K[3], K[1] / K[3], K[2] / K[3]) if K[3] != 0 else None
        return SectionLines(0, (), 2, iso)
    if not is_square(disc):
        # conjugate irrational pair; the line at infinity is rational, so neither is it
        return SectionLines(2, (), 2)
    roots, _ = _binary_form_roots(a, b, c)
    lines = []
    for s, t in roots:
        direction = [s * ui + t * vi for ui, vi in zip(u, v)]
        line = _projective_line_to_affine(K, to_space(direction))
        if line is not None:
            lines.append(line)
    lines.sort()
    return SectionLines(len(lines), tuple(lines), 2)


def plane_plane_line(h1: Plane, h2: Plane) -> Line3 | None:
    """Intersection line of two distinct planes, None when they are parallel."""
    if h1 == h2:
        raise ValueError("identical planes")
    d = cross(h1.normal, h2.normal)
    if d == (0, 0, 0):
        return None
    i = next(k for k in range(3) if d[k] != 0)
    j, k = [m for m in range(3) if m != i]
    # set coordinate i to 0 and solve the 2x2 system in coordinates j, k;
    # its determinant is +-d[i], hence nonzero
    a1, b1, c1 = h1.normal[j], h1.normal[k], -h1.d
    a2, b2, c2 = h2.normal[j], h2.normal[k], -h2.d
    det = a1 * b2 - a2 * b1
    xyz = [Fraction(0)] * 3
    xyz[j] = (c1 * b2 - c2 * b1) / det
    xyz[k] = (a1 * c2 - a2 * c1) / det
    return Line3(Point3(*xyz), d)


def line_quadric_intersections(line: Line3, V: Quadric) -> int | float:
    """Number of real points of ``line ∩ V``; ``math.inf`` if the line lies in V."""
    c0, c1, c2 = _restriction_coefficients(V, line.base, line.direction)
    if c2 != 0:
        disc = c1 * c1 - c0 * c2
        return 2 if disc > 0 else (1 if disc == 0 else 0)
    if c1 != 0:
        return 1
    return 0 if c0 != 0 else math.inf


def curve_pair_intersections(h1: Plane, h2: Plane, V: Quadric) -> int | float:
    """Intersections of the sections ``h1 ∩ V`` and ``h2 ∩ V``.

    They all lie on the line ``h1 ∩ h2``, so this is the number of real roots
    of a quadratic. ``math.inf`` is returned only when that line lies in V.
    Works in integer homogeneous coordinates; ``line_quadric_intersections``
    of ``plane_plane_line`` is the same count through Fractions.
    """
    if h1 == h2:
        raise ValueError("identical planes")
    a1, b1, c1, e1 = h1.homogeneous_int
    a2, b2, c2, e2 = h2.homogeneous_int
    d = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
    if d == (0, 0, 0):
        return 0
    i = 0 if d[0] else (1 if d[1] else 2)
    j, k = [t for t in range(3) if t != i]
    n1, n2 = (a1, b1, c1), (a2, b2, c2)
    # affine point of the line with coordinate i = 0, scaled by w = +-d[i]
    X = [0, 0, 0, n1[j] * n2[k] - n2[j] * n1[k]]
    X[j] = -e1 * n2[k] + e2 * n1[k]
    X[k] = -n1[j] * e2 + n2[j] * e1
    Q = V.integer_matrix
    QX = [sum(Q[r][c] * X[c] for c in range(4)) for r in range(4)]
    c0 = sum(X[r] * QX[r] for r in range(4))
    c1 = sum(d[r] * QX[r] for r in range(3))
    c2 = sum(d[r] * Q[r][c] * d[c] for r in range(3) for c in range(3))
    if c2 != 0:
        disc = c1 * c1 - c0 * c2
        return 2 if disc > 0 else (1 if disc == 0 else 0)
    if c1 != 0:
        return 1
    return 0 if c0 != 0 else math.inf
