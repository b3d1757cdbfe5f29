"""Split an incidence graph into line-explained bipartite factors and a residual.

For points ``P`` on a quadric ``V`` and planes ``H``, every line of ``V``
through a point of ``P`` and inside some plane of ``H`` yields a complete
bipartite factor: its points times its planes. What remains is the residual
graph, the incidences no such line explains. On a cone the apex is set aside: its
incidences are kept apart from both factors and residual.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from decimal import Decimal
from itertools import combinations
from typing import Sequence

from .bounds import eval_bound_quadric, eval_bound_small_m, eval_bound_weak
from .geometry import Line3, Plane, Point3, line_in_plane, point_on_line
from .incidence import IncidenceGraph, incidence_graph
from .quadric import (
    SURFACE_KINDS,
    Quadric,
    QuadricKind,
    curve_pair_intersections,
    line_in_quadric,
    lines_in_plane_section,
    lines_through_point,
    point_on_quadric,
)


class PointOffVarietyError(ValueError):
    pass


@dataclass(frozen=True)
class LineFactor:
    line: Line3
    points: tuple[int, ...]
    planes: tuple[int, ...]

    def edges(self):
        return ((i, j) for i in self.points for j in self.planes)


@dataclass(frozen=True)
class Decomposition:
    residual: tuple[tuple[int, int], ...]
    factors: tuple[LineFactor, ...]
    apex_incidences: tuple[tuple[int, int], ...]
    lines: tuple[Line3, ...]  # all of L, including lines in no plane of H
    graph: IncidenceGraph
    apex_index: int | None = None
    irrational_ruling_count: int = 0

    @property
    def sum_pl(self) -> int:
        return sum(len(f.points) for f in self.factors)

    @property
    def sum_hl(self) -> int:
        return sum(len(f.planes) for f in self.factors)

    @property
    def sum_pl_hl(self) -> int:
        return sum(len(f.points) * len(f.planes) for f in self.factors)

    def factor_edges(self) -> set[tuple[int, int]]:
        return {e for f in self.factors for e in f.edges()}


def _require_surface(V: Quadric) -> None:
    kind = V.kind
    if kind not in SURFACE_KINDS:
        raise ValueError(f"decomposition needs a nonlinear irreducible quadric, got {kind.value}")


def _rulings(P: Sequence[Point3], V: Quadric):
    """Per-point rational rulings (None for the apex) and the irrational count."""
    out = []
    irrational = 0
    for i, p in enumerate(P):
        if not point_on_quadric(p, V):
            raise PointOffVarietyError(f"point {i} = {p} is not on the quadric")
        r = lines_through_point(p, V)
        irrational += r.irrational
        out.append(None if r.apex else r.lines)
    return out, irrational


def build_L(P: Sequence[Point3], V: Quadric) -> list[Line3]:
    """Sorted distinct rational lines of ``V`` through at least one non-apex point of ``P``."""
    _require_surface(V)
    rulings, _ = _rulings(P, V)
    return sorted({line for lines in rulings if lines for line in lines})


def decompose(
    P: Sequence[Point3],
    H: Sequence[Plane],
    V: Quadric,
    graph: IncidenceGraph | None = None,
) -> Decomposition:
    _require_surface(V)
    rulings, irrational = _rulings(P, V)
    G = graph if graph is not None else incidence_graph(P, H)

    apex_index = next((i for i, r in enumerate(rulings) if r is None), None)
    on_line: dict[Line3, list[int]] = defaultdict(list)
    for i, lines in enumerate(rulings):
        for line in lines or ():
            on_line[line].append(i)

    factors = []
    for line in sorted(on_line):
        pts = on_line[line]
        # a plane containing the line contains its points, so candidates come from adjacency
        candidates = sorted({j for i in pts for j in G.per_point[i]})
        planes = tuple(j for j in candidates if line_in_plane(line, H[j]))
        if planes:
            factors.append(LineFactor(line, tuple(pts), planes))

    covered = {e for f in factors for e in f.edges()}
    apex_edges = tuple(e for e in G.edges if e[0] == apex_index)
    residual = tuple(e for e in G.edges if e[0] != apex_index and e not in covered)
    return Decomposition(
        residual=residual,
        factors=tuple(factors),
        apex_incidences=apex_edges,
        lines=tuple(sorted(on_line)),
        graph=G,
        apex_index=apex_index,
        irrational_ruling_count=irrational,
    )


# -- audits -----------------------------------------------------------------

def line_free_planes(H: Sequence[Plane], V: Quadric) -> list[int]:
    return [j for j, h in enumerate(H) if lines_in_plane_section(h, V).count == 0]


def pseudo_circle_violations(H: Sequence[Plane], V: Quadric, planes: Sequence[int] | None = None):
    """Pairs of line-free sections meeting in more than two points (should be empty)."""
    if planes is None:
        planes = line_free_planes(H, V)
    bad = []
    for j, k in combinations(planes, 2):
        if curve_pair_intersections(H[j], H[k], V) not in (0, 1, 2):
            bad.append((j, k))
    return bad


def audit_decomposition(
    P: Sequence[Point3],
    H: Sequence[Plane],
    V: Quadric,
    D: Decomposition,
    reference: IncidenceGraph | None = None,
    pseudo_circles: bool = True,
) -> dict[str, bool]:
    """Re-derive every structural guarantee of ``D`` along independent routes.

    The reference incidence graph comes from the plain sweep. Residual purity
    is checked from the plane side: each plane's section is factored on its
    own and none of its lines may carry a residual incidence.
    """
    if reference is None:
        reference = incidence_graph(P, H, method="sweep")
    m, n = len(P), len(H)
    kind = V.kind
    L = set(D.lines)
    factor_edges = D.factor_edges()
    residual = set(D.residual)
    apex = set(D.apex_incidences)
    checks: dict[str, bool] = {}

    checks["coverage"] = residual | factor_edges | apex == reference.edge_set
    checks["disjoint"] = not (residual & factor_edges) and not (residual & apex)
    checks["factor_soundness"] = all(
        f.points and f.planes
        and f.line in L
        and line_in_quadric(f.line, V)
        and all(point_on_line(P[i], f.line) for i in f.points)
        and all(line_in_plane(f.line, H[j]) for j in f.planes)
        for f in D.factors
    ) and factor_edges <= reference.edge_set

    sections = {}
    residual_by_plane: dict[int, list[int]] = defaultdict(list)
    for i, j in D.residual:
        residual_by_plane[j].append(i)
    pure = True
    for j in range(n):
        sec = lines_in_plane_section(H[j], V)
        sections[j] = sec
        explaining = [line for line in sec.lines if line in L]
        if any(point_on_line(P[i], line) for i in residual_by_plane.get(j, ()) for line in explaining):
            pure = False
    checks["residual_purity"] = pure

    per_point = defaultdict(int)
    for f in D.factors:
        for i in f.points:
            per_point[i] += 1
    per_plane = defaultdict(int)
    for f in D.factors:
        for j in f.planes:
            per_plane[j] += 1
    point_ok = all(c <= 2 for c in per_point.values())
    if kind != QuadricKind.CONE:
        point_ok = point_ok and D.sum_pl <= 2 * m
    checks["point_budget"] = point_ok
    checks["plane_budget"] = (
        D.sum_hl <= 2 * n
        and all(c <= 2 for c in per_plane.values())
        and all(sec.count <= 2 for sec in sections.values())
    )

    if kind == QuadricKind.NON_RULED:
        checks["ruled_dichotomy"] = len(D.lines) == 0 and not D.factors
    elif kind == QuadricKind.CONE:
        apex_pt = V.classification.apex
        checks["ruled_dichotomy"] = all(point_on_line(apex_pt, line) for line in D.lines)
    else:
        checks["ruled_dichotomy"] = True

    if pseudo_circles:
        free = [j for j, sec in sections.items() if sec.count == 0]
        checks["pseudo_circle"] = not pseudo_circle_violations(H, V, free)
    return checks


# -- bound report -----------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    m: int
    n: int
    measured_g0: int
    sum_pl: int
    sum_hl: int
    sum_pl_hl: int
    bound_quadric: Decimal
    bound_weak: Decimal
    bound_small_m: Decimal

    @property
    def ratio(self) -> Decimal:
        return Decimal(self.measured_g0) / self.bound_quadric

    CSV_HEADER = "m,n,G0,sumPl,sumHl,bound_quadric,bound_weak,ratio"

    def csv_row(self) -> str:
        return (
            f"{self.m},{self.n},{self.measured_g0},{self.sum_pl},{self.sum_hl},"
            f"{self.bound_quadric},{self.bound_weak},{self.ratio:.12f}"
        )


def bound_report(D: Decomposition, kappa=1) -> BoundReport:
    m, n = D.graph.m, D.graph.n
    return BoundReport(
        m=m,
        n=n,
        measured_g0=len(D.residual),
        sum_pl=D.sum_pl,
        sum_hl=D.sum_hl,
        sum_pl_hl=D.sum_pl_hl,
        bound_quadric=eval_bound_quadric(m, n),
        bound_weak=eval_bound_weak(m, n, kappa),
        bound_small_m=eval_bound_small_m(n, D.sum_pl_hl),
    )
