"""Seeded instance generators and the decomposition experiment runner.

Rational parametrizations used to put points exactly on each surface:

* hyperbolic paraboloid ``z = xy``: ``(x, y, xy)``
* paraboloid ``z = x^2 + y^2``: ``(x, y, x^2 + y^2)``
* unit sphere: inverse stereographic projection from the north pole,
  ``(2u, 2v, u^2 + v^2 - 1) / (u^2 + v^2 + 1)``
* cone ``x^2 + y^2 = z^2``: ``t * ((1 - s^2)/(1 + s^2), 2s/(1 + s^2), 1)``, plus the apex
* hyperboloid ``x^2 + y^2 - z^2 = 1``: ``(c - t s, s + t c, t)`` with
  ``(c, s) = ((1 - u^2)/(1 + u^2), 2u/(1 + u^2))`` on the unit circle

Parameters are drawn from small pools, so many points share a ruling and the
ruled surfaces produce nontrivial bipartite factors.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .decomposition import audit_decomposition, bound_report, build_L, decompose
from .exact import cross
from .geometry import Plane, Point3
from .incidence import incidence_graph
from .quadric import (
    CONE,
    HYPERBOLIC_PARABOLOID,
    ONE_SHEET_HYPERBOLOID,
    PARABOLOID,
    UNIT_SPHERE,
    Quadric,
)
from .serialize import dumps, instance_to_json

log = logging.getLogger(__name__)

QUADRICS: dict[str, Quadric] = {
    "hyperbolic-paraboloid": HYPERBOLIC_PARABOLOID,
    "paraboloid": PARABOLOID,
    "sphere": UNIT_SPHERE,
    "cone": CONE,
    "one-sheet-hyperboloid": ONE_SHEET_HYPERBOLOID,
}
RULED_KINDS = frozenset({"hyperbolic-paraboloid", "cone", "one-sheet-hyperboloid"})
STRATEGIES = ("through-triples", "ruling-planes", "random", "mobius-planes")


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    quadric_kind: str
    m: int
    n: int
    plane_strategy: str = "through-triples"
    seed: int = 0
    max_num: int = 10**4
    max_den: int = 10**3

    def __post_init__(self):
        if self.quadric_kind not in QUADRICS:
            raise ValueError(f"unsupported quadric kind {self.quadric_kind!r}")
        if self.plane_strategy not in STRATEGIES:
            raise ValueError(f"unknown plane strategy {self.plane_strategy!r}")
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be at least 1")
        if self.plane_strategy == "ruling-planes" and self.quadric_kind not in RULED_KINDS:
            raise ValueError("ruling-planes needs a ruled quadric")

    @property
    def quadric(self) -> Quadric:
        return QUADRICS[self.quadric_kind]


def _rng(spec: InstanceSpec, stream: str) -> random.Random:
    # string seeds hash deterministically (unlike tuples)
    return random.Random(f"{spec.seed}:{spec.quadric_kind}:{spec.m}:{spec.n}:{spec.plane_strategy}:{stream}")


def random_rational(rng: random.Random, max_num: int, max_den: int) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def _pool(rng: random.Random, size: int, max_num: int, max_den: int) -> list[Fraction]:
    out: set[Fraction] = set()
    while len(out) < size:
        out.add(random_rational(rng, max_num, max_den))
    return sorted(out)


def _circle_point(u: Fraction) -> tuple[Fraction, Fraction]:
    return ((1 - u * u) / (1 + u * u), 2 * u / (1 + u * u))


def _draw_point(kind: str, pa: Fraction, pb: Fraction) -> Point3:
    if kind == "hyperbolic-paraboloid":
        return Point3(pa, pb, pa * pb)
    if kind == "paraboloid":
        return Point3(pa, pb, pa * pa + pb * pb)
    if kind == "sphere":
        s = pa * pa + pb * pb + 1
        return Point3(2 * pa / s, 2 * pb / s, (pa * pa + pb * pb - 1) / s)
    if kind == "cone":
        c, s = _circle_point(pa)
        return Point3(pb * c, pb * s, pb)
    if kind == "one-sheet-hyperboloid":
        c, s = _circle_point(pa)
        return Point3(c - pb * s, s + pb * c, pb)
    raise ValueError(f"unsupported quadric kind {kind!r}")


def gen_points_on_quadric(spec: InstanceSpec) -> list[Point3]:
    """``spec.m`` distinct rational points exactly on the quadric named by spec."""
    rng = _rng(spec, "points")
    size = math.isqrt(spec.m) + 2
    first = _pool(rng, size, spec.max_num, spec.max_den)
    second = _pool(rng, size + 1, spec.max_num, spec.max_den)
    points: list[Point3] = []
    seen: set[Point3] = set()
    if spec.quadric_kind == "cone":
        apex = Point3(0, 0, 0)
        points.append(apex)
        seen.add(apex)
    attempts = 0
    while len(points) < spec.m:
        attempts += 1
        if attempts > 100 * spec.m + 100:
            raise GenerationError("could not draw enough distinct points")
        if attempts % 4 == 0:
            pa, pb = random_rational(rng, spec.max_num, spec.max_den), rng.choice(second)
        else:
            pa, pb = rng.choice(first), rng.choice(second)
        p = _draw_point(spec.quadric_kind, pa, pb)
        if p not in seen:
            seen.add(p)
            points.append(p)
    return points


def _small_vector(rng: random.Random) -> tuple[int, int, int]:
    while True:
        v = tuple(rng.randint(-5, 5) for _ in range(3))
        if v != (0, 0, 0):
            return v


def _plane_from_mobius_triple(rng, P) -> Plane | None:
    p, q, s = rng.sample(list(P), 3)
    try:
        h = Plane.through(p, q, s)
    except ValueError:
        return None
    if h.c == 0:
        return None
    alpha, delta, beta = -h.a / h.c, h.b / h.c, -h.d / h.c
    if beta == alpha * delta:
        return None
    return Plane(-alpha, delta, 1, -beta)


def gen_planes(spec: InstanceSpec, P: Sequence[Point3]) -> list[Plane]:
    """``spec.n`` distinct planes following ``spec.plane_strategy``."""
    rng = _rng(spec, "planes")
    strategy = spec.plane_strategy
    planes: list[Plane] = []
    seen: set[Plane] = set()
    lines = []
    if strategy == "ruling-planes":
        lines = build_L(P, spec.quadric)
        if not lines:
            raise GenerationError("no ruling line passes through the points")
        rng.shuffle(lines)
        lines = lines[: max(1, math.isqrt(spec.n) + 1)]
    off_line: dict = {}

    attempts = collinear_streak = 0
    while len(planes) < spec.n:
        attempts += 1
        if attempts > 200 * spec.n + 200:
            raise GenerationError(f"could not generate {spec.n} distinct planes ({strategy})")
        h = None
        if strategy == "through-triples":
            if len(P) < 3:
                raise GenerationError("through-triples needs at least 3 points")
            p, q, s = rng.sample(list(P), 3)
            if cross(q - p, s - p) == (0, 0, 0):
                collinear_streak += 1
                if collinear_streak > 1000:
                    raise GenerationError("collinear-triple resampling exhausted")
                continue
            collinear_streak = 0
            h = Plane.through(p, q, s)
        elif strategy == "ruling-planes":
            line = rng.choice(lines)
            if line not in off_line:
                off_line[line] = [p for p in P if not line.contains(p)]
            off = off_line[line]
            if off and rng.random() < 0.5:
                h = Plane.through(line.base, line.point_at(1), rng.choice(off))
            else:
                normal = cross(line.direction, _small_vector(rng))
                if normal == (0, 0, 0):
                    continue
                h = Plane.from_normal(normal, line.base)
        elif strategy == "random":
            a, b, c = _small_vector(rng)
            h = Plane(a, b, c, random_rational(rng, 10, 3))
        elif strategy == "mobius-planes":
            if spec.quadric_kind == "hyperbolic-paraboloid" and len(P) >= 3 and rng.random() < 0.7:
                h = _plane_from_mobius_triple(rng, P)
            else:
                alpha, beta, delta = (random_rational(rng, 10, 3) for _ in range(3))
                if beta != alpha * delta:
                    h = Plane(-alpha, delta, 1, -beta)
        if h is not None and h not in seen:
            seen.add(h)
            planes.append(h)
    return planes


def generate_instance(spec: InstanceSpec) -> tuple[list[Point3], list[Plane], Quadric]:
    P = gen_points_on_quadric(spec)
    return P, gen_planes(spec, P), spec.quadric


# -- experiments --------------------------------------------------------------

@dataclass
class ExperimentRow:
    spec: InstanceSpec
    report: object = None  # BoundReport
    checks: dict[str, bool] = field(default_factory=dict)
    factor_count: int = 0
    line_count: int = 0
    apex_incidences: int = 0
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(self.checks.values())


CSV_HEADER = (
    "kind,strategy,seed,m,n,G0,sumPl,sumHl,bound_quadric,bound_weak,ratio,"
    "factors,lines,apex_incidences,passed,error"
)


@dataclass
class ExperimentReport:
    rows: list[ExperimentRow]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def max_ratio(self):
        ratios = [r.report.ratio for r in self.rows if r.report is not None]
        return max(ratios) if ratios else None

    def to_csv(self) -> str:
        out = [CSV_HEADER]
        for r in self.rows:
            s = r.spec
            head = f"{s.quadric_kind},{s.plane_strategy},{s.seed}"
            if r.report is None:
                out.append(f"{head},{s.m},{s.n},,,,,,,,,,false,{r.error}")
                continue
            out.append(
                f"{head},{r.report.csv_row()},{r.factor_count},{r.line_count},"
                f"{r.apex_incidences},{str(r.passed).lower()},{r.error or ''}"
            )
        return "\n".join(out) + "\n"


def run_instance(spec: InstanceSpec, pseudo_circles: bool = True, kappa=1) -> tuple[ExperimentRow, tuple]:
    P, H, V = generate_instance(spec)
    D = decompose(P, H, V)
    reference = incidence_graph(P, H, method="sweep")
    checks = audit_decomposition(P, H, V, D, reference=reference, pseudo_circles=pseudo_circles)
    row = ExperimentRow(
        spec=spec,
        report=bound_report(D, kappa),
        checks=checks,
        factor_count=len(D.factors),
        line_count=len(D.lines),
        apex_incidences=len(D.apex_incidences),
    )
    return row, (P, H, V)


def run_experiment(
    specs: Sequence[InstanceSpec],
    failure_dir: str | Path | None = None,
    pseudo_circles: bool = True,
    kappa=1,
) -> ExperimentReport:
    """Generate, decompose and audit each spec; rows follow the order of ``specs``.

    Generator or decomposition errors become failed rows instead of aborting
    the sweep. Instances whose audit fails are written to ``failure_dir``.
    """
    rows = []
    for idx, spec in enumerate(specs):
        try:
            row, instance = run_instance(spec, pseudo_circles, kappa)
        except (GenerationError, ValueError) as exc:
            log.warning("spec %d failed: %s", idx, exc)
            rows.append(ExperimentRow(spec=spec, error=f"{type(exc).__name__}: {exc}".replace(",", ";")))
            continue
        if not row.passed and failure_dir is not None:
            path = Path(failure_dir)
            path.mkdir(parents=True, exist_ok=True)
            payload = instance_to_json(*instance)
            payload["spec"] = asdict(spec)
            payload["checks"] = row.checks
            (path / f"failed_{idx:04d}.json").write_text(dumps(payload), encoding="utf-8")
        rows.append(row)
    return ExperimentReport(rows)
