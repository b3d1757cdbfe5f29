"""Möbius transformations on a finite set and the point-plane view of them.

A map ``y = (alpha x + beta) / (x + delta)`` sends ``a`` to ``b`` exactly when
the grid point ``(a, b, ab)`` of the saddle ``z = xy`` lies on the plane
``z - alpha x + delta y - beta = 0``. Counting k-rich transformations of ``A``
is therefore counting k-rich planes for the grid ``{(a, b, ab)}``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from .exact import as_rational
from .geometry import Plane, Point3
from .incidence import incidence_graph


@dataclass(frozen=True, order=True)
class Mobius:
    """The map ``x -> (alpha x + beta) / (x + delta)`` with ``beta != alpha delta``."""

    alpha: Fraction
    beta: Fraction
    delta: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "delta"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.beta == self.alpha * self.delta:
            raise ValueError("beta == alpha*delta gives a constant map")

    @property
    def pole(self) -> Fraction:
        return -self.delta

    def __call__(self, x):
        return mobius_apply(self, x)


def mobius_apply(tau: Mobius, x) -> Fraction | None:
    """``tau(x)``, or None at the pole ``x = -delta``."""
    x = as_rational(x)
    den = x + tau.delta
    if den == 0:
        return None
    return (tau.alpha * x + tau.beta) / den


def mobius_from_pairs(pairs: Sequence[tuple]) -> Mobius | None:
    """The normal-form map sending ``a_i -> b_i`` for three pairs, or None.

    None covers every way the pairs fail to pin down a valid map: a singular
    or inconsistent system, a constant solution, or repeated targets (a
    non-constant map is injective). Repeated sources are a caller error.
    """
    if len(pairs) != 3:
        raise ValueError("exactly three pairs are required")
    a = [as_rational(p[0]) for p in pairs]
    b = [as_rational(p[1]) for p in pairs]
    if len(set(a)) != 3:
        raise ValueError("source points must be distinct")
    if len(set(b)) != 3:
        return None
    # a b - alpha a + delta b - beta = 0 in the unknowns (alpha, beta, delta);
    # Cramer's rule on the columns (-a, -1, b) with right-hand side -ab
    col_a = [-x for x in a]
    col_1 = [-1, -1, -1]
    rhs = [-x * y for x, y in zip(a, b)]
    D = _det3(col_a, col_1, b)
    if D == 0:
        return None
    alpha = _det3(rhs, col_1, b) / D
    beta = _det3(col_a, rhs, b) / D
    delta = _det3(col_a, col_1, rhs) / D
    if beta == alpha * delta:
        return None
    return Mobius(alpha, beta, delta)


def plane_of_mobius(tau: Mobius) -> Plane:
    """The plane ``z - alpha x + delta y - beta = 0``."""
    return Plane(-tau.alpha, tau.delta, 1, -tau.beta)


def cross_ratio(a, b, c, d) -> Fraction:
    """``(a - c)(b - d) / ((a - d)(b - c))`` for four distinct rationals."""
    return Fraction((a - c) * (b - d), 1) / ((a - d) * (b - c))


def distinct_cross_ratios(A: Iterable) -> int:
    A = sorted({as_rational(a) for a in A})
    if len(A) < 4:
        raise ValueError("need at least four elements")
    return len({cross_ratio(*q) for q in permutations(A, 4)})


@dataclass(frozen=True)
class GridInstance:
    A: tuple[Fraction, ...]
    points: tuple[Point3, ...]


def grid_instance(A: Iterable) -> GridInstance:
    """Points ``(a, b, ab)`` for ``(a, b)`` in ``A x A``, row-major over sorted ``A``."""
    A = tuple(sorted({as_rational(a) for a in A}))
    return GridInstance(A, tuple(Point3(a, b, a * b) for a in A for b in A))


def richness(tau: Mobius, A: Iterable) -> int:
    A = set(A)
    return sum(1 for a in A if (b := mobius_apply(tau, a)) is not None and b in A)


# -- enumeration ------------------------------------------------------------

_INT64_SAFE_MAGNITUDE = 700  # 36 * 700**6 < 2**63


def _det3(c1, c2, c3):
    return (
        c1[0] * (c2[1] * c3[2] - c2[2] * c3[1])
        - c2[0] * (c1[1] * c3[2] - c1[2] * c3[1])
        + c3[0] * (c1[1] * c2[2] - c1[2] * c2[1])
    )


def _scale_to_integers(A: Sequence[Fraction]) -> tuple[int, list[int]]:
    L = 1
    for a in A:
        L = math.lcm(L, a.denominator)
    return L, [int(a * L) for a in A]


def _enumerate_normal_form(Ai: Sequence[int]):
    """Every normal-form map with richness >= 3 on the integer set ``Ai``.

    Yields Cramer determinants ``(D_alpha, D_beta, D_delta, D)`` (so
    ``alpha = D_alpha / D`` etc.) together with the richness. Each map is
    reported once: from the source triple made of its three smallest mapped
    points, with the three targets in order.
    """
    n = len(Ai)
    dtype = np.int64 if max(abs(a) for a in Ai) <= _INT64_SAFE_MAGNITUDE else object
    vals = np.array(Ai, dtype=dtype)
    tgt = np.array(list(permutations(range(n), 3)), dtype=np.intp).reshape(-1, 3)
    B = [vals[tgt[:, r]] for r in range(3)]
    one = np.ones(len(tgt), dtype=dtype)
    out_det, out_rich = [], []
    for i, j, k in combinations(range(n), 3):
        a = (vals[i], vals[j], vals[k])
        col_a = (-a[0] * one, -a[1] * one, -a[2] * one)
        col_1 = (-one, -one, -one)
        rhs = tuple(-a[r] * B[r] for r in range(3))
        D = _det3(col_a, col_1, B)
        Da = _det3(rhs, col_1, B)
        Db = _det3(col_a, rhs, B)
        Dd = _det3(col_a, col_1, rhs)
        ok = (D != 0) & (Db * D != Da * Dd)
        if not ok.any():
            continue
        D, Da, Db, Dd = D[ok], Da[ok], Db[ok], Dd[ok]
        num = Da[:, None] * vals[None, :] + Db[:, None]
        den = D[:, None] * vals[None, :] + Dd[:, None]
        nonpole = den != 0
        safe = np.where(nonpole, den, 1)
        exact = nonpole & (num % safe == 0)
        quo = np.where(exact, num // safe, vals[0])
        pos = np.clip(np.searchsorted(vals, quo), 0, n - 1)
        mapped = exact & (vals[pos] == quo)
        canonical = mapped[:, : k + 1].sum(axis=1) == 3
        if not canonical.any():
            continue
        out_det.append(np.stack([Da, Db, Dd, D], axis=1)[canonical])
        out_rich.append(mapped[canonical].sum(axis=1))
    if not out_det:
        return np.zeros((0, 4), dtype=dtype), np.zeros(0, dtype=np.int64)
    return np.concatenate(out_det), np.concatenate(out_rich).astype(np.int64)


def _affine_maps(A: Sequence[Fraction], k_min: int) -> list[tuple[tuple[Fraction, Fraction], int]]:
    """Affine maps ``y = alpha x + beta`` (alpha != 0) with richness >= k_min."""
    S = set(A)
    found: dict[tuple[Fraction, Fraction], int] = {}
    for a1, a2 in combinations(A, 2):
        for b1, b2 in permutations(A, 2):
            alpha = (b2 - b1) / (a2 - a1)
            beta = b1 - alpha * a1
            if (alpha, beta) not in found:
                found[(alpha, beta)] = sum(1 for x in A if alpha * x + beta in S)
    return sorted((key, r) for key, r in found.items() if r >= k_min)


@dataclass(frozen=True, eq=False)
class RichTransformReport:
    """k-rich normal-form transformations of ``A`` (k >= ``k_min``)."""

    A: tuple[Fraction, ...]
    k_min: int
    scale: int
    determinants: np.ndarray = field(repr=False)  # rows (D_alpha, D_beta, D_delta, D), scaled set
    richness: np.ndarray = field(repr=False)
    affine: tuple[tuple[tuple[Fraction, Fraction], int], ...] = ()
    include_affine: bool = False

    @cached_property
    def transformations(self) -> list[tuple[Mobius, int]]:
        """Materialized ``(Mobius, richness)`` pairs sorted by (alpha, beta, delta)."""
        L = self.scale
        out = []
        for (Da, Db, Dd, D), r in zip(self.determinants.tolist(), self.richness.tolist()):
            if r < self.k_min:
                continue
            tau = Mobius(Fraction(Da, D * L), Fraction(Db, D * L * L), Fraction(Dd, D * L))
            out.append((tau, int(r)))
        # float presort leaves the list almost ordered, so the exact pass is ~linear
        out.sort(key=lambda item: (float(item[0].alpha), float(item[0].beta), float(item[0].delta)))
        out.sort(key=lambda item: (item[0].alpha, item[0].beta, item[0].delta))
        return out

    def _all_richness(self) -> list[int]:
        rs = [int(r) for r in self.richness.tolist() if r >= self.k_min]
        if self.include_affine:
            rs += [r for _, r in self.affine]
        return rs

    @cached_property
    def histogram(self) -> dict[int, int]:
        """Number of transformations with richness exactly k."""
        return dict(sorted(Counter(self._all_richness()).items()))

    @cached_property
    def n_geq(self) -> dict[int, int]:
        """Number of maps with richness at least k, for every k from ``k_min`` to ``|A|``."""
        out = {}
        running = 0
        for k in range(len(self.A), self.k_min - 1, -1):
            running += self.histogram.get(k, 0)
            out[k] = running
        return dict(sorted(out.items()))

    @cached_property
    def q(self) -> int:
        """Ordered congruent pentuple pairs: sum of r(r-1)(r-2)(r-3)(r-4) over transformations."""
        return sum(math.perm(r, 5) for r in self._all_richness() if r >= 5)

    @cached_property
    def distinct_cross_ratios(self) -> int:
        return distinct_cross_ratios(self.A)


def rich_transformations(A: Iterable, k_min: int = 3, include_affine: bool = False) -> RichTransformReport:
    """Enumerate the normal-form maps sending at least ``k_min`` points of ``A`` into ``A``.

    Complete for ``k_min >= 3`` because three pairs determine a map. Work is
    done on ``L * A`` for the common denominator ``L``; conjugating by the
    scaling preserves richness.
    """
    A = [as_rational(a) for a in A]
    if len(set(A)) != len(A):
        raise ValueError("A must not contain duplicates")
    if len(A) < 3:
        raise ValueError("need |A| >= 3")
    if k_min < 3:
        raise ValueError("k_min must be at least 3")
    A = sorted(A)
    L, Ai = _scale_to_integers(A)
    dets, rich = _enumerate_normal_form(Ai)
    affine = tuple(_affine_maps(A, k_min)) if include_affine else ()
    return RichTransformReport(tuple(A), k_min, L, dets, rich, affine, include_affine)


def count_congruent_pentuples(A: Iterable, include_affine: bool = False) -> int:
    A = list(A)
    if len(A) < 5:
        raise ValueError("need |A| >= 5")
    return rich_transformations(A, 3, include_affine).q


# -- the grid reduction -----------------------------------------------------

def _plane_counts_off_pole(A: Sequence[Fraction], taus: Sequence[Mobius]) -> list[int]:
    grid = grid_instance(A)
    planes = [plane_of_mobius(t) for t in taus]
    G = incidence_graph(grid.points, planes)
    return [
        sum(1 for i in G.per_plane[j] if grid.points[i].x != taus[j].pole)
        for j in range(len(taus))
    ]


def grid_incidence_crosscheck(A: Iterable, tau: Mobius) -> bool:
    """Richness of ``tau`` on ``A`` equals the grid points on its plane (pole column excluded)."""
    A = sorted({as_rational(a) for a in A})
    return richness(tau, A) == _plane_counts_off_pole(A, [tau])[0]


def crosscheck_report(report: RichTransformReport) -> bool:
    """``grid_incidence_crosscheck`` for every listed transformation in one incidence sweep."""
    taus = [t for t, _ in report.transformations]
    if not taus:
        return True
    counts = _plane_counts_off_pole(report.A, taus)
    return counts == [r for _, r in report.transformations]
