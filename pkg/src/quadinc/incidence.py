"""Exact point-plane incidence graphs.

Two sweeps compute the same edge set. ``"sweep"`` walks every (point, plane)
pair with Python integers and is the reference. ``"vectorized"`` multiplies
integer homogeneous coordinate matrices with numpy. It uses int64 only when a
magnitude bound rules out overflow and object arrays (exact Python ints)
otherwise.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .exact import cross
from .geometry import Plane, Point3

_INT64_SAFE = 2**62


class DuplicateInputError(ValueError):
    pass


@dataclass(frozen=True)
class IncidenceGraph:
    m: int
    n: int
    edges: tuple[tuple[int, int], ...]  # sorted (point_index, plane_index)

    @cached_property
    def per_point(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.m)]
        for i, j in self.edges:
            adj[i].append(j)
        return tuple(map(tuple, adj))

    @cached_property
    def per_plane(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[j].append(i)
        return tuple(map(tuple, adj))

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def degree_of_plane(self, j: int) -> int:
        return len(self.per_plane[j])

    def richness_histogram(self) -> dict[int, int]:
        """Map k to the number of planes containing exactly k points."""
        return dict(sorted(Counter(len(a) for a in self.per_plane).items()))

    def to_csv(self) -> str:
        lines = ["point_index,plane_index"]
        lines += [f"{i},{j}" for i, j in self.edges]
        return "\n".join(lines) + "\n"


def _check_distinct(items: Sequence, what: str) -> None:
    if len(set(items)) != len(items):
        raise DuplicateInputError(f"duplicate {what} in input")


def _sweep_chunk(args):
    pts, planes, offset = args
    out = []
    for jj, (a, b, c, d) in enumerate(planes):
        j = jj + offset
        for i, (x, y, z, w) in enumerate(pts):
            if a * x + b * y + c * z + d * w == 0:
                out.append((i, j))
    return out


def _sweep(P: Sequence[Point3], H: Sequence[Plane], workers: int) -> list[tuple[int, int]]:
    pts = [p.homogeneous_int for p in P]
    planes = [h.homogeneous_int for h in H]
    if workers <= 1 or len(planes) < 2 * workers:
        edges = _sweep_chunk((pts, planes, 0))
    else:
        size = -(-len(planes) // workers)
        chunks = [(pts, planes[s:s + size], s) for s in range(0, len(planes), size)]
        with ProcessPoolExecutor(workers) as pool:
            edges = [e for part in pool.map(_sweep_chunk, chunks) for e in part]
    edges.sort()
    return edges


def _vectorized(P: Sequence[Point3], H: Sequence[Plane]) -> list[tuple[int, int]]:
    if not P or not H:
        return []
    pts = [p.homogeneous_int for p in P]
    planes = [h.homogeneous_int for h in H]
    bp = max(abs(v) for r in pts for v in r)
    bh = max(abs(v) for r in planes for v in r)
    dtype = np.int64 if 4 * bp * bh < _INT64_SAFE else object
    X = np.array(pts, dtype=dtype)
    Hm = np.array(planes, dtype=dtype)
    hits = (X @ Hm.T) == 0
    ii, jj = np.nonzero(hits)
    return sorted(zip(ii.tolist(), jj.tolist()))


def incidence_graph(
    P: Sequence[Point3],
    H: Sequence[Plane],
    method: str = "vectorized",
    workers: int = 1,
) -> IncidenceGraph:
    """All pairs (i, j) with ``P[i]`` on ``H[j]``. Points and planes must be distinct."""
    _check_distinct(P, "points")
    _check_distinct(H, "planes")
    if method == "sweep":
        edges = _sweep(P, H, workers)
    elif method == "vectorized":
        edges = _vectorized(P, H)
    else:
        raise ValueError(f"unknown method {method!r}")
    return IncidenceGraph(len(P), len(H), tuple(edges))


def rich_planes(G: IncidenceGraph, k: int) -> list[int]:
    """Indices of planes with at least ``k`` incident points, by decreasing degree."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rich = [j for j in range(G.n) if G.degree_of_plane(j) >= k]
    return sorted(rich, key=lambda j: (-G.degree_of_plane(j), j))


def collinear(points: Sequence[Point3]) -> bool:
    if len(points) <= 2:
        return True
    p0 = points[0]
    d = points[1] - p0
    return all(cross(q - p0, d) == (0, 0, 0) for q in points[2:])


@dataclass(frozen=True)
class PlaneClasses:
    degenerate: tuple[int, ...]
    non_degenerate: tuple[int, ...]
    sparse: tuple[int, ...]


def classify_degenerate_planes(
    P: Sequence[Point3], H: Sequence[Plane], G: IncidenceGraph
) -> PlaneClasses:
    """Split planes into sparse (<= 2 points), degenerate (collinear points) and the rest."""
    if (G.m, G.n) != (len(P), len(H)):
        raise ValueError("graph does not match the instance")
    groups: dict[str, list[int]] = {"degenerate": [], "non_degenerate": [], "sparse": []}
    for j, members in enumerate(G.per_plane):
        if len(members) <= 2:
            groups["sparse"].append(j)
        elif collinear([P[i] for i in members]):
            groups["degenerate"].append(j)
        else:
            groups["non_degenerate"].append(j)
    return PlaneClasses(**{k: tuple(v) for k, v in groups.items()})
