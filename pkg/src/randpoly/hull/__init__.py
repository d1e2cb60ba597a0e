"""Convex hulls of point clouds in general position in R^d.

convex_hull runs an incremental quickhull (furthest-point insertion with
outside sets) and returns the simplicial facet list with oriented
hyperplanes.  brute_force_facets is the exhaustive testing oracle for small
instances.  Inputs within tolerance of a hyperplane where strict sidedness
is required raise DegenerateInput; callers resample.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np

from ..errors import (
    DegenerateInput,
    InsufficientPoints,
    InvalidDimension,
    RankDeficient,
)
from ._kernels import (
    STATUS_OK,
    STATUS_RANK_DEFICIENT,
    get_kernel,
)

DEFAULT_REL_EPS = 1e-10


@dataclass(frozen=True)
class Tolerance:
    """Relative sidedness threshold; absolute tol is rel_eps * max |coord|."""

    rel_eps: float = DEFAULT_REL_EPS

    def absolute(self, points: np.ndarray) -> float:
        scale = float(np.max(np.abs(points))) if points.size else 0.0
        return self.rel_eps * scale


class Side(Enum):
    ABOVE = 1
    BELOW = -1
    INCIDENT = 0


@dataclass(frozen=True)
class Facet:
    vertices: tuple
    normal: np.ndarray
    offset: float


@dataclass
class HullResult:
    d: int
    facet_vertices: np.ndarray  # (m, d) int64, each row sorted ascending
    normals: np.ndarray  # (m, d), unit outward
    offsets: np.ndarray  # (m,), hyperplane <normal, x> = offset
    vertex_indices: np.ndarray  # sorted unique input indices on the hull
    diagnostics: dict = field(default_factory=dict)

    @property
    def num_facets(self) -> int:
        return self.facet_vertices.shape[0]

    def facet_tuples(self) -> set:
        return {tuple(int(v) for v in row) for row in self.facet_vertices}

    def facets(self):
        return [
            Facet(tuple(int(v) for v in self.facet_vertices[i]),
                  self.normals[i], float(self.offsets[i]))
            for i in range(self.num_facets)
        ]


def _validate_cloud(points: np.ndarray) -> np.ndarray:
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise InvalidDimension("points must be a 2-D array")
    n, d = points.shape
    if d < 2:
        raise InvalidDimension(f"need d >= 2, got {d}")
    if n < d + 1:
        raise InsufficientPoints(f"need n >= d+1 = {d + 1}, got {n}")
    if not np.all(np.isfinite(points)):
        raise DegenerateInput("non-finite coordinates")
    return points


def convex_hull(
    points: np.ndarray, tol: Tolerance = Tolerance(), backend: str | None = None
) -> HullResult:
    """Convex hull of points in general position; facets are simplicial."""
    points = _validate_cloud(points)
    kernel = get_kernel(backend)
    status, verts, normals, offsets, created, deleted = kernel(points, tol.rel_eps)
    if status != STATUS_OK:
        raise DegenerateInput(
            f"hull construction hit a degeneracy (status {status}); resample"
        )
    # the kernel emits unit normals; renormalize defensively
    norms = np.linalg.norm(normals, axis=1, keepdims=True)
    normals = normals / norms
    offsets = offsets / norms[:, 0]
    return HullResult(
        d=points.shape[1],
        facet_vertices=verts,
        normals=normals,
        offsets=offsets,
        vertex_indices=np.unique(verts),
        diagnostics={
            "points_processed": points.shape[0],
            "facets_created": int(created),
            "facets_deleted": int(deleted),
        },
    )


def _hyperplane(simplex_points: np.ndarray, tol_abs: float):
    """Unit normal and offset through d affinely independent points."""
    edges = simplex_points[1:] - simplex_points[0]
    _u, s, vt = np.linalg.svd(edges)
    if s[-1] <= tol_abs:
        raise RankDeficient("hyperplane points are affinely dependent")
    normal = vt[-1]
    return normal, float(normal @ simplex_points[0])


def orientation(
    simplex_points: np.ndarray,
    apex_hint: np.ndarray,
    query: np.ndarray,
    tol: Tolerance = Tolerance(),
) -> Side:
    """Side of query relative to the hyperplane through simplex_points.

    Oriented so apex_hint is BELOW; INCIDENT within rel_eps * scale.
    """
    simplex_points = np.asarray(simplex_points, dtype=np.float64)
    apex_hint = np.asarray(apex_hint, dtype=np.float64)
    query = np.asarray(query, dtype=np.float64)
    scale = max(
        float(np.max(np.abs(simplex_points))),
        float(np.max(np.abs(apex_hint))),
        float(np.max(np.abs(query))),
    )
    tol_abs = tol.rel_eps * scale
    normal, offset = _hyperplane(simplex_points, tol_abs)
    hint_side = float(normal @ apex_hint) - offset
    if abs(hint_side) <= tol_abs:
        raise RankDeficient("apex hint is incident to the hyperplane")
    if hint_side > 0:
        normal, offset = -normal, -offset
    dist = float(normal @ query) - offset
    if abs(dist) <= tol_abs:
        return Side.INCIDENT
    return Side.ABOVE if dist > 0 else Side.BELOW


def brute_force_facets(
    points: np.ndarray, tol: Tolerance = Tolerance(), cap: int = 16
) -> set:
    """All d-subsets whose hyperplane has every other point strictly one side.

    Exhaustive O(C(n,d) * n) oracle; n is capped.
    """
    points = _validate_cloud(points)
    n, d = points.shape
    if n > cap:
        raise InsufficientPoints(f"brute force capped at n <= {cap}, got {n}")
    tol_abs = tol.rel_eps * float(np.max(np.abs(points)))
    facets = set()
    for subset in combinations(range(n), d):
        try:
            normal, offset = _hyperplane(points[list(subset)], tol_abs)
        except RankDeficient:
            raise DegenerateInput("affinely dependent d-subset") from None
        rest = np.setdiff1d(np.arange(n), subset, assume_unique=True)
        dists = points[rest] @ normal - offset
        above = dists > tol_abs
        below = dists < -tol_abs
        if np.any(above) and np.any(below):
            continue  # strictly interior subset; incident extras are moot
        if above.sum() + below.sum() < rest.shape[0]:
            # an incident point makes facet status ambiguous
            raise DegenerateInput("point incident to a candidate hyperplane")
        facets.add(subset)
    return facets


def check_ridge_regularity(hull: HullResult) -> bool:
    """Every (d-1)-subset of a facet occurs in exactly two facets."""
    counts = {}
    for row in hull.facet_vertices:
        verts = tuple(int(v) for v in row)
        for ridge in combinations(verts, hull.d - 1):
            counts[ridge] = counts.get(ridge, 0) + 1
    return all(c == 2 for c in counts.values())


def max_containment_violation(hull: HullResult, points: np.ndarray) -> float:
    """max over points and facets of <normal, p> - offset (<= tol if inside)."""
    return float(np.max(points @ hull.normals.T - hull.offsets))
