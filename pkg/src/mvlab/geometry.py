"""Polytope geometry in R^2 and R^3.

Bodies are kept in V-representation: the lexicographically sorted extreme
points, plus a derived facet list (edges in 2D, merged coplanar polygons in
3D) with outward unit normals. Everything here is a pure function of its
inputs; randomness enters only through explicit seeds, so results are
reproducible bit for bit.

Lower-dimensional bodies (segments, flat polygons in R^3) are representable
with ``full_dim=False`` and volume 0 -- Minkowski sub-sums of segments need
this -- but ``hull`` itself rejects degenerate input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import ConvexHull, HalfspaceIntersection
from scipy.spatial import QhullError

from .errors import (
    DegenerateInput,
    DimensionMismatch,
    InfeasibleIntersection,
    NonpositiveScale,
    OriginNotInterior,
    UnsupportedDimension,
)

# Facet planes closer than this (in normal angle / relative offset) are merged.
FACET_MERGE_TOL = 1e-10
# Vertex-on-facet classification slack used when extracting faces.
FACE_TOL = 1e-9

# Direction-grid sizes: defaults for the Firey outer approximant, hard minima
# below which the halfspace intersection is too coarse to be meaningful, and
# the fixed fine grid used by the Hausdorff distance.
DEFAULT_FIREY_M = {2: 256, 3: 1024}
MIN_FIREY_M = {2: 8, 3: 24}
MIN_BALL_M = {2: 3, 3: 6}
HAUSDORFF_GRID_M = {2: 512, 3: 2048}

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class Facet:
    """One facet: outward unit normal, support offset, boundary vertex ids.

    ``vertex_ids`` are indices into ``Body.vertices``; in 2D they are the two
    edge endpoints in counterclockwise boundary order, in 3D the face polygon
    in counterclockwise order as seen from outside.
    """

    normal: tuple
    offset: float
    vertex_ids: tuple

    @property
    def normal_array(self) -> np.ndarray:
        return np.asarray(self.normal)


class Body:
    """Convex body given by its extreme points, with cached facet structure."""

    __slots__ = ("dim", "vertices", "facets", "full_dim")

    def __init__(self, dim: int, vertices: np.ndarray, facets: tuple, full_dim: bool):
        self.dim = dim
        v = np.ascontiguousarray(np.asarray(vertices, dtype=float))
        v.setflags(write=False)
        self.vertices = v
        self.facets = facets
        self.full_dim = full_dim

    # -- basic queries ----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def facet_normals(self) -> np.ndarray:
        if not self.facets:
            return np.zeros((0, self.dim))
        return np.array([f.normal for f in self.facets])

    @property
    def vertex_centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @property
    def origin_interior(self) -> bool:
        """True iff the origin lies strictly inside (support > 0 on all facets)."""
        if not self.full_dim:
            return False
        return all(f.offset > 0.0 for f in self.facets)

    def diameter(self) -> float:
        d = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((d * d).sum(axis=2)).max())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Body):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.vertices, other.vertices)

    def __hash__(self):
        return hash((self.dim, self.vertices.tobytes()))

    def __repr__(self):
        kind = "body" if self.full_dim else "degenerate body"
        return f"<{kind} dim={self.dim} vertices={self.n_vertices} facets={len(self.facets)}>"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _lexsort_rows(points: np.ndarray) -> np.ndarray:
    """Indices sorting rows lexicographically (first coordinate primary)."""
    keys = tuple(points[:, k] for k in reversed(range(points.shape[1])))
    return np.lexsort(keys)

def _affine_rank(points: np.ndarray) -> int:
    centered = points - points.mean(axis=0)
    if len(points) == 1:
        return 0
    s = np.linalg.svd(centered, compute_uv=False)
    return int(np.sum(s > max(1e-13, 1e-10 * s[0])))

def _orthobasis(normal: np.ndarray) -> tuple:
    """Right-handed (b1, b2) spanning the plane orthogonal to a 3D unit normal."""
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(normal)))] = 1.0
    b1 = axis - np.dot(axis, normal) * normal
    b1 /= np.linalg.norm(b1)
    b2 = np.cross(normal, b1)
    return b1, b2

def _facets_2d(cw_points: np.ndarray, hull: ConvexHull, order: np.ndarray) -> tuple:
    """Edges of a 2D hull as Facet tuples, normals rotated outward.

    ``order`` maps raw input-point indices to canonical vertex ids.
    """
    facets = []
    ring = hull.vertices  # counterclockwise
    for k in range(len(ring)):
        ia, ib = ring[k], ring[(k + 1) % len(ring)]
        a, b = cw_points[ia], cw_points[ib]
        e = b - a
        ln = np.linalg.norm(e)
        n = np.array([e[1], -e[0]]) / ln
        facets.append(Facet(tuple(n), float(np.dot(n, a)), (int(order[ia]), int(order[ib]))))
    facets.sort(key=lambda f: f.normal)
    return tuple(facets)

def _facets_3d(points: np.ndarray, hull: ConvexHull, order: np.ndarray) -> tuple:
    """Merged coplanar facets of a 3D hull, polygons ordered counterclockwise."""
    eqs = hull.equations
    # qhull assigns coplanar triangles of one merged facet the same plane;
    # group bitwise first, then fold residual near-parallel groups together.
    groups: dict = {}
    for tri, eq in zip(hull.simplices, eqs):
        groups.setdefault(eq.tobytes(), [set(), eq])[0].update(int(i) for i in tri)
    merged: list = []
    for verts, eq in groups.values():
        n, off = eq[:3], -eq[3]
        placed = False
        for item in merged:
            if (np.linalg.norm(item[1] - n) < FACET_MERGE_TOL
                    and abs(item[2] - off) < FACE_TOL * (1.0 + abs(off))):
                item[0].update(verts)
                placed = True
                break
        if not placed:
            merged.append([set(verts), n, off])

    facets = []
    for verts, n, off in merged:
        ids = sorted(verts)
        b1, b2 = _orthobasis(n)
        pts = points[ids]
        center = pts.mean(axis=0)
        ang = np.arctan2((pts - center) @ b2, (pts - center) @ b1)
        ring = [ids[j] for j in np.argsort(ang)]
        facets.append(Facet(tuple(n), float(off), tuple(int(order[i]) for i in ring)))
    facets.sort(key=lambda f: f.normal)
    return tuple(facets)

def _from_points(points: np.ndarray, dim: int, allow_degenerate: bool) -> Body:
    points = np.asarray(points, dtype=float).reshape(-1, dim)
    rank = _affine_rank(points)
    if rank < dim:
        if not allow_degenerate:
            raise DegenerateInput(
                f"points span an affine subspace of dimension {rank} < {dim}")
        return _degenerate_from_points(points, dim, rank)

    try:
        hull = ConvexHull(points)
    except QhullError as exc:  # pragma: no cover - rank check above should catch
        raise DegenerateInput(str(exc)) from exc

    verts = points[hull.vertices]
    sorter = _lexsort_rows(verts)
    canonical = verts[sorter]
    # order[i] = canonical id of raw point i (only hull vertices are used)
    order = np.full(len(points), -1, dtype=int)
    order[hull.vertices[sorter]] = np.arange(len(sorter))

    if dim == 2:
        facets = _facets_2d(points, hull, order)
    else:
        facets = _facets_3d(points, hull, order)
    return Body(dim, canonical, facets, full_dim=True)

def _degenerate_from_points(points: np.ndarray, dim: int, rank: int) -> Body:
    center = points.mean(axis=0)
    if rank == 0:
        return Body(dim, center.reshape(1, dim), (), full_dim=False)
    _, _, vt = np.linalg.svd(points - center)
    basis = vt[:rank]
    coords = (points - center) @ basis.T
    if rank == 1:
        lo, hi = coords[:, 0].argmin(), coords[:, 0].argmax()
        extreme = points[[lo, hi]]
    else:  # planar polygon inside R^3
        sub = ConvexHull(coords)
        extreme = points[sub.vertices]
    extreme = extreme[_lexsort_rows(extreme)]
    return Body(dim, extreme, (), full_dim=False)

def hull(points: Sequence, dim: int) -> Body:
    """Convex hull of full-dimensional input points.

    Raises ``UnsupportedDimension`` unless dim is 2 or 3 and
    ``DegenerateInput`` when the points sit in a lower-dimensional affine
    subspace. Vertex ordering of the result is lexicographic.
    """
    if dim not in (2, 3):
        raise UnsupportedDimension(f"dim must be 2 or 3, got {dim}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise DegenerateInput(f"expected points of shape (k, {dim})")
    if len(pts) < dim + 1:
        raise DegenerateInput(f"need at least {dim + 1} points, got {len(pts)}")
    return _from_points(pts, dim, allow_degenerate=False)


# ---------------------------------------------------------------------------
# support functions and metrics
# ---------------------------------------------------------------------------

def support(body: Body, u: np.ndarray) -> float:
    """Support function h(u) = max over vertices of v.u."""
    return float(np.dot(body.vertices, np.asarray(u, dtype=float)).max())

def support_many(body: Body, directions: np.ndarray) -> np.ndarray:
    """h(u) for every row u of ``directions`` at once."""
    return (body.vertices @ np.asarray(directions, dtype=float).T).max(axis=0)

def direction_grid(dim: int, m: int) -> np.ndarray:
    """Deterministic m-point unit-direction grid.

    2D: the regular m-gon directions starting at (1, 0). 3D: the midpoint
    Fibonacci sphere lattice, whose covering radius shrinks like 1/sqrt(m).
    """
    if dim == 2:
        ang = 2.0 * math.pi * np.arange(m) / m
        return np.column_stack([np.cos(ang), np.sin(ang)])
    if dim == 3:
        k = np.arange(m)
        z = 1.0 - (2.0 * k + 1.0) / m
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        th = _GOLDEN_ANGLE * k
        return np.column_stack([r * np.cos(th), r * np.sin(th), z])
    raise UnsupportedDimension(f"dim must be 2 or 3, got {dim}")

def hausdorff_distance(a: Body, b: Body) -> float:
    """Max |h_A - h_B| over both facet-normal sets plus a fixed fine grid."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dim {a.dim} vs {b.dim}")
    dirs = [direction_grid(a.dim, HAUSDORFF_GRID_M[a.dim])]
    for body in (a, b):
        if len(body.facets):
            dirs.append(body.facet_normals)
    u = np.vstack(dirs)
    return float(np.abs(support_many(a, u) - support_many(b, u)).max())


# ---------------------------------------------------------------------------
# sums, scalings, volume
# ---------------------------------------------------------------------------

def minkowski_sum(a: Body, b: Body) -> Body:
    """Minkowski sum A + B (hull of all pairwise vertex sums)."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dim {a.dim} vs {b.dim}")
    pts = (a.vertices[:, None, :] + b.vertices[None, :, :]).reshape(-1, a.dim)
    return _from_points(pts, a.dim, allow_degenerate=True)

def minkowski_combination(terms: Sequence[tuple]) -> Body:
    """Body of sum(w_i * K_i) for (body, weight) terms with w_i > 0.

    Repeated bodies (same object) are collapsed into a single scaled term,
    since w*K + v*K = (w+v)*K for convex K; this keeps polarization sums over
    multisets containing a high-resolution ball approximant tractable.
    """
    if not terms:
        raise ValueError("empty combination")
    dim = terms[0][0].dim
    weights: dict = {}
    bodies: dict = {}
    for body, w in terms:
        if body.dim != dim:
            raise DimensionMismatch("mixed ambient dimensions in combination")
        if w <= 0:
            raise NonpositiveScale(f"weight {w} must be positive")
        key = id(body)
        bodies[key] = body
        weights[key] = weights.get(key, 0.0) + float(w)
    clouds = [bodies[k].vertices * w for k, w in weights.items()]
    acc = clouds[0]
    for cloud in clouds[1:]:
        acc = (acc[:, None, :] + cloud[None, :, :]).reshape(-1, dim)
        if len(acc) > 4 * (dim + 1):
            acc = _extreme_points(acc, dim)
    return _from_points(acc, dim, allow_degenerate=True)

def _extreme_points(points: np.ndarray, dim: int) -> np.ndarray:
    if _affine_rank(points) < dim:
        return points
    return points[ConvexHull(points).vertices]

def scale_translate(body: Body, c: float, t: Sequence) -> Body:
    """Image of the body under v -> c*v + t for c > 0.

    Lexicographic vertex order and facet topology are preserved, so the facet
    list is carried over with rescaled offsets rather than recomputed.
    """
    if c <= 0:
        raise NonpositiveScale(f"scale {c} must be positive")
    t = np.asarray(t, dtype=float).reshape(body.dim)
    verts = body.vertices * c + t
    facets = tuple(
        Facet(f.normal, float(c * f.offset + np.dot(f.normal_array, t)), f.vertex_ids)
        for f in body.facets
    )
    return Body(body.dim, verts, facets, body.full_dim)

def volume(body: Body) -> float:
    """Lebesgue volume (area in 2D) via fan triangulation from the vertex
    centroid over the facets; 0 for lower-dimensional bodies."""
    if not body.full_dim:
        return 0.0
    c = body.vertex_centroid
    total = 0.0
    if body.dim == 2:
        for f in body.facets:
            a, b = body.vertices[list(f.vertex_ids)] - c
            total += 0.5 * (a[0] * b[1] - a[1] * b[0])
    else:
        for f in body.facets:
            ring = body.vertices[list(f.vertex_ids)] - c
            w0 = ring[0]
            for j in range(1, len(ring) - 1):
                total += np.linalg.det(np.array([w0, ring[j], ring[j + 1]])) / 6.0
    return float(total)

def facet_area(body: Body, facet: Facet) -> float:
    """(n-1)-volume of one facet: edge length in 2D, polygon area in 3D."""
    pts = body.vertices[list(facet.vertex_ids)]
    if body.dim == 2:
        return float(np.linalg.norm(pts[1] - pts[0]))
    b1, b2 = _orthobasis(facet.normal_array)
    x, y = pts @ b1, pts @ b2
    return float(0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))

def surface_area(body: Body) -> float:
    """Total boundary measure: perimeter in 2D, surface area in 3D."""
    return float(sum(facet_area(body, f) for f in body.facets))

def edge_skeleton(body: Body) -> list:
    """3D edges as (length, exterior dihedral angle) pairs.

    The exterior angle between adjacent facets comes from atan2 of the
    cross/dot of their normals, which stays stable near flat edges.
    """
    if body.dim != 3:
        raise UnsupportedDimension("edge skeleton is a 3D notion")
    owners: dict = {}
    for fi, f in enumerate(body.facets):
        ring = f.vertex_ids
        for k in range(len(ring)):
            e = tuple(sorted((ring[k], ring[(k + 1) % len(ring)])))
            owners.setdefault(e, []).append(fi)
    edges = []
    for (i, j), fs in owners.items():
        if len(fs) != 2:  # merged-facet bookkeeping glitch; skip zero-length edges
            continue
        n1 = body.facets[fs[0]].normal_array
        n2 = body.facets[fs[1]].normal_array
        angle = math.atan2(float(np.linalg.norm(np.cross(n1, n2))), float(np.dot(n1, n2)))
        edges.append((float(np.linalg.norm(body.vertices[i] - body.vertices[j])), angle))
    return edges


# ---------------------------------------------------------------------------
# Firey sums and ball approximants
# ---------------------------------------------------------------------------

def firey_sum_approx(a: Body, b: Body, p: float, m: Optional[int] = None) -> Body:
    """Outer polytopal approximant of the Firey p-sum K +_p L.

    Intersects the halfspaces {x.u <= (h_K(u)^p + h_L(u)^p)^(1/p)} over the
    deterministic m-direction grid; the result contains the true p-sum. For
    p=1 this converges to the Minkowski sum from outside as m grows.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dim {a.dim} vs {b.dim}")
    if p < 1:
        raise ValueError(f"Firey addition needs p >= 1, got {p}")
    if not a.origin_interior or not b.origin_interior:
        raise OriginNotInterior("Firey sum requires origin-interior bodies")
    if m is None:
        m = DEFAULT_FIREY_M[a.dim]
    if m < MIN_FIREY_M[a.dim]:
        raise ValueError(f"direction count {m} below minimum {MIN_FIREY_M[a.dim]}")
    u = direction_grid(a.dim, m)
    c = (support_many(a, u) ** p + support_many(b, u) ** p) ** (1.0 / p)
    try:
        inter = HalfspaceIntersection(np.column_stack([u, -c]), np.zeros(a.dim))
    except QhullError as exc:
        raise InfeasibleIntersection(str(exc)) from exc
    return _from_points(inter.intersections, a.dim, allow_degenerate=False)

def ball_approx(dim: int, m: int) -> Body:
    """Inscribed polytopal unit ball: hull of m grid directions.

    2D gives the regular m-gon (area (m/2) sin(2 pi/m)); 3D uses the
    Fibonacci sphere, except that m=6 yields the coordinate octahedron.
    """
    if dim not in (2, 3):
        raise UnsupportedDimension(f"dim must be 2 or 3, got {dim}")
    if m < MIN_BALL_M[dim]:
        raise ValueError(f"need at least {MIN_BALL_M[dim]} directions, got {m}")
    if dim == 3 and m == 6:
        pts = np.vstack([np.eye(3), -np.eye(3)])
    else:
        pts = direction_grid(dim, m)
    return _from_points(pts, dim, allow_degenerate=False)


# ---------------------------------------------------------------------------
# dilate detection
# ---------------------------------------------------------------------------

def detect_dilate(a: Body, b: Body, tol: float = 1e-9):
    """Recover (c, t) with A = c*B + t, or None.

    Candidates come from the volume ratio and vertex centroids; the match is
    accepted when the Hausdorff distance of A to c*B + t stays below
    tol * diameter(B).
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dim {a.dim} vs {b.dim}")
    if not (a.full_dim and b.full_dim):
        return None
    if a.n_vertices != b.n_vertices:
        return None
    c = (volume(a) / volume(b)) ** (1.0 / a.dim)
    t = a.vertex_centroid - c * b.vertex_centroid
    mapped = scale_translate(b, c, t)
    if hausdorff_distance(a, mapped) <= tol * b.diameter():
        return float(c), t
    return None


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

@dataclass
class BodyGenSpec:
    """Declarative body recipe; ``generate`` is deterministic per seed."""

    dim: int
    kind: str  # random_hull | symmetric_hull | box | regular_polygon | ball_approx | dilate_of
    seed: int = 0
    n_points: int = 8
    sides: Optional[Sequence[float]] = None
    k: int = 6
    radius: float = 1.0
    m: int = 64
    of: Optional["BodyGenSpec"] = None
    c: float = 1.0
    t: Optional[Sequence[float]] = None
    origin_interior: bool = True
    points: Optional[Sequence] = None  # symmetric_hull seeds

def generate(spec: BodyGenSpec) -> Body:
    """Build a body from a generation spec. Same spec, same body."""
    if spec.dim not in (2, 3):
        raise UnsupportedDimension(f"dim must be 2 or 3, got {spec.dim}")
    kind = spec.kind
    if kind == "box":
        sides = np.asarray(spec.sides, dtype=float)
        if sides.shape != (spec.dim,) or np.any(sides <= 0):
            raise ValueError(f"box needs {spec.dim} positive side lengths")
        corners = np.array(np.meshgrid(*[(0.0, s) for s in sides])).T.reshape(-1, spec.dim)
        return hull(corners, spec.dim)
    if kind == "regular_polygon":
        if spec.dim != 2:
            raise UnsupportedDimension("regular_polygon is 2D only")
        if spec.k < 3 or spec.radius <= 0:
            raise ValueError("regular_polygon needs k >= 3 and radius > 0")
        ang = 2.0 * math.pi * np.arange(spec.k) / spec.k
        return hull(spec.radius * np.column_stack([np.cos(ang), np.sin(ang)]), 2)
    if kind == "ball_approx":
        return ball_approx(spec.dim, spec.m)
    if kind == "dilate_of":
        if spec.of is None:
            raise ValueError("dilate_of needs a base spec")
        t = np.zeros(spec.dim) if spec.t is None else np.asarray(spec.t, dtype=float)
        return scale_translate(generate(spec.of), spec.c, t)
    if kind == "symmetric_hull":
        if spec.points is not None:
            pts = np.asarray(spec.points, dtype=float)
        else:
            pts = _random_cloud(spec.dim, spec.n_points, spec.seed)
        return hull(np.vstack([pts, -pts]), spec.dim)
    if kind == "random_hull":
        return _random_hull(spec)
    raise ValueError(f"unknown generation kind {kind!r}")

def _random_cloud(dim: int, n: int, seed: int) -> np.ndarray:
    # Directions uniform on the sphere, radii uniform in [0.5, 1.5]:
    # well-conditioned hulls without needle-like shapes.
    rng = np.random.default_rng(seed)
    d = rng.normal(size=(n, dim))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    return d * rng.uniform(0.5, 1.5, size=(n, 1))

def _random_hull(spec: BodyGenSpec) -> Body:
    for attempt in range(16):
        try:
            body = hull(_random_cloud(spec.dim, spec.n_points, spec.seed + attempt), spec.dim)
        except DegenerateInput:
            continue
        if spec.origin_interior and not body.origin_interior:
            body = scale_translate(body, 1.0, -body.vertex_centroid)
        return body
    raise DegenerateInput("could not build a full-dimensional random hull")
