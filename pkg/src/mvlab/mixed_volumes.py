"""Mixed volumes, atomic mixed surface-area measures, quermassintegrals.

The authoritative mixed-volume route is the polarization (inclusion-
exclusion) identity over volumes of Minkowski sub-sums; the volume-polynomial
fit is kept as an independent oracle with its own conditioning diagnostics.
Surface-area measures of polytopes are finitely supported on facet normals,
with weights given by mixed face volumes in the facet hyperplane.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull

from . import geometry as geo
from .errors import (
    ArityMismatch,
    DegenerateInput,
    DimensionMismatch,
    IllConditionedFit,
    IndexOutOfRange,
    NonpositiveSupport,
    OriginNotInterior,
)
from .geometry import Body

# Atoms lighter than this fraction of the total mass are dropped; directions
# closer than the merge tolerance are fused (Minkowski sums of near-parallel
# facets produce such near-duplicates).
ATOM_PRUNE_REL = 1e-14
ATOM_MERGE_TOL = 1e-10

DEFAULT_BALL_M = 1024


@dataclass(frozen=True)
class AtomicSphericalMeasure:
    """Finitely supported positive Borel measure on the unit sphere."""

    dim: int
    directions: np.ndarray  # (k, dim) unit rows, lexicographically sorted
    weights: np.ndarray     # (k,) strictly positive
    approximate: bool = False

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def __len__(self) -> int:
        return len(self.weights)

    def atoms(self):
        return zip(self.directions, self.weights)


def make_measure(dim: int, directions, weights, approximate: bool = False) -> AtomicSphericalMeasure:
    """Canonicalize atoms: merge near-duplicate directions, prune dust, sort."""
    u = np.asarray(directions, dtype=float).reshape(-1, dim)
    w = np.asarray(weights, dtype=float).reshape(-1)
    if len(u) != len(w):
        raise ArityMismatch("directions and weights differ in length")
    total = float(np.abs(w).sum())
    if total > 0 and w.min() < -ATOM_PRUNE_REL * total:
        raise NonpositiveSupport(f"negative atom weight {w.min()}")

    order = geo._lexsort_rows(u)
    u, w = u[order], w[order]
    merged_u, merged_w = [], []
    for row, weight in zip(u, w):
        if merged_u and np.abs(row - merged_u[-1]).max() < ATOM_MERGE_TOL:
            tot = merged_w[-1] + weight
            if tot > 0:
                mean = (merged_u[-1] * merged_w[-1] + row * weight) / tot
                merged_u[-1] = mean / np.linalg.norm(mean)
            merged_w[-1] = tot
        else:
            merged_u.append(row.copy())
            merged_w.append(float(weight))
    u = np.array(merged_u).reshape(-1, dim)
    w = np.array(merged_w)
    keep = w > ATOM_PRUNE_REL * max(total, 1e-300)
    u, w = u[keep], w[keep]
    order = geo._lexsort_rows(u) if len(u) else np.arange(0)
    u, w = u[order], w[order]
    u.setflags(write=False)
    w.setflags(write=False)
    return AtomicSphericalMeasure(dim, u, w, approximate)


@dataclass(frozen=True)
class MixedVolumeResult:
    """Mixed-volume value with the route that produced it.

    ``condition`` is the route's diagnostic: the largest sub-sum volume for
    polarization (cancellation scale), the max fit residual for the
    polynomial fit, and the measure mass for the representation route.
    """

    value: float
    method: str  # polarization | polyfit | measure_representation
    condition: float


def _check_family(bodies, expected: int):
    if not bodies:
        raise ArityMismatch("no bodies given")
    dim = bodies[0].dim
    for b in bodies:
        if b.dim != dim:
            raise DimensionMismatch("all bodies must share one ambient dimension")
    if len(bodies) != expected:
        raise ArityMismatch(f"expected {expected} bodies in R^{dim}, got {len(bodies)}")
    return dim


# ---------------------------------------------------------------------------
# mixed volumes: polarization and polynomial-fit oracle
# ---------------------------------------------------------------------------

def mixed_volume(bodies) -> MixedVolumeResult:
    """V(K_1, ..., K_n) by inclusion-exclusion over Minkowski sub-sums:

        V = (1/n!) * sum over nonempty S of (-1)^(n+|S|) Vol(sum of K_i, i in S)

    Symmetric, multilinear, and translation invariant; V(K, ..., K) = Vol(K).
    """
    dim = _check_family(bodies, bodies[0].dim)
    n = dim
    total = 0.0
    worst = 0.0
    for size in range(1, n + 1):
        sign = (-1) ** (n + size)
        for subset in itertools.combinations(range(n), size):
            body = geo.minkowski_combination([(bodies[i], 1.0) for i in subset])
            v = geo.volume(body)
            worst = max(worst, v)
            total += sign * v
    return MixedVolumeResult(total / math.factorial(n), "polarization", worst)

def _monomial_exponents(n: int):
    out = []
    for combo in itertools.combinations_with_replacement(range(n), n):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out

def mixed_volume_polyfit(bodies, grid_points: int = 3) -> MixedVolumeResult:
    """Independent oracle: fit Vol(l_1 K_1 + ... + l_n K_n) on a grid in
    (0, 1]^n and read off the coefficient of l_1 * ... * l_n divided by n!.

    Raises IllConditionedFit when the grid has fewer samples than monomials
    or the residual exceeds 1e-8 of the largest sampled volume.
    """
    dim = _check_family(bodies, bodies[0].dim)
    n = dim
    exponents = _monomial_exponents(n)
    lam = [(j + 1) / grid_points for j in range(grid_points)]
    samples = list(itertools.product(lam, repeat=n))
    if len(samples) < len(exponents):
        raise IllConditionedFit(
            f"{len(samples)} samples cannot determine {len(exponents)} monomials")
    rows, vols = [], []
    for weights in samples:
        rows.append([np.prod([w ** e for w, e in zip(weights, exp)]) for exp in exponents])
        vols.append(geo.volume(geo.minkowski_combination(list(zip(bodies, weights)))))
    a = np.array(rows)
    y = np.array(vols)
    coeffs, *_ = np.linalg.lstsq(a, y, rcond=None)
    residual = float(np.abs(a @ coeffs - y).max())
    if residual > 1e-8 * max(y.max(), 1e-300):
        raise IllConditionedFit(f"fit residual {residual} too large")
    value = float(coeffs[exponents.index((1,) * n)]) / math.factorial(n)
    return MixedVolumeResult(value, "polyfit", residual)

def mixed_volume_via_measure(bodies) -> MixedVolumeResult:
    """(1/n) * sum of h_{K_n} over the mixed area measure of the first n-1
    bodies -- the integral representation used everywhere downstream."""
    dim = _check_family(bodies, bodies[0].dim)
    measure = mixed_area_measure(bodies[:-1])
    h = geo.support_many(bodies[-1], measure.directions)
    value = float((h * measure.weights).sum()) / dim
    return MixedVolumeResult(value, "measure_representation", measure.total_mass)


# ---------------------------------------------------------------------------
# mixed surface-area measures
# ---------------------------------------------------------------------------

def _face_vertices(body: Body, u: np.ndarray) -> np.ndarray:
    h = geo.support(body, u)
    mask = body.vertices @ u >= h - geo.FACE_TOL * (1.0 + abs(h))
    return body.vertices[mask]

def _poly_area_2d(pts: np.ndarray) -> float:
    if len(pts) < 3 or geo._affine_rank(pts) < 2:
        return 0.0
    return float(ConvexHull(pts).volume)

def _mixed_face_area(face1: np.ndarray, face2: np.ndarray) -> float:
    a1, a2 = _poly_area_2d(face1), _poly_area_2d(face2)
    both = (face1[:, None, :] + face2[None, :, :]).reshape(-1, 2)
    return 0.5 * (_poly_area_2d(both) - a1 - a2)

def mixed_area_measure(bodies) -> AtomicSphericalMeasure:
    """S(K_1, ..., K_{n-1}; .) for polytopes: atoms sit at the facet normals
    of K_1 + ... + K_{n-1}; the weight at u is the mixed (n-1)-volume of the
    supporting faces in the hyperplane orthogonal to u.

    2D (one body): edge normals weighted by edge lengths; a segment yields
    two opposite atoms carrying its length. 3D (two bodies): mixed areas
    (Area(F1+F2) - Area(F1) - Area(F2)) / 2 of the face pair at each normal.
    """
    if not bodies:
        raise ArityMismatch("mixed area measure needs n-1 bodies")
    dim = bodies[0].dim
    _check_family(bodies, dim - 1)

    if dim == 2:
        body = bodies[0]
        if body.full_dim:
            dirs = [f.normal for f in body.facets]
            lens = [geo.facet_area(body, f) for f in body.facets]
            return make_measure(2, dirs, lens)
        if body.n_vertices == 2:
            e = body.vertices[1] - body.vertices[0]
            length = float(np.linalg.norm(e))
            n = np.array([e[1], -e[0]]) / length
            return make_measure(2, [n, -n], [length, length])
        raise DegenerateInput("2D surface measure needs a polygon or a segment")

    l1, l2 = bodies
    if not (l1.full_dim and l2.full_dim):
        raise DegenerateInput("3D mixed area measure needs full-dimensional bodies")
    total = geo.minkowski_sum(l1, l2)
    dirs, weights = [], []
    for f in total.facets:
        u = f.normal_array
        b1, b2 = geo._orthobasis(u)
        frame = np.column_stack([b1, b2])
        f1 = _face_vertices(l1, u) @ frame
        f2 = _face_vertices(l2, u) @ frame
        dirs.append(u)
        weights.append(_mixed_face_area(f1, f2))
    return make_measure(3, dirs, weights)

def surface_measure_i(body: Body, i: int, m: int = DEFAULT_BALL_M) -> AtomicSphericalMeasure:
    """i-th surface-area measure S_i(K, .): the mixed area measure with i
    slots holding the ball. i = 0 is exact; i >= 1 substitutes the inscribed
    polytopal ball at resolution m and is flagged approximate."""
    dim = body.dim
    if not 0 <= i <= dim - 1:
        raise IndexOutOfRange(f"i must be in [0, {dim - 1}], got {i}")
    if i == 0:
        return mixed_area_measure([body] * (dim - 1))
    ball = geo.ball_approx(dim, m)
    measure = mixed_area_measure([body] * (dim - 1 - i) + [ball] * i)
    return AtomicSphericalMeasure(dim, measure.directions, measure.weights, approximate=True)


# ---------------------------------------------------------------------------
# quermassintegrals
# ---------------------------------------------------------------------------

def quermassintegral(body: Body, i: int) -> float:
    """W_i(K) in closed form.

    2D: area, perimeter/2, pi. 3D: volume, surface/3, M/3 with the mean-width
    integral M = (1/2) * sum of edge length * exterior dihedral angle, and
    4*pi/3.
    """
    dim = body.dim
    if not 0 <= i <= dim:
        raise IndexOutOfRange(f"i must be in [0, {dim}], got {i}")
    if dim == 2:
        if i == 0:
            return geo.volume(body)
        if i == 1:
            return geo.surface_area(body) / 2.0
        return math.pi
    if i == 0:
        return geo.volume(body)
    if i == 1:
        return geo.surface_area(body) / 3.0
    if i == 2:
        m = 0.5 * sum(length * angle for length, angle in geo.edge_skeleton(body))
        return m / 3.0
    return 4.0 * math.pi / 3.0

def quermassintegral_ball_path(body: Body, i: int, m: int = DEFAULT_BALL_M) -> float:
    """W_i(K) through the generic route: the mixed volume of K with i copies
    of the inscribed polytopal ball. Converges to the closed form from below
    as m grows; used as the approximation-error probe."""
    dim = body.dim
    if not 0 <= i <= dim:
        raise IndexOutOfRange(f"i must be in [0, {dim}], got {i}")
    ball = geo.ball_approx(dim, m)
    return mixed_volume([body] * (dim - i) + [ball] * i).value

def mixed_quermassintegral(body: Body, other: Body, i: int, m: int = DEFAULT_BALL_M) -> float:
    """W_i(K, L) = (1/n) * sum of h_L over S_i(K, .)."""
    if body.dim != other.dim:
        raise DimensionMismatch(f"dim {body.dim} vs {other.dim}")
    measure = surface_measure_i(body, i, m)
    h = geo.support_many(other, measure.directions)
    return float((h * measure.weights).sum()) / body.dim

def p_mixed_quermassintegral(body: Body, other: Body, p: float, i: int,
                             m: int = DEFAULT_BALL_M) -> float:
    """W_{p,i}(K, L) = (1/n) * sum of h_L^p h_K^(1-p) over S_i(K, .).

    p = 1 reduces to the mixed quermassintegral; i = 0 is the L_p mixed
    volume V_p(K, L). Both bodies must contain the origin strictly.
    """
    if body.dim != other.dim:
        raise DimensionMismatch(f"dim {body.dim} vs {other.dim}")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if not 0 <= i <= body.dim - 1:
        raise IndexOutOfRange(f"i must be in [0, {body.dim - 1}], got {i}")
    measure = surface_measure_i(body, i, m)
    h_k = geo.support_many(body, measure.directions)
    h_l = geo.support_many(other, measure.directions)
    if h_k.min() <= 0 or h_l.min() <= 0:
        raise OriginNotInterior("p-quermassintegral needs origin-interior bodies")
    return float((h_l ** p * h_k ** (1.0 - p) * measure.weights).sum()) / body.dim
