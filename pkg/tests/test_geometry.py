import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mvlab import geometry as geo
from mvlab.errors import (
    DegenerateInput,
    DimensionMismatch,
    NonpositiveScale,
    OriginNotInterior,
    UnsupportedDimension,
)

from conftest import box, rand_body


# ---------------------------------------------------------------------------
# hull construction
# ---------------------------------------------------------------------------

def test_hull_drops_interior_points():
    body = geo.hull([(0, 0), (1, 0), (0, 1), (0.2, 0.2)], 2)
    assert body.n_vertices == 3

def test_hull_cube_structure():
    body = geo.hull(list(itertools.product([0.0, 1.0], repeat=3)), 3)
    assert body.n_vertices == 8
    assert len(body.facets) == 6

def test_hull_collinear_raises():
    with pytest.raises(DegenerateInput):
        geo.hull([(0, 0), (1, 0), (2, 0)], 2)

def test_hull_flat_3d_raises():
    with pytest.raises(DegenerateInput):
        geo.hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)], 3)

def test_hull_bad_dim():
    with pytest.raises(UnsupportedDimension):
        geo.hull([(0,) * 4] * 5, 4)

def test_facet_invariants():
    for dim, seed in [(2, 1), (2, 2), (3, 3), (3, 4)]:
        body = rand_body(dim, seed)
        for f in body.facets:
            n = f.normal_array
            assert abs(np.linalg.norm(n) - 1) < 1e-12
            prods = body.vertices @ n
            assert prods.max() <= f.offset + 1e-9
            own = body.vertices[list(f.vertex_ids)] @ n
            assert np.allclose(own, f.offset, atol=1e-9)

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_hull_idempotent(seed, dim):
    body = rand_body(dim, seed)
    again = geo.hull(body.vertices, dim)
    assert np.array_equal(body.vertices, again.vertices)


# ---------------------------------------------------------------------------
# support function
# ---------------------------------------------------------------------------

def test_support_values(centered_square):
    assert geo.support(centered_square, (1, 0)) == pytest.approx(1.0)
    r = math.sqrt(2) / 2
    assert geo.support(centered_square, (r, r)) == pytest.approx(math.sqrt(2))
    assert geo.support(box(1, 1), (-1, 0)) == pytest.approx(0.0)

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_support_additive_under_minkowski_sum(seed, dim):
    a = rand_body(dim, seed)
    b = rand_body(dim, seed + 7919)
    total = geo.minkowski_sum(a, b)
    rng = np.random.default_rng(seed)
    u = rng.normal(size=(100, dim))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    ha, hb = geo.support_many(a, u), geo.support_many(b, u)
    err = np.abs(geo.support_many(total, u) - ha - hb)
    assert np.all(err <= 1e-9 * (1 + np.abs(ha) + np.abs(hb)))


# ---------------------------------------------------------------------------
# Minkowski sums
# ---------------------------------------------------------------------------

def test_minkowski_sum_boxes(unit_square):
    total = geo.minkowski_sum(unit_square, unit_square)
    assert geo.volume(total) == pytest.approx(4.0)

def test_minkowski_sum_of_segments_is_square():
    s1 = geo._from_points(np.array([[0.0, 0], [1, 0]]), 2, True)
    s2 = geo._from_points(np.array([[0.0, 0], [0, 1]]), 2, True)
    total = geo.minkowski_sum(s1, s2)
    assert total.n_vertices == 4
    assert geo.volume(total) == pytest.approx(1.0)

def test_minkowski_sum_with_origin_is_identity(unit_square):
    origin = geo._from_points(np.zeros((1, 2)), 2, True)
    total = geo.minkowski_sum(unit_square, origin)
    assert np.allclose(total.vertices, unit_square.vertices)

def test_minkowski_dim_mismatch(unit_square, unit_cube):
    with pytest.raises(DimensionMismatch):
        geo.minkowski_sum(unit_square, unit_cube)


# ---------------------------------------------------------------------------
# scaling, volume
# ---------------------------------------------------------------------------

def test_scale_translate_support(unit_square):
    moved = geo.scale_translate(unit_square, 3, (1, 1))
    assert geo.support(moved, (1, 0)) == pytest.approx(4.0)

def test_scale_identity(unit_square):
    same = geo.scale_translate(unit_square, 1, (0, 0))
    assert np.allclose(same.vertices, unit_square.vertices)

def test_scale_rejects_nonpositive(unit_square):
    with pytest.raises(NonpositiveScale):
        geo.scale_translate(unit_square, 0.0, (0, 0))

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]),
       st.floats(0.1, 10), st.floats(-5, 5))
def test_volume_homogeneous_and_translation_invariant(seed, dim, c, shift):
    body = rand_body(dim, seed)
    v = geo.volume(body)
    scaled = geo.scale_translate(body, c, [0] * dim)
    assert geo.volume(scaled) == pytest.approx(c ** dim * v, rel=1e-9)
    moved = geo.scale_translate(body, 1.0, [shift] * dim)
    assert geo.volume(moved) == pytest.approx(v, rel=1e-9)

def test_volume_examples():
    assert geo.volume(box(2, 2, 2)) == pytest.approx(8.0)
    assert geo.volume(geo.hull([(0, 0), (1, 0), (0, 1)], 2)) == pytest.approx(0.5)
    segment = geo._from_points(np.array([[0.0, 0], [1, 1]]), 2, True)
    assert geo.volume(segment) == 0.0
    assert not segment.full_dim


# ---------------------------------------------------------------------------
# Firey sums
# ---------------------------------------------------------------------------

def test_firey_p1_contains_minkowski_sum_and_converges():
    a = rand_body(2, 11)
    b = rand_body(2, 12)
    exact = geo.minkowski_sum(a, b)
    last = None
    for m in (64, 128, 256, 512):
        approx = geo.firey_sum_approx(a, b, 1.0, m)
        u = geo.direction_grid(2, m)
        gap = geo.support_many(approx, u) - geo.support_many(exact, u)
        assert gap.min() >= -1e-9
        d = geo.hausdorff_distance(approx, exact)
        if last is not None:
            assert d < last
        last = d

def test_firey_self_sum_is_dilate():
    body = rand_body(3, 21)
    for p in (1.0, 2.0, 4.0):
        approx = geo.firey_sum_approx(body, body, p, 512)
        target = geo.scale_translate(body, 2 ** (1.0 / p), [0, 0, 0])
        # outer approximant: contains the dilate, within grid resolution
        assert geo.volume(approx) >= geo.volume(target) - 1e-9
        u = geo.direction_grid(3, 512)
        assert np.allclose(geo.support_many(approx, u), geo.support_many(target, u),
                           atol=1e-9)

def test_firey_m_minimum():
    body = rand_body(2, 5)
    with pytest.raises(ValueError):
        geo.firey_sum_approx(body, body, 2.0, 4)

def test_firey_requires_origin_interior(unit_square):
    # [0,1]^2 has the origin on its boundary
    other = rand_body(2, 3)
    with pytest.raises(OriginNotInterior):
        geo.firey_sum_approx(unit_square, other, 2.0, 64)


# ---------------------------------------------------------------------------
# ball approximants
# ---------------------------------------------------------------------------

def test_ball_2d_small_is_diamond():
    body = geo.ball_approx(2, 4)
    expected = np.array([[-1.0, 0], [0, -1], [0, 1], [1, 0]])
    assert np.allclose(body.vertices, expected, atol=1e-12)
    assert geo.volume(body) == pytest.approx(2.0)

@pytest.mark.parametrize("m", [4, 8, 64])
def test_ball_2d_area_formula(m):
    assert geo.volume(geo.ball_approx(2, m)) == pytest.approx(
        m / 2 * math.sin(2 * math.pi / m), abs=1e-12)

def test_ball_2d_area_converges_quadratically():
    errs = [math.pi - geo.volume(geo.ball_approx(2, m)) for m in (64, 128, 256)]
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.05)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.05)

def test_ball_3d_six_is_octahedron():
    body = geo.ball_approx(3, 6)
    assert body.n_vertices == 6
    assert geo.volume(body) == pytest.approx(4.0 / 3.0)

def test_ball_minimum_directions():
    with pytest.raises(ValueError):
        geo.ball_approx(2, 2)
    with pytest.raises(ValueError):
        geo.ball_approx(3, 5)


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def test_generate_box_example():
    body = box(1, 2)
    assert geo.volume(body) == pytest.approx(2.0)
    assert geo.support(body, (1, 0)) == pytest.approx(1.0)
    assert geo.support(body, (0, 1)) == pytest.approx(2.0)

def test_generate_symmetric_diamond():
    spec = geo.BodyGenSpec(dim=2, kind="symmetric_hull", points=[(1, 0), (0, 1)])
    body = geo.generate(spec)
    assert body.n_vertices == 4
    assert geo.volume(body) == pytest.approx(2.0)

def test_generate_deterministic():
    spec = geo.BodyGenSpec(dim=3, kind="random_hull", seed=99)
    a, b = geo.generate(spec), geo.generate(spec)
    assert np.array_equal(a.vertices, b.vertices)

def test_generate_symmetric_is_symmetric():
    body = rand_body(3, 17, symmetric=True)
    flipped = -body.vertices
    flipped = flipped[geo._lexsort_rows(flipped)]
    assert np.allclose(flipped, body.vertices, atol=1e-12)

def test_generate_origin_interior():
    for seed in range(20):
        assert rand_body(2, seed).origin_interior
        assert rand_body(3, seed).origin_interior


# ---------------------------------------------------------------------------
# dilate detection and Hausdorff distance
# ---------------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]), st.floats(0.1, 10))
def test_detect_dilate_recovers_scale_and_shift(seed, dim, c):
    body = rand_body(dim, seed)
    t = np.linspace(-1, 1, dim)
    found = geo.detect_dilate(geo.scale_translate(body, c, t), body)
    assert found is not None
    c_hat, t_hat = found
    assert c_hat == pytest.approx(c, rel=1e-9)
    assert np.allclose(t_hat, t, atol=1e-9 * max(1.0, c))

def test_detect_dilate_rejects_different_shapes():
    square = geo.hull([(-1, -1), (1, -1), (1, 1), (-1, 1)], 2)
    tri = geo.hull([(0, 0), (1, 0), (0, 1)], 2)
    assert geo.detect_dilate(square, tri) is None

def test_detect_dilate_identity(centered_square):
    c, t = geo.detect_dilate(centered_square, centered_square)
    assert c == pytest.approx(1.0)
    assert np.allclose(t, 0.0, atol=1e-12)

def test_hausdorff_basics(unit_square):
    assert geo.hausdorff_distance(unit_square, unit_square) == 0.0
    big = box(2, 2)
    # sup-norm of the support difference peaks at the diagonal direction
    assert geo.hausdorff_distance(unit_square, big) == pytest.approx(math.sqrt(2), rel=1e-6)
    a, b = rand_body(2, 31), rand_body(2, 32)
    assert geo.hausdorff_distance(a, b) == geo.hausdorff_distance(b, a)
