import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mvlab import geometry as geo
from mvlab import mixed_volumes as mv
from mvlab.errors import (
    ArityMismatch,
    IllConditionedFit,
    IndexOutOfRange,
    OriginNotInterior,
)

from conftest import box, rand_body


def brute_box_mixed_area(a, b):
    # 2D boxes: V(A, B) = (a1 b2 + a2 b1) / 2, the bilinear coefficient of
    # Area((s A + t B)) = (s a1 + t b1)(s a2 + t b2).
    return (a[0] * b[1] + a[1] * b[0]) / 2

def brute_box_triple(rows):
    # axis boxes: Vol(sum t_i B_i) = prod_k (sum_i t_i s_ik), so the mixed
    # volume is the permanent of the side matrix over 3!.
    total = 0.0
    for perm in itertools.permutations(range(3)):
        total += np.prod([rows[i][perm[i]] for i in range(3)])
    return total / 6.0


# ---------------------------------------------------------------------------
# mixed volumes
# ---------------------------------------------------------------------------

def test_mixed_volume_2d_boxes():
    expected = brute_box_mixed_area((1, 1), (2, 1))
    assert expected == 1.5
    result = mv.mixed_volume([box(1, 1), box(2, 1)])
    assert result.value == pytest.approx(expected, rel=1e-12)
    assert result.method == "polarization"

def test_mixed_volume_3d_boxes_permanent():
    sides = [(1, 1, 1), (1, 2, 1), (1, 1, 3)]
    expected = brute_box_triple(sides)
    assert expected == pytest.approx(14 / 6)
    result = mv.mixed_volume([box(*s) for s in sides])
    assert result.value == pytest.approx(expected, rel=1e-12)

def test_mixed_volume_diagonal_is_volume():
    for dim, seed in [(2, 5), (3, 6)]:
        body = rand_body(dim, seed)
        assert mv.mixed_volume([body] * dim).value == pytest.approx(
            geo.volume(body), rel=1e-10)

def test_mixed_volume_arity():
    with pytest.raises(ArityMismatch):
        mv.mixed_volume([box(1, 1)])

def test_mixed_volume_symmetry_3d():
    bodies = [rand_body(3, s) for s in (41, 42, 43)]
    reference = mv.mixed_volume(bodies).value
    for perm in itertools.permutations(bodies):
        assert mv.mixed_volume(list(perm)).value == pytest.approx(reference, rel=1e-10)

@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]), st.floats(0.2, 5))
def test_mixed_volume_multilinear(seed, dim, c):
    a = rand_body(dim, seed)
    b = rand_body(dim, seed + 101)
    rest = [rand_body(dim, seed + 200 + j) for j in range(dim - 1)]
    left = mv.mixed_volume([geo.minkowski_sum(a, b)] + rest).value
    split = mv.mixed_volume([a] + rest).value + mv.mixed_volume([b] + rest).value
    assert left == pytest.approx(split, rel=1e-9)
    scaled = mv.mixed_volume([geo.scale_translate(a, c, [0] * dim)] + rest).value
    assert scaled == pytest.approx(c * mv.mixed_volume([a] + rest).value, rel=1e-9)

def test_mixed_volume_translation_invariant():
    bodies = [rand_body(3, s) for s in (51, 52, 53)]
    reference = mv.mixed_volume(bodies).value
    moved = [geo.scale_translate(bodies[0], 1.0, (0.7, -0.3, 2.1))] + bodies[1:]
    assert mv.mixed_volume(moved).value == pytest.approx(reference, rel=1e-9)

def test_mixed_volume_monotone_in_inclusion():
    for seed in range(5):
        small = rand_body(2, seed)
        big = geo.minkowski_sum(small, rand_body(2, seed + 60))
        # certify inclusion via support dominance on both facet-normal sets
        normals = np.vstack([small.facet_normals, big.facet_normals])
        assert np.all(geo.support_many(big, normals)
                      >= geo.support_many(small, normals) - 1e-12)
        other = rand_body(2, seed + 70)
        assert (mv.mixed_volume([small, other]).value
                <= mv.mixed_volume([big, other]).value + 1e-9)


# ---------------------------------------------------------------------------
# polynomial-fit oracle
# ---------------------------------------------------------------------------

def test_polyfit_matches_polarization():
    for dim in (2, 3):
        for seed in range(8):
            bodies = [rand_body(dim, 100 * dim + 10 * seed + j) for j in range(dim)]
            a = mv.mixed_volume(bodies).value
            b = mv.mixed_volume_polyfit(bodies)
            assert b.method == "polyfit"
            assert b.value == pytest.approx(a, rel=1e-6)

def test_polyfit_diagonal(unit_cube):
    assert mv.mixed_volume_polyfit([unit_cube] * 3).value == pytest.approx(1.0, rel=1e-9)

def test_polyfit_underdetermined_grid():
    with pytest.raises(IllConditionedFit):
        mv.mixed_volume_polyfit([box(1, 1), box(2, 1)], grid_points=1)


# ---------------------------------------------------------------------------
# mixed area measures
# ---------------------------------------------------------------------------

def test_square_surface_measure(unit_square):
    measure = mv.mixed_area_measure([unit_square])
    assert len(measure) == 4
    assert measure.total_mass == pytest.approx(4.0)
    h = geo.support_many(unit_square, measure.directions)
    assert float((h * measure.weights).sum()) / 2 == pytest.approx(1.0)

def test_cube_surface_measure(unit_cube):
    measure = mv.mixed_area_measure([unit_cube, unit_cube])
    assert len(measure) == 6
    assert np.allclose(measure.weights, 1.0)
    assert measure.total_mass == pytest.approx(geo.surface_area(unit_cube))

def test_segment_measure_2d():
    segment = geo._from_points(np.array([[0.0, 0.0], [3.0, 4.0]]), 2, True)
    measure = mv.mixed_area_measure([segment])
    assert len(measure) == 2
    assert np.allclose(measure.weights, 5.0)
    assert np.allclose(measure.directions[0], -measure.directions[1])

def test_measure_weights_nonnegative_random():
    for seed in range(10):
        measure = mv.mixed_area_measure([rand_body(3, seed), rand_body(3, seed + 7)])
        assert measure.weights.min() > 0

def test_representation_identity_random():
    # (1/n) sum h_{K_n} w over S(L_1..L_{n-1}) equals the polarization value
    for dim in (2, 3):
        for seed in range(10):
            bodies = [rand_body(dim, 300 + 20 * seed + j) for j in range(dim)]
            via_measure = mv.mixed_volume_via_measure(bodies)
            assert via_measure.method == "measure_representation"
            assert via_measure.value == pytest.approx(
                mv.mixed_volume(bodies).value, rel=1e-9)


# ---------------------------------------------------------------------------
# i-th surface measures
# ---------------------------------------------------------------------------

def test_surface_measure_i0_cube(unit_cube):
    measure = mv.surface_measure_i(unit_cube, 0)
    assert not measure.approximate
    assert measure.total_mass == pytest.approx(6.0)

def test_surface_measure_i1_2d_is_ball_measure():
    body = rand_body(2, 9)
    m = 128
    measure = mv.surface_measure_i(body, 1, m)
    assert measure.approximate
    ball = geo.ball_approx(2, m)
    assert measure.total_mass == pytest.approx(geo.surface_area(ball), rel=1e-12)

def test_surface_measure_index_range(unit_cube):
    with pytest.raises(IndexOutOfRange):
        mv.surface_measure_i(unit_cube, 3)


# ---------------------------------------------------------------------------
# quermassintegrals
# ---------------------------------------------------------------------------

def test_cube_quermassintegrals(unit_cube):
    # Steiner: Vol(cube + tB) = 1 + 6t + 3 pi t^2 + (4 pi/3) t^3
    #        = sum_i C(3,i) W_i t^i  ->  W = (1, 2, pi, 4 pi/3)
    expected = [1.0, 2.0, math.pi, 4 * math.pi / 3]
    for i, w in enumerate(expected):
        assert mv.quermassintegral(unit_cube, i) == pytest.approx(w, rel=1e-12)

def test_square_quermassintegrals(unit_square):
    assert mv.quermassintegral(unit_square, 0) == pytest.approx(1.0)
    assert mv.quermassintegral(unit_square, 1) == pytest.approx(2.0)
    assert mv.quermassintegral(unit_square, 2) == pytest.approx(math.pi)

def test_quermassintegral_w0_is_volume():
    body = rand_body(3, 77)
    assert mv.quermassintegral(body, 0) == pytest.approx(geo.volume(body), rel=1e-12)

def test_quermassintegral_index_range(unit_cube):
    with pytest.raises(IndexOutOfRange):
        mv.quermassintegral(unit_cube, 4)

def test_ball_path_converges_2d():
    body = rand_body(2, 13)
    exact = mv.quermassintegral(body, 1)
    errs = []
    for m in (64, 128, 256):
        errs.append(abs(mv.quermassintegral_ball_path(body, 1, m) - exact) / exact)
    # relative error C/m^2: quarters when m doubles, within generator noise
    assert errs[0] > errs[1] > errs[2]
    assert errs[1] < errs[0] / 2
    assert errs[2] < errs[1] / 2

def test_ball_path_converges_3d_cube(unit_cube):
    for i in (1, 2):
        exact = mv.quermassintegral(unit_cube, i)
        errs = [abs(mv.quermassintegral_ball_path(unit_cube, i, m) - exact) / exact
                for m in (256, 1024)]
        assert errs[1] < errs[0]
        assert errs[1] < 5e-3


# ---------------------------------------------------------------------------
# mixed and p-mixed quermassintegrals
# ---------------------------------------------------------------------------

def test_mixed_quermassintegral_i0_is_mixed_volume():
    k, l = rand_body(3, 81), rand_body(3, 82)
    assert mv.mixed_quermassintegral(k, l, 0) == pytest.approx(
        mv.mixed_volume([k, k, l]).value, rel=1e-10)

def test_mixed_quermassintegral_diagonal_exact_i0(unit_cube):
    assert mv.mixed_quermassintegral(unit_cube, unit_cube, 0) == pytest.approx(
        mv.quermassintegral(unit_cube, 0), rel=1e-12)

def test_mixed_quermassintegral_linear_in_dilation():
    k, l = rand_body(2, 83), rand_body(2, 84)
    big = geo.scale_translate(l, 2.5, [0, 0])
    assert mv.mixed_quermassintegral(k, big, 0) == pytest.approx(
        2.5 * mv.mixed_quermassintegral(k, l, 0), rel=1e-12)

def test_p_mixed_quermassintegral_reductions():
    k, l = rand_body(3, 85), rand_body(3, 86)
    assert mv.p_mixed_quermassintegral(k, l, 1.0, 0) == pytest.approx(
        mv.mixed_quermassintegral(k, l, 0), rel=1e-12)
    assert mv.p_mixed_quermassintegral(k, k, 3.0, 0) == pytest.approx(
        mv.quermassintegral(k, 0), rel=1e-12)
    c = 1.8
    assert mv.p_mixed_quermassintegral(k, geo.scale_translate(k, c, [0, 0, 0]), 2.0, 0) \
        == pytest.approx(c ** 2 * mv.quermassintegral(k, 0), rel=1e-12)

def test_p_mixed_quermassintegral_needs_origin(unit_cube):
    with pytest.raises(OriginNotInterior):
        mv.p_mixed_quermassintegral(unit_cube, unit_cube, 2.0, 0)
