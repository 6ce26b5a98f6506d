"""State space construction, metric, sampling, and geodesic tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrrt.statespace import (SO2, Euclidean, StateSpace, TWO_PI, compose,
                             interval, wrap_angle)


def mixed_space():
    """Position block, weighted rotation, one joint: the shape a floating
    robot produces."""
    return StateSpace([
        Euclidean(((-2.0, 2.0), (-1.0, 1.0))),
        SO2(0.5),
        Euclidean(((-math.pi, math.pi),)),
    ])


# ---------------------------------------------------------------------------
# wrapping


@given(st.floats(-1e6, 1e6))
def test_wrap_angle_range(theta):
    w = wrap_angle(theta)
    assert -math.pi <= w < math.pi


@given(st.floats(-10.0, 10.0), st.integers(-3, 3))
def test_wrap_angle_periodic(theta, k):
    assert wrap_angle(theta + TWO_PI * k) == pytest.approx(wrap_angle(theta),
                                                           abs=1e-9)


def test_wrap_angle_half_open():
    assert wrap_angle(math.pi) == -math.pi
    assert wrap_angle(-math.pi) == -math.pi
    assert wrap_angle(0.0) == 0.0


# ---------------------------------------------------------------------------
# construction and validation


def test_factor_validation():
    with pytest.raises(ValueError):
        Euclidean(((1.0, 1.0),))
    with pytest.raises(ValueError):
        Euclidean(())
    with pytest.raises(ValueError):
        SO2(0.0)
    with pytest.raises(ValueError):
        SO2(-1.0)
    with pytest.raises(ValueError):
        StateSpace([])


def test_interval_helper():
    f = interval(-1.0, 1.0, 3)
    assert f.dim == 3
    assert f.bounds == ((-1.0, 1.0),) * 3


def test_space_layout():
    space = mixed_space()
    assert space.dim == 4
    assert space.wrap_mask.tolist() == [False, False, True, False]
    assert space.weights.tolist() == [1.0, 1.0, 0.5, 1.0]
    assert space.lo[2] == -math.pi and space.hi[2] == math.pi


def test_diameter_mixes_spans_and_weights():
    space = mixed_space()
    # Euclidean spans 4 and 2 and 2*pi; the rotation contributes only half
    # a turn (pi) scaled by its weight.
    expect = math.sqrt(4.0**2 + 2.0**2 + (0.5 * math.pi) ** 2 + TWO_PI**2)
    assert space.diameter == pytest.approx(expect)


def test_make_state_wraps_and_validates():
    space = mixed_space()
    x = space.make_state([0.0, 0.0, math.pi, 0.0])
    assert x[2] == -math.pi  # pi wraps to the half-open boundary
    x = space.make_state([2.0 + 1e-12, 0.0, 0.0, 0.0])
    assert x[0] <= 2.0  # boundary overshoot within atol clamps
    with pytest.raises(ValueError):
        space.make_state([2.5, 0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        space.make_state([0.0, 0.0, 0.0])  # wrong dimension


def test_contains():
    space = mixed_space()
    assert space.contains(space.make_state([0.1, -0.5, 3.0, 1.0]))
    assert not space.contains(np.array([5.0, 0.0, 0.0, 0.0]))
    assert not space.contains(np.zeros(3))


# ---------------------------------------------------------------------------
# sampling


def test_sampling_respects_bounds():
    space = mixed_space()
    rng = np.random.default_rng(42)
    pts = space.sample_batch(rng, 2000)
    assert pts.shape == (2000, 4)
    assert (pts >= space.lo).all() and (pts < space.hi).all()


def test_sampling_euclidean_uniform_chi_square():
    # Quadrant counts of the position block against a fair multinomial.
    space = mixed_space()
    rng = np.random.default_rng(7)
    pts = space.sample_batch(rng, 40_000)
    qx = pts[:, 0] > 0.0
    qy = pts[:, 1] > 0.0
    counts = np.array([[(qx & qy).sum(), (qx & ~qy).sum()],
                       [(~qx & qy).sum(), (~qx & ~qy).sum()]]).reshape(-1)
    expected = 10_000.0
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    # 3 dof; chi2 > 16.3 has p < 0.001
    assert chi2 < 16.3


def test_sampling_angle_uniform_resultant():
    # The mean resultant vector of uniform angles shrinks like 1/sqrt(n).
    space = mixed_space()
    rng = np.random.default_rng(3)
    theta = space.sample_batch(rng, 100_000)[:, 2]
    resultant = math.hypot(float(np.cos(theta).mean()),
                           float(np.sin(theta).mean()))
    assert resultant < 0.01


# ---------------------------------------------------------------------------
# metric


def test_distance_wraps_shortest_arc():
    space = StateSpace([SO2(1.0)])
    a = space.make_state([-3.0])
    b = space.make_state([3.0])
    # the short way crosses the pi boundary
    assert space.distance(a, b) == pytest.approx(TWO_PI - 6.0)


def test_distance_weighting():
    space = StateSpace([SO2(0.5)])
    a = space.make_state([0.0])
    b = space.make_state([1.0])
    assert space.distance(a, b) == pytest.approx(0.5)


def test_metric_axioms_sampled():
    space = mixed_space()
    rng = np.random.default_rng(11)
    A = space.sample_batch(rng, 400)
    B = space.sample_batch(rng, 400)
    C = space.sample_batch(rng, 400)
    for a, b, c in zip(A, B, C):
        dab = space.distance(a, b)
        dba = space.distance(b, a)
        assert dab >= 0.0
        assert dab == pytest.approx(dba, rel=1e-12)
        assert space.distance(a, a) == 0.0
        assert dab <= space.distance(a, c) + space.distance(c, b) + 1e-9


def test_squared_distances_matches_distance():
    space = mixed_space()
    rng = np.random.default_rng(5)
    pts = space.sample_batch(rng, 300)
    x = space.sample(rng)
    d2 = space.squared_distances(pts.copy(), x)
    ref = np.array([space.distance(p, x) ** 2 for p in pts])
    np.testing.assert_allclose(d2, ref, rtol=1e-10, atol=1e-12)


# ---------------------------------------------------------------------------
# geodesics


def test_interpolate_midpoint_through_wrap():
    # Independently derived: the shortest arc from -3 to +3 passes through
    # the boundary, and its midpoint lands exactly on -pi after wrapping.
    space = StateSpace([SO2(1.0)])
    a = space.make_state([-3.0])
    b = space.make_state([3.0])
    mid = space.interpolate(a, b, 0.5)
    assert mid[0] == -math.pi


@given(st.floats(0.0, 1.0))
@settings(max_examples=40)
def test_interpolate_proportional(t):
    space = mixed_space()
    rng = np.random.default_rng(17)
    a = space.sample(rng)
    b = space.sample(rng)
    x = space.interpolate(a, b, t)
    assert space.distance(a, x) == pytest.approx(t * space.distance(a, b),
                                                 abs=1e-9)


def test_interpolate_path_endpoints_exact():
    space = mixed_space()
    rng = np.random.default_rng(23)
    a = space.sample(rng)
    b = space.sample(rng)
    pts = space.interpolate_path(a, b, 7)
    assert pts.shape == (7, 4)
    assert np.array_equal(pts[0], a)
    assert np.array_equal(pts[-1], b)
    gaps = [space.distance(p, q) for p, q in zip(pts[:-1], pts[1:])]
    assert max(gaps) == pytest.approx(space.distance(a, b) / 6.0, rel=1e-6)


def test_steer_reaches_goal_bitwise():
    space = mixed_space()
    rng = np.random.default_rng(29)
    a = space.sample(rng)
    b = space.sample(rng)
    x, moved = space.steer(a, b, 1e9)
    assert np.array_equal(x, b)
    assert moved == pytest.approx(space.distance(a, b))


def test_steer_caps_step():
    space = mixed_space()
    rng = np.random.default_rng(31)
    a = space.sample(rng)
    b = space.sample(rng)
    step = 0.25 * space.distance(a, b)
    x, moved = space.steer(a, b, step)
    assert moved == pytest.approx(step)
    assert space.distance(a, x) == pytest.approx(step, abs=1e-9)
    # steering lies on the geodesic: moving on from x to b covers the rest
    assert space.distance(a, b) == pytest.approx(
        space.distance(a, x) + space.distance(x, b), abs=1e-9)


# ---------------------------------------------------------------------------
# per-coordinate Euclidean weights


def weighted_space():
    """Joint block whose coordinates move different amounts of mechanism,
    the shape an articulated arm produces."""
    return StateSpace([
        Euclidean(((-1.0, 1.0), (-1.0, 1.0)), (2.0, 0.5)),
        SO2(0.5),
    ])


def test_weighted_factor_validation():
    with pytest.raises(ValueError):
        Euclidean(((0.0, 1.0),), (1.0, 2.0))  # length mismatch
    with pytest.raises(ValueError):
        Euclidean(((0.0, 1.0),), (0.0,))  # weights must be positive
    with pytest.raises(ValueError):
        Euclidean(((0.0, 1.0),), (-1.0,))


def test_weighted_space_layout():
    space = weighted_space()
    assert space.weights.tolist() == [2.0, 0.5, 0.5]
    assert space.wrap_mask.tolist() == [False, False, True]


def test_weighted_distance_scales_coordinates():
    space = weighted_space()
    a = space.make_state([0.0, 0.0, 0.0])
    b = space.make_state([0.3, 0.0, 0.0])
    assert space.distance(a, b) == pytest.approx(0.6)
    c = space.make_state([0.0, 0.4, 0.0])
    assert space.distance(a, c) == pytest.approx(0.2)
    d = space.make_state([0.3, 0.4, 0.0])
    assert space.distance(a, d) == pytest.approx(math.hypot(0.6, 0.2))


def test_weighted_diameter():
    space = weighted_space()
    expect = math.sqrt((2.0 * 2.0) ** 2 + (0.5 * 2.0) ** 2
                       + (0.5 * math.pi) ** 2)
    assert space.diameter == pytest.approx(expect)


def test_weighted_steer_caps_metric_distance():
    space = weighted_space()
    a = space.make_state([0.0, 0.0, 0.0])
    b = space.make_state([1.0, 0.0, 0.0])  # metric distance 2.0
    x, moved = space.steer(a, b, 0.5)
    assert moved == pytest.approx(0.5)
    assert x[0] == pytest.approx(0.25)  # a quarter of the coordinate gap
    assert space.distance(a, x) == pytest.approx(0.5, abs=1e-12)


def test_weighted_squared_distances_matches_distance():
    space = weighted_space()
    rng = np.random.default_rng(13)
    pts = space.sample_batch(rng, 200)
    x = space.sample(rng)
    d2 = space.squared_distances(pts.copy(), x)
    ref = np.array([space.distance(p, x) ** 2 for p in pts])
    np.testing.assert_allclose(d2, ref, rtol=1e-10, atol=1e-12)


def test_slice_carries_weight_subsets():
    space = weighted_space()
    head = space.prefix(1)
    assert head.factors == (Euclidean(((-1.0, 1.0),), (2.0,)),)
    mid = space.slice(1, 2)
    assert mid.factors == (Euclidean(((-1.0, 1.0),), (0.5,)),)
    # unweighted factors stay unweighted when sliced
    plain = mixed_space().prefix(1)
    assert plain.factors == (Euclidean(((-2.0, 2.0),)),)


def test_weights_participate_in_factor_equality():
    plain = Euclidean(((0.0, 1.0),))
    heavy = Euclidean(((0.0, 1.0),), (2.0,))
    assert plain != heavy
    assert Euclidean(((0.0, 1.0),), (2.0,)) == heavy


# ---------------------------------------------------------------------------
# structure


def test_slice_splits_euclidean_keeps_so2():
    space = mixed_space()
    head = space.prefix(2)
    assert head.dim == 2
    assert head.factors == (Euclidean(((-2.0, 2.0), (-1.0, 1.0))),)
    tail = space.slice(2, 4)
    assert tail.dim == 2
    assert tail.factors[0] == SO2(0.5)
    assert tail.factors[1] == Euclidean(((-math.pi, math.pi),))
    mid = space.slice(1, 3)
    assert mid.dim == 2
    assert mid.factors == (Euclidean(((-1.0, 1.0),)), SO2(0.5))
    with pytest.raises(ValueError):
        space.slice(2, 2)
    with pytest.raises(ValueError):
        space.slice(0, 9)


def test_space_equality_and_hash():
    assert mixed_space() == mixed_space()
    assert hash(mixed_space()) == hash(mixed_space())
    assert mixed_space() != StateSpace([SO2(0.5)])


def test_compose_round_trip():
    space = mixed_space()
    rng = np.random.default_rng(37)
    x = space.sample(rng)
    y = compose(x[:2], x[2:], space)
    assert np.array_equal(x, y)
    with pytest.raises(ValueError):
        compose(x[:2], x[2:3], space)
