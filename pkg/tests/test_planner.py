"""Tests for the RRT baseline and the multilevel planner."""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest

from qrrt.bench import path_valid
from qrrt.geometry import Box, Disk, Environment, FixedBaseChain
from qrrt.planner import (
    InfeasibleQueryError,
    Path,
    PlannerParams,
    Ptc,
    Tree,
    priority,
    qrrt_plan,
    qrrt_sample_trace,
    rrt_plan,
    solve_qrrt,
    solve_rrt,
)
from qrrt.quotient import build_sequence
from qrrt.scenarios import (
    chain_scenario,
    empty_scenario,
    narrow_passage_scenario,
)
from qrrt.statespace import SO2, Euclidean, StateSpace


# ---------------------------------------------------------------------------
# parameters and termination
# ---------------------------------------------------------------------------


def test_params_defaults_and_frozen():
    p = PlannerParams()
    assert p.step is None and p.resolution is None
    assert p.goal_bias == 0.05 and p.goal_tolerance == 0.0
    assert p.continue_lower_levels
    with pytest.raises(dataclasses.FrozenInstanceError):
        p.seed = 3


def test_ptc_requires_a_limit():
    with pytest.raises(ValueError):
        Ptc()
    with pytest.raises(ValueError):
        Ptc(time_limit=0.0)
    with pytest.raises(ValueError):
        Ptc(max_grow_calls=0)


def test_ptc_triggers_on_either_limit():
    ptc = Ptc(time_limit=1.0, max_grow_calls=10)
    assert not ptc.done(0.5, 5)
    assert ptc.done(1.0, 5)
    assert ptc.done(0.5, 10)


def test_priority_decreases_with_grow_calls():
    q = dataclasses.make_dataclass("Q", ["grow_calls"])(0)
    assert priority(q) == 1.0
    q.grow_calls = 3
    assert priority(q) == 0.25


# ---------------------------------------------------------------------------
# tree
# ---------------------------------------------------------------------------


def tree_space() -> StateSpace:
    return StateSpace((Euclidean(((-1.0, 1.0), (-1.0, 1.0))), SO2(0.5)))


def test_tree_root_and_parents():
    space = tree_space()
    t = Tree(space, space.make_state([0.1, 0.2, 0.3]))
    assert t.n == 1
    assert t.parents[0] == -1
    i = t.add(space.make_state([0.4, 0.5, 0.6]), 0)
    assert i == 1 and t.parents[1] == 0
    with pytest.raises(ValueError):
        t.add(space.make_state([0.0, 0.0, 0.0]), 5)


def test_tree_grows_past_initial_capacity():
    space = tree_space()
    rng = np.random.default_rng(0)
    t = Tree(space, space.sample(rng))
    for _ in range(200):
        t.add(space.sample(rng), int(rng.integers(t.n)))
    assert t.n == 201
    assert t.coords.shape == (201, 3)


@pytest.mark.parametrize("kind", ["linear", "kdtree"])
def test_tree_nearest_matches_brute_force(kind):
    space = tree_space()
    rng = np.random.default_rng(7)
    t = Tree(space, space.sample(rng), nn_index=kind)
    for _ in range(300):
        t.add(space.sample(rng), 0)
    for _ in range(50):
        x = space.sample(rng)
        got = t.nearest(x)
        dists = space.distances(t.coords, x)
        assert dists[got] == pytest.approx(dists.min(), abs=1e-12)


def test_path_length_uses_space_metric():
    space = tree_space()
    states = np.array([[0.0, 0.0, 3.0], [0.0, 0.0, -3.0]])
    p = Path(states)
    assert len(p) == 2
    # Wrapped angular difference is 2*pi - 6, weighted by 0.5.
    assert p.length(space) == pytest.approx(0.5 * (2.0 * math.pi - 6.0))


# ---------------------------------------------------------------------------
# RRT on easy problems
# ---------------------------------------------------------------------------


def test_rrt_solves_empty_scenario_quickly():
    sc = empty_scenario()
    solved = 0
    for seed in range(50):
        res = solve_rrt(sc.robot, sc.env, sc.start, sc.goal,
                        PlannerParams(seed=seed), Ptc(time_limit=1.0))
        if res.solved:
            solved += 1
            space = sc.space()
            np.testing.assert_array_equal(res.path.states[0],
                                          space.make_state(sc.start))
            np.testing.assert_array_equal(res.path.states[-1],
                                          space.make_state(sc.goal))
            assert path_valid(sc.robot, sc.env, res.path,
                              res.levels[0].resolution)
    assert solved >= 48


def test_rrt_start_equals_goal_is_trivial():
    sc = empty_scenario()
    res = solve_rrt(sc.robot, sc.env, sc.start, sc.start,
                    PlannerParams(seed=0), Ptc(max_grow_calls=10))
    assert res.solved
    assert len(res.path) == 1
    assert res.grow_calls_total == 0


def test_rrt_large_step_connects_in_one_grow():
    sc = empty_scenario()
    res = solve_rrt(sc.robot, sc.env, sc.start, sc.goal,
                    PlannerParams(seed=0, step=10.0, goal_bias=1.0),
                    Ptc(max_grow_calls=100))
    assert res.solved
    assert res.grow_calls_total == 1
    assert len(res.path) == 2
    np.testing.assert_array_equal(res.path.states[-1],
                                  sc.space().make_state(sc.goal))


def test_rrt_pure_goal_bias_walks_straight():
    sc = empty_scenario()
    res = solve_rrt(sc.robot, sc.env, sc.start, sc.goal,
                    PlannerParams(seed=0, step=0.1, goal_bias=1.0),
                    Ptc(max_grow_calls=100))
    assert res.solved
    space = sc.space()
    straight = space.distance(space.make_state(sc.start),
                              space.make_state(sc.goal))
    assert res.path.length(space) == pytest.approx(straight, rel=1e-9)
    steps = [space.distance(a, b)
             for a, b in zip(res.path.states[:-1], res.path.states[1:])]
    assert max(steps) <= 0.1 + 1e-12


def test_rrt_goal_tolerance_still_ends_exactly_at_goal():
    sc = empty_scenario()
    res = solve_rrt(sc.robot, sc.env, sc.start, sc.goal,
                    PlannerParams(seed=1, goal_tolerance=0.3),
                    Ptc(time_limit=2.0))
    assert res.solved
    np.testing.assert_array_equal(res.path.states[-1],
                                  sc.space().make_state(sc.goal))


def test_rrt_respects_grow_budget_on_unsolvable_problem():
    # A full-height wall splits the box; no path exists.
    robot = Disk(0.05)
    env = Environment(
        workspace=Box((0.0, 0.0), (1.0, 1.0)),
        obstacles=(Box((0.45, -0.5), (0.55, 1.5)),),
    )
    res = solve_rrt(robot, env, (0.2, 0.5), (0.8, 0.5),
                    PlannerParams(seed=0), Ptc(max_grow_calls=500))
    assert not res.solved
    assert res.path is None
    assert res.grow_calls_total == 500


def test_rrt_rejects_colliding_endpoints():
    robot = Disk(0.1)
    env = Environment(
        workspace=Box((0.0, 0.0), (1.0, 1.0)),
        obstacles=(Box((0.4, 0.4), (0.6, 0.6)),),
    )
    with pytest.raises(InfeasibleQueryError):
        solve_rrt(robot, env, (0.5, 0.5), (0.9, 0.9),
                  PlannerParams(), Ptc(max_grow_calls=10))
    with pytest.raises(InfeasibleQueryError):
        solve_rrt(robot, env, (0.9, 0.9), (0.5, 0.5),
                  PlannerParams(), Ptc(max_grow_calls=10))


def test_rrt_is_deterministic_per_seed():
    sc = empty_scenario()
    runs = [solve_rrt(sc.robot, sc.env, sc.start, sc.goal,
                      PlannerParams(seed=5), Ptc(max_grow_calls=200))
            for _ in range(2)]
    np.testing.assert_array_equal(runs[0].levels[0].tree.coords,
                                  runs[1].levels[0].tree.coords)
    np.testing.assert_array_equal(runs[0].levels[0].tree.parents,
                                  runs[1].levels[0].tree.parents)
    other = solve_rrt(sc.robot, sc.env, sc.start, sc.goal,
                      PlannerParams(seed=6), Ptc(max_grow_calls=200))
    assert (other.levels[0].tree.n != runs[0].levels[0].tree.n
            or not np.array_equal(other.levels[0].tree.coords,
                                  runs[0].levels[0].tree.coords))


def test_rrt_kdtree_index_also_solves():
    sc = empty_scenario()
    res = solve_rrt(sc.robot, sc.env, sc.start, sc.goal,
                    PlannerParams(seed=0, nn_index="kdtree"),
                    Ptc(time_limit=2.0))
    assert res.solved
    assert path_valid(sc.robot, sc.env, res.path, res.levels[0].resolution)


def test_rrt_records_samples_when_asked():
    sc = empty_scenario()
    res = solve_rrt(sc.robot, sc.env, sc.start, sc.goal,
                    PlannerParams(seed=0, record_samples=True),
                    Ptc(max_grow_calls=50))
    log = res.levels[0].sample_log
    assert log is not None
    assert len(log) == res.levels[0].grow_calls


# ---------------------------------------------------------------------------
# multilevel planner
# ---------------------------------------------------------------------------


def test_qrrt_trivial_stack_matches_rrt_exactly():
    sc = empty_scenario()
    seq = build_sequence(sc.robot, sc.env, ())
    for seed in range(10):
        params = PlannerParams(seed=seed)
        ptc = Ptc(max_grow_calls=300)
        a = solve_rrt(sc.robot, sc.env, sc.start, sc.goal, params, ptc)
        b = solve_qrrt(seq, sc.start, sc.goal, params, ptc)
        assert a.solved == b.solved
        assert a.grow_calls_total == b.grow_calls_total
        np.testing.assert_array_equal(a.levels[0].tree.coords,
                                      b.levels[0].tree.coords)
        np.testing.assert_array_equal(a.levels[0].tree.parents,
                                      b.levels[0].tree.parents)
        if a.solved:
            np.testing.assert_array_equal(a.path.states, b.path.states)


def test_qrrt_solves_chain_with_full_stack():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (1, 2, 3))
    res = solve_qrrt(seq, sc.start, sc.goal, PlannerParams(seed=0),
                     Ptc(time_limit=30.0))
    assert res.solved
    assert [q.space.dim for q in res.levels] == [1, 2, 3, 4]
    # Each level that unlocked holds a path on its own space.
    for q in res.levels:
        assert q.path is not None
        assert q.path.states.shape[1] == q.space.dim
    assert path_valid(sc.robot, sc.env, res.path, res.levels[-1].resolution)
    np.testing.assert_array_equal(res.path.states[0],
                                  seq.full_space.make_state(sc.start))
    np.testing.assert_array_equal(res.path.states[-1],
                                  seq.full_space.make_state(sc.goal))


def test_qrrt_blocked_bottom_level_gates_the_stack():
    # With the opening narrower than the disk the bottom level can never
    # connect, so the full-space tree must stay untouched at its root.
    sc = narrow_passage_scenario(alpha=0.05)
    seq = build_sequence(sc.robot, sc.env, (2,))
    res = solve_qrrt(seq, sc.start, sc.goal, PlannerParams(seed=0),
                     Ptc(max_grow_calls=300))
    assert not res.solved
    assert res.levels[0].grow_calls == 300
    assert res.levels[1].grow_calls == 0
    assert res.levels[1].tree.n == 1
    assert res.grow_calls_total == 300


def test_qrrt_continue_lower_levels_keeps_growing_them():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (2,))
    res = solve_qrrt(seq, sc.start, sc.goal, PlannerParams(seed=0),
                     Ptc(max_grow_calls=400))
    # The queue equalizes grow calls, so once the top stage runs for a
    # while both levels have comparable counts.
    g0, g1 = res.grow_calls
    if res.solved:
        assert g0 > 0 and g1 > 0
    else:
        assert abs(g0 - g1) <= 1


def test_qrrt_frozen_lower_levels_stop_growing():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (2,))
    on = solve_qrrt(seq, sc.start, sc.goal,
                    PlannerParams(seed=0, continue_lower_levels=True),
                    Ptc(max_grow_calls=400))
    off = solve_qrrt(seq, sc.start, sc.goal,
                     PlannerParams(seed=0, continue_lower_levels=False),
                     Ptc(max_grow_calls=400))
    # Stage 0 is identical either way; freezing can only reduce the lower
    # level's final count, and every grow call is accounted to some level.
    assert off.grow_calls[0] <= on.grow_calls[0]
    assert sum(on.grow_calls) == on.grow_calls_total
    assert sum(off.grow_calls) == off.grow_calls_total


def test_qrrt_deterministic_per_seed():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (2,))
    runs = [solve_qrrt(seq, sc.start, sc.goal, PlannerParams(seed=9),
                       Ptc(max_grow_calls=500)) for _ in range(2)]
    assert runs[0].grow_calls == runs[1].grow_calls
    for qa, qb in zip(runs[0].levels, runs[1].levels):
        np.testing.assert_array_equal(qa.tree.coords, qb.tree.coords)
        np.testing.assert_array_equal(qa.tree.parents, qb.tree.parents)


def test_qrrt_start_equals_goal_all_levels():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (1, 3))
    res = solve_qrrt(seq, sc.start, sc.start, PlannerParams(seed=0),
                     Ptc(max_grow_calls=10))
    assert res.solved
    assert len(res.path) == 1
    assert res.grow_calls_total == 0


def test_qrrt_rejects_colliding_endpoints():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (2,))
    # A straight arm at 1 radian crosses the slab to the right of the slot
    # (it meets y = 0.3 at x ~ 0.19 > 0.18).
    leaning = (1.0, 0.0, 0.0, 0.0)
    with pytest.raises(InfeasibleQueryError):
        solve_qrrt(seq, leaning, sc.goal, PlannerParams(),
                   Ptc(max_grow_calls=10))
    with pytest.raises(InfeasibleQueryError):
        solve_qrrt(seq, sc.start, leaning, PlannerParams(),
                   Ptc(max_grow_calls=10))


def test_plan_wrappers_return_path_or_none():
    sc = empty_scenario()
    seq = build_sequence(sc.robot, sc.env, ())
    p = qrrt_plan(seq, sc.start, sc.goal, PlannerParams(seed=0),
                  Ptc(time_limit=2.0))
    assert isinstance(p, Path)
    r = rrt_plan(sc.robot, sc.env, sc.start, sc.goal, PlannerParams(seed=0),
                 Ptc(time_limit=2.0))
    assert isinstance(r, Path)
    robot = Disk(0.05)
    env = Environment(
        workspace=Box((0.0, 0.0), (1.0, 1.0)),
        obstacles=(Box((0.45, -0.5), (0.55, 1.5)),),
    )
    assert rrt_plan(robot, env, (0.2, 0.5), (0.8, 0.5), PlannerParams(seed=0),
                    Ptc(max_grow_calls=200)) is None


# ---------------------------------------------------------------------------
# sampler trace
# ---------------------------------------------------------------------------


def test_sample_trace_counts_and_shapes():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (1, 2))
    budget = 100
    samples = qrrt_sample_trace(seq, sc.start,
                                PlannerParams(seed=0, goal_bias=0.0), budget)
    assert len(samples) == budget
    assert all(s.shape == (4,) for s in samples)


def test_sample_trace_handles_tiny_budgets():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (1, 2))
    assert qrrt_sample_trace(seq, sc.start, PlannerParams(seed=1), 0) == []
    samples = qrrt_sample_trace(seq, sc.start,
                                PlannerParams(seed=1, goal_bias=0.0), 2)
    assert len(samples) == 2


def test_sample_trace_is_deterministic():
    sc = chain_scenario(4)
    seq = build_sequence(sc.robot, sc.env, (2,))
    a = qrrt_sample_trace(seq, sc.start, PlannerParams(seed=4, goal_bias=0.0),
                          50)
    b = qrrt_sample_trace(seq, sc.start, PlannerParams(seed=4, goal_bias=0.0),
                          50)
    np.testing.assert_array_equal(np.stack(a), np.stack(b))
