"""Tree-based planners: a plain RRT and its multilevel generalization.

Both planners grow trees by steering from the nearest vertex toward a
random sample by at most one step, inserting the new vertex only if the
connecting motion is collision free.  The multilevel planner keeps one tree
per level of a simplification stack.  Levels are unlocked in order: once
level k is solved, level k+1 joins a priority queue that always grows the
least-grown tree next (priority 1 / (grow_calls + 1), ties to the lowest
level).  Samples at level k > 0 are composed from a uniformly random vertex
of the level k-1 tree and a uniform fiber sample, which is what biases the
full-space search toward regions whose simplifications are known reachable.

With a single level the multilevel planner consumes randomness exactly like
the plain RRT, so the two produce identical trees seed for seed.

Priority counts grow calls rather than tree size: failed extensions then
still lower a level's priority, so a level whose tree stops accepting nodes
cannot starve the others.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .quotient import SimplificationSequence, build_sequence
from .statespace import compose

STEP_FRACTION = 0.2
RESOLUTION_FRACTION = 0.01


class InfeasibleQueryError(ValueError):
    """Start or goal configuration is in collision (distinct from not-found)."""


@dataclass(frozen=True)
class PlannerParams:
    """Knobs shared by both planners.

    step and resolution default to fractions of each level's space diameter
    (0.2 and 0.01 respectively) when left as None.  goal_tolerance 0 means
    the goal must be inserted exactly, which goal-biased sampling achieves.
    """

    step: float | None = None
    goal_bias: float = 0.05
    goal_tolerance: float = 0.0
    resolution: float | None = None
    seed: int = 0
    continue_lower_levels: bool = True
    nn_index: str = "linear"
    record_samples: bool = False


@dataclass
class Ptc:
    """Planner termination condition: wall-clock and/or total grow budget.

    At least one limit must be set; whichever triggers first stops the run.
    """

    time_limit: float | None = None
    max_grow_calls: int | None = None

    def __post_init__(self):
        if self.time_limit is None and self.max_grow_calls is None:
            raise ValueError("set a time limit, a grow-call limit, or both")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")
        if self.max_grow_calls is not None and self.max_grow_calls <= 0:
            raise ValueError("grow-call limit must be positive")

    def done(self, elapsed, grow_calls):
        if self.time_limit is not None and elapsed >= self.time_limit:
            return True
        if self.max_grow_calls is not None and grow_calls >= self.max_grow_calls:
            return True
        return False


class Tree:
    """Append-only tree of states with parent links.

    Node 0 is the root; every node's parent index is smaller than its own.
    Coordinates live in a doubling array so nearest-neighbor scans stay
    contiguous.
    """

    def __init__(self, space, root, nn_index="linear"):
        from .neighbors import make_index

        self.space = space
        self._coords = np.empty((64, space.dim))
        self._parents = np.empty(64, dtype=np.int64)
        self.n = 0
        self._index = make_index(space, nn_index)
        self.add(np.asarray(root, dtype=float), -1)

    @property
    def coords(self):
        return self._coords[: self.n]

    @property
    def parents(self):
        return self._parents[: self.n]

    def state(self, i):
        return self._coords[i]

    def add(self, x, parent):
        if not (-1 <= parent < self.n):
            raise ValueError(f"parent {parent} out of range for tree of {self.n}")
        if self.n == self._coords.shape[0]:
            self._coords = np.vstack([self._coords, np.empty_like(self._coords)])
            self._parents = np.concatenate([self._parents,
                                            np.empty_like(self._parents)])
        self._coords[self.n] = x
        self._parents[self.n] = parent
        self.n += 1
        self._index.notify_insert(self.coords)
        return self.n - 1

    def nearest(self, x):
        return self._index.query(self.coords, x)


@dataclass
class Path:
    """Ordered states from start to goal on one space."""

    states: np.ndarray

    def __len__(self):
        return self.states.shape[0]

    def length(self, space):
        return float(sum(space.distance(a, b)
                         for a, b in zip(self.states[:-1], self.states[1:])))


@dataclass
class QuotientClass:
    """Per-level planning state: the tree on one space plus its wiring.

    `lower` points at the level below (None at the bottom); `fiber_space`
    spans the coordinates this level adds over the lower one.  grow_calls
    counts expansion attempts whether or not a node was inserted.
    """

    level: int
    space: object
    checker: geometry.CollisionChecker
    start: np.ndarray
    goal: np.ndarray
    tree: Tree
    lower: "QuotientClass | None"
    fiber_space: object | None
    step: float
    resolution: float
    path: Path | None = None
    grow_calls: int = 0
    sample_log: list | None = None
    _goal_index: int | None = field(default=None, repr=False)
    _checked_upto: int = field(default=0, repr=False)


def priority(q):
    """Queue priority of a level: 1 / (grow_calls + 1), larger grows first."""
    return 1.0 / (q.grow_calls + 1.0)


def grow_rrt(q, params, rng):
    """One growth attempt sampling the level's own space uniformly.

    Draws the goal with probability goal_bias, otherwise a uniform sample;
    steers from the nearest vertex by at most the step size and inserts the
    new vertex iff the connecting motion is valid.  Returns the index of
    the inserted node or None.  Counts as a grow call either way.
    """
    if rng.random() < params.goal_bias:
        x_rand = q.goal
    else:
        x_rand = q.space.sample(rng)
    return _extend(q, x_rand)


def grow_qrrt(q, params, rng):
    """One growth attempt at any level of the stack.

    The bottom level behaves exactly like grow_rrt.  Higher levels compose
    a uniformly random vertex of the lower tree with a uniform fiber
    sample (goal bias applies the same way).
    """
    if q.lower is None:
        return grow_rrt(q, params, rng)
    if rng.random() < params.goal_bias:
        x_rand = q.goal
    else:
        vertex = q.lower.tree.state(int(rng.integers(q.lower.tree.n)))
        x_rand = compose(vertex, q.fiber_space.sample(rng), q.space)
    return _extend(q, x_rand)


def _extend(q, x_rand):
    if q.sample_log is not None:
        q.sample_log.append(np.array(x_rand))
    q.grow_calls += 1
    near = q.tree.nearest(x_rand)
    x_new, _ = q.space.steer(q.tree.state(near), x_rand, q.step)
    if q.checker.motion_valid(q.tree.state(near), x_new, q.resolution):
        return q.tree.add(x_new, near)
    return None


def is_connected(q, params):
    """True iff some tree node reaches the goal within tolerance.

    A node counts if it lies within goal_tolerance of the goal and the
    straight motion from it to the goal is valid.  On first success the
    exact goal state is appended to the tree (unless a node already equals
    it), so extracted paths terminate exactly at the goal.  Nodes are
    checked once each; the result is cached.
    """
    if q._goal_index is not None:
        return True
    tol = params.goal_tolerance
    n = q.tree.n
    for i in range(q._checked_upto, n):
        d = q.space.distance(q.tree.state(i), q.goal)
        if d <= tol:
            if d == 0.0:
                q._goal_index = i
                break
            if q.checker.motion_valid(q.tree.state(i), q.goal, q.resolution):
                q._goal_index = q.tree.add(q.goal.copy(), i)
                break
    q._checked_upto = q.tree.n
    return q._goal_index is not None


def extract_path(q):
    """Path from the root to the connected goal node."""
    if q._goal_index is None:
        raise ValueError("level is not connected to its goal")
    idxs = []
    i = q._goal_index
    while i != -1:
        idxs.append(i)
        i = int(q.tree.parents[i])
    idxs.reverse()
    return Path(q.tree.coords[idxs].copy())


@dataclass
class PlanResult:
    """Outcome of a planning run with per-level introspection."""

    path: Path | None
    levels: list[QuotientClass]
    elapsed: float
    grow_calls_total: int

    @property
    def solved(self):
        return self.path is not None

    @property
    def grow_calls(self):
        return tuple(q.grow_calls for q in self.levels)

    @property
    def nodes(self):
        return tuple(q.tree.n for q in self.levels)


def _level_step(space, params):
    return params.step if params.step is not None else STEP_FRACTION * space.diameter


def _level_resolution(space, params):
    if params.resolution is not None:
        return params.resolution
    return RESOLUTION_FRACTION * space.diameter


def _init_levels(sequence, start, goal, params):
    full = sequence.levels[-1]
    start = full.space.make_state(start)
    goal = full.space.make_state(goal)
    if full.checker.in_collision(start):
        raise InfeasibleQueryError("start configuration is in collision")
    if full.checker.in_collision(goal):
        raise InfeasibleQueryError("goal configuration is in collision")

    levels = []
    lower = None
    for k, lv in enumerate(sequence.levels):
        s_k = start[: lv.dim].copy()
        g_k = goal[: lv.dim].copy()
        if lower is not None or lv is not full:
            if lv.checker.in_collision(s_k) or lv.checker.in_collision(g_k):
                raise InfeasibleQueryError(
                    f"level {k} rejects a projected start or goal; "
                    "the simplification is not admissible"
                )
        q = QuotientClass(
            level=k,
            space=lv.space,
            checker=lv.checker,
            start=s_k,
            goal=g_k,
            tree=Tree(lv.space, s_k, params.nn_index),
            lower=lower,
            fiber_space=lv.fiber_space,
            step=_level_step(lv.space, params),
            resolution=_level_resolution(lv.space, params),
            sample_log=[] if params.record_samples else None,
        )
        levels.append(q)
        lower = q
    return levels


def solve_qrrt(sequence, start, goal, params=None, ptc=None):
    """Run the multilevel planner on a simplification stack.

    Levels are solved in order under one global termination condition; while
    level k is being solved, all levels up to k stay in the queue and keep
    growing (set continue_lower_levels=False to grow only the current
    level).  Returns a PlanResult whose path, if any, lives on the full
    space.  Deterministic for a fixed (sequence, params, ptc grow budget).
    """
    params = params or PlannerParams()
    ptc = ptc or Ptc(time_limit=10.0)
    levels = _init_levels(sequence, start, goal, params)
    rng = np.random.default_rng(params.seed)

    t0 = time.perf_counter()
    total = 0
    for k, qk in enumerate(levels):
        if is_connected(qk, params):
            qk.path = extract_path(qk)
            continue
        active = levels[: k + 1] if params.continue_lower_levels else [qk]
        heap = [(q.grow_calls, q.level, q) for q in active]
        heapq.heapify(heap)
        while qk.path is None and not ptc.done(time.perf_counter() - t0, total):
            _, _, q = heapq.heappop(heap)
            grow_qrrt(q, params, rng)
            total += 1
            heapq.heappush(heap, (q.grow_calls, q.level, q))
            if is_connected(qk, params):
                qk.path = extract_path(qk)
        if qk.path is None:
            break

    return PlanResult(path=levels[-1].path, levels=levels,
                      elapsed=time.perf_counter() - t0, grow_calls_total=total)


def qrrt_plan(sequence, start, goal, params=None, ptc=None):
    """Convenience wrapper returning just the path (or None)."""
    return solve_qrrt(sequence, start, goal, params, ptc).path


def solve_rrt(robot, env, start, goal, params=None, ptc=None):
    """Plain RRT baseline on the full configuration space.

    Equivalent to the multilevel planner on the trivial stack; kept as its
    own loop so the baseline stands alone.
    """
    params = params or PlannerParams()
    ptc = ptc or Ptc(time_limit=10.0)
    sequence = build_sequence(robot, env, ())
    levels = _init_levels(sequence, start, goal, params)
    q = levels[0]
    rng = np.random.default_rng(params.seed)

    t0 = time.perf_counter()
    if is_connected(q, params):
        q.path = extract_path(q)
    while q.path is None and not ptc.done(time.perf_counter() - t0, q.grow_calls):
        grow_rrt(q, params, rng)
        if is_connected(q, params):
            q.path = extract_path(q)

    return PlanResult(path=q.path, levels=levels,
                      elapsed=time.perf_counter() - t0,
                      grow_calls_total=q.grow_calls)


def rrt_plan(robot, env, start, goal, params=None, ptc=None):
    """Convenience wrapper returning just the path (or None)."""
    return solve_rrt(robot, env, start, goal, params, ptc).path


def qrrt_sample_trace(sequence, start, params, budget):
    """Top-level sampling sequence with all levels active and goals ignored.

    Runs the queue with every level live from the start (no goal checks, no
    termination other than the budget) and returns the list of raw samples
    drawn at the top level, exactly `budget` of them.  This isolates the
    sampler whose density the coverage tools measure; use goal_bias 0 for
    the pure composed distribution.
    """
    start_full = sequence.full_space.make_state(start)
    goal = start_full
    levels = _init_levels(sequence, start_full, goal, params)
    top = levels[-1]
    top.sample_log = []
    rng = np.random.default_rng(params.seed)
    heap = [(q.grow_calls, q.level, q) for q in levels]
    heapq.heapify(heap)
    while top.grow_calls < budget:
        _, _, q = heapq.heappop(heap)
        grow_qrrt(q, params, rng)
        heapq.heappush(heap, (q.grow_calls, q.level, q))
    return top.sample_log[:budget]
