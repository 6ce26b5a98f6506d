"""Brute-force grid certification of simplification properties.

On spaces of up to three dimensions, a grid oracle rasterizes the binary
constraint at cell centers and labels the free cells into connected
components (axis-adjacent cells, with wraparound across angular axes).
Component membership gives a 0-or-infinity reachability cost: 0 if a cell
shares a component with the goal cell, infinity otherwise.

Two certificates build on this.  The nesting check finds configurations
free for the full robot whose projection a level rejects; any hit disproves
admissibility.  The reachability check finds cells the full space can steer
to the goal but whose projection the quotient grid disconnects from the
projected goal; any hit disproves that the quotient cost underestimates the
true one.  Both return empty lists for properly nested sub-robots and are
expected to light up when fed a deliberately broken one.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from . import geometry
from .quotient import restricted_robot

MAX_CELLS = 10_000_000


class GridOracle:
    """Constraint bitmap plus connected-component labels on one space."""

    def __init__(self, space, collision_batch, cells):
        cells = tuple(int(c) for c in cells)
        if space.dim > 3:
            raise ValueError(f"grid oracle supports at most 3 dims, got {space.dim}")
        if len(cells) != space.dim:
            raise ValueError(f"need {space.dim} cell counts, got {len(cells)}")
        if any(c < 1 for c in cells):
            raise ValueError("cell counts must be positive")
        if math.prod(cells) > MAX_CELLS:
            raise ValueError(f"grid of {math.prod(cells)} cells exceeds {MAX_CELLS}")

        self.space = space
        self.cells = cells
        self.widths = (space.hi - space.lo) / np.asarray(cells, dtype=float)
        axes = [space.lo[j] + (np.arange(cells[j]) + 0.5) * self.widths[j]
                for j in range(space.dim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.reshape(-1) for m in mesh], axis=1)
        self.free = (~np.asarray(collision_batch(pts), dtype=bool)).reshape(cells)
        self.labels, self.n_components = _label_components(
            self.free, space.wrap_mask)

    @property
    def free_cell_count(self):
        return int(self.free.sum())

    def cell_index(self, x):
        """Grid cell containing a state (angular coordinates wrapped)."""
        x = self.space.make_state(x)
        idx = np.floor((x - self.space.lo) / self.widths).astype(int)
        idx = np.minimum(idx, np.asarray(self.cells) - 1)
        if (idx < 0).any():
            raise ValueError(f"state {x} below grid bounds")
        return tuple(int(i) for i in idx)

    def center(self, idx):
        return self.space.lo + (np.asarray(idx, dtype=float) + 0.5) * self.widths

    def component(self, idx):
        """Component id of a free cell, 0 for occupied cells."""
        return int(self.labels[tuple(idx)])


def _label_components(free, wrap_mask):
    """Axis-adjacent connected components with angular wraparound.

    scipy's labeling handles the box topology; labels touching across a
    wrapped axis boundary are then merged with a small union-find.
    """
    structure = ndimage.generate_binary_structure(free.ndim, 1)
    labels, n = ndimage.label(free, structure=structure)
    if n == 0:
        return labels, 0

    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for axis in range(free.ndim):
        if not wrap_mask[axis]:
            continue
        first = np.take(labels, 0, axis=axis).reshape(-1)
        last = np.take(labels, -1, axis=axis).reshape(-1)
        for a, b in zip(first, last):
            if a and b:
                union(int(a), int(b))

    roots = {}
    remap = np.zeros(n + 1, dtype=labels.dtype)
    for lab in range(1, n + 1):
        r = find(lab)
        if r not in roots:
            roots[r] = len(roots) + 1
        remap[lab] = roots[r]
    return remap[labels], len(roots)


def grid_oracle(robot, env, cells):
    """Grid oracle for a robot's own configuration space."""
    chk = geometry.checker_for(robot, env)
    return GridOracle(chk.space, chk.collision_mask, cells)


def reachability_cost(oracle, x, goal):
    """0 if x and goal share a free component, infinity otherwise.

    This is the grid proxy for the true cost-to-go indicator: finite exactly
    when some free connected set contains both states.
    """
    ci = oracle.cell_index(x)
    cg = oracle.cell_index(goal)
    if not oracle.free[ci] or not oracle.free[cg]:
        return math.inf
    return 0.0 if oracle.labels[ci] == oracle.labels[cg] else math.inf


def quotient_reachability_cost(quotient_oracle, x, goal):
    """Reachability cost of the projections of x and goal on a quotient grid.

    Underestimates the full-space cost whenever the quotient is admissible:
    projecting a free path yields a free quotient path cell by cell.
    """
    d = quotient_oracle.space.dim
    x = np.asarray(x, dtype=float)[:d]
    goal = np.asarray(goal, dtype=float)[:d]
    return reachability_cost(quotient_oracle, x, goal)


@dataclass(frozen=True)
class Violation:
    """One grid cell witnessing a broken property."""

    cell: tuple[int, ...]
    state: tuple[float, ...]
    full_value: float
    quotient_value: float


def _aligned_oracles(robot, env, dim, cells, quotient_robot=None):
    cells = tuple(int(c) for c in cells)
    full = grid_oracle(robot, env, cells)
    sub = quotient_robot if quotient_robot is not None else restricted_robot(robot, dim)
    sub_chk = geometry.checker_for(sub, env)
    sub_space = sub.config_space(env.workspace)
    if sub_space.dim != dim:
        raise ValueError(f"quotient robot has {sub_space.dim} dims, expected {dim}")
    quot = GridOracle(sub_space, sub_chk.collision_mask, cells[:dim])
    return full, quot


def nesting_violations(robot, env, dim, cells, quotient_robot=None):
    """Cells free for the full robot but rejected by the level at `dim`.

    The quotient grid shares the leading axes of the full grid, so the
    projection of a cell center is exactly a quotient cell center.  Returns
    Violation records; empty means the level never rules out a state whose
    lift is free.  Pass a tampered quotient_robot to confirm the check can
    fail.
    """
    full, quot = _aligned_oracles(robot, env, dim, cells, quotient_robot)
    quot_free = quot.free.reshape(quot.free.shape + (1,) * (full.free.ndim - dim))
    bad = full.free & ~quot_free
    out = []
    for idx in np.argwhere(bad):
        idx = tuple(int(i) for i in idx)
        out.append(Violation(cell=idx, state=tuple(full.center(idx)),
                             full_value=0.0, quotient_value=1.0))
    return out


def reachability_violations(robot, env, dim, cells, goal, quotient_robot=None):
    """Cells where the quotient cost exceeds the true cost to the goal.

    A violation is a free cell connected to the goal cell on the full grid
    whose projection is occupied or disconnected from the projected goal on
    the quotient grid (quotient cost infinity against true cost zero, the
    only way a 0-or-infinity underestimate can fail).
    """
    full, quot = _aligned_oracles(robot, env, dim, cells, quotient_robot)
    goal_idx = full.cell_index(goal)
    if not full.free[goal_idx]:
        raise ValueError("goal cell is occupied at this resolution")
    goal_label = full.labels[goal_idx]
    reach_full = full.free & (full.labels == goal_label)

    q_goal_idx = goal_idx[:dim]
    if quot.free[q_goal_idx]:
        q_goal_label = quot.labels[q_goal_idx]
        reach_quot = quot.free & (quot.labels == q_goal_label)
    else:
        reach_quot = np.zeros_like(quot.free)
    reach_quot = reach_quot.reshape(reach_quot.shape + (1,) * (full.free.ndim - dim))

    bad = reach_full & ~reach_quot
    out = []
    for idx in np.argwhere(bad):
        idx = tuple(int(i) for i in idx)
        out.append(Violation(cell=idx, state=tuple(full.center(idx)),
                             full_value=0.0, quotient_value=math.inf))
    return out


def coverage_fraction(samples, oracle, budget=None):
    """Fraction of free cells hit by the first `budget` samples.

    Measures how densely a sampling sequence covers the free space at the
    oracle's resolution.
    """
    pts = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples,
                     dtype=float)
    if budget is not None:
        pts = pts[:budget]
    n_free = oracle.free_cell_count
    if n_free == 0:
        return 0.0
    if pts.shape[0] == 0:
        return 0.0
    idx = np.floor((pts - oracle.space.lo) / oracle.widths).astype(int)
    np.clip(idx, 0, np.asarray(oracle.cells) - 1, out=idx)
    hit = np.zeros(oracle.cells, dtype=bool)
    hit[tuple(idx.T)] = True
    return float((hit & oracle.free).sum() / n_free)


def write_violations_csv(path, violations):
    """Violation list as CSV: cell index, state coordinates, both values."""
    dim = len(violations[0].state) if violations else 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["cell", *(f"coord_{j}" for j in range(dim)),
                    "full_value", "quotient_value"])
        for v in violations:
            w.writerow([";".join(str(i) for i in v.cell),
                        *(f"{c:.9g}" for c in v.state),
                        v.full_value, v.quotient_value])
