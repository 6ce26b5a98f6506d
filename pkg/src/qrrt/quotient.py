"""Lower-dimensional simplifications of a robot's configuration space.

A simplification keeps a leading block of configuration coordinates and
swaps the robot for the nested sub-robot those coordinates drive: a chain
loses trailing links, a floating chain loses links and finally its heading,
leaving the bare base disk.  Because the sub-robot's bodies are a subset of
the full robot's bodies at any configuration that projects down, a
collision at a lower level certifies a collision at every lift, so lower
levels never rule out states whose lifts could be free.  Checking a level
costs exactly one collision query of the sub-robot.

A planning stack is described by a sequence spec: a strictly increasing
tuple of quotient dimensions, the full space being implicitly last.  The
spec () is the trivial stack containing only the full space.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain as _chain, combinations

import numpy as np

from . import geometry
from .geometry import Disk, FixedBaseChain, FloatingChain
from .statespace import StateSpace


class UnsupportedProjectionError(ValueError):
    """Requested simplification has no nested sub-robot."""


def quotient_dims(robot):
    """Dimensions of the available proper simplifications, ascending.

    Chains with n links project onto any leading k < n joints.  Floating
    chains with m links project onto the base position (2), the posed base
    (3), and the posed base with any leading i < m links (3 + i).  A bare
    disk has no proper simplification.
    """
    if isinstance(robot, FixedBaseChain):
        return tuple(range(1, robot.dof))
    if isinstance(robot, FloatingChain):
        return (2,) + tuple(3 + i for i in range(len(robot.link_lengths)))
    if isinstance(robot, Disk):
        return ()
    raise TypeError(f"unsupported robot {robot!r}")


def restricted_robot(robot, dim):
    """Nested sub-robot whose configuration is the leading `dim` coordinates.

    dim equal to the full dof returns the robot unchanged.  Anything not in
    quotient_dims(robot) raises UnsupportedProjectionError; in particular
    only end links can be removed, never middle ones.
    """
    if dim == robot.dof:
        return robot
    if isinstance(robot, FixedBaseChain) and 1 <= dim < robot.dof:
        return FixedBaseChain(robot.base, robot.link_lengths[:dim],
                              robot.link_width, robot.joint_limits)
    if isinstance(robot, FloatingChain):
        if dim == 2:
            return Disk(robot.base_radius)
        if dim == 3:
            return FloatingChain(robot.base_radius, (), robot.link_width,
                                 robot.joint_limits)
        if 3 < dim < robot.dof:
            return FloatingChain(robot.base_radius, robot.link_lengths[: dim - 3],
                                 robot.link_width, robot.joint_limits)
    raise UnsupportedProjectionError(
        f"no {dim}-dimensional simplification of {type(robot).__name__} "
        f"with {robot.dof} dof"
    )


@dataclass(frozen=True)
class Projection:
    """Coordinate projection between two adjacent levels of a stack.

    Projects a source state onto its leading `target_dim` coordinates; the
    trailing block is the fiber.  `kind` records what the drop means for the
    robot: trailing joints, the heading of a floating base, or a generic
    fiber block.
    """

    kind: str
    source_space: StateSpace
    target_space: StateSpace
    fiber_space: StateSpace

    @property
    def target_dim(self):
        return self.target_space.dim

    @property
    def source_dim(self):
        return self.source_space.dim


def project(projection, x):
    """Image of a source state under the projection (a leading slice)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != projection.source_dim:
        raise ValueError(
            f"expected {projection.source_dim} coordinates, got {x.shape[-1]}"
        )
    return x[..., : projection.target_dim].copy()


def fiber_coords(projection, x):
    """Trailing fiber block of a source state."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != projection.source_dim:
        raise ValueError(
            f"expected {projection.source_dim} coordinates, got {x.shape[-1]}"
        )
    return x[..., projection.target_dim :].copy()


def _projection_kind(robot, lo_dim):
    if isinstance(robot, FloatingChain):
        if lo_dim == 2:
            return "drop_orientation"
        return "drop_trailing_joints"
    if isinstance(robot, FixedBaseChain):
        return "drop_trailing_joints"
    return "drop_fiber"


@dataclass
class Level:
    """One level of a simplification stack: a space and the robot living on it.

    `fiber_space` spans the coordinates this level adds over the previous
    one (None for the lowest level).
    """

    dim: int
    robot: object
    space: StateSpace
    checker: geometry.CollisionChecker
    fiber_space: StateSpace | None


@dataclass
class SimplificationSequence:
    """Levels, projections between them, and their fibers, lowest first.

    The final level is always the full robot on its full configuration
    space.  Level k's space metric comes from its own sub-robot (its reach
    sets the rotation weight), while fibers are slices of the full space,
    so composing a level state with a fiber sample is plain concatenation.
    """

    robot: object
    env: geometry.Environment
    spec: tuple[int, ...]
    levels: tuple[Level, ...]
    projections: tuple[Projection, ...]

    @property
    def depth(self):
        return len(self.levels)

    @property
    def full_space(self):
        return self.levels[-1].space

    def project_state(self, x, level_index):
        """Projection of a full-space state onto the given level."""
        return np.asarray(x, dtype=float)[: self.levels[level_index].dim].copy()


def validate_spec(spec, robot):
    """Normalize and check a sequence spec against a robot's simplifications."""
    spec = tuple(int(d) for d in spec)
    if any(b <= a for a, b in zip(spec, spec[1:])):
        raise ValueError(f"spec dims must be strictly increasing, got {spec}")
    avail = set(quotient_dims(robot))
    for d in spec:
        if d not in avail:
            raise UnsupportedProjectionError(
                f"dimension {d} is not an available simplification "
                f"(choices: {sorted(avail)})"
            )
    return spec


def build_sequence(robot, env, spec=()):
    """Assemble the planning stack for a sequence spec.

    Returns a SimplificationSequence whose levels are (space, sub-robot,
    collision checker) triples and whose fibers are the full-space slices
    between consecutive levels.
    """
    spec = validate_spec(spec, robot)
    full_space = robot.config_space(env.workspace)
    dims = list(spec) + [robot.dof]

    levels = []
    prev_dim = 0
    for d in dims:
        sub = restricted_robot(robot, d)
        space = sub.config_space(env.workspace)
        if space.dim != d:
            raise UnsupportedProjectionError(
                f"simplification at dim {d} yielded a {space.dim}-dim space"
            )
        fiber = full_space.slice(prev_dim, d) if prev_dim else None
        levels.append(Level(dim=d, robot=sub, space=space,
                            checker=geometry.checker_for(sub, env),
                            fiber_space=fiber))
        prev_dim = d

    projections = []
    for lo, hi in zip(levels, levels[1:]):
        projections.append(Projection(
            kind=_projection_kind(robot, lo.dim),
            source_space=hi.space,
            target_space=lo.space,
            fiber_space=hi.fiber_space,
        ))

    return SimplificationSequence(robot=robot, env=env, spec=spec,
                                  levels=tuple(levels),
                                  projections=tuple(projections))


def enumerate_sequences(dims):
    """All sequence specs over the given simplification dimensions.

    `dims` may be an integer J (meaning dimensions 1..J) or an iterable of
    dimensions.  Returns the 2**J specs ordered by length, then
    lexicographically; the empty spec (trivial stack) comes first.
    """
    if isinstance(dims, (int, np.integer)):
        if dims < 0:
            raise ValueError("dimension count must be nonnegative")
        items = tuple(range(1, int(dims) + 1))
    else:
        items = tuple(sorted(set(int(d) for d in dims)))
    return list(_chain.from_iterable(
        combinations(items, r) for r in range(len(items) + 1)
    ))


def sequence_label(spec, full_dim):
    """Compact name for a stack: QRRT followed by the level dimensions.

    The full dimension is always the last digit group, so the trivial spec
    on an 8 dof robot is QRRT8 and spec (2, 4) is QRRT248.
    """
    return "QRRT" + "".join(str(d) for d in tuple(spec) + (int(full_dim),))


def admissibility_violations(robot, env, dim, states, sub_robot=None):
    """States free for the full robot whose projection the level rejects.

    `states` is an (m, dof) batch of full configurations.  Returns the list
    of row indices violating admissibility; always empty for the nested
    sub-robots built here (a sub-robot body in collision is a full-robot
    body in collision).  Exists as a checkable certificate, mostly for
    tests and the verification tools.  `sub_robot` overrides the restricted
    robot at the quotient level, which lets tests confirm the check fires
    for a deliberately non-nested simplification.
    """
    states = np.asarray(states, dtype=float)
    sub = restricted_robot(robot, dim) if sub_robot is None else sub_robot
    full_hit = geometry.collision_mask(robot, env, states)
    sub_hit = geometry.collision_mask(sub, env, states[:, :dim])
    return np.flatnonzero(sub_hit & ~full_hit).tolist()
