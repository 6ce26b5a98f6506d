"""Built-in benchmark scenarios and the scenario config format.

A scenario bundles a robot, an environment, a start/goal query, the
simplification dimensions the benchmarks may use, and default planner
parameters.  Scenarios come from the built-in registry (optionally
parameterized, e.g. "chain:n=5" or "narrow_passage:alpha=0.115") or from a
TOML file; see `load_scenario` for the schema.

Built-ins:

* chain: fixed-base arm of n equal links (total reach 1) that must swing
  from hanging straight down to standing straight up through a slot in a
  horizontal slab.
* floating: free-floating disk towing m links, threading the gap between
  two round pillars.
* narrow_passage: disk of radius 0.1 towing two links, crossing a wall
  whose opening has half-height alpha; the passage is traversable exactly
  when alpha is at least the disk radius.
* empty: a disk in an empty box, for baselines and determinism checks.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .geometry import (Box, Circle, Disk, Environment, FixedBaseChain,
                       FloatingChain, Segment, checker_for)
from .planner import PlannerParams
from .quotient import quotient_dims, validate_spec


class ConfigError(ValueError):
    """Bad scenario name, parameter, or config file contents."""


@dataclass(frozen=True)
class Scenario:
    name: str
    robot: object
    env: Environment
    start: tuple[float, ...]
    goal: tuple[float, ...]
    projection_dims: tuple[int, ...]
    params: PlannerParams = PlannerParams()

    def space(self):
        return self.robot.config_space(self.env.workspace)

    def checker(self):
        return checker_for(self.robot, self.env)


def _validated(scenario):
    space = scenario.space()
    try:
        start = space.make_state(scenario.start)
        goal = space.make_state(scenario.goal)
    except ValueError as e:
        raise ConfigError(f"bad start or goal: {e}") from e
    chk = scenario.checker()
    if chk.in_collision(start):
        raise ConfigError("start configuration is in collision")
    if chk.in_collision(goal):
        raise ConfigError("goal configuration is in collision")
    try:
        validate_spec(scenario.projection_dims, scenario.robot)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    return scenario


def chain_scenario(n=5):
    """Fixed-base arm threading a slot in a horizontal slab."""
    n = int(n)
    if not 2 <= n <= 8:
        raise ConfigError(f"chain needs 2..8 links, got {n}")
    robot = FixedBaseChain(base=(0.0, 0.0), link_lengths=(1.0 / n,) * n)
    env = Environment(
        workspace=Box((-1.1, -1.1), (1.1, 1.1)),
        obstacles=(
            Box((0.18, 0.3), (1.2, 0.6)),
            Box((-1.2, 0.3), (-0.18, 0.6)),
        ),
    )
    start = (-math.pi / 2.0,) + (0.0,) * (n - 1)
    goal = (math.pi / 2.0,) + (0.0,) * (n - 1)
    return _validated(Scenario(
        name=f"chain{n}", robot=robot, env=env, start=start, goal=goal,
        projection_dims=tuple(range(1, n)),
        params=PlannerParams(resolution=0.1),
    ))


def floating_scenario(m=4):
    """Free-floating disk with m links passing between two pillars.

    Start and goal mirror each other with the chain trailing away from the
    pillars on both sides, so the robot must tow its links through the gap
    and reverse its heading along the way.
    """
    m = int(m)
    if not 0 <= m <= 4:
        raise ConfigError(f"floating chain needs 0..4 links, got {m}")
    robot = FloatingChain(base_radius=0.08, link_lengths=(0.15,) * m)
    env = Environment(
        workspace=Box((-1.5, -0.6), (1.5, 0.6)),
        obstacles=(
            Circle((0.0, 0.42), 0.3),
            Circle((0.0, -0.42), 0.3),
        ),
    )
    start = (-0.8, 0.0, math.pi) + (0.0,) * m
    goal = (0.8, 0.0, 0.0) + (0.0,) * m
    return _validated(Scenario(
        name=f"floating{m}", robot=robot, env=env, start=start, goal=goal,
        projection_dims=quotient_dims(robot),
    ))


def narrow_passage_scenario(alpha=0.115):
    """Disk-plus-one-link robot (4 dof) crossing a wall with an opening of
    half-height alpha.

    The wall is two axis-aligned boxes spanning the workspace vertically,
    pierced by a corridor of height 2 * alpha and length 0.6 centered at
    y = 0.3 — off the straight start-goal line, so goal-directed growth
    alone never finds it.  Start and goal poses mirror each other across
    the wall.  The disk radius is 0.1, so the corridor is traversable
    exactly when alpha >= 0.1; values just above 0.1 leave almost no
    clearance and starve uninformed sampling.  Projections: disk position
    (2), then the oriented base (3).
    """
    alpha = float(alpha)
    if not 0.0 < alpha < 0.7:
        raise ConfigError(f"alpha must be in (0, 0.7), got {alpha}")
    corridor_y = 0.3
    robot = FloatingChain(base_radius=0.1, link_lengths=(0.3,))
    env = Environment(
        workspace=Box((-1.5, -0.75), (1.5, 0.75)),
        obstacles=(
            Box((-0.3, corridor_y + alpha), (0.3, 1.0)),
            Box((-0.3, -0.9), (0.3, corridor_y - alpha)),
        ),
    )
    start = (-0.9, 0.0, 0.0, 0.0)
    goal = (0.9, 0.0, math.pi, 0.0)
    return _validated(Scenario(
        name=f"narrow_passage_a{alpha:g}", robot=robot, env=env,
        start=start, goal=goal, projection_dims=(2, 3),
        params=PlannerParams(resolution=0.008),
    ))


def empty_scenario():
    """Disk in an empty unit box."""
    robot = Disk(0.1)
    env = Environment(workspace=Box((0.0, 0.0), (1.0, 1.0)))
    return _validated(Scenario(
        name="empty", robot=robot, env=env,
        start=(0.2, 0.2), goal=(0.8, 0.8), projection_dims=(),
    ))


BUILTIN_SCENARIOS = {
    "chain": chain_scenario,
    "floating": floating_scenario,
    "narrow_passage": narrow_passage_scenario,
    "empty": empty_scenario,
}


def builtin_scenario(name, **kwargs):
    if name not in BUILTIN_SCENARIOS:
        raise ConfigError(
            f"unknown scenario {name!r} (choices: {sorted(BUILTIN_SCENARIOS)})"
        )
    try:
        return BUILTIN_SCENARIOS[name](**kwargs)
    except TypeError as e:
        raise ConfigError(f"bad parameters for scenario {name!r}: {e}") from e


def _parse_value(text):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def resolve_scenario(arg):
    """Scenario from a CLI-style argument.

    Accepts a built-in name with optional parameters after a colon
    ("chain:n=8", "narrow_passage:alpha=0.3") or a path to a TOML file.
    """
    if arg.endswith(".toml"):
        return load_scenario(arg)
    name, _, rest = arg.partition(":")
    kwargs = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise ConfigError(f"bad scenario parameter {item!r}, want key=value")
            kwargs[key.strip()] = _parse_value(val.strip())
    return builtin_scenario(name.strip(), **kwargs)


# ---------------------------------------------------------------------------
# TOML scenario files


def _require(table, key, where):
    if key not in table:
        raise ConfigError(f"missing {key!r} in {where}")
    return table[key]


def _pair(value, where):
    if not (isinstance(value, list) and len(value) == 2):
        raise ConfigError(f"{where} must be a pair of numbers")
    return (float(value[0]), float(value[1]))


def _robot_from_table(table):
    kind = _require(table, "kind", "[robot]")
    try:
        if kind == "disk":
            return Disk(radius=float(_require(table, "radius", "[robot]")))
        if kind == "fixed_chain":
            return FixedBaseChain(
                base=_pair(_require(table, "base", "[robot]"), "robot.base"),
                link_lengths=tuple(float(l) for l in
                                   _require(table, "link_lengths", "[robot]")),
                link_width=float(table.get("link_width", 0.0)),
                joint_limits=_pair(table.get("joint_limits",
                                             [-math.pi, math.pi]),
                                   "robot.joint_limits"),
            )
        if kind == "floating_chain":
            return FloatingChain(
                base_radius=float(_require(table, "base_radius", "[robot]")),
                link_lengths=tuple(float(l) for l in
                                   table.get("link_lengths", [])),
                link_width=float(table.get("link_width", 0.0)),
                joint_limits=_pair(table.get("joint_limits",
                                             [-math.pi, math.pi]),
                                   "robot.joint_limits"),
            )
    except (ValueError, TypeError) as e:
        raise ConfigError(f"bad [robot] table: {e}") from e
    raise ConfigError(f"unknown robot kind {kind!r} "
                      "(disk, fixed_chain, floating_chain)")


def _obstacle_from_table(table, i):
    where = f"[[environment.obstacles]] #{i}"
    kind = _require(table, "kind", where)
    try:
        if kind == "box":
            return Box(_pair(_require(table, "lo", where), f"{where}.lo"),
                       _pair(_require(table, "hi", where), f"{where}.hi"))
        if kind == "circle":
            return Circle(_pair(_require(table, "center", where),
                                f"{where}.center"),
                          float(_require(table, "radius", where)))
        if kind == "segment":
            return Segment(_pair(_require(table, "a", where), f"{where}.a"),
                           _pair(_require(table, "b", where), f"{where}.b"))
    except (ValueError, TypeError) as e:
        raise ConfigError(f"bad {where}: {e}") from e
    raise ConfigError(f"unknown obstacle kind {kind!r} in {where} "
                      "(box, circle, segment)")


def load_scenario(path):
    """Scenario from a TOML file.

    Schema (see the shipped configs/ directory for a worked example):

        name = "demo"                       # optional, defaults to filename
        [robot]
        kind = "floating_chain"             # disk | fixed_chain | floating_chain
        base_radius = 0.1                   # kind-specific fields
        link_lengths = [0.15, 0.15]
        [environment]
        workspace = { lo = [-1.5, -0.75], hi = [1.5, 0.75] }
        [[environment.obstacles]]
        kind = "box"                        # box | circle | segment
        lo = [-0.1, 0.115]
        hi = [0.1, 0.9]
        [query]
        start = [-0.9, 0.0, 0.0, 0.0, 0.0]
        goal = [0.9, 0.0, 3.14159, 0.0, 0.0]
        [projections]
        dims = [2, 3]                       # optional, defaults to all
        [planner]                           # optional overrides
        step = 0.5
        resolution = 0.008
        goal_bias = 0.05
    """
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"scenario file not found: {path}")
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"invalid TOML in {path}: {e}") from e

    robot = _robot_from_table(_require(data, "robot", "scenario file"))

    env_table = _require(data, "environment", "scenario file")
    ws = _require(env_table, "workspace", "[environment]")
    try:
        workspace = Box(_pair(_require(ws, "lo", "workspace"), "workspace.lo"),
                        _pair(_require(ws, "hi", "workspace"), "workspace.hi"))
    except ValueError as e:
        raise ConfigError(f"bad workspace: {e}") from e
    obstacles = tuple(_obstacle_from_table(t, i)
                      for i, t in enumerate(env_table.get("obstacles", [])))
    env = Environment(workspace=workspace, obstacles=obstacles)

    query = _require(data, "query", "scenario file")
    start = tuple(float(v) for v in _require(query, "start", "[query]"))
    goal = tuple(float(v) for v in _require(query, "goal", "[query]"))

    dims = data.get("projections", {}).get("dims")
    dims = tuple(int(d) for d in dims) if dims is not None \
        else quotient_dims(robot)

    p = data.get("planner", {})
    params = PlannerParams(
        step=float(p["step"]) if "step" in p else None,
        goal_bias=float(p.get("goal_bias", 0.05)),
        goal_tolerance=float(p.get("goal_tolerance", 0.0)),
        resolution=float(p["resolution"]) if "resolution" in p else None,
    )

    name = data.get("name") or str(path).rsplit("/", 1)[-1].removesuffix(".toml")
    return _validated(Scenario(name=name, robot=robot, env=env, start=start,
                               goal=goal, projection_dims=dims, params=params))
