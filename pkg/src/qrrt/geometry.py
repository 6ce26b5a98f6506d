"""Planar robots, environments, and exact collision checking.

Robots are rigid disks and kinematic chains of capsule links (width may be
zero, giving bare segments).  Obstacles are segments, circles, and axis
aligned boxes; the workspace is a box and any body leaving it counts as a
collision.  Self-collision is deliberately not checked.

The constraint function is binary: a configuration is either in collision
(1) or free (0).  All checks are exact closed-form distance tests for the
supported shape pairs, vectorized over whole batches of configurations so
grids and motion sweeps stay cheap.  Motion checks are certified, not just
sampled: clearance bounds close the gaps between sampled states, so a
motion reported valid is collision free along its entire extent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .statespace import SO2, Euclidean, StateSpace, wrap_angle

# A motion gap this small (in workspace units) that still cannot be
# certified free is treated as a grazing contact and rejected.
MIN_CERTIFIED_GAP = 1e-9

# Certifying a motion that grazes an obstacle over an extended stretch needs
# ~extent/clearance evaluations; past this budget the motion is rejected as
# too close to contact to prove free.
MAX_CERTIFY_EVALS = 4096

# ---------------------------------------------------------------------------
# shapes


@dataclass(frozen=True)
class Segment:
    a: tuple[float, float]
    b: tuple[float, float]


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float


@dataclass(frozen=True)
class Box:
    lo: tuple[float, float]
    hi: tuple[float, float]

    def __post_init__(self):
        if not (self.lo[0] < self.hi[0] and self.lo[1] < self.hi[1]):
            raise ValueError(f"degenerate box {self.lo}..{self.hi}")


@dataclass(frozen=True)
class Capsule:
    """Robot body: segment from a to b dilated by radius (0 = bare segment)."""

    a: tuple[float, float]
    b: tuple[float, float]
    radius: float


Obstacle = Segment | Circle | Box


@dataclass(frozen=True)
class Environment:
    workspace: Box
    obstacles: tuple[Obstacle, ...] = ()


# ---------------------------------------------------------------------------
# robots


@dataclass(frozen=True)
class Disk:
    """Freely translating disk; configuration is its center on R^2."""

    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError("disk radius must be positive")

    def config_space(self, workspace):
        return StateSpace([Euclidean(tuple(tuple(map(float, pair))
                                           for pair in zip(workspace.lo, workspace.hi)))])

    def motion_weights(self):
        """Per-coordinate sweep lever arms: translations are one-for-one."""
        return np.ones(2)

    @property
    def dof(self):
        return 2


@dataclass(frozen=True)
class FixedBaseChain:
    """Serial chain of capsule links anchored at a fixed base point.

    Joint i sets the angle of link i relative to link i-1 (relative to the
    x axis for link 1), so the pose of link i depends only on the first i
    joints.  All coordinates are commensurable joint angles, so the
    configuration space is the plain box of joint angles with the standard
    Euclidean metric; the per-joint sweep lever arms used to certify motions
    live in `motion_weights`.
    """

    base: tuple[float, float]
    link_lengths: tuple[float, ...]
    link_width: float = 0.0
    joint_limits: tuple[float, float] = (-math.pi, math.pi)

    def __post_init__(self):
        if len(self.link_lengths) == 0:
            raise ValueError("chain needs at least one link")
        if any(l <= 0 for l in self.link_lengths):
            raise ValueError("link lengths must be positive")
        if self.link_width < 0:
            raise ValueError("link width must be nonnegative")

    def config_space(self, workspace=None):
        lo, hi = self.joint_limits
        return StateSpace([Euclidean(tuple((lo, hi) for _ in self.link_lengths))])

    def motion_weights(self):
        """Per-coordinate sweep lever arms, in workspace units per radian.

        Joint i moves every body point downstream of it, the farthest by the
        total remaining link length, so that length bounds how far any point
        of the arm can travel per radian of joint motion.
        """
        return np.array([float(sum(self.link_lengths[i:]))
                         for i in range(len(self.link_lengths))])

    @property
    def dof(self):
        return len(self.link_lengths)

    @property
    def reach(self):
        return float(sum(self.link_lengths))


@dataclass(frozen=True)
class FloatingChain:
    """Disk base free to translate and rotate, towing a serial chain.

    Configuration is (x, y, theta, q_1..q_m): base center, base heading,
    then relative joint angles.  Link i leaves the base center at absolute
    angle theta + q_1 + ... + q_i.  With no links this is an oriented disk.

    The configuration space mixes lengths with angles, so its metric needs a
    length scale for the angular coordinates; each is weighted by its sweep
    lever arm (how far the farthest body point moves per radian), making
    distances workspace lengths throughout.  The same lever arms live in
    `motion_weights` for motion certification.
    """

    base_radius: float
    link_lengths: tuple[float, ...] = ()
    link_width: float = 0.0
    joint_limits: tuple[float, float] = (-math.pi, math.pi)

    def __post_init__(self):
        if not (self.base_radius > 0.0):
            raise ValueError("base radius must be positive")
        if any(l <= 0 for l in self.link_lengths):
            raise ValueError("link lengths must be positive")
        if self.link_width < 0:
            raise ValueError("link width must be nonnegative")

    def config_space(self, workspace):
        w = self.motion_weights()
        factors = [
            Euclidean(tuple(tuple(map(float, pair))
                            for pair in zip(workspace.lo, workspace.hi))),
            SO2(w[2]),
        ]
        if self.link_lengths:
            lo, hi = self.joint_limits
            factors.append(Euclidean(tuple((lo, hi) for _ in self.link_lengths),
                                     tuple(w[3:])))
        return StateSpace(factors)

    def motion_weights(self):
        """Per-coordinate sweep lever arms (see FixedBaseChain.motion_weights).

        Translations move every body point one-for-one.  The heading sweeps
        the chain tip through the total link length per radian (or the rim of
        a bare base through its radius); joint i sweeps the links downstream
        of it.
        """
        total = float(sum(self.link_lengths))
        levers = [float(sum(self.link_lengths[i:]))
                  for i in range(len(self.link_lengths))]
        return np.array([1.0, 1.0, max(self.base_radius, total)] + levers)

    @property
    def dof(self):
        return 3 + len(self.link_lengths)

    @property
    def reach(self):
        return self.base_radius + float(sum(self.link_lengths))


Robot = Disk | FixedBaseChain | FloatingChain


# ---------------------------------------------------------------------------
# batched forward kinematics


def _chain_segments(origins, angles, lengths):
    """Batched chain FK.

    origins: (m, 2) start points, angles: (m, k) absolute link angles,
    lengths: (k,).  Returns (m, k, 4) segments (x1, y1, x2, y2).
    """
    steps = np.empty(angles.shape + (2,))
    steps[..., 0] = np.cos(angles) * lengths
    steps[..., 1] = np.sin(angles) * lengths
    pts = np.cumsum(steps, axis=1)
    pts += origins[:, None, :]
    m, k = angles.shape
    segs = np.empty((m, k, 4))
    segs[:, 0, :2] = origins
    segs[:, 1:, :2] = pts[:, :-1]
    segs[:, :, 2:] = pts
    return segs


def _robot_bodies(robot, X):
    """Bodies for a batch of configurations X of shape (m, dof).

    Returns (segments, seg_radius, disks) where segments is (m, S, 4) or
    None, disks is (m, D, 3) or None.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    m = X.shape[0]
    if isinstance(robot, Disk):
        disks = np.empty((m, 1, 3))
        disks[:, 0, :2] = X[:, :2]
        disks[:, 0, 2] = robot.radius
        return None, 0.0, disks
    if isinstance(robot, FixedBaseChain):
        angles = np.cumsum(X, axis=1)
        origins = np.broadcast_to(np.asarray(robot.base, dtype=float), (m, 2))
        segs = _chain_segments(origins, angles, np.asarray(robot.link_lengths))
        return segs, robot.link_width / 2.0, None
    if isinstance(robot, FloatingChain):
        disks = np.empty((m, 1, 3))
        disks[:, 0, :2] = X[:, :2]
        disks[:, 0, 2] = robot.base_radius
        if not robot.link_lengths:
            return None, 0.0, disks
        angles = X[:, 2:3] + np.cumsum(X[:, 3:], axis=1)
        segs = _chain_segments(X[:, :2], angles, np.asarray(robot.link_lengths))
        return segs, robot.link_width / 2.0, disks
    raise TypeError(f"unsupported robot {robot!r}")


def forward_kinematics(robot, x):
    """Body shapes for a single configuration, base-outward order."""
    segs, r, disks = _robot_bodies(robot, np.asarray(x, dtype=float)[None, :])
    bodies = []
    if disks is not None:
        cx, cy, rad = disks[0, 0]
        bodies.append(Circle((float(cx), float(cy)), float(rad)))
    if segs is not None:
        for s in segs[0]:
            bodies.append(Capsule((float(s[0]), float(s[1])),
                                  (float(s[2]), float(s[3])), r))
    return bodies


# ---------------------------------------------------------------------------
# distance kernels
#
# All kernels take x/y components as separate arrays and broadcast every
# argument against every other, so one call can pair a whole batch of robot
# bodies (shape (m, S, 1)) with a whole batch of obstacle primitives
# (shape (E,)) at once.


def _point_segment_sq(qx, qy, ax, ay, bx, by):
    """Squared distance from points q to segments a-b.

    Degenerate segments fall back to the distance to their first endpoint.
    """
    ux = bx - ax
    uy = by - ay
    uu = ux * ux + uy * uy
    wx = qx - ax
    wy = qy - ay
    safe = np.where(uu > 0.0, uu, 1.0)
    t = np.where(uu > 0.0, (wx * ux + wy * uy) / safe, 0.0)
    t = np.minimum(np.maximum(t, 0.0), 1.0)
    dx = wx - t * ux
    dy = wy - t * uy
    return dx * dx + dy * dy


def _segment_segment_sq(p1x, p1y, p2x, p2y, ax, ay, bx, by):
    """Squared distance between segments p1-p2 and segments a-b.

    Proper crossings give exactly zero; otherwise the minimum over the four
    endpoint-to-segment distances, which is exact for planar segments.  The
    four point tests are fused into one body so the shared edge vectors are
    computed once per call.
    """
    rx = p2x - p1x
    ry = p2y - p1y
    sx = bx - ax
    sy = by - ay
    wx = p1x - ax
    wy = p1y - ay
    vx = wx + rx
    vy = wy + ry
    rr = rx * rx + ry * ry
    ss = sx * sx + sy * sy
    inv_ss = 1.0 / np.where(ss > 0.0, ss, 1.0)
    inv_rr = 1.0 / np.where(rr > 0.0, rr, 1.0)

    d1 = ry * wx - rx * wy
    d2 = rx * (sy - wy) - ry * (sx - wx)
    d3 = sx * wy - sy * wx
    d4 = sx * vy - sy * vx
    crossing = (d1 * d2 < 0.0) & (d3 * d4 < 0.0)

    t = np.minimum(np.maximum((wx * sx + wy * sy) * inv_ss, 0.0), 1.0)
    dx = wx - t * sx
    dy = wy - t * sy
    sq = dx * dx + dy * dy

    t = np.minimum(np.maximum((vx * sx + vy * sy) * inv_ss, 0.0), 1.0)
    dx = vx - t * sx
    dy = vy - t * sy
    sq = np.minimum(sq, dx * dx + dy * dy)

    t = np.minimum(np.maximum(-(wx * rx + wy * ry) * inv_rr, 0.0), 1.0)
    dx = wx + t * rx
    dy = wy + t * ry
    sq = np.minimum(sq, dx * dx + dy * dy)

    t = np.minimum(np.maximum(((sx - wx) * rx + (sy - wy) * ry) * inv_rr, 0.0), 1.0)
    dx = sx - wx - t * rx
    dy = sy - wy - t * ry
    sq = np.minimum(sq, dx * dx + dy * dy)

    return np.where(crossing, 0.0, sq)


def _point_boxes_sq(px, py, blo, bhi):
    """Squared distance from points (..., 1) to solid boxes blo/bhi (B, 2)."""
    dx = np.maximum(np.maximum(blo[:, 0] - px, 0.0), px - bhi[:, 0])
    dy = np.maximum(np.maximum(blo[:, 1] - py, 0.0), py - bhi[:, 1])
    return dx * dx + dy * dy


def _points_in_boxes(px, py, blo, bhi):
    return ((px >= blo[:, 0]) & (px <= bhi[:, 0])
            & (py >= blo[:, 1]) & (py <= bhi[:, 1]))


# ---------------------------------------------------------------------------
# collision checking


class CollisionChecker:
    """Precompiled collision tests for one (robot, environment) pair.

    Obstacles are flattened into stacked coordinate arrays at construction:
    box boundaries become four edges each and join the segment obstacles in
    one edge list, so a whole batch of configurations is checked with a
    fixed, small number of vectorized kernel calls.

    Besides boolean collision flags the checker computes exact clearances
    (smallest body-to-obstacle distance), which lets `motion_valid` certify
    whole motion segments: the robot's sweep lever arms bound how far any
    body point travels across a segment, so two clearances that together
    exceed that bound prove the segment free without further sampling.
    """

    def __init__(self, robot, env):
        self.robot = robot
        self.env = env
        self.space = robot.config_space(env.workspace)
        self._sweep_weights = robot.motion_weights()
        self._ws_lo = np.asarray(env.workspace.lo, dtype=float)
        self._ws_hi = np.asarray(env.workspace.hi, dtype=float)

        seg_obs = [o for o in env.obstacles if isinstance(o, Segment)]
        circ_obs = [o for o in env.obstacles if isinstance(o, Circle)]
        box_obs = [o for o in env.obstacles if isinstance(o, Box)]
        self._sa = np.array([o.a for o in seg_obs], float).reshape(-1, 2)
        self._sb = np.array([o.b for o in seg_obs], float).reshape(-1, 2)
        self._circ = np.array([[o.center[0], o.center[1], o.radius]
                               for o in circ_obs], float).reshape(-1, 3)
        self._blo = np.array([o.lo for o in box_obs], float).reshape(-1, 2)
        self._bhi = np.array([o.hi for o in box_obs], float).reshape(-1, 2)

        ea = [tuple(p) for p in self._sa]
        eb = [tuple(p) for p in self._sb]
        for (lx, ly), (hx, hy) in zip(self._blo, self._bhi):
            corners = [(lx, ly), (hx, ly), (hx, hy), (lx, hy)]
            for i in range(4):
                ea.append(corners[i])
                eb.append(corners[(i + 1) % 4])
        self._ea = np.array(ea, float).reshape(-1, 2)
        self._eb = np.array(eb, float).reshape(-1, 2)

    def collision_mask(self, X):
        """Boolean collision flags for configurations X of shape (m, dof)."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        segs, seg_r, disks = _robot_bodies(self.robot, X)
        hit = np.zeros(X.shape[0], dtype=bool)

        if disks is not None:
            cx = disks[..., 0]
            cy = disks[..., 1]
            r = disks[..., 2]
            hit |= ((cx < self._ws_lo[0] + r) | (cx > self._ws_hi[0] - r)
                    | (cy < self._ws_lo[1] + r)
                    | (cy > self._ws_hi[1] - r)).any(axis=1)
            r2 = (r * r)[..., None]
            if self._sa.shape[0]:
                d2 = _point_segment_sq(cx[..., None], cy[..., None],
                                       self._sa[:, 0], self._sa[:, 1],
                                       self._sb[:, 0], self._sb[:, 1])
                hit |= (d2 <= r2).any(axis=(1, 2))
            if self._circ.shape[0]:
                dx = cx[..., None] - self._circ[:, 0]
                dy = cy[..., None] - self._circ[:, 1]
                rr = r[..., None] + self._circ[:, 2]
                hit |= (dx * dx + dy * dy <= rr * rr).any(axis=(1, 2))
            if self._blo.shape[0]:
                d2 = _point_boxes_sq(cx[..., None], cy[..., None],
                                     self._blo, self._bhi)
                hit |= (d2 <= r2).any(axis=(1, 2))

        if segs is not None:
            p1x = segs[..., 0]
            p1y = segs[..., 1]
            p2x = segs[..., 2]
            p2y = segs[..., 3]
            lox = self._ws_lo[0] + seg_r
            loy = self._ws_lo[1] + seg_r
            hix = self._ws_hi[0] - seg_r
            hiy = self._ws_hi[1] - seg_r
            out = ((p1x < lox) | (p1x > hix) | (p1y < loy) | (p1y > hiy)
                   | (p2x < lox) | (p2x > hix) | (p2y < loy) | (p2y > hiy))
            hit |= out.any(axis=1)
            if self._ea.shape[0]:
                d2 = _segment_segment_sq(p1x[..., None], p1y[..., None],
                                         p2x[..., None], p2y[..., None],
                                         self._ea[:, 0], self._ea[:, 1],
                                         self._eb[:, 0], self._eb[:, 1])
                hit |= (d2 <= seg_r * seg_r).any(axis=(1, 2))
            if self._circ.shape[0]:
                rr = seg_r + self._circ[:, 2]
                d2 = _point_segment_sq(self._circ[:, 0], self._circ[:, 1],
                                       p1x[..., None], p1y[..., None],
                                       p2x[..., None], p2y[..., None])
                hit |= (d2 <= rr * rr).any(axis=(1, 2))
            if self._blo.shape[0]:
                inside = _points_in_boxes(p1x[..., None], p1y[..., None],
                                          self._blo, self._bhi)
                inside |= _points_in_boxes(p2x[..., None], p2y[..., None],
                                           self._blo, self._bhi)
                hit |= inside.any(axis=(1, 2))

        return hit

    def in_collision(self, x):
        return bool(self.collision_mask(np.asarray(x, dtype=float)[None, :])[0])

    def clearance_batch(self, X):
        """Exact clearance per configuration of X, shape (m, dof) -> (m,).

        The clearance is the smallest distance from any robot body to any
        obstacle or workspace wall, minus the body (and obstacle) radii.
        Nonpositive clearance coincides with a collision, except that bodies
        wholly inside a box report -1 rather than a penetration depth.
        """
        X = np.atleast_2d(np.asarray(X, dtype=float))
        segs, seg_r, disks = _robot_bodies(self.robot, X)
        best = np.full(X.shape[0], np.inf)

        if disks is not None:
            cx = disks[..., 0]
            cy = disks[..., 1]
            r = disks[..., 2]
            wall = np.minimum(
                np.minimum(cx - self._ws_lo[0], self._ws_hi[0] - cx),
                np.minimum(cy - self._ws_lo[1], self._ws_hi[1] - cy)) - r
            best = np.minimum(best, wall.min(axis=1))
            if self._sa.shape[0]:
                d2 = _point_segment_sq(cx[..., None], cy[..., None],
                                       self._sa[:, 0], self._sa[:, 1],
                                       self._sb[:, 0], self._sb[:, 1])
                best = np.minimum(
                    best, (np.sqrt(d2) - r[..., None]).min(axis=(1, 2)))
            if self._circ.shape[0]:
                dx = cx[..., None] - self._circ[:, 0]
                dy = cy[..., None] - self._circ[:, 1]
                d = np.sqrt(dx * dx + dy * dy) - (r[..., None] + self._circ[:, 2])
                best = np.minimum(best, d.min(axis=(1, 2)))
            if self._blo.shape[0]:
                d2 = _point_boxes_sq(cx[..., None], cy[..., None],
                                     self._blo, self._bhi)
                best = np.minimum(
                    best, (np.sqrt(d2) - r[..., None]).min(axis=(1, 2)))

        if segs is not None:
            p1x = segs[..., 0]
            p1y = segs[..., 1]
            p2x = segs[..., 2]
            p2y = segs[..., 3]
            # a segment's least wall distance is attained at an endpoint
            wall = np.minimum(
                np.minimum(np.minimum(p1x, p2x) - self._ws_lo[0],
                           self._ws_hi[0] - np.maximum(p1x, p2x)),
                np.minimum(np.minimum(p1y, p2y) - self._ws_lo[1],
                           self._ws_hi[1] - np.maximum(p1y, p2y))) - seg_r
            best = np.minimum(best, wall.min(axis=1))
            if self._ea.shape[0]:
                d2 = _segment_segment_sq(p1x[..., None], p1y[..., None],
                                         p2x[..., None], p2y[..., None],
                                         self._ea[:, 0], self._ea[:, 1],
                                         self._eb[:, 0], self._eb[:, 1])
                best = np.minimum(
                    best, (np.sqrt(d2) - seg_r).min(axis=(1, 2)))
            if self._circ.shape[0]:
                d2 = _point_segment_sq(self._circ[:, 0], self._circ[:, 1],
                                       p1x[..., None], p1y[..., None],
                                       p2x[..., None], p2y[..., None])
                d = np.sqrt(d2) - (seg_r + self._circ[:, 2])
                best = np.minimum(best, d.min(axis=(1, 2)))
            if self._blo.shape[0]:
                inside = _points_in_boxes(p1x[..., None], p1y[..., None],
                                          self._blo, self._bhi)
                inside |= _points_in_boxes(p2x[..., None], p2y[..., None],
                                           self._blo, self._bhi)
                best = np.where(inside.any(axis=(1, 2)),
                                np.minimum(best, -1.0), best)

        return best

    def sweep_bound(self, a, b):
        """Upper bound on how far any body point moves along the geodesic
        from a to b: the 1-norm of the coordinate difference weighted by the
        robot's sweep lever arms.

        Valid because each lever arm is the largest distance the coordinate
        sweeps any body point through per unit of coordinate change (unit,
        for translations).
        """
        d = self.space.delta(np.asarray(a, dtype=float),
                             np.asarray(b, dtype=float))
        return float(np.abs(d) @ self._sweep_weights)

    def motion_valid(self, a, b, resolution, chunk=64):
        """True iff the whole geodesic from a to b is certified free.

        States spaced at most `resolution` apart are checked first.  Every
        gap between consecutive free states is then either certified -- the
        endpoint clearances together exceed the sweep bound across the gap,
        so no body point can reach an obstacle inside it -- or bisected and
        re-examined.  Accepted motions are therefore collision free along
        their entire continuous extent; grazing contacts are rejected.
        `resolution` only sets the initial sampling density.
        """
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        d = self.space.distance(a, b)
        if d == 0.0:
            return not self.in_collision(a)
        count = max(2, int(math.ceil(d / resolution)) + 1)
        pts = self.space.interpolate_path(a, b, count)
        clear = np.empty(count)
        for s in range(0, count, chunk):
            c = self.clearance_batch(pts[s : s + chunk])
            if (c <= 0.0).any():
                return False
            clear[s : s + chunk] = c

        gap = self.sweep_bound(a, b) / (count - 1)
        pending = [(pts[i], pts[i + 1], clear[i], clear[i + 1])
                   for i in range(count - 1)
                   if clear[i] + clear[i + 1] <= gap]
        wrap = self.space._wrap_idx
        evals = 0
        while pending:
            gap *= 0.5
            evals += len(pending)
            if gap < MIN_CERTIFIED_GAP or evals > MAX_CERTIFY_EVALS:
                return False  # grazing contact: cannot certify as free
            P = np.array([s[0] for s in pending])
            Q = np.array([s[1] for s in pending])
            D = Q - P
            if wrap.size:
                D[:, wrap] = wrap_angle(D[:, wrap])
            M = P + 0.5 * D
            if wrap.size:
                M[:, wrap] = wrap_angle(M[:, wrap])
            cm = np.empty(len(pending))
            for s in range(0, len(pending), chunk):
                c = self.clearance_batch(M[s : s + chunk])
                if (c <= 0.0).any():
                    return False
                cm[s : s + chunk] = c
            nxt = []
            for (p, q, cp, cq), m, c in zip(pending, M, cm):
                if cp + c <= gap:
                    nxt.append((p, m, cp, c))
                if c + cq <= gap:
                    nxt.append((m, q, c, cq))
            pending = nxt
        return True


@lru_cache(maxsize=256)
def checker_for(robot, env):
    """Cached checker; robots and environments are frozen and hashable."""
    return CollisionChecker(robot, env)


def in_collision(robot, env, x):
    """Binary constraint: True iff any body hits an obstacle or leaves the
    workspace at configuration x."""
    return checker_for(robot, env).in_collision(x)


def collision_mask(robot, env, X):
    return checker_for(robot, env).collision_mask(X)


def motion_valid(robot, env, a, b, resolution=None):
    """Certify the straight-line (geodesic) motion from a to b as free.

    Initial sampling resolution defaults to 1% of the configuration space
    diameter; clearance certificates then close every gap, so the verdict
    covers the continuous motion regardless of the resolution chosen.
    """
    chk = checker_for(robot, env)
    if resolution is None:
        resolution = 0.01 * chk.space.diameter
    return chk.motion_valid(np.asarray(a, float), np.asarray(b, float), resolution)
