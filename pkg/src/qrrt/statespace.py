"""Product state spaces built from Euclidean blocks and planar rotations.

States are plain float64 numpy arrays owned by a :class:`StateSpace` that
knows, per coordinate, the bounds, whether the coordinate wraps, and its
metric weight.  Angular coordinates are normalized to [-pi, pi) and measure
distance along the shortest arc scaled by a per-factor weight, so a rotation
counts in the same workspace units as a translation.  Euclidean coordinates
use the plain 2-norm.  The combined metric is the 2-norm over all weighted
per-coordinate differences.

Spaces and states are treated as immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(theta):
    """Normalize an angle (scalar or array) to [-pi, pi)."""
    return (theta + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class Euclidean:
    """Axis-aligned bounded Euclidean block, one (lo, hi) pair per coordinate.

    Optional per-coordinate metric weights translate coordinate changes into
    workspace units, exactly like the SO2 weight: a revolute joint whose
    downstream links span length L gets weight L, so the metric bounds how
    far any body point can move.  None means unweighted (all ones).
    """

    bounds: tuple[tuple[float, float], ...]
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if len(self.bounds) == 0:
            raise ValueError("Euclidean factor needs at least one coordinate")
        for lo, hi in self.bounds:
            if not (lo < hi):
                raise ValueError(f"invalid bounds, need lo < hi, got ({lo}, {hi})")
        if self.weights is not None:
            if len(self.weights) != len(self.bounds):
                raise ValueError(
                    f"{len(self.bounds)} coordinates but {len(self.weights)} weights"
                )
            if any(not (w > 0.0) for w in self.weights):
                raise ValueError("metric weights must be positive")

    @property
    def dim(self):
        return len(self.bounds)


@dataclass(frozen=True)
class SO2:
    """Planar rotation coordinate with a metric weight in workspace units.

    The weight is normally the reach of whatever rotates, so that an angular
    difference of d contributes weight * d to the metric, comparable to a
    translation of the same magnitude.
    """

    weight: float = 1.0

    def __post_init__(self):
        if not (self.weight > 0.0):
            raise ValueError("SO2 weight must be positive")

    @property
    def dim(self):
        return 1


def interval(lo, hi, count=1):
    """Euclidean factor with `count` identical (lo, hi) coordinates."""
    return Euclidean(tuple((float(lo), float(hi)) for _ in range(count)))


class StateSpace:
    """Cartesian product of Euclidean and SO2 factors with a weighted metric."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("state space needs at least one factor")
        self.factors = factors

        lo, hi, wrap, weight = [], [], [], []
        for f in factors:
            if isinstance(f, Euclidean):
                ws = f.weights if f.weights is not None else (1.0,) * f.dim
                for (a, b), w in zip(f.bounds, ws):
                    lo.append(a)
                    hi.append(b)
                    wrap.append(False)
                    weight.append(float(w))
            elif isinstance(f, SO2):
                lo.append(-math.pi)
                hi.append(math.pi)
                wrap.append(True)
                weight.append(f.weight)
            else:
                raise TypeError(f"unsupported factor {f!r}")

        self.dim = len(lo)
        self.lo = np.array(lo)
        self.hi = np.array(hi)
        self.wrap_mask = np.array(wrap, dtype=bool)
        self.weights = np.array(weight)
        self.has_wrap = bool(self.wrap_mask.any())
        self._wrap_idx = np.flatnonzero(self.wrap_mask)
        self._weighted = bool((self.weights != 1.0).any())

        span = (self.hi - self.lo) * self.weights
        span[self.wrap_mask] = math.pi * self.weights[self.wrap_mask]
        self.diameter = float(np.sqrt(np.sum(span * span)))

    # -- construction / validation -------------------------------------------------

    def make_state(self, coords, atol=1e-9):
        """Validate and normalize raw coordinates into a state array.

        Angular coordinates are wrapped to [-pi, pi); Euclidean coordinates
        must already lie within bounds (up to `atol`) and are clamped onto
        the boundary if they exceed it by no more than `atol`.
        """
        x = np.array(coords, dtype=float).reshape(-1)
        if x.shape[0] != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {x.shape[0]}")
        if self.has_wrap:
            x[self._wrap_idx] = wrap_angle(x[self._wrap_idx])
        eu = ~self.wrap_mask
        if np.any(x[eu] < self.lo[eu] - atol) or np.any(x[eu] > self.hi[eu] + atol):
            raise ValueError(f"coordinates {x} outside bounds")
        np.clip(x, self.lo, np.nextafter(self.hi, -np.inf), out=x)
        return x

    def contains(self, x, atol=1e-9):
        x = np.asarray(x)
        if x.shape != (self.dim,):
            return False
        if np.any(x < self.lo - atol) or np.any(x > self.hi + atol):
            return False
        if self.has_wrap and np.any(x[self._wrap_idx] >= math.pi):
            return False
        return True

    # -- sampling ------------------------------------------------------------------

    def sample(self, rng):
        """One uniform state; angular coordinates uniform on [-pi, pi)."""
        return rng.uniform(self.lo, self.hi)

    def sample_batch(self, rng, count):
        """Uniform states stacked as a (count, dim) array."""
        return rng.uniform(self.lo, self.hi, size=(count, self.dim))

    # -- metric --------------------------------------------------------------------

    def delta(self, a, b):
        """Shortest difference b - a, wrapping angular coordinates."""
        d = b - a
        if self.has_wrap:
            d[self._wrap_idx] = wrap_angle(d[self._wrap_idx])
        return d

    def distance(self, a, b):
        d = self.delta(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
        if self._weighted:
            d = d * self.weights
        return float(np.sqrt(np.dot(d, d)))

    def squared_distances(self, pts, x):
        """Squared metric distances from each row of `pts` to state `x`."""
        d = pts - x
        if self.has_wrap:
            d[:, self._wrap_idx] = wrap_angle(d[:, self._wrap_idx])
        if self._weighted:
            d = d * self.weights
        return np.einsum("ij,ij->i", d, d)

    def distances(self, pts, x):
        return np.sqrt(self.squared_distances(pts, x))

    # -- geodesics -----------------------------------------------------------------

    def interpolate(self, a, b, t):
        """Point at fraction t of the geodesic from a to b (t in [0, 1]).

        Satisfies distance(a, interpolate(a, b, t)) == t * distance(a, b);
        angular coordinates move along the shortest arc.
        """
        d = self.delta(a, b)
        x = a + t * d
        if self.has_wrap:
            x[self._wrap_idx] = wrap_angle(x[self._wrap_idx])
        return x

    def interpolate_path(self, a, b, count):
        """(count, dim) array of geodesic states from a to b inclusive."""
        if count < 2:
            return np.vstack([a, b]) if count == 2 else np.asarray([a])
        ts = np.linspace(0.0, 1.0, count).reshape(-1, 1)
        d = self.delta(a, b)
        pts = a + ts * d
        if self.has_wrap:
            pts[:, self._wrap_idx] = wrap_angle(pts[:, self._wrap_idx])
        pts[0] = a
        pts[-1] = b
        return pts

    def steer(self, a, b, max_step):
        """Move from a toward b by at most max_step along the geodesic.

        Returns (state, distance_covered).  If b is within max_step the
        result is an exact copy of b, so goal coordinates survive bitwise.
        """
        d = self.distance(a, b)
        if d <= max_step:
            return b.copy(), d
        return self.interpolate(a, b, max_step / d), max_step

    # -- structure -----------------------------------------------------------------

    def slice(self, start, stop):
        """Sub-space covering coordinates [start, stop), splitting Euclidean
        factors as needed.  SO2 factors are atomic."""
        if not (0 <= start < stop <= self.dim):
            raise ValueError(f"bad slice [{start}, {stop}) of {self.dim}-dim space")
        out = []
        offset = 0
        for f in self.factors:
            f_lo, f_hi = offset, offset + f.dim
            s, e = max(start, f_lo), min(stop, f_hi)
            if s < e:
                if isinstance(f, SO2):
                    out.append(f)
                else:
                    ws = f.weights
                    out.append(Euclidean(
                        f.bounds[s - f_lo : e - f_lo],
                        None if ws is None else ws[s - f_lo : e - f_lo]))
            offset = f_hi
        return StateSpace(out)

    def prefix(self, dim):
        return self.slice(0, dim)

    def __eq__(self, other):
        return isinstance(other, StateSpace) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"StateSpace({list(self.factors)!r})"


def compose(quotient_point, fiber_point, space=None):
    """Concatenate a quotient-space point with a fiber point.

    If `space` is given, the combined dimension is checked against it and a
    ValueError raised on mismatch.
    """
    x = np.concatenate([np.asarray(quotient_point, dtype=float).reshape(-1),
                        np.asarray(fiber_point, dtype=float).reshape(-1)])
    if space is not None and x.shape[0] != space.dim:
        raise ValueError(
            f"composed point has {x.shape[0]} coordinates, space has {space.dim}"
        )
    return x
