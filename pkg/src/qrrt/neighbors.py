"""Nearest-neighbor lookup for growing trees.

The default is an exact vectorized linear scan, which is plenty at the
benchmark scales here.  A periodic kd-tree variant is available behind the
same contract: it maps angular coordinates onto a torus via scipy's boxsize
support and rebuilds lazily, scanning the un-indexed tail exactly, so both
implementations return the same nearest index up to metric ties.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from .statespace import TWO_PI


class LinearIndex:
    """Exact nearest neighbor by vectorized scan under the space metric.

    Keeps its own copy of the inserted points, pre-weighted and split into
    wrapped and unwrapped blocks, so a query is one matrix-vector product
    plus a cheap wrap correction instead of a full metric recompute.  The
    additive |x|^2 constant is dropped since it cannot change the argmin.
    """

    def __init__(self, space):
        self.space = space
        self._flat = np.flatnonzero(~space.wrap_mask)
        self._wrap = np.flatnonzero(space.wrap_mask)
        self._wf = space.weights[self._flat]
        self._ww = space.weights[self._wrap]
        self._n = 0
        cap = 64
        self._P = np.empty((cap, self._flat.size))
        self._sq = np.empty(cap)
        self._T = np.empty((cap, self._wrap.size))

    def _reserve(self, need):
        cap = self._P.shape[0]
        while cap < need:
            cap *= 2
        for name in ("_P", "_sq", "_T"):
            old = getattr(self, name)
            new = np.empty((cap,) + old.shape[1:])
            new[: self._n] = old[: self._n]
            setattr(self, name, new)

    def notify_insert(self, coords_view):
        n = coords_view.shape[0]
        if n > self._P.shape[0]:
            self._reserve(n)
        fresh = coords_view[self._n : n]
        pw = fresh[:, self._flat] * self._wf
        self._P[self._n : n] = pw
        self._sq[self._n : n] = np.einsum("ij,ij->i", pw, pw)
        self._T[self._n : n] = fresh[:, self._wrap]
        self._n = n

    def query(self, coords_view, x):
        n = coords_view.shape[0]
        if n != self._n:
            self.notify_insert(coords_view)
        xw = x[self._flat] * self._wf
        d2 = self._P[:n] @ (-2.0 * xw)
        d2 += self._sq[:n]
        for k in range(self._wrap.size):
            dd = np.abs(self._T[:n, k] - x[self._wrap[k]])
            dd = np.minimum(dd, TWO_PI - dd)
            d2 += (self._ww[k] * dd) ** 2
        return int(np.argmin(d2))


class PeriodicKDIndex:
    """kd-tree nearest neighbor handling angular wrap through a periodic box.

    Coordinates are shifted to [0, span) and scaled by the metric weights;
    angular dimensions get a box size of 2*pi*weight (true wraparound) and
    Euclidean dimensions a box large enough that the torus never shortcuts.
    The tree is rebuilt every `rebuild_every` insertions; newer points are
    scanned linearly.
    """

    def __init__(self, space, rebuild_every=256):
        self.space = space
        self.rebuild_every = rebuild_every
        self._tree = None
        self._tree_size = 0
        self._boxsize = np.empty(space.dim)
        span = (space.hi - space.lo) * space.weights
        for j in range(space.dim):
            if space.wrap_mask[j]:
                self._boxsize[j] = TWO_PI * space.weights[j]
            else:
                self._boxsize[j] = 4.0 * span[j]

    def _transform(self, pts):
        return (np.atleast_2d(pts) - self.space.lo) * self.space.weights

    def notify_insert(self, coords_view):
        n = coords_view.shape[0]
        if n - self._tree_size >= self.rebuild_every:
            self._tree = cKDTree(self._transform(coords_view), boxsize=self._boxsize)
            self._tree_size = n

    def query(self, coords_view, x):
        best_idx = -1
        best_d2 = math.inf
        if self._tree is not None:
            d, i = self._tree.query(self._transform(x)[0])
            best_idx, best_d2 = int(i), float(d * d)
        tail = coords_view[self._tree_size :]
        if tail.shape[0]:
            d2 = self.space.squared_distances(tail, x)
            j = int(np.argmin(d2))
            if d2[j] < best_d2:
                best_idx = self._tree_size + j
        return best_idx


def make_index(space, kind="linear"):
    if kind == "linear":
        return LinearIndex(space)
    if kind == "kdtree":
        return PeriodicKDIndex(space)
    raise ValueError(f"unknown nearest-neighbor index {kind!r}")
