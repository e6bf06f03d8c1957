"""Shipped weighted-sum backends and a synthetic front sampler."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import objective_vector
from .errors import DimensionMismatch, ZeroWeight
from .scalarization import WsProblem

_BOUNDARY_TOL = 1e-12


class EllipsoidProblem(WsProblem):
    """``min diag(l) @ x`` subject to ``||x|| <= 1``.

    The image set is an axis-aligned ellipsoid with semi-axes ``l``.  For any
    nonzero weight the minimizer is ``x* = -D w / ||D w||`` (``D = diag(l)``),
    so solves are exact.  Decisions are the vectors ``x*``.
    """

    def __init__(self, semi_axes: Sequence[float]):
        l = np.array(semi_axes, dtype=float).reshape(-1)
        if l.size < 2 or not np.all(np.isfinite(l)) or np.any(l <= 0):
            raise ValueError(f"semi-axes must be >= 2 positive finite numbers, got {semi_axes}")
        l.setflags(write=False)
        self.semi_axes = l

    def __repr__(self) -> str:
        return f"EllipsoidProblem(semi_axes={self.semi_axes.tolist()})"

    @property
    def n_objectives(self) -> int:
        return self.semi_axes.size

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return self.semi_axes * np.asarray(x, dtype=float)

    def solve_ws(self, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        w = np.asarray(w, dtype=float)
        if w.shape != self.semi_axes.shape:
            raise DimensionMismatch(f"weight has shape {w.shape}, expected {self.semi_axes.shape}")
        dw = self.semi_axes * w
        norm = np.linalg.norm(dw)
        if norm == 0:
            raise ZeroWeight("weighted-sum solve needs a nonzero weight")
        x = -dw / norm
        return x, self.evaluate(x)

    def is_dominated(self, j: np.ndarray) -> bool | None:
        # Boundary points are efficient iff the outward normal (same signs as j) has no positive entry.
        j = np.asarray(j, dtype=float)
        radius = float(np.sum((j / self.semi_axes) ** 2))
        if radius > 1 + _BOUNDARY_TOL:
            return None
        if radius < 1 - _BOUNDARY_TOL:
            return True
        return bool(np.any(j / self.semi_axes > _BOUNDARY_TOL))


class PointCloudProblem(WsProblem):
    """Finite feasible image set given by sample points; decisions are row indices.

    Ties in ``w @ J`` go to the lexicographically smallest objective vector,
    then to the smallest index, so weak minima (e.g. for ``w = e_i``) resolve
    to an efficient point deterministically.
    """

    def __init__(self, points: np.ndarray | Sequence[Sequence[float]], ids: Sequence[str] | None = None):
        p = np.array(points, dtype=float)
        if p.ndim != 2 or p.shape[0] == 0:
            raise DimensionMismatch(f"point cloud must be a nonempty 2-D array, got shape {p.shape}")
        if p.shape[1] < 2:
            raise DimensionMismatch("point cloud needs at least 2 objectives")
        if not np.all(np.isfinite(p)):
            raise ValueError("point cloud contains non-finite values")
        if ids is not None and len(ids) != p.shape[0]:
            raise DimensionMismatch(f"{len(ids)} ids for {p.shape[0]} points")
        p.setflags(write=False)
        self.points = p
        self.ids = None if ids is None else list(ids)

    def __repr__(self) -> str:
        return f"PointCloudProblem({self.points.shape[0]} points, {self.n_objectives} objectives)"

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def n_objectives(self) -> int:
        return self.points.shape[1]

    def label(self, index: int) -> str:
        return str(index) if self.ids is None else self.ids[index]

    def solve_ws(self, w: np.ndarray) -> tuple[int, np.ndarray]:
        w = np.asarray(w, dtype=float)
        if w.shape != (self.n_objectives,):
            raise DimensionMismatch(f"weight has shape {w.shape}, expected ({self.n_objectives},)")
        if not np.any(w):
            raise ZeroWeight("weighted-sum solve needs a nonzero weight")
        scores = self.points @ w
        ties = np.flatnonzero(scores == scores.min())
        if ties.size > 1:
            # lexsort treats the last key as primary
            order = np.lexsort(self.points[ties].T[::-1])
            ties = ties[order]
        best = int(ties[0])
        return best, self.points[best].copy()

    def is_dominated(self, j: np.ndarray) -> bool:
        j = objective_vector(j, self.n_objectives)
        le = np.all(self.points <= j, axis=1)
        lt = np.any(self.points < j, axis=1)
        return bool(np.any(le & lt))


def sample_sphere_front(
    n: int,
    count: int,
    seed: int,
    semi_axes: Sequence[float] | None = None,
) -> np.ndarray:
    """Deterministic nondominated sample of the all-negative orthant of a sphere.

    Directions are ``-|g| / ||g||`` for standard normal ``g`` drawn from
    ``numpy.random.default_rng(seed)`` (PCG64), then scaled by ``semi_axes``
    (default all ones).  Returns an ``(count, n)`` array.
    """
    if count <= 0:
        raise ValueError("count must be positive")
    if n < 2:
        raise ValueError("need at least two objectives")
    scale = np.ones(n) if semi_axes is None else np.asarray(semi_axes, dtype=float)
    if scale.shape != (n,) or np.any(scale <= 0):
        raise ValueError(f"semi_axes must be {n} positive numbers")
    rng = np.random.default_rng(seed)
    g = np.abs(rng.standard_normal((count, n)))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero draw has probability zero; guard anyway so every row stays on the sphere
    g[norms[:, 0] == 0] = 1.0
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    return -(g / norms) * scale
