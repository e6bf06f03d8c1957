"""Rotated spanning hyperplanes and the weight vectors derived from them.

Objective indices are zero-based throughout.  For objective ``i`` every basis
vector ``e_k`` (``k != i``) is tilted towards ``-e_i`` by a Givens rotation of
angle ``alpha_k`` in the ``(min(i, k), max(i, k))`` plane.  The normal of the
hyperplane spanned by the tilted vectors, scaled onto the simplex, is the
weight vector whose weighted-sum minimizer replaces the i-th individual
minimum.  At ``alpha = 0`` the construction collapses to ``e_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AlphaOutOfRange, MixedSigns, RankDeficient, ZeroVector

_HALF_PI = math.pi / 2


@dataclass(frozen=True)
class AlphaSpec:
    """Per-objective rotation angles in radians, each in ``[0, pi/2)``.

    Entry ``k`` is the tilt applied to ``e_k``; when building the spanning
    matrix for objective ``i`` the entry ``i`` itself is unused.
    """

    angles: np.ndarray

    def __post_init__(self) -> None:
        a = np.atleast_1d(np.array(self.angles, dtype=float)).reshape(-1)
        if a.size < 2:
            raise ValueError("need at least two angles")
        if not np.all(np.isfinite(a)) or np.any(a < 0) or np.any(a >= _HALF_PI):
            raise AlphaOutOfRange(f"angles must lie in [0, pi/2), got {a}")
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)

    @classmethod
    def uniform(cls, alpha: float, n: int) -> AlphaSpec:
        return cls(np.full(n, float(alpha)))

    @classmethod
    def from_degrees(cls, degrees: float | Sequence[float], n: int | None = None) -> AlphaSpec:
        """Build from degrees; a scalar needs ``n`` and is broadcast to every objective."""
        if np.ndim(degrees) == 0:
            if n is None:
                raise ValueError("n is required for a scalar angle")
            return cls.uniform(math.radians(float(degrees)), n)
        return cls(np.radians(np.asarray(degrees, dtype=float)))

    @property
    def n_objectives(self) -> int:
        return self.angles.size

    @property
    def degrees(self) -> np.ndarray:
        return np.degrees(self.angles)

    @property
    def all_positive(self) -> bool:
        return bool(np.all(self.angles > 0))


@dataclass(frozen=True)
class SpanningMatrix:
    """Columns spanning the rotated hyperplane for objective ``index``, ordered by ``k`` ascending."""

    index: int
    columns: np.ndarray  # shape (n, n - 1)

    @property
    def n_objectives(self) -> int:
        return self.columns.shape[0]


def givens_rotation(l: int, m: int, phi: float, n: int) -> np.ndarray:
    """``n x n`` rotation by ``phi`` in the ``(l, m)`` coordinate plane, ``0 <= l < m < n``."""
    if not (0 <= l < m < n):
        raise IndexError(f"need 0 <= l < m < n, got l={l}, m={m}, n={n}")
    r = np.eye(n)
    c, s = math.cos(phi), math.sin(phi)
    r[l, l] = r[m, m] = c
    r[l, m] = -s
    r[m, l] = s
    return r


def rotated_spanning_vector(i: int, k: int, alpha_k: float, n: int) -> np.ndarray:
    """Basis vector ``e_k`` rotated by ``sign(k - i) * alpha_k`` in the ``(i, k)`` plane.

    With ``sign(x) = 1`` for ``x > 0`` and ``-1`` otherwise, both orderings of
    ``i`` and ``k`` tilt ``e_k`` towards ``-e_i``.
    """
    if i == k:
        raise IndexError(f"spanning vector undefined for k == i == {i}")
    if not (0 <= i < n and 0 <= k < n):
        raise IndexError(f"indices i={i}, k={k} out of range for n={n}")
    if not (0 <= alpha_k < _HALF_PI):
        raise AlphaOutOfRange(f"alpha_k must lie in [0, pi/2), got {alpha_k}")
    sign = 1.0 if k - i > 0 else -1.0
    r = givens_rotation(min(i, k), max(i, k), sign * alpha_k, n)
    return r[:, k].copy()


def spanning_matrix(i: int, alpha: AlphaSpec, n: int | None = None) -> SpanningMatrix:
    n = alpha.n_objectives if n is None else n
    if alpha.n_objectives != n:
        raise ValueError(f"alpha has {alpha.n_objectives} entries, expected {n}")
    if not 0 <= i < n:
        raise IndexError(f"objective index {i} out of range for n={n}")
    cols = [rotated_spanning_vector(i, k, float(alpha.angles[k]), n) for k in range(n) if k != i]
    m = np.column_stack(cols)
    m.setflags(write=False)
    return SpanningMatrix(i, m)


def nullspace_normal(vectors: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    """Unit vector orthogonal to the ``n - 1`` columns of ``vectors`` (shape ``(n, n - 1)``).

    Uses the last right-singular vector of ``vectors.T``.  Raises
    :class:`RankDeficient` when the columns do not span a hyperplane.
    """
    v = np.asarray(vectors, dtype=float)
    n, m = v.shape
    if m != n - 1:
        raise ValueError(f"need n-1 = {n - 1} columns to define a hyperplane, got {m}")
    _, sv, vt = np.linalg.svd(v.T)
    if sv[0] == 0 or sv[-1] <= rtol * sv[0]:
        raise RankDeficient(f"columns span fewer than {n - 1} dimensions (singular values {sv})")
    return vt[-1].copy()


def hyperplane_normal(spanning: SpanningMatrix) -> np.ndarray:
    """Unit normal of the spanned hyperplane, oriented so component ``spanning.index`` is positive."""
    w = nullspace_normal(spanning.columns)
    pivot = w[spanning.index]
    if pivot == 0:
        pivot = w[int(np.argmax(np.abs(w)))]
    return w if pivot > 0 else -w


def simplex_scale(normal: np.ndarray) -> np.ndarray:
    """Rescale a single-signed vector to nonnegative entries summing to one.

    Components below ``1e-14`` of the largest magnitude are treated as exact
    zeros so round-off never produces a negative weight.
    """
    v = np.array(normal, dtype=float)
    peak = np.max(np.abs(v)) if v.size else 0.0
    if peak == 0 or not np.isfinite(peak):
        raise ZeroVector("cannot scale a zero (or non-finite) normal")
    v[np.abs(v) <= 1e-14 * peak] = 0.0
    if np.any(v > 0) and np.any(v < 0):
        raise MixedSigns(f"normal {normal} has components of both signs")
    return v / v.sum()


def scal(v: np.ndarray | Sequence[float]) -> np.ndarray:
    """``c * v`` with ``sum(|c * v|) == 1`` and the largest-magnitude entry positive.

    Magnitude ties go to the smallest index.  This makes the result a weight
    vector with nonnegative entries whenever ``v`` is single-signed.
    """
    a = np.asarray(v, dtype=float)
    total = np.sum(np.abs(a))
    if total == 0 or not np.isfinite(total):
        raise ZeroVector("scal is undefined for the zero vector")
    i_max = int(np.argmax(np.abs(a)))
    c = 1.0 / total if a[i_max] > 0 else -1.0 / total
    return c * a


def rotated_weights(alpha: AlphaSpec) -> tuple[list[SpanningMatrix], list[np.ndarray]]:
    """Spanning matrices and simplex-scaled weight vectors for every objective."""
    n = alpha.n_objectives
    spans = [spanning_matrix(i, alpha, n) for i in range(n)]
    weights = [simplex_scale(hyperplane_normal(s)) for s in spans]
    return spans, weights


def weight_ratio_bound(alpha_bar: float, n: int) -> float:
    """Largest pairwise weight ratio over all rotated weight vectors at a common angle.

    ``alpha_bar`` is in radians.  ``alpha_bar == 0`` yields ``inf`` (standard
    individual minima accept unbounded trade-offs).
    """
    if n < 2:
        raise ValueError("need at least two objectives")
    if alpha_bar == 0:
        return math.inf
    if not (0 < alpha_bar < _HALF_PI):
        raise AlphaOutOfRange(f"alpha_bar must lie in (0, pi/2), got {alpha_bar}")
    _, weights = rotated_weights(AlphaSpec.uniform(alpha_bar, n))
    return max(float(w.max() / w.min()) for w in weights)
