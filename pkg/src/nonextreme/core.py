"""Image-space value types: objective vectors, payoff matrices, boxes, normalization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import DegenerateRange, DimensionMismatch

PayoffKind = Literal["standard", "non_extreme"]

# Relative threshold below which an objective range counts as zero.
RANGE_RTOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def objective_vector(values: Sequence[float] | np.ndarray, n: int | None = None) -> np.ndarray:
    """Validate ``values`` as an objective vector and return a read-only float array.

    Objective vectors have at least two components, all finite.  If ``n`` is
    given the length must match it.
    """
    v = np.atleast_1d(np.array(values, dtype=float)).reshape(-1)
    if v.size < 2:
        raise DimensionMismatch(f"an objective vector needs at least 2 components, got {v.size}")
    if n is not None and v.size != n:
        raise DimensionMismatch(f"expected {n} objectives, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"objective vector has non-finite components: {v}")
    return _frozen(v)


@dataclass(frozen=True)
class PayoffMatrix:
    """Square matrix whose column ``i`` is the objective vector at the i-th (non-extreme) minimum."""

    matrix: np.ndarray
    kind: PayoffKind = "standard"

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise DimensionMismatch(f"payoff matrix must be square with n >= 2, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("payoff matrix has non-finite entries")
        if self.kind not in ("standard", "non_extreme"):
            raise ValueError(f"unknown payoff kind {self.kind!r}")
        if self.kind == "standard":
            diag = np.diag(m)
            rowmin = m.min(axis=1)
            tol = RANGE_RTOL * np.maximum(1.0, np.abs(rowmin))
            if np.any(diag - rowmin > tol):
                bad = np.flatnonzero(diag - rowmin > tol).tolist()
                raise ValueError(f"standard payoff diagonal is not the row minimum in rows {bad}")
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[float]], kind: PayoffKind = "standard") -> PayoffMatrix:
        return cls(np.column_stack([np.asarray(c, dtype=float) for c in columns]), kind)

    @property
    def n_objectives(self) -> int:
        return self.matrix.shape[0]

    @property
    def columns(self) -> list[np.ndarray]:
        return [self.matrix[:, i] for i in range(self.n_objectives)]


@dataclass(frozen=True)
class UtopiaNadirBox:
    utopia: np.ndarray
    nadir: np.ndarray

    def __post_init__(self) -> None:
        u = objective_vector(self.utopia)
        v = objective_vector(self.nadir, u.size)
        if np.any(u > v):
            raise ValueError(f"utopia {u} exceeds nadir {v} in some component")
        object.__setattr__(self, "utopia", u)
        object.__setattr__(self, "nadir", v)

    @property
    def n_objectives(self) -> int:
        return self.utopia.size

    @property
    def ranges(self) -> np.ndarray:
        return self.nadir - self.utopia

    def contains(self, j: np.ndarray) -> bool:
        j = np.asarray(j, dtype=float)
        return bool(np.all(j >= self.utopia) and np.all(j <= self.nadir))


@dataclass(frozen=True)
class Normalization:
    """Affine map ``j -> scale * (j - shift)`` with a positive diagonal scale."""

    shift: np.ndarray
    scale: np.ndarray

    def __post_init__(self) -> None:
        shift = objective_vector(self.shift)
        scale = np.array(self.scale, dtype=float).reshape(-1)
        if scale.size != shift.size:
            raise DimensionMismatch(f"shift has {shift.size} components, scale has {scale.size}")
        if not np.all(np.isfinite(scale)) or np.any(scale <= 0):
            raise ValueError(f"normalization scale must be positive and finite, got {scale}")
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "scale", _frozen(scale))

    @property
    def n_objectives(self) -> int:
        return self.shift.size

    @classmethod
    def identity(cls, n: int) -> Normalization:
        return cls(np.zeros(n), np.ones(n))


def utopia_nadir(phi: PayoffMatrix) -> UtopiaNadirBox:
    """Row-wise minimum and maximum of the payoff matrix (pseudo nadir)."""
    return UtopiaNadirBox(phi.matrix.min(axis=1), phi.matrix.max(axis=1))


def normalization_from_box(box: UtopiaNadirBox, allow_degenerate: bool = False) -> Normalization:
    """Normalization sending ``box.utopia`` to the zero vector and ``box.nadir`` to ones.

    A range ``nadir_i - utopia_i`` below ``1e-12 * max(1, |nadir_i|)`` raises
    :class:`DegenerateRange`; with ``allow_degenerate`` the offending scale is
    set to 1 instead.
    """
    ranges = box.ranges
    degenerate = ranges <= RANGE_RTOL * np.maximum(1.0, np.abs(box.nadir))
    if np.any(degenerate):
        idx = tuple(int(i) for i in np.flatnonzero(degenerate))
        if not allow_degenerate:
            raise DegenerateRange(f"objective(s) {list(idx)} have zero range between utopia and nadir", idx)
        ranges = np.where(degenerate, 1.0, ranges)
    return Normalization(box.utopia.copy(), 1.0 / ranges)


def apply_normalization(norm: Normalization, j: np.ndarray | Sequence[float]) -> np.ndarray:
    """Map one objective vector, or an ``(N, n)`` array of them, into normalized space."""
    a = np.asarray(j, dtype=float)
    if a.shape[-1] != norm.n_objectives:
        raise DimensionMismatch(f"expected {norm.n_objectives} objectives, got {a.shape[-1]}")
    return norm.scale * (a - norm.shift)
