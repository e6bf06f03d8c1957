"""Weighted-sum solve interface and the Pascoletti-Serafini cross-check.

Only weighted-sum (WS) solves are used by the algorithm.  The equality-form
Pascoletti-Serafini (PS) problem is provided over finite candidate sets as an
independent oracle: with shooting direction ``-e_i`` and a spanning matrix
``V`` whose hyperplane has normal ``w``, maximizing the shooting length ``l``
selects the same point as minimizing ``w @ J``.
"""

from __future__ import annotations

import abc
import warnings
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .core import Normalization, apply_normalization, objective_vector
from .errors import DimensionMismatch, SingularBasis, SolverFailure
from .geometry import AlphaSpec, spanning_matrix

COND_WARN = 1e12


class WsProblem(abc.ABC):
    """A multi-objective problem that can minimize ``w @ J(x)`` over its feasible set."""

    @property
    @abc.abstractmethod
    def n_objectives(self) -> int: ...

    @abc.abstractmethod
    def solve_ws(self, w: np.ndarray) -> tuple[Any, np.ndarray]:
        """Return ``(decision, objectives)`` for a minimizer of ``w @ J``."""

    def is_dominated(self, j: np.ndarray) -> bool | None:
        """Whether ``j`` is dominated by some feasible image; ``None`` if unknown."""
        return None


def ws_solve(problem: WsProblem, w: np.ndarray | Sequence[float]) -> tuple[Any, np.ndarray]:
    w = np.asarray(w, dtype=float)
    if w.shape != (problem.n_objectives,):
        raise DimensionMismatch(f"weight has shape {w.shape}, problem has {problem.n_objectives} objectives")
    if not np.all(np.isfinite(w)):
        raise ValueError(f"weights must be finite, got {w}")
    decision, j = problem.solve_ws(w)
    try:
        j = objective_vector(j, problem.n_objectives)
    except ValueError as exc:
        raise SolverFailure(f"backend returned an invalid objective vector: {exc}") from exc
    return decision, j


def transform_weight(w: np.ndarray | Sequence[float], norm: Normalization) -> np.ndarray:
    """Weight acting on raw objectives equivalent to ``w`` acting on normalized ones.

    For a diagonal transform ``T`` this is ``T.T @ w = scale * w``.  The result
    is deliberately not re-projected onto the simplex.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (norm.n_objectives,):
        raise DimensionMismatch(f"weight has shape {w.shape}, normalization has {norm.n_objectives} objectives")
    return norm.scale * w


@dataclass(frozen=True)
class PsParameters:
    """Shooting origin, direction, spanning matrix and image transform of a PS problem."""

    j_so: np.ndarray
    d: np.ndarray
    v: np.ndarray
    transform: Normalization | None = field(default=None)

    def __post_init__(self) -> None:
        j_so = np.array(self.j_so, dtype=float).reshape(-1)
        n = j_so.size
        d = np.array(self.d, dtype=float).reshape(-1)
        v = np.array(self.v, dtype=float).reshape(n, -1) if np.size(self.v) else np.zeros((n, 0))
        if d.size != n or v.shape != (n, n - 1):
            raise DimensionMismatch(f"inconsistent PS shapes: j_so {j_so.shape}, d {d.shape}, v {v.shape}")
        transform = Normalization.identity(n) if self.transform is None else self.transform
        if transform.n_objectives != n:
            raise DimensionMismatch("transform dimension does not match the shooting origin")
        object.__setattr__(self, "j_so", j_so)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "transform", transform)

    @classmethod
    def for_objective(
        cls,
        i: int,
        alpha: AlphaSpec,
        transform: Normalization | None = None,
        j_so: np.ndarray | None = None,
    ) -> PsParameters:
        """Direction ``-e_i`` with the rotated spanning matrix for objective ``i``."""
        n = alpha.n_objectives
        d = -np.eye(n)[i]
        v = spanning_matrix(i, alpha, n).columns
        return cls(np.zeros(n) if j_so is None else j_so, d, v, transform)

    @property
    def basis(self) -> np.ndarray:
        return np.column_stack([self.d, self.v])


def ps_solve_discrete(points: np.ndarray | Sequence[Sequence[float]], params: PsParameters) -> tuple[int, float]:
    """Index of the candidate reached with the largest shooting length, and that length.

    Each transformed point is written as ``j_so + l * d + V @ nu`` by one
    linear solve; ties go to the smallest index.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.shape[0] == 0:
        raise ValueError("need at least one candidate point")
    n = params.j_so.size
    if pts.shape[1] != n:
        raise DimensionMismatch(f"points have {pts.shape[1]} objectives, parameters have {n}")
    basis = params.basis
    cond = np.linalg.cond(basis)
    if not np.isfinite(cond) or cond * np.finfo(float).eps >= 1:
        raise SingularBasis(f"[d | V] is singular (condition number {cond:.3g})")
    if cond > COND_WARN:
        warnings.warn(f"[d | V] is ill-conditioned (condition number {cond:.3g})", RuntimeWarning, stacklevel=2)
    rhs = apply_normalization(params.transform, pts) - params.j_so
    try:
        coeffs = np.linalg.solve(basis, rhs.T)
    except np.linalg.LinAlgError as exc:
        raise SingularBasis(str(exc)) from exc
    lengths = coeffs[0]
    best = int(np.argmax(lengths))
    return best, float(lengths[best])
