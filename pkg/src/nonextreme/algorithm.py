"""Non-extreme individual minima and the workflows built on them.

The central routine, :func:`neim`, needs ``2 * n`` weighted-sum solves: ``n``
solves with ``w = e_i`` give the standard payoff matrix and its utopia/nadir
box; ``n`` more with the rotated weights (rescaled by the box normalization)
give the non-extreme payoff matrix.  The remaining functions trim sample
clouds to a box, filter dominated samples, compute knee weights and points,
and check bounded trade-offs on samples.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .core import (
    Normalization,
    PayoffMatrix,
    UtopiaNadirBox,
    normalization_from_box,
    objective_vector,
    utopia_nadir,
)
from .errors import (
    AlphaOutOfRange,
    CandidateDominated,
    DegenerateHull,
    DegenerateRange,
    DimensionMismatch,
    MixedSigns,
    RankDeficient,
    ZeroWeight,
)
from .geometry import AlphaSpec, nullspace_normal, rotated_weights, scal
from .scalarization import WsProblem, transform_weight, ws_solve

log = logging.getLogger(__name__)

RATIO_TOL = 1e-9
BOX_RTOL = 1e-12


@dataclass(frozen=True)
class NeimReport:
    standard_payoff: PayoffMatrix
    nonextreme_payoff: PayoffMatrix
    standard_box: UtopiaNadirBox
    nonextreme_box: UtopiaNadirBox
    weights: tuple[np.ndarray, ...]
    solver_weights: tuple[np.ndarray, ...]
    alpha: AlphaSpec
    normalized: bool
    normalization: Normalization | None
    standard_decisions: tuple[Any, ...]
    nonextreme_decisions: tuple[Any, ...]

    @property
    def n_objectives(self) -> int:
        return self.standard_payoff.n_objectives


@dataclass(frozen=True)
class FilterStats:
    total: int
    kept: int

    @property
    def kept_fraction(self) -> float:
        return self.kept / self.total if self.total else 0.0

    def __str__(self) -> str:
        return f"kept {self.kept} of {self.total} ({100 * self.kept_fraction:.2f}%)"


@dataclass(frozen=True)
class KneeWeight:
    weights: np.ndarray
    has_negative_components: bool


@dataclass(frozen=True)
class KneePoint:
    decision: Any
    objectives: np.ndarray
    weights: np.ndarray
    has_negative_components: bool
    clamped: bool
    pareto_guaranteed: bool
    dominated: bool | None


@dataclass(frozen=True)
class PpeVerdict:
    """Outcome of :func:`ppe_check`; on failure names the first violating sample and objective."""

    passed: bool
    witness_index: int | None = None
    objective: int | None = None
    ratio: float | None = None

    def __bool__(self) -> bool:
        return self.passed


def _payoff_from(problem: WsProblem, weights: Sequence[np.ndarray], kind: str) -> tuple[PayoffMatrix, tuple]:
    decisions, columns = [], []
    for w in weights:
        decision, j = ws_solve(problem, w)
        decisions.append(decision)
        columns.append(j)
    return PayoffMatrix(np.column_stack(columns), kind), tuple(decisions)


def standard_payoff(problem: WsProblem) -> PayoffMatrix:
    """Payoff matrix of the individual minima, one solve with ``w = e_i`` per objective."""
    return _payoff_from(problem, list(np.eye(problem.n_objectives)), "standard")[0]


def neim(
    problem: WsProblem,
    alpha: AlphaSpec,
    normalize: bool = True,
    *,
    allow_standard: bool = False,
    allow_degenerate: bool = False,
) -> NeimReport:
    """Compute standard and non-extreme individual minima.

    Parameters
    ----------
    problem : WsProblem
        Backend used for every weighted-sum solve.
    alpha : AlphaSpec
        Rotation angles.  All must be positive unless ``allow_standard`` is
        set; ``alpha = 0`` reproduces the standard individual minima.
    normalize : bool
        Rescale the rotated weights by the standard box normalization before
        solving.  Without it the result depends on the objective units.
    allow_degenerate : bool
        Substitute a unit scale for objectives with zero range instead of
        raising :class:`DegenerateRange`.
    """
    n = problem.n_objectives
    if alpha.n_objectives != n:
        raise DimensionMismatch(f"alpha has {alpha.n_objectives} angles for {n} objectives")
    if not alpha.all_positive and not allow_standard:
        raise AlphaOutOfRange("every rotation angle must be > 0 to bound the accepted trade-off ratio")

    _, weights = rotated_weights(alpha)
    phi, std_decisions = _payoff_from(problem, list(np.eye(n)), "standard")
    box = utopia_nadir(phi)

    norm: Normalization | None
    if normalize:
        norm = normalization_from_box(box, allow_degenerate=allow_degenerate)
        solver_weights = [transform_weight(w, norm) for w in weights]
    else:
        try:
            norm = normalization_from_box(box, allow_degenerate=allow_degenerate)
        except DegenerateRange:
            norm = None
        solver_weights = [w.copy() for w in weights]

    phi_ne, ne_decisions = _payoff_from(problem, solver_weights, "non_extreme")
    box_ne = utopia_nadir(phi_ne)
    log.debug("neim: utopia %s -> %s, nadir %s -> %s", box.utopia, box_ne.utopia, box.nadir, box_ne.nadir)
    return NeimReport(
        standard_payoff=phi,
        nonextreme_payoff=phi_ne,
        standard_box=box,
        nonextreme_box=box_ne,
        weights=tuple(weights),
        solver_weights=tuple(solver_weights),
        alpha=alpha,
        normalized=normalize,
        normalization=norm,
        standard_decisions=std_decisions,
        nonextreme_decisions=ne_decisions,
    )


def _as_points(points: np.ndarray | Sequence[Sequence[float]], n: int | None = None) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    if p.ndim == 1 and p.size == 0:
        p = p.reshape(0, n or 0)
    if p.ndim != 2:
        raise DimensionMismatch(f"expected an (N, n) array of points, got shape {p.shape}")
    if n is not None and p.shape[0] and p.shape[1] != n:
        raise DimensionMismatch(f"points have {p.shape[1]} objectives, expected {n}")
    return p


def box_mask(points: np.ndarray, box: UtopiaNadirBox, use_utopia: bool = False) -> np.ndarray:
    """Boolean mask of points below the nadir (and above the utopia if requested).

    The comparison tolerance is ``1e-12`` times the box diagonal so samples
    lying on the box boundary are retained.
    """
    p = _as_points(points, box.n_objectives)
    with np.errstate(over="ignore"):
        diag = float(np.linalg.norm(box.ranges))
    tol = BOX_RTOL * diag if np.isfinite(diag) else np.inf
    mask = np.all(p <= box.nadir + tol, axis=1)
    if use_utopia:
        mask &= np.all(p >= box.utopia - tol, axis=1)
    return mask


def filter_box(
    points: np.ndarray | Sequence[Sequence[float]],
    box: UtopiaNadirBox,
    use_utopia: bool = False,
) -> tuple[np.ndarray, FilterStats]:
    p = _as_points(points, box.n_objectives)
    mask = box_mask(p, box, use_utopia)
    return p[mask], FilterStats(total=p.shape[0], kept=int(mask.sum()))


def nondominated_mask(points: np.ndarray | Sequence[Sequence[float]]) -> np.ndarray:
    """Mask of samples not dominated by any other sample.

    Points are visited in lexicographic order; a dominator always precedes
    the point it dominates, and by transitivity it suffices to compare with
    the survivors found so far.  Exact duplicates do not dominate each other.
    """
    p = _as_points(points)
    count = p.shape[0]
    keep = np.zeros(count, dtype=bool)
    if count == 0:
        return keep
    order = np.lexsort(p.T[::-1])
    front = np.empty_like(p)
    size = 0
    for idx in order:
        q = p[idx]
        if size:
            f = front[:size]
            if np.any(np.all(f <= q, axis=1) & np.any(f < q, axis=1)):
                continue
        keep[idx] = True
        front[size] = q
        size += 1
    return keep


def pareto_filter(points: np.ndarray | Sequence[Sequence[float]]) -> np.ndarray:
    """Nondominated subset of ``points`` in input order."""
    p = _as_points(points)
    return p[nondominated_mask(p)]


def knee_weight(phi: PayoffMatrix) -> KneeWeight:
    """Scaled normal of the hyperplane through the payoff columns.

    The weighted-sum minimizer for this weight is the point farthest from
    that hyperplane.  Mixed-sign normals are returned as is, with the flag set.
    """
    cols = phi.matrix
    diffs = cols[:, 1:] - cols[:, :1]
    try:
        eta = nullspace_normal(diffs)
    except RankDeficient as exc:
        raise DegenerateHull("payoff columns are affinely dependent; no unique hyperplane") from exc
    w = scal(eta)
    return KneeWeight(w, bool(np.any(w < 0)))


def knee_point(
    problem: WsProblem,
    phi: PayoffMatrix,
    *,
    strict: bool = False,
    clamp: bool = False,
) -> KneePoint:
    """Weighted-sum solve with the knee weight of ``phi``.

    Negative weight components void the Pareto guarantee.  ``strict`` rejects
    them with :class:`MixedSigns`; ``clamp`` zeroes them and renormalizes,
    which typically degenerates to an individual minimum.
    """
    kw = knee_weight(phi)
    w = kw.weights
    if kw.has_negative_components:
        if strict:
            raise MixedSigns(f"knee weight {w} has negative components")
        if clamp:
            w = np.clip(w, 0.0, None)
            if not np.any(w):
                raise ZeroWeight("clamping removed every weight component")
            w = w / w.sum()
    decision, j = ws_solve(problem, w)
    return KneePoint(
        decision=decision,
        objectives=j,
        weights=w,
        has_negative_components=kw.has_negative_components,
        clamped=clamp and kw.has_negative_components,
        pareto_guaranteed=bool(np.all(w > 0)),
        dominated=problem.is_dominated(j),
    )


def ppe_check(
    points: np.ndarray | Sequence[Sequence[float]],
    candidate: np.ndarray | Sequence[float],
    l_bound: float,
) -> PpeVerdict:
    """Sample-based check that ``candidate`` trades off at a ratio of at most ``l_bound``.

    For every sample ``x`` and objective ``i`` where ``x`` is better than the
    candidate, some objective ``j`` must be worse at ``x`` with
    ``(c_i - x_i) / (x_j - c_j) <= l_bound``.  This is a necessary condition
    for bounded proper efficiency over the continuum, not a proof of it.
    """
    if not l_bound > 0:
        raise ValueError(f"l_bound must be positive, got {l_bound}")
    c = objective_vector(candidate)
    p = _as_points(points, c.size)
    gain = c - p
    loss = p - c
    dominated = np.all(gain >= 0, axis=1) & np.any(gain > 0, axis=1)
    if np.any(dominated):
        raise CandidateDominated(f"candidate is dominated by sample {int(np.argmax(dominated))}")
    # the best admissible j is the one with the largest deterioration
    worst_loss = loss.max(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(gain > 0, gain / worst_loss, -np.inf)
    bad = ratio > l_bound + RATIO_TOL
    if not np.any(bad):
        return PpeVerdict(True)
    x_idx, i_idx = np.argwhere(bad)[0]
    return PpeVerdict(False, int(x_idx), int(i_idx), float(ratio[x_idx, i_idx]))
