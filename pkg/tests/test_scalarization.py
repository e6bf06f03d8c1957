import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonextreme.core import Normalization
from nonextreme.errors import DimensionMismatch, SingularBasis, SolverFailure
from nonextreme.geometry import AlphaSpec, rotated_weights, spanning_matrix
from nonextreme.problems import EllipsoidProblem, PointCloudProblem
from nonextreme.scalarization import PsParameters, WsProblem, ps_solve_discrete, transform_weight, ws_solve

D10 = math.radians(10)
S10, C10 = math.sin(D10), math.cos(D10)


def test_ws_solve_sphere():
    _, j = ws_solve(EllipsoidProblem([1, 1, 1]), [1, 0, 0])
    np.testing.assert_array_equal(j, [-1, 0, 0])


def test_ws_solve_ellipsoid_uniform_weight():
    d = np.array([1.0, 3.0, 9.0])
    w = np.full(3, 1 / 3)
    _, j = ws_solve(EllipsoidProblem(d), w)
    np.testing.assert_allclose(j, -(d**2) * w / np.linalg.norm(d * w), rtol=1e-15)


def test_ws_solve_cloud():
    idx, j = ws_solve(PointCloudProblem([(0, 1), (1, 0), (0.4, 0.4)]), [0.5, 0.5])
    assert idx == 2


def test_ws_solve_dimension_check():
    with pytest.raises(DimensionMismatch):
        ws_solve(EllipsoidProblem([1, 1, 1]), [1, 0])
    with pytest.raises(ValueError):
        ws_solve(EllipsoidProblem([1, 1]), [np.nan, 1])


def test_ws_solve_rejects_bad_backend_output():
    class Broken(WsProblem):
        n_objectives = 2

        def solve_ws(self, w):
            return None, np.array([np.nan, 0.0])

    with pytest.raises(SolverFailure):
        ws_solve(Broken(), [1, 0])


def test_transform_weight():
    np.testing.assert_array_equal(transform_weight([1 / 3] * 3, Normalization.identity(3)), [1 / 3] * 3)
    w = np.array([C10, S10, S10]) / (C10 + 2 * S10)
    norm = Normalization([0, 0, 0], [1, 1 / 3, 1 / 9])
    np.testing.assert_array_equal(transform_weight(w, norm), w * [1, 1 / 3, 1 / 9])
    np.testing.assert_array_equal(transform_weight([0, 1, 0], norm), [0, 1 / 3, 0])
    with pytest.raises(DimensionMismatch):
        transform_weight([1, 0], norm)


def test_ps_standard_realization_picks_first_minimizer():
    params = PsParameters(np.zeros(2), -np.eye(2)[0], np.eye(2)[:, [1]])
    idx, l = ps_solve_discrete([(-1, 0), (0, -1)], params)
    assert idx == 0 and l == pytest.approx(1.0)


def test_ps_rotated_matches_ws():
    pts = np.array([(-1, 0), (0, -1), (-0.7, -0.7)])
    alpha = AlphaSpec.uniform(D10, 2)
    idx_ps, _ = ps_solve_discrete(pts, PsParameters.for_objective(0, alpha))
    _, weights = rotated_weights(alpha)
    idx_ws, _ = PointCloudProblem(pts).solve_ws(weights[0])
    assert idx_ps == idx_ws


def test_ps_singleton():
    params = PsParameters.for_objective(1, AlphaSpec.uniform(D10, 3))
    idx, l = ps_solve_discrete([(0.5, -2.0, 1.0)], params)
    assert idx == 0
    coeffs = np.linalg.solve(params.basis, np.array([0.5, -2.0, 1.0]))
    assert l == pytest.approx(coeffs[0])


def test_ps_singular_basis():
    params = PsParameters(np.zeros(2), [1, 0], [[2], [0]])
    with pytest.raises(SingularBasis):
        ps_solve_discrete([(0, 0)], params)


def test_ps_ill_conditioned_warns():
    params = PsParameters(np.zeros(2), [1, 0], [[1], [1e-13]])
    with pytest.warns(RuntimeWarning):
        ps_solve_discrete([(0, 0)], params)


def test_ps_transform_applied():
    # identity-direction shooting on normalized points equals raw argmin of the first objective
    pts = np.array([(2.0, 0.0), (1.0, 5.0), (3.0, -1.0)])
    norm = Normalization([1.0, -1.0], [0.5, 1 / 6])
    params = PsParameters.for_objective(0, AlphaSpec.uniform(0.0, 2), transform=norm)
    idx, l = ps_solve_discrete(pts, params)
    assert idx == 1 and l == pytest.approx(0.0)


def tie_set(values, best, tol=1e-10):
    scale = max(1.0, float(np.max(np.abs(values))))
    return set(np.flatnonzero(np.abs(values - best) <= tol * scale).tolist())


def ps_lengths(points, params):
    return np.linalg.solve(params.basis, (points - params.j_so).T)[0]


@given(
    st.integers(0, 2**32 - 1),
    st.integers(2, 5),
    st.integers(3, 200),
)
@settings(max_examples=60, deadline=None)
def test_ws_ps_equivalence_random(seed, n, size):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(size, n))
    alpha = AlphaSpec(np.radians(rng.uniform(1, 45, n)))
    _, weights = rotated_weights(alpha)
    cloud = PointCloudProblem(pts)
    for i in range(n):
        params = PsParameters.for_objective(i, alpha)
        idx_ps, l = ps_solve_discrete(pts, params)
        idx_ws, _ = cloud.solve_ws(weights[i])
        ps_ties = tie_set(ps_lengths(pts, params), l)
        scores = pts @ weights[i]
        ws_ties = tie_set(scores, scores[idx_ws])
        assert idx_ps in ps_ties and idx_ws in ws_ties
        assert ps_ties & ws_ties


@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
@settings(max_examples=40, deadline=None)
def test_ps_translation_invariance(seed, n):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(50, n))
    shift = rng.normal(size=n) * 10
    alpha = AlphaSpec(np.radians(rng.uniform(1, 45, n)))
    for i in range(n):
        params = PsParameters.for_objective(i, alpha)
        a, _ = ps_solve_discrete(pts, params)
        b, _ = ps_solve_discrete(pts + shift, params)
        assert a == b


def test_ps_parameters_shape_checks():
    with pytest.raises(DimensionMismatch):
        PsParameters(np.zeros(3), np.zeros(3), np.zeros((3, 1)))
    v = spanning_matrix(0, AlphaSpec.uniform(0.1, 3)).columns
    PsParameters(np.zeros(3), -np.eye(3)[0], v)
