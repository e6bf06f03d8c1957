import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonextreme.core import (
    Normalization,
    PayoffMatrix,
    UtopiaNadirBox,
    apply_normalization,
    normalization_from_box,
    objective_vector,
    utopia_nadir,
)
from nonextreme.errors import DegenerateRange, DimensionMismatch


def test_objective_vector_validation():
    v = objective_vector([1, 2, 3])
    assert v.dtype == float and not v.flags.writeable
    with pytest.raises(DimensionMismatch):
        objective_vector([1.0])
    with pytest.raises(DimensionMismatch):
        objective_vector([1.0, 2.0], n=3)
    with pytest.raises(ValueError):
        objective_vector([1.0, np.nan])


def test_objective_vector_does_not_freeze_caller_array():
    a = np.array([1.0, 2.0])
    objective_vector(a)
    a[0] = 5.0


def test_utopia_nadir_unit_sphere_payoff():
    phi = PayoffMatrix.from_columns([(-1, 0, 0), (0, -1, 0), (0, 0, -1)])
    box = utopia_nadir(phi)
    np.testing.assert_array_equal(box.utopia, [-1, -1, -1])
    np.testing.assert_array_equal(box.nadir, [0, 0, 0])


def test_utopia_nadir_equal_columns():
    v = (0.5, -2.0, 3.0)
    box = utopia_nadir(PayoffMatrix.from_columns([v, v, v], "non_extreme"))
    np.testing.assert_array_equal(box.utopia, v)
    np.testing.assert_array_equal(box.nadir, v)


def test_utopia_nadir_ellipsoid_payoff():
    phi = PayoffMatrix.from_columns([(-1, 0, 0), (0, -3, 0), (0, 0, -9)])
    box = utopia_nadir(phi)
    np.testing.assert_array_equal(box.utopia, [-1, -3, -9])
    np.testing.assert_array_equal(box.nadir, [0, 0, 0])


def test_standard_payoff_diagonal_must_be_row_minimum():
    with pytest.raises(ValueError):
        PayoffMatrix.from_columns([(0, 1), (-1, 0)], "standard")
    PayoffMatrix.from_columns([(0, 1), (-1, 0)], "non_extreme")


def test_payoff_shape():
    with pytest.raises(DimensionMismatch):
        PayoffMatrix(np.zeros((2, 3)))


def test_box_rejects_utopia_above_nadir():
    with pytest.raises(ValueError):
        UtopiaNadirBox([0, 1], [1, 0])


@pytest.mark.parametrize(
    "utopia, nadir, shift, scale",
    [
        ((-1, -1, -1), (0, 0, 0), (-1, -1, -1), (1, 1, 1)),
        ((-1, -3, -9), (0, 0, 0), (-1, -3, -9), (1, 1 / 3, 1 / 9)),
    ],
)
def test_normalization_from_box(utopia, nadir, shift, scale):
    norm = normalization_from_box(UtopiaNadirBox(utopia, nadir))
    np.testing.assert_array_equal(norm.shift, shift)
    np.testing.assert_allclose(norm.scale, scale, rtol=1e-15)


def test_normalization_degenerate_range():
    box = UtopiaNadirBox((0, 0), (0, 1))
    with pytest.raises(DegenerateRange) as info:
        normalization_from_box(box)
    assert info.value.indices == (0,)
    norm = normalization_from_box(box, allow_degenerate=True)
    np.testing.assert_array_equal(norm.scale, [1, 1])


def test_degenerate_threshold_is_relative():
    # threshold is 1e-12 * max(1, |nadir|), i.e. 1e-3 for the first objective
    big = UtopiaNadirBox((1e9, 0), (1e9 + 1e-4, 1))
    with pytest.raises(DegenerateRange):
        normalization_from_box(big)
    normalization_from_box(UtopiaNadirBox((1e-9, 0), (2e-9, 1)))


@pytest.mark.parametrize(
    "shift, scale, j, expected",
    [
        ((-1, -3, -9), (1, 1 / 3, 1 / 9), (0, 0, 0), (1, 1, 1)),
        ((-1, -3, -9), (1, 1 / 3, 1 / 9), (-1, -3, -9), (0, 0, 0)),
        ((0, 0), (2, 4), (0.5, 0.5), (1, 2)),
    ],
)
def test_apply_normalization(shift, scale, j, expected):
    out = apply_normalization(Normalization(shift, scale), j)
    np.testing.assert_allclose(out, expected, rtol=0, atol=1e-15)


def test_apply_normalization_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        apply_normalization(Normalization((0, 0), (1, 1)), (1, 2, 3))


def test_normalization_rejects_nonpositive_scale():
    with pytest.raises(ValueError):
        Normalization((0, 0), (1, 0))


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def payoffs(draw):
    n = draw(st.integers(2, 5))
    m = np.array(draw(st.lists(finite, min_size=n * n, max_size=n * n))).reshape(n, n)
    return PayoffMatrix(m, "non_extreme")


@given(payoffs())
def test_box_brackets_every_column(phi):
    box = utopia_nadir(phi)
    for col in phi.columns:
        assert np.all(box.utopia <= col) and np.all(col <= box.nadir)


@given(payoffs())
@settings(max_examples=200)
def test_normalized_box_corners(phi):
    box = utopia_nadir(phi)
    try:
        norm = normalization_from_box(box)
    except DegenerateRange:
        return
    lo = apply_normalization(norm, box.utopia)
    hi = apply_normalization(norm, box.nadir)
    np.testing.assert_array_equal(lo, 0.0)
    np.testing.assert_allclose(hi, 1.0, rtol=1e-14, atol=0)


@given(payoffs(), st.data())
def test_normalization_preserves_order(phi, data):
    box = utopia_nadir(phi)
    norm = normalization_from_box(box, allow_degenerate=True)
    n = phi.n_objectives
    a = np.array(data.draw(st.lists(finite, min_size=n, max_size=n)))
    delta = np.array(data.draw(st.lists(st.floats(0, 1e6), min_size=n, max_size=n)))
    b = a + delta
    assert np.all(apply_normalization(norm, a) <= apply_normalization(norm, b))
