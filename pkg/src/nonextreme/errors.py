"""Exception hierarchy.

Two families matter to callers: :class:`DataError` (inputs that do not fit
together) and :class:`NumericError` (geometry or solver degeneracies).  The
CLI maps them to distinct exit codes.
"""

from __future__ import annotations


class NonextremeError(Exception):
    """Base class for all errors raised by this package."""


class DataError(NonextremeError, ValueError):
    """Malformed or inconsistent input data."""


class DimensionMismatch(DataError):
    pass


class CloudFormatError(DataError):
    """A CSV point cloud could not be parsed."""


class ReportFormatError(DataError):
    pass


class CandidateDominated(DataError):
    """The candidate handed to :func:`ppe_check` is dominated by a sample."""


class AlphaOutOfRange(NonextremeError, ValueError):
    """Rotation angle outside ``[0, pi/2)`` (or zero where a positive angle is required)."""


class NumericError(NonextremeError, ArithmeticError):
    """Degenerate geometry or a failed solve."""


class DegenerateRange(NumericError):
    """An objective has (numerically) zero range between utopia and nadir."""

    def __init__(self, message: str, indices: tuple[int, ...] = ()):
        super().__init__(message)
        self.indices = indices


class RankDeficient(NumericError):
    pass


class MixedSigns(NumericError):
    """A vector carries both positive and negative components where a weight is required."""


class ZeroVector(NumericError):
    pass


class ZeroWeight(NumericError):
    pass


class SingularBasis(NumericError):
    """The Pascoletti-Serafini basis ``[d | V]`` is not invertible."""


class DegenerateHull(NumericError):
    """Payoff columns are affinely dependent, so no hyperplane passes through them."""


class SolverFailure(NumericError):
    pass
