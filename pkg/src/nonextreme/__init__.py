"""Non-extreme individual minima for multi-objective optimization.

Weighted-sum solves with weights taken from slightly rotated coordinate
hyperplanes replace the individual minima of a multi-objective problem by
points whose trade-off ratios are bounded.  Their payoff matrix yields a
tighter utopia/nadir box for trimming Pareto-front samples and a sturdier
basis for knee-point weights.
"""

from .algorithm import (
    FilterStats,
    KneePoint,
    KneeWeight,
    NeimReport,
    PpeVerdict,
    box_mask,
    filter_box,
    knee_point,
    knee_weight,
    neim,
    nondominated_mask,
    pareto_filter,
    ppe_check,
    standard_payoff,
)
from .core import (
    Normalization,
    PayoffMatrix,
    UtopiaNadirBox,
    apply_normalization,
    normalization_from_box,
    objective_vector,
    utopia_nadir,
)
from .errors import *  # noqa: F401,F403
from .geometry import (
    AlphaSpec,
    SpanningMatrix,
    givens_rotation,
    hyperplane_normal,
    rotated_spanning_vector,
    rotated_weights,
    scal,
    simplex_scale,
    spanning_matrix,
    weight_ratio_bound,
)
from .problems import EllipsoidProblem, PointCloudProblem, sample_sphere_front
from .scalarization import PsParameters, WsProblem, ps_solve_discrete, transform_weight, ws_solve

__version__ = "0.1.0"
