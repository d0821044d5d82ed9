"""Hilbert-space decision model and Ellsberg two-urn region estimates."""

__version__ = "0.1.0"

from .decision import (
    ChoiceResult,
    DecisionProblem,
    PayoffAction,
    action_operator,
    choose,
    expected_utility,
    numbered_ball_problem,
    outcome_probabilities,
    portfolio_problem,
    utility_function,
)
from .ellsberg import (
    Bet,
    EllsbergPoint,
    Urn,
    bet_utility,
    classical_condition,
    discrete_compositions,
    ellsberg_predicate,
    mind2_state,
    overlap_sq,
    urn1_state,
    urn2_state,
)
from .hilbert import (
    LinearOperator,
    StateVector,
    Tolerances,
    apply,
    basis_projector,
    basis_state,
    expectation,
    identity,
    inner,
    is_projector,
    make_state,
    projector_onto,
    weighted_projector_sum,
)
from .mind import (
    MindState,
    moderated_distribution,
    moderated_expected_utility,
    moderated_weight,
    overlap_coefficient,
)
from .quadrature import GridSpec, RegionEstimate, area_ratio_fixed_d, monte_carlo_ratio, sweep_d, volume_ratio
