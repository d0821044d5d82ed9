"""Actions as payoff-weighted projector sums, expected utility and choice."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetError, DimMismatch, DomainError, EmptyActionSet, InvalidAmplitude, SchemaError
from .hilbert import LinearOperator, StateVector, basis_projector, make_state, weighted_projector_sum

TIE_TOL = 1e-12


@dataclass(frozen=True)
class PayoffAction:
    """Utility payoff per outcome. Payoffs are already in utility units."""

    label: str
    payoffs: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(p) for p in self.payoffs)
        if not vals:
            raise DimMismatch("an action needs at least one payoff")
        if not all(math.isfinite(p) for p in vals):
            raise InvalidAmplitude(f"action {self.label!r} has a non-finite payoff")
        object.__setattr__(self, "payoffs", vals)

    @property
    def dim(self) -> int:
        return len(self.payoffs)


@dataclass(frozen=True)
class DecisionProblem:
    outcome_labels: tuple[str, ...]
    world_state: StateVector
    actions: tuple[PayoffAction, ...]

    def __post_init__(self):
        object.__setattr__(self, "outcome_labels", tuple(self.outcome_labels))
        object.__setattr__(self, "actions", tuple(self.actions))
        dim = self.world_state.dim
        if len(self.outcome_labels) != dim:
            raise SchemaError(f"{len(self.outcome_labels)} outcome labels for a {dim}-dimensional state")
        if len(set(self.outcome_labels)) != dim:
            raise SchemaError("outcome labels must be unique")
        if not self.actions:
            raise EmptyActionSet("a decision problem needs at least one action")
        for a in self.actions:
            if a.dim != dim:
                raise SchemaError(f"action {a.label!r} has {a.dim} payoffs, state has dimension {dim}")


@dataclass(frozen=True)
class ChoiceResult:
    utilities: tuple[float, ...]
    best_indices: frozenset[int]
    reported_choice: int


def action_operator(a: PayoffAction) -> LinearOperator:
    """A = sum_w payoff_w P_w, i.e. diag(payoffs)."""
    return weighted_projector_sum(a.payoffs, [basis_projector(i, a.dim) for i in range(a.dim)])


def outcome_probabilities(state: StateVector) -> list[float]:
    return [float(p) for p in np.abs(state.amplitudes) ** 2]


def expected_utility(a: PayoffAction, state: StateVector) -> float:
    """<state|A|state> evaluated as sum_w payoff_w |amp_w|^2."""
    if a.dim != state.dim:
        raise DimMismatch(f"action has {a.dim} payoffs, state has dimension {state.dim}")
    probs = np.abs(state.amplitudes) ** 2
    return float(np.dot(np.asarray(a.payoffs), probs))


def argmax_with_ties(utilities: Sequence[float]) -> ChoiceResult:
    if not utilities:
        raise EmptyActionSet("no actions to choose from")
    utils = tuple(float(u) for u in utilities)
    top = max(utils)
    best = frozenset(i for i, u in enumerate(utils) if u >= top - TIE_TOL)
    return ChoiceResult(utils, best, min(best))


def choose(problem: DecisionProblem) -> ChoiceResult:
    """Pick the action with highest expected utility; ties go to the lowest index."""
    return argmax_with_ties([expected_utility(a, problem.world_state) for a in problem.actions])


# Utility functions for the portfolio generator, selected by name.

def _linear(z: float) -> float:
    return z


def _power(gamma: float) -> Callable[[float], float]:
    if not 0 < gamma <= 1:
        raise DomainError(f"power utility needs gamma in (0, 1], got {gamma}")

    def u(z: float) -> float:
        if z < 0:
            raise DomainError(f"power utility undefined for negative payoff {z}")
        return z ** gamma

    return u


def _log(z: float) -> float:
    if z <= 0:
        raise DomainError(f"log utility undefined for non-positive payoff {z}")
    return math.log(z)


UTILITY_NAMES = ("linear", "power", "log")


def utility_function(name: str, gamma: float = 0.5) -> Callable[[float], float]:
    if name == "linear":
        return _linear
    if name == "power":
        return _power(gamma)
    if name == "log":
        return _log
    raise DomainError(f"unknown utility {name!r}; expected one of {', '.join(UTILITY_NAMES)}")


def portfolio_problem(
    q0: float,
    a: float,
    b: float,
    r1: float,
    r2: float,
    r: float,
    utility: Callable[[float], float],
    state: StateVector | None = None,
    W0: float | None = None,
    label: str | None = None,
) -> PayoffAction:
    """Two-outcome action for holding ``a`` units of stock and ``b`` of bond.

    The stock returns ``r1`` in outcome 1 and ``r2`` in outcome 2; the bond
    returns ``r`` in both. Payoffs are ``utility(r_i*a + r*b)``.

    Raises:
        BudgetError: ``q0*a + b`` differs from ``W0`` by more than 1e-9.
    """
    if W0 is not None and abs(q0 * a + b - W0) > 1e-9:
        raise BudgetError(f"q0*a + b = {q0 * a + b!r} does not match W0 = {W0!r}")
    if state is not None and state.dim != 2:
        raise DimMismatch("portfolio problems live in a 2-dimensional outcome space")
    payoffs = (utility(r1 * a + r * b), utility(r2 * a + r * b))
    return PayoffAction(label or f"a={a:g},b={b:g}", payoffs)


def numbered_ball_problem(n_balls: int = 100, stake: float = 100.0) -> DecisionProblem:
    """Urn with balls numbered 1..n_balls drawn uniformly; bets on even or odd.

    Outcome index ``k`` is the ball numbered ``k + 1``.
    """
    labels = tuple(str(k + 1) for k in range(n_balls))
    state = make_state(np.full(n_balls, 1.0))
    even = tuple(stake if (k + 1) % 2 == 0 else 0.0 for k in range(n_balls))
    odd = tuple(stake - p for p in even)
    return DecisionProblem(labels, state, (PayoffAction("even", even), PayoffAction("odd", odd)))
