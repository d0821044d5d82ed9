"""Two-urn Ellsberg model.

Urn 1 holds black and white balls in equal numbers, Urn 2 in unknown
proportion. Urn 2's information state is ``x|B> + sqrt(1-x^2)|W>``, and the
decision maker's mind state about it is ``y|B> + e^{id} sqrt(1-y^2)|W>``.
For Urn 1 the mind state coincides with the information state, so its bets
are worth ``(u0 + u100)/2``. A point ``(x, y, d)`` shows Ellsberg behaviour
when Urn 1 is strictly preferred for both the black and the white bet.

The array functions (``overlap_sq_array``, ``ellsberg_mask``) are the ones
the region integrators evaluate; the scalar API routes through them so both
paths agree bit for bit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .decision import TIE_TOL, PayoffAction
from .errors import DomainError
from .hilbert import StateVector, make_state
from .mind import MindState

BLACK, WHITE = 0, 1
OUTCOME_LABELS = ("B", "W")
D_MAX = math.pi
_D_SLACK = 1e-12


class Bet(enum.Enum):
    BLACK = "b"
    WHITE = "w"


class Urn(enum.Enum):
    URN1 = 1
    URN2 = 2


def _check_unit(name: str, v: float) -> float:
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {v!r}")
    return v


def _check_phase(d: float) -> float:
    d = float(d)
    if not (0.0 <= d <= D_MAX + _D_SLACK):
        raise DomainError(f"d must lie in [0, pi], got {d!r}")
    return min(d, D_MAX)


@dataclass(frozen=True)
class EllsbergPoint:
    x: float
    y: float
    d: float
    u0: float = 0.0
    u100: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "x", _check_unit("x", self.x))
        object.__setattr__(self, "y", _check_unit("y", self.y))
        object.__setattr__(self, "d", _check_phase(self.d))
        if not float(self.u100) > float(self.u0):
            raise DomainError(f"need u100 > u0, got u0={self.u0!r}, u100={self.u100!r}")


def urn1_state() -> StateVector:
    h = 1.0 / math.sqrt(2.0)
    return make_state([h, h])


def urn2_state(x: float) -> StateVector:
    x = _check_unit("x", x)
    return make_state([x, math.sqrt(1.0 - x * x)])


def mind2_state(y: float, d: float) -> MindState:
    y = _check_unit("y", y)
    d = _check_phase(d)
    return MindState.of(make_state([y, complex(math.cos(d), math.sin(d)) * math.sqrt(1.0 - y * y)]))


def bet_action(bet: Bet, u0: float = 0.0, u100: float = 1.0) -> PayoffAction:
    if bet is Bet.BLACK:
        return PayoffAction("b", (u100, u0))
    return PayoffAction("w", (u0, u100))


# Array kernels. Inputs broadcast against each other.

def overlap_sq_array(x, y, d):
    """|<M2(y,d)|Psi2(x)>|^2 in closed form, including the cos(d) interference term."""
    x2 = x * x
    y2 = y * y
    return 1.0 - x2 - y2 + 2.0 * x2 * y2 + 2.0 * x * y * np.sqrt((1.0 - x2) * (1.0 - y2)) * np.cos(d)


def urn2_utilities_array(x, y, d, u0=0.0, u100=1.0):
    """Mind-moderated Urn-2 utilities of the black and white bets."""
    c2 = overlap_sq_array(x, y, d)
    y2 = y * y
    black = c2 * (y2 * u100 + (1.0 - y2) * u0)
    white = c2 * (y2 * u0 + (1.0 - y2) * u100)
    return black, white


def ellsberg_margin_array(x, y, d, u0=0.0, u100=1.0):
    """How much Urn 1 beats the better Urn-2 bet; positive means Ellsberg behaviour."""
    black, white = urn2_utilities_array(x, y, d, u0, u100)
    return 0.5 * (u100 + u0) - np.maximum(black, white)


def ellsberg_mask(x, y, d, u0=0.0, u100=1.0):
    urn1 = 0.5 * (u100 + u0)
    black, white = urn2_utilities_array(x, y, d, u0, u100)
    return (urn1 > black) & (urn1 > white)


# Scalar API.

def overlap_sq(p: EllsbergPoint) -> float:
    return float(overlap_sq_array(np.float64(p.x), np.float64(p.y), np.float64(p.d)))


def bet_utility(urn: Urn, bet: Bet, p: EllsbergPoint) -> float:
    if urn is Urn.URN1:
        return 0.5 * (p.u100 + p.u0)
    black, white = urn2_utilities_array(np.float64(p.x), np.float64(p.y), np.float64(p.d), p.u0, p.u100)
    return float(black if bet is Bet.BLACK else white)


def ellsberg_margin(p: EllsbergPoint) -> float:
    return float(ellsberg_margin_array(np.float64(p.x), np.float64(p.y), np.float64(p.d), p.u0, p.u100))


def ellsberg_predicate(p: EllsbergPoint) -> bool:
    """True iff Urn 1 is strictly preferred for both bets."""
    return bool(ellsberg_mask(np.float64(p.x), np.float64(p.y), np.float64(p.d), p.u0, p.u100))


@dataclass(frozen=True)
class ClassicalPreference:
    prefers_urn1_black: bool
    prefers_urn1_white: bool


def classical_condition(x: float) -> ClassicalPreference:
    """Urn-1 preferences of an expected-utility maximizer who believes p2(B) = x^2.

    Preferring Urn 1 for the black bet needs 1/2 > x^2, for the white bet
    1/2 < x^2; no single x gives both. Differences within the choice tie
    tolerance count as indifference, so x = 1/sqrt(2) prefers neither.
    """
    x = _check_unit("x", x)
    gap = 0.5 - x * x
    return ClassicalPreference(gap > TIE_TOL, gap < -TIE_TOL)


def discrete_compositions(n: int = 100) -> list[float]:
    """Amplitudes x_k = sqrt(k/n), k = 0..n, for an urn of n balls with k black."""
    if n < 1:
        raise DomainError(f"need at least one ball, got {n}")
    return [math.sqrt(k / n) for k in range(n + 1)]
