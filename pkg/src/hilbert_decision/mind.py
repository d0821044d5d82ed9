"""Subjective mind-state moderation of outcome weights and utilities.

A mind state |M> replaces each outcome projector P_i by P_M P_i P_M. Its
expectation in a state |b> factorizes as |<M|b>|^2 <M|P_i|M>, which is what
the functions here compute; the sandwiched-projector route is kept in
:func:`moderated_operator` for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decision import PayoffAction
from .errors import DimMismatch, OrthogonalMindError
from .hilbert import LinearOperator, StateVector, inner, projector_onto

ORTHOGONAL_TOL = 1e-15


@dataclass(frozen=True, eq=False)
class MindState:
    vector: StateVector
    projector: LinearOperator

    @classmethod
    def of(cls, vector: StateVector) -> "MindState":
        return cls(vector, projector_onto(vector))

    @property
    def dim(self) -> int:
        return self.vector.dim


def _check(mind: MindState, state: StateVector) -> None:
    if mind.dim != state.dim:
        raise DimMismatch(f"mind has dimension {mind.dim}, state has {state.dim}")


def overlap_coefficient(mind: MindState, state: StateVector) -> complex:
    """c = <M|state>."""
    _check(mind, state)
    return inner(mind.vector, state)


def overlap_sq_generic(mind: MindState, state: StateVector) -> float:
    return abs(overlap_coefficient(mind, state)) ** 2


def _mind_probs(mind: MindState) -> np.ndarray:
    return np.abs(mind.vector.amplitudes) ** 2


def moderated_weight(mind: MindState, state: StateVector, i: int) -> float:
    _check(mind, state)
    if not 0 <= i < mind.dim:
        raise DimMismatch(f"basis index {i} out of range for dim {mind.dim}")
    return overlap_sq_generic(mind, state) * float(_mind_probs(mind)[i])


def moderated_operator(mind: MindState, op: LinearOperator) -> LinearOperator:
    """P_M op P_M."""
    if op.dim != mind.dim:
        raise DimMismatch(f"mind has dimension {mind.dim}, operator has {op.dim}")
    pm = mind.projector.matrix
    return LinearOperator(pm @ op.matrix @ pm, hermitian=op.hermitian)


def moderated_distribution(mind: MindState, state: StateVector, normalized: bool = False) -> list[float]:
    """Moderated weight of every basis outcome.

    Raw weights sum to |c|^2. With ``normalized=True`` they are divided by
    |c|^2, which fails for a mind (numerically) orthogonal to the state.
    """
    _check(mind, state)
    c2 = overlap_sq_generic(mind, state)
    weights = c2 * _mind_probs(mind)
    if normalized:
        if c2 <= ORTHOGONAL_TOL:
            raise OrthogonalMindError(f"|<M|state>|^2 = {c2!r}; conditional weights are undefined")
        weights = weights / c2
    return [float(w) for w in weights]


def moderated_expected_utility(mind: MindState, state: StateVector, a: PayoffAction) -> float:
    """<state| P_M A P_M |state> = |c|^2 <M|A|M>."""
    _check(mind, state)
    if a.dim != mind.dim:
        raise DimMismatch(f"action has {a.dim} payoffs, mind has dimension {mind.dim}")
    return float(np.dot(np.asarray(a.payoffs), moderated_distribution(mind, state)))
