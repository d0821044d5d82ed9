"""Scenario documents: JSON description of a decision problem.

Layout (see ``docs/scenario-schema.md``)::

    {
      "outcomes": ["B", "W"],
      "state":    [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
      "mind":     [[re, im], ...],                      # optional
      "actions":  [{"label": "b", "payoffs": [1, 0]}, ...],
      "portfolio": {                                    # optional
        "q0": 1, "r1": 2, "r2": 0, "r": 1, "W0": 2,
        "utility": "linear", "gamma": 0.5,
        "holdings": [{"label": "stock-tilted", "a": 1, "b": 1}, ...]
      }
    }

Amplitudes are ``[re, im]`` pairs; a bare number is read as a real amplitude.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import jsonschema

from .decision import DecisionProblem, PayoffAction, portfolio_problem, utility_function
from .errors import NormalizationError, ParseError, RenormalizationWarning, SchemaError
from .hilbert import StateVector, make_state
from .mind import MindState

SILENT_NORM_SLACK = 1e-9
WARN_NORM_SLACK = 1e-6

_amplitude = {
    "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    ]
}
_amplitudes = {"type": "array", "items": _amplitude, "minItems": 1}

SCHEMA = {
    "type": "object",
    "required": ["outcomes", "state"],
    "additionalProperties": False,
    "properties": {
        "outcomes": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "state": _amplitudes,
        "mind": _amplitudes,
        "actions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "payoffs"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string"},
                    "payoffs": {"type": "array", "items": {"type": "number"}},
                },
            },
        },
        "portfolio": {
            "type": "object",
            "required": ["q0", "r1", "r2", "r", "W0", "holdings"],
            "additionalProperties": False,
            "properties": {
                "q0": {"type": "number"},
                "r1": {"type": "number"},
                "r2": {"type": "number"},
                "r": {"type": "number"},
                "W0": {"type": "number"},
                "utility": {"enum": ["linear", "power", "log"]},
                "gamma": {"type": "number"},
                "holdings": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["a", "b"],
                        "additionalProperties": False,
                        "properties": {
                            "label": {"type": "string"},
                            "a": {"type": "number"},
                            "b": {"type": "number"},
                        },
                    },
                },
            },
        },
    },
}


@dataclass(frozen=True)
class Scenario:
    problem: DecisionProblem
    mind: MindState | None = None


def _amplitude_values(raw) -> list[complex]:
    return [complex(a) if isinstance(a, (int, float)) else complex(a[0], a[1]) for a in raw]


def _checked_state(raw, what: str) -> StateVector:
    amps = _amplitude_values(raw)
    norm_sq = sum(abs(a) ** 2 for a in amps)
    off = abs(norm_sq - 1.0)
    if norm_sq == 0.0 or off > WARN_NORM_SLACK:
        raise NormalizationError(f"{what} amplitudes have squared norm {norm_sq!r}; expected 1 within {WARN_NORM_SLACK:g}")
    if off > SILENT_NORM_SLACK:
        warnings.warn(f"{what} squared norm {norm_sq!r} renormalized to 1", RenormalizationWarning, stacklevel=3)
    return make_state(amps)


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document.

    Raises:
        ParseError: the text is not valid JSON (carries line and column).
        SchemaError: the document does not fit the schema or dimensions disagree.
        NormalizationError: a state is zero or off unit norm by more than 1e-6.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from exc

    labels = doc["outcomes"]
    dim = len(labels)
    if len(doc["state"]) != dim:
        raise SchemaError(f"state has {len(doc['state'])} amplitudes for {dim} outcomes")
    state = _checked_state(doc["state"], "state")

    mind = None
    if "mind" in doc:
        if len(doc["mind"]) != dim:
            raise SchemaError(f"mind has {len(doc['mind'])} amplitudes for {dim} outcomes")
        mind = MindState.of(_checked_state(doc["mind"], "mind"))

    actions = []
    for entry in doc.get("actions", []):
        if len(entry["payoffs"]) != dim:
            raise SchemaError(f"action {entry['label']!r} has {len(entry['payoffs'])} payoffs for {dim} outcomes")
        actions.append(PayoffAction(entry["label"], tuple(entry["payoffs"])))

    if "portfolio" in doc:
        if dim != 2:
            raise SchemaError("a portfolio block needs exactly two outcomes")
        pf = doc["portfolio"]
        u = utility_function(pf.get("utility", "linear"), pf.get("gamma", 0.5))
        for h in pf["holdings"]:
            actions.append(
                portfolio_problem(pf["q0"], h["a"], h["b"], pf["r1"], pf["r2"], pf["r"], u, state, pf["W0"], h.get("label"))
            )

    if not actions:
        raise SchemaError("scenario defines no actions")
    return Scenario(DecisionProblem(tuple(labels), state, tuple(actions)), mind)


def _pairs(state: StateVector) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


def serialize_scenario(scenario: Scenario) -> str:
    """Inverse of :func:`parse_scenario`; portfolio holdings come out as plain actions."""
    p = scenario.problem
    doc = {"outcomes": list(p.outcome_labels), "state": _pairs(p.world_state)}
    if scenario.mind is not None:
        doc["mind"] = _pairs(scenario.mind.vector)
    doc["actions"] = [{"label": a.label, "payoffs": list(a.payoffs)} for a in p.actions]
    return json.dumps(doc, indent=2) + "\n"
