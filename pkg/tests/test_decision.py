import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbert_decision import (
    DecisionProblem,
    PayoffAction,
    action_operator,
    choose,
    expectation,
    expected_utility,
    make_state,
    numbered_ball_problem,
    outcome_probabilities,
    portfolio_problem,
    utility_function,
)
from hilbert_decision.ellsberg import urn1_state, urn2_state
from hilbert_decision.errors import BudgetError, DimMismatch, DomainError, EmptyActionSet, InvalidAmplitude, SchemaError

from conftest import states

BET_B = PayoffAction("b", (1.0, 0.0))
BET_W = PayoffAction("w", (0.0, 1.0))
payoff = st.floats(-10, 10, allow_nan=False)


def test_action_operator_black():
    assert np.array_equal(action_operator(BET_B).matrix, np.diag([1, 0]))


def test_action_operator_zero():
    assert not np.any(action_operator(PayoffAction("z", (0, 0, 0))).matrix)


def test_action_operator_even_bet():
    problem = numbered_ball_problem()
    diag = np.diag(action_operator(problem.actions[0]).matrix).real
    assert np.array_equal(diag[1::2], np.full(50, 100.0))
    assert not np.any(diag[0::2])


def test_non_finite_payoff():
    with pytest.raises(InvalidAmplitude):
        PayoffAction("bad", (1.0, float("nan")))


class TestExpectedUtility:
    def test_urn1(self):
        assert expected_utility(BET_B, urn1_state()) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("x", [0.0, 0.25, 0.6, 0.8, 1.0])
    def test_urn2(self, x):
        assert abs(expected_utility(BET_B, urn2_state(x)) - x * x) <= 1e-15

    def test_even_bet_uniform(self):
        problem = numbered_ball_problem()
        assert expected_utility(problem.actions[0], problem.world_state) == pytest.approx(50, abs=1e-12)

    def test_dim_mismatch(self):
        with pytest.raises(DimMismatch):
            expected_utility(PayoffAction("x", (1, 2, 3)), urn1_state())

    @given(st.data())
    def test_expansion(self, data):
        v = data.draw(states())
        pay = data.draw(st.lists(payoff, min_size=v.dim, max_size=v.dim))
        a = PayoffAction("a", tuple(pay))
        by_hand = sum(p * abs(b) ** 2 for p, b in zip(pay, v.amplitudes))
        assert abs(expected_utility(a, v) - by_hand) <= 1e-12
        assert abs(expected_utility(a, v) - expectation(v, action_operator(a))) <= 1e-12


class TestProbabilities:
    def test_urn1(self):
        assert outcome_probabilities(urn1_state()) == pytest.approx([0.5, 0.5], abs=1e-15)

    def test_urn2(self):
        assert outcome_probabilities(urn2_state(0.6)) == pytest.approx([0.36, 0.64], abs=1e-15)

    def test_basis(self):
        assert outcome_probabilities(make_state([1, 0])) == [1.0, 0.0]

    @given(states())
    def test_sums_to_one(self, v):
        assert abs(sum(outcome_probabilities(v)) - 1) <= 1e-12


class TestChoose:
    def test_urn2_prefers_black(self):
        r = choose(DecisionProblem(("B", "W"), urn2_state(0.8), (BET_B, BET_W)))
        assert r.utilities == pytest.approx((0.64, 0.36), abs=1e-15)
        assert r.best_indices == {0}
        assert r.reported_choice == 0

    def test_urn1_tie(self):
        r = choose(DecisionProblem(("B", "W"), urn1_state(), (BET_B, BET_W)))
        assert r.best_indices == {0, 1}
        assert r.reported_choice == 0

    def test_single_action(self):
        r = choose(DecisionProblem(("B", "W"), urn1_state(), (BET_W,)))
        assert r.reported_choice == 0 and r.best_indices == {0}

    def test_empty(self):
        with pytest.raises(EmptyActionSet):
            DecisionProblem(("B", "W"), urn1_state(), ())

    def test_duplicate_labels(self):
        with pytest.raises(SchemaError):
            DecisionProblem(("B", "B"), urn1_state(), (BET_B,))

    def test_payoff_length(self):
        with pytest.raises(SchemaError):
            DecisionProblem(("B", "W"), urn1_state(), (PayoffAction("x", (1, 0, 0)),))

    @given(st.data())
    def test_affine_invariance_and_determinism(self, data):
        v = data.draw(states())
        n_actions = data.draw(st.integers(1, 5))
        actions = [
            PayoffAction(str(i), tuple(data.draw(st.lists(payoff, min_size=v.dim, max_size=v.dim))))
            for i in range(n_actions)
        ]
        k = data.draw(st.floats(0.1, 10))
        c = data.draw(st.floats(-10, 10))
        labels = tuple(str(i) for i in range(v.dim))
        base = choose(DecisionProblem(labels, v, actions))
        utils = sorted(base.utilities)
        # skip near-ties where rescaling can move a gap across the tie tolerance
        if len(utils) > 1 and 0 < utils[-1] - utils[-2] < 1e-9:
            return
        moved = [PayoffAction(a.label, tuple(k * p + c for p in a.payoffs)) for a in actions]
        assert choose(DecisionProblem(labels, v, moved)).best_indices == base.best_indices
        assert choose(DecisionProblem(labels, v, actions)) == base


class TestPortfolio:
    def test_riskless(self):
        u = utility_function("log")
        for state in (urn1_state(), urn2_state(0.3)):
            a = portfolio_problem(q0=1.5, a=0.0, b=10.0, r1=2.0, r2=0.5, r=1.05, utility=u, state=state, W0=10.0)
            assert a.payoffs[0] == a.payoffs[1] == pytest.approx(math.log(10.5))
            assert expected_utility(a, state) == pytest.approx(math.log(10.5), abs=1e-12)

    def test_linear_example(self):
        a = portfolio_problem(1.0, 1.0, 1.0, 2.0, 0.0, 1.0, utility_function("linear"), W0=2.0)
        assert a.payoffs == (3.0, 1.0)
        assert expected_utility(a, urn1_state()) == pytest.approx(2.0, abs=1e-12)

    def test_degenerate_stock(self):
        a = portfolio_problem(2.0, 1.5, 1.0, 1.1, 1.1, 1.1, utility_function("power", 0.5), W0=4.0)
        assert a.payoffs[0] == a.payoffs[1]

    def test_budget(self):
        with pytest.raises(BudgetError):
            portfolio_problem(1.0, 1.0, 1.0, 2.0, 0.0, 1.0, utility_function("linear"), W0=3.0)

    def test_wrong_dim_state(self):
        with pytest.raises(DimMismatch):
            portfolio_problem(1.0, 1.0, 1.0, 2.0, 0.0, 1.0, utility_function("linear"), make_state([1, 0, 0]), 2.0)

    @pytest.mark.parametrize("name,arg,z", [("log", 0.5, 0.0), ("power", 0.5, -1.0), ("power", 1.5, 1.0), ("cubic", 0.5, 1.0)])
    def test_utility_domain(self, name, arg, z):
        with pytest.raises(DomainError):
            utility_function(name, arg)(z)

    def test_power_is_concave_root(self):
        assert utility_function("power", 0.5)(9.0) == pytest.approx(3.0)
