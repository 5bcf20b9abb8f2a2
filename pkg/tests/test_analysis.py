"""Overhead coefficients, growth, the idle-robots wrapper, and the oracle."""

import math

import pytest

from treemine.analysis import (
    ak,
    bk,
    check_asymptotic,
    ck,
    competitive_team_size,
    growth_ratio,
    lower_bound_value,
    minimax_value,
)
from treemine.game import GameState, Kill, PlayerResponse, StopRule, run_game
from treemine.players import strategy_k3
from treemine.adversaries import lower_bound_adversary


class TestCoefficients:
    def test_base_values(self):
        assert ck(2) == 2
        assert ck(3) == 194    # 2 + 2*3*2 + 20*9
        assert ck(4) == 530    # 194 + 2*4*2 + 20*16
        assert ck(5) == 2970   # 530 + 2*5*194 + 20*25

    def test_split_identity(self):
        for k in range(3, 200):
            assert ck(k) == ak(k) + bk(k)

    def test_strictly_increasing(self):
        values = [ck(k) for k in range(2, 128)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            ck(1)


class TestAsymptotics:
    def test_hypothesis_plug_in(self):
        alpha, beta = 1.0 / math.log(2.0), 1.0
        assert 2 * alpha * math.log(2.0) - beta >= 1.0

    def test_hypothesis_violation_rejected(self):
        with pytest.raises(ValueError):
            check_asymptotic(64, alpha=0.5, beta=1.0)

    def test_growth_profile(self):
        report = check_asymptotic(512)
        assert report.k0 is not None
        assert report.argmax_k <= 64
        assert report.max_never_exceeded
        assert report.dyadic_nonincreasing
        assert report.C == pytest.approx(growth_ratio(report.argmax_k))

    def test_doubling_ratio_grows(self):
        # super-polynomial signature: ck(2k)/ck(k) keeps rising
        ratios = [ck(2 * k) / ck(k) for k in (4, 8, 16, 32, 64)]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))


class TestCompetitiveTeamSize:
    def test_small_clamp(self):
        assert competitive_team_size(2) == 2
        assert competitive_team_size(3) == 2

    def test_reference_point(self):
        assert competitive_team_size(1024) == 8

    def test_budget_respected_sample(self):
        for k in (2, 10, 100, 5000, 123457, 10 ** 6):
            kp = competitive_team_size(k)
            assert kp == 2 or float(kp) ** math.log2(kp) <= k


class TestLowerBoundValue:
    def test_k4_exact(self):
        analytic, exact = lower_bound_value(4, 1)
        assert exact == 2  # (4 + 4) - 6

    def test_k3_vacuous(self):
        analytic, _ = lower_bound_value(3, 7)
        assert analytic < 0

    def test_k100(self):
        analytic, exact = lower_bound_value(100, 1)
        assert analytic == pytest.approx(100 * (math.log(100) - 4))
        assert 60 < analytic < 61
        assert exact >= math.ceil(analytic)

    def test_exact_dominates_analytic_when_positive(self):
        for k in range(55, 200, 7):
            analytic, exact = lower_bound_value(k, 3)
            if analytic > 0:
                assert exact >= analytic


class TestMinimaxOracle:
    def test_k2_is_zero(self):
        assert minimax_value(2, 3, 6, 10).value == 0

    def test_k3_depth_values(self):
        assert minimax_value(3, 1, 2, 8).value == 3
        res = minimax_value(3, 2, 4, 12)
        assert res.value == 8
        assert res.value <= 14 * 2
        assert res.principal_variation  # a concrete line of play exists

    def test_monotone_in_caps(self):
        v1 = minimax_value(3, 2, 3, 6).value
        v2 = minimax_value(3, 2, 4, 6).value
        v3 = minimax_value(3, 2, 4, 9).value
        assert v1 <= v2 <= v3

    def test_k4_meets_the_phase_floor(self):
        _, exact = lower_bound_value(4, 1)
        res = minimax_value(4, 1, 2, 6)
        assert res.value >= exact

    def test_oracle_below_strategy_worst_case(self):
        # the oracle minimizes over all players, so any concrete strategy
        # paying more is consistent; it must never exceed the k3 bound
        oracle = minimax_value(3, 2, 4, 12).value
        adv = lower_bound_adversary(3, 2)
        trace = run_game(strategy_k3(), adv, 3, StopRule(max_rounds=60))
        assert oracle <= max(trace.cost_at_depth(2), 28)

    def test_caps_validated(self):
        with pytest.raises(ValueError):
            minimax_value(5, 2, 4, 8)
        with pytest.raises(ValueError):
            minimax_value(3, 2, 8, 8)
