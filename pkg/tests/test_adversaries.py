"""Adversary strategies: the phase squeeze, seeded randomness, replays."""

import pytest

from treemine.adversaries import (
    lower_bound_adversary,
    parse_adversary,
    random_adversary,
    replay_adversary,
)
from treemine.analysis import lower_bound_value
from treemine.game import (
    Finish,
    GameState,
    IllegalMoveError,
    Kill,
    StopRule,
    run_game,
)
from treemine.players import strategy_k3, strategy_recursive


class TestLowerBound:
    def test_phase_structure_k4(self):
        # spawn k-1 children, then squeeze max-load leaves until one remains
        adv = lower_bound_adversary(4, 1)
        state = GameState(4)
        assert adv.next(state) == Kill(0, 3)
        pl = strategy_recursive(4)
        ctx = state.begin_round(Kill(0, 3))
        state.install(ctx, pl.respond(state, ctx))
        kills = 0
        while len(state.config) > 1:
            move = adv.next(state)
            assert isinstance(move, Kill) and move.c == 0
            assert state.config[move.leaf] == max(state.config.values())
            ctx = state.begin_round(move)
            state.install(ctx, pl.respond(state, ctx))
            kills += 1
        assert kills == 2
        (leaf,) = state.config
        assert state.tree.depth[leaf] == 1
        assert adv.next(state) == Finish()

    @pytest.mark.parametrize("k", [3, 5, 8, 12])
    def test_phase_cost_floor(self, k):
        depth = 5
        adv = lower_bound_adversary(k, depth)
        trace = run_game(strategy_recursive(k), adv, k, StopRule(max_rounds=5000),
                         mode="extended", start_miners=k)
        _, floor = lower_bound_value(k, depth)
        assert trace.cost_at_depth(depth) >= floor

    def test_floor_also_binds_k3_player(self):
        adv = lower_bound_adversary(3, 6)
        trace = run_game(strategy_k3(), adv, 3, StopRule(max_rounds=200))
        _, floor = lower_bound_value(3, 6)
        assert trace.cost_at_depth(6) >= floor  # floor is 0 at k=3


class TestRandomAdversary:
    def test_determinism(self):
        moves1, moves2 = [], []
        for sink in (moves1, moves2):
            adv = random_adversary(42, p_kill_deep=0.7, max_children=2, depth_cap=6)
            trace = run_game(strategy_recursive(4), adv, 4, StopRule.for_depth(4, 6),
                             mode="extended", start_miners=4)
            sink.extend(r.move for r in trace.rounds)
        assert moves1 == moves2

    def test_depth_cap_zero_kills_root_childless(self):
        adv = random_adversary(0, depth_cap=0)
        state = GameState(2)
        assert adv.next(state) == Kill(0, 0)

    def test_line_builder(self):
        adv = random_adversary(5, p_kill_deep=1.0, max_children=1, depth_cap=10)
        state = GameState(2)
        pl = strategy_recursive(2)
        for _ in range(6):
            move = adv.next(state)
            if not isinstance(move, Kill):
                continue
            ctx = state.begin_round(move)
            state.install(ctx, pl.respond(state, ctx))
            if state.finished:
                break
        # every node has at most one child: the board is a line
        assert all(len(ch) <= 1 for ch in state.tree.children)

    def test_fuzz_moves_always_legal(self):
        for seed in range(50):
            adv = random_adversary(seed, p_kill_deep=0.3, max_children=3,
                                   depth_cap=9)
            state = GameState(5, mode="extended", start_miners=2)
            pl = strategy_recursive(5)
            for _ in range(60):
                if state.finished:
                    break
                move = adv.next(state)
                if isinstance(move, Finish):
                    break
                state.check_adversary_move(move)  # raises on an illegal move
                ctx = state.begin_round(move)
                state.install(ctx, pl.respond(state, ctx))


class TestReplay:
    def test_script_reproduces_trace(self):
        adv = random_adversary(12, depth_cap=8)
        t1 = run_game(strategy_recursive(4), adv, 4, StopRule.for_depth(4, 8),
                      mode="extended", start_miners=4)
        t2 = run_game(strategy_recursive(4),
                      replay_adversary([r.move for r in t1.rounds]), 4,
                      StopRule(max_rounds=len(t1.rounds) + 5), mode="extended",
                      start_miners=4)
        assert t1.to_json() == t2.to_json()

    def test_empty_script_finishes(self):
        trace = run_game(strategy_recursive(3), replay_adversary([]), 3,
                         StopRule(max_rounds=10), mode="extended", start_miners=3)
        assert len(trace.rounds) == 1 and trace.rounds[0].min_depth is None

    def test_illegal_scripted_move_reported(self):
        adv = replay_adversary([Kill(7, 0)])
        state = GameState(2)
        with pytest.raises(IllegalMoveError) as err:
            adv.next(state)
        assert "scripted move 0" in str(err.value)


class TestSelectors:
    def test_parse_forms(self):
        assert parse_adversary("lower-bound@k=4,depth=6").k == 4
        adv = parse_adversary("random@seed=3,p_deep=0.9,max_children=2,depth_cap=11")
        assert adv.depth_cap == 11 and adv.max_children == 2

    def test_unknown_selector(self):
        with pytest.raises(ValueError):
            parse_adversary("oracle@k=2")
