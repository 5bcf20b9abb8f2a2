"""Shared oracles and game-walking helpers for the test suite."""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Optional

from treemine.game import GameState, Kill


def brute_transport(tree, x: Dict[int, int], y: Dict[int, int]) -> int:
    """Independent transport oracle: minimum-cost perfect matching between
    the expanded miner multisets, by full permutation search."""
    xs = [v for v in sorted(x) for _ in range(x[v])]
    ys = [v for v in sorted(y) for _ in range(y[v])]
    assert len(xs) == len(ys)
    best = None
    for perm in itertools.permutations(ys):
        cost = sum(tree.path_distance(a, b) for a, b in zip(xs, perm))
        if best is None or cost < best:
            best = cost
    return best or 0


def small_trees(max_nodes: int):
    """Enumerate all rooted trees up to max_nodes as parent arrays."""

    def grow(parents):
        yield list(parents)
        if len(parents) >= max_nodes:
            return
        n = len(parents)
        for p in range(n):
            yield from grow(parents + [p])

    seen = set()
    for parents in grow([0]):
        key = tuple(parents)
        if key not in seen:
            seen.add(key)
            yield parents


def explore_all_games(player, k: int, depth_cap: int, round_cap: int,
                      check: Callable[[GameState], None],
                      mode: str = "plain",
                      start_miners: Optional[int] = None) -> int:
    """Exhaustive adversary: walk every legal kill sequence against a player.

    Kills below ``depth_cap`` may spawn children; at the cap only childless
    kills remain.  Returns the number of states visited.
    """
    visited = 0

    def rec(state: GameState, pl, rounds_left: int) -> None:
        nonlocal visited
        visited += 1
        check(state)
        if state.finished or rounds_left == 0:
            return
        for move in state.legal_adversary_moves():
            if isinstance(move, Kill) and move.c > 0 \
                    and state.tree.depth[move.leaf] >= depth_cap:
                continue
            nxt = state.clone()
            nxt_pl = pl.clone()
            ctx = nxt.begin_round(move)
            resp = nxt_pl.respond(nxt, ctx)
            nxt.install(ctx, resp)
            nxt.check_discount_identity()
            rec(nxt, nxt_pl, rounds_left - 1)

    rec(GameState(k, mode=mode, start_miners=start_miners), player, round_cap)
    return visited
