"""Adversary strategies: the phase lower-bound adversary, seeded random
stress adversaries, and scripted replays."""

from __future__ import annotations

import copy
import random
from typing import List, Optional, Sequence

from .game import AddMiner, AdversaryMove, Finish, GameState, IllegalMoveError, Kill


class AdversaryStrategy:
    """Interface: stateful object producing one move per round."""

    def next(self, state: GameState) -> AdversaryMove:
        raise NotImplementedError

    def clone(self) -> "AdversaryStrategy":
        return copy.deepcopy(self)


class LowerBoundAdversary(AdversaryStrategy):
    """Depth-by-depth squeeze forcing cost against every player.

    Each phase starts from a single loaded leaf: grant it k-1 children, then
    repeatedly kill the active leaf carrying the most miners (ties by
    smallest id) with no children until one leaf survives.  Every such kill
    evicts at least ceil(k/h) miners over two or more edges.  After the phase
    that reaches the target depth, the adversary finishes the game.
    """

    def __init__(self, k: int, depth: int) -> None:
        if k < 2:
            raise ValueError("the lower-bound adversary needs k >= 2")
        self.k = k
        self.depth = depth

    def next(self, state: GameState) -> AdversaryMove:
        if len(state.config) > 1:
            leaf = max(state.config, key=lambda v: (state.config[v], -v))
            return Kill(leaf, 0)
        (leaf,) = state.config
        if state.tree.depth[leaf] >= self.depth:
            return Finish()
        load = state.config[leaf]
        return Kill(leaf, min(self.k - 1, load - 1))


class RandomAdversary(AdversaryStrategy):
    """Seeded random move generator, biased toward deep leaves.

    With probability ``p_kill_deep`` the victim is drawn among the deepest
    active leaves, otherwise uniformly.  Child counts are uniform in
    ``0..min(load-1, max_children)``; at ``depth_cap`` only childless kills
    are produced.  In extended games an AddMiner is injected with small fixed
    probability while capacity remains.
    """

    P_ADD = 0.15

    def __init__(self, seed: int, p_kill_deep: float = 0.5, max_children: int = 3,
                 depth_cap: int = 32) -> None:
        if max_children < 1:
            raise ValueError("max_children must be at least 1")
        self.rng = random.Random(seed)
        self.p_kill_deep = p_kill_deep
        self.max_children = max_children
        self.depth_cap = depth_cap

    def next(self, state: GameState) -> AdversaryMove:
        if (state.mode != "plain" and state.k_cur < state.k_max
                and self.rng.random() < self.P_ADD):
            return AddMiner()
        depth = state.tree.depth
        leaves = sorted(state.config)
        if state.mode == "horizon":
            leaves = [v for v in leaves if depth[v] < state.horizon]
            if not leaves:
                return Finish()
        if self.rng.random() < self.p_kill_deep:
            deepest = max(depth[v] for v in leaves)
            pool = [v for v in leaves if depth[v] == deepest]
        else:
            pool = leaves
        leaf = pool[self.rng.randrange(len(pool))]
        cap = min(state.config[leaf] - 1, self.max_children)
        if depth[leaf] >= self.depth_cap:
            cap = 0
        c = self.rng.randint(0, cap) if cap > 0 else 0
        return Kill(leaf, c)


class ReplayAdversary(AdversaryStrategy):
    """Plays a fixed move script, then finishes."""

    def __init__(self, script: Sequence[AdversaryMove]) -> None:
        self.script: List[AdversaryMove] = list(script)
        self.pos = 0

    def next(self, state: GameState) -> AdversaryMove:
        if self.pos >= len(self.script):
            return Finish()
        move = self.script[self.pos]
        self.pos += 1
        try:
            state.check_adversary_move(move)
        except IllegalMoveError as e:
            raise IllegalMoveError(f"scripted move {self.pos - 1}: {e}") from e
        return move


def lower_bound_adversary(k: int, depth: int) -> AdversaryStrategy:
    return LowerBoundAdversary(k, depth)


def random_adversary(seed: int, p_kill_deep: float = 0.5, max_children: int = 3,
                     depth_cap: int = 32) -> AdversaryStrategy:
    return RandomAdversary(seed, p_kill_deep, max_children, depth_cap)


def replay_adversary(script: Sequence[AdversaryMove]) -> AdversaryStrategy:
    return ReplayAdversary(script)


def parse_adversary(selector: str, k: Optional[int] = None,
                    depth: Optional[int] = None) -> AdversaryStrategy:
    """Build an adversary from a selector string.

    Forms: ``lower-bound[@k=K,depth=D]``, ``random@seed=S[,p_deep=P]
    [,max_children=M][,depth_cap=C]``, ``replay@file=PATH``.  The bare
    ``lower-bound`` form takes k and depth from the calling context.
    """
    name, _, argstr = selector.partition("@")
    args = {}
    if argstr:
        for part in argstr.split(","):
            key, _, val = part.partition("=")
            args[key] = val
    if name == "lower-bound":
        kk = int(args.get("k", k if k is not None else 0))
        dd = int(args.get("depth", depth if depth is not None else 0))
        if kk < 2 or dd < 1:
            raise ValueError("lower-bound needs k and depth (args or context)")
        return lower_bound_adversary(kk, dd)
    if name == "random":
        return random_adversary(
            seed=int(args["seed"]),
            p_kill_deep=float(args.get("p_deep", 0.5)),
            max_children=int(args.get("max_children", 3)),
            depth_cap=int(args.get("depth_cap", 32)),
        )
    if name == "replay":
        from .game import GameTrace

        with open(args["file"], "r", encoding="utf-8") as fh:
            trace = GameTrace.from_json(fh.read())
        return replay_adversary([r.move for r in trace.rounds])
    raise ValueError(f"unknown adversary selector {selector!r}")
