"""Tree-mining game engine: moves, cost accounting, traces, and the run loop.

One round: the adversary deactivates an active leaf and grants it ``c`` fresh
children (``c <= load - 1``); the player relocates the freed miners so that
every new child receives at least one.  The discounted cost advances by the
transport distance between the old and new configurations minus ``2c``; the
raw cost omits the discount.

Three game modes:

* ``plain``     -- fixed miner count, kill moves only (the base game).
* ``extended``  -- the adversary may add miners up to ``k_max`` (zero cost)
                   and the player may issue non-lazy transfers between active
                   leaves, paid at full distance, keeping one miner everywhere.
* ``horizon``   -- extended rules plus a depth limit: leaves at the horizon
                   hold exactly one miner and cannot be killed; the game ends
                   once every active leaf sits at the horizon.  The one
                   unavoidable exception is the game-ending round itself,
                   where surplus miners may land on horizon leaves (there is
                   nowhere else left); state invariants skip that final round.

Traces record every round and replay bit-for-bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .trees import Configuration, RootedTree, min_active_depth, transport_distance


class IllegalMoveError(ValueError):
    """An adversary move that violates the game rules."""


class InvalidResponseError(ValueError):
    """A player response that violates the game rules."""


# --------------------------------------------------------------------------
# Moves and responses
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Kill:
    """Deactivate ``leaf`` and grant it ``c`` fresh active children."""

    leaf: int
    c: int


@dataclass(frozen=True)
class AddMiner:
    """Extended-game move: one more miner enters at a leaf of the player's choice."""


@dataclass(frozen=True)
class Finish:
    """Pseudo-move: the engine expands it into killing every remaining leaf with c=0."""


AdversaryMove = Union[Kill, AddMiner, Finish]


@dataclass
class PlayerResponse:
    """Placement of the freed (or new) miners plus optional non-lazy transfers.

    ``placement`` maps destination leaves to counts and must account for
    exactly the miners in hand this round.  ``nonlazy`` transfers are applied
    after the placement, in order, each keeping at least one miner on its
    source leaf; their full walking distance is charged to the cost.
    """

    placement: Dict[int, int] = field(default_factory=dict)
    nonlazy: List[Tuple[int, int, int]] = field(default_factory=list)


@dataclass(frozen=True)
class RoundContext:
    """What the player sees when asked to respond.

    For kills, ``children`` are the freshly created node ids in creation
    order and ``freed`` is the number of miners to relocate.  For AddMiner,
    ``freed`` is 1 and ``leaf`` is None.
    """

    kind: str  # "kill" | "add"
    leaf: Optional[int]
    c: int
    children: Tuple[int, ...]
    freed: int


# --------------------------------------------------------------------------
# Game state
# --------------------------------------------------------------------------

MODES = ("plain", "extended", "horizon")


class GameState:
    """Full board state: tree, configuration, counters, and mode flags."""

    __slots__ = (
        "tree",
        "config",
        "round",
        "cost",
        "raw_cost",
        "k_cur",
        "k_max",
        "mode",
        "horizon",
        "edges_created",
        "finished",
    )

    def __init__(self, k: int, mode: str = "plain", horizon: Optional[int] = None,
                 start_miners: Optional[int] = None) -> None:
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "horizon":
            if horizon is None or horizon < 1:
                raise ValueError("horizon mode requires a positive depth limit")
        elif horizon is not None:
            raise ValueError("horizon depth only applies to horizon mode")
        if start_miners is None:
            start_miners = k if mode == "plain" else 1
        if not (1 <= start_miners <= k):
            raise ValueError("start_miners must lie in 1..k")
        if mode == "plain" and start_miners != k:
            raise ValueError("plain mode starts with all miners present")
        self.tree = RootedTree()
        self.config: Configuration = {0: start_miners}
        self.round = 0
        self.cost = 0
        self.raw_cost = 0
        self.k_cur = start_miners
        self.k_max = k
        self.mode = mode
        self.horizon = horizon
        self.edges_created = 0
        self.finished = False

    # -- inspection ------------------------------------------------------

    @property
    def active(self) -> Sequence[int]:
        return list(self.config.keys())

    def min_depth(self) -> Optional[int]:
        return min_active_depth(self.tree, self.config)

    def clone(self) -> "GameState":
        s = GameState.__new__(GameState)
        s.tree = self.tree.clone()
        s.config = dict(self.config)
        s.round = self.round
        s.cost = self.cost
        s.raw_cost = self.raw_cost
        s.k_cur = self.k_cur
        s.k_max = self.k_max
        s.mode = self.mode
        s.horizon = self.horizon
        s.edges_created = self.edges_created
        s.finished = self.finished
        return s

    # -- legality ----------------------------------------------------------

    def check_adversary_move(self, move: AdversaryMove) -> None:
        if self.finished:
            raise IllegalMoveError("game already finished")
        if isinstance(move, Kill):
            if move.leaf not in self.config:
                raise IllegalMoveError(f"leaf {move.leaf} is not active")
            load = self.config[move.leaf]
            if not (0 <= move.c <= load - 1):
                raise IllegalMoveError(
                    f"kill with c={move.c} at leaf {move.leaf} with load {load}")
            if self.mode == "horizon" and self.tree.depth[move.leaf] >= self.horizon:
                raise IllegalMoveError("leaves at the horizon cannot be killed")
        elif isinstance(move, AddMiner):
            if self.mode == "plain":
                raise IllegalMoveError("AddMiner is only legal in the extended game")
            if self.k_cur >= self.k_max:
                raise IllegalMoveError("miner capacity exhausted")
        elif isinstance(move, Finish):
            pass
        else:
            raise IllegalMoveError(f"unknown move {move!r}")

    def legal_adversary_moves(self) -> List[AdversaryMove]:
        """Every Kill(leaf, c) currently legal, plus AddMiner when available."""
        if self.finished:
            return []
        moves: List[AdversaryMove] = []
        for leaf in sorted(self.config):
            if self.mode == "horizon" and self.tree.depth[leaf] >= self.horizon:
                continue
            for c in range(self.config[leaf]):
                moves.append(Kill(leaf, c))
        if self.mode != "plain" and self.k_cur < self.k_max:
            moves.append(AddMiner())
        return moves

    # -- round application (mutating) --------------------------------------

    def begin_round(self, move: AdversaryMove) -> RoundContext:
        """Apply the structural part of the adversary move; returns the context."""
        self.check_adversary_move(move)
        if isinstance(move, Kill):
            children = tuple(self.tree.add_child(move.leaf) for _ in range(move.c))
            return RoundContext("kill", move.leaf, move.c, children, self.config[move.leaf])
        if isinstance(move, AddMiner):
            return RoundContext("add", None, 0, (), 1)
        raise IllegalMoveError("Finish must be expanded by the caller")

    def install(self, ctx: RoundContext, resp: PlayerResponse) -> None:
        """Validate the response, install the new configuration, update cost."""
        old = dict(self.config)
        if ctx.kind == "kill":
            assert ctx.leaf is not None
            del self.config[ctx.leaf]
        active_now = set(self.config) | set(ctx.children)

        placed = 0
        for v, cnt in resp.placement.items():
            if cnt <= 0:
                raise InvalidResponseError(f"placement of {cnt} at {v}")
            if v not in active_now:
                raise InvalidResponseError(f"placement target {v} is not an active leaf")
            placed += cnt
        if ctx.kind == "kill" and not active_now:
            # terminal kill with no surviving leaf: the miners retire in place
            if resp.placement or resp.nonlazy:
                raise InvalidResponseError("no active leaf remains to receive miners")
            self.round += 1
            self.finished = True
            return
        if placed != ctx.freed:
            raise InvalidResponseError(f"placement covers {placed} miners, expected {ctx.freed}")
        for ch in ctx.children:
            if resp.placement.get(ch, 0) < 1:
                raise InvalidResponseError(f"new child {ch} received no miner")

        for v, cnt in resp.placement.items():
            self.config[v] = self.config.get(v, 0) + cnt

        if ctx.kind == "kill":
            inc = transport_distance(self.tree, old, self.config)
            self.raw_cost += inc
            self.cost += inc - 2 * ctx.c
            self.edges_created += ctx.c
        else:
            self.k_cur += 1

        if resp.nonlazy and self.mode == "plain":
            raise InvalidResponseError("non-lazy moves are only legal in the extended game")
        for src, dst, cnt in resp.nonlazy:
            if cnt <= 0:
                raise InvalidResponseError(f"non-lazy transfer of {cnt} miners")
            if src not in self.config or dst not in self.config:
                raise InvalidResponseError(f"non-lazy transfer {src}->{dst} off the active set")
            if self.config[src] - cnt < 1:
                raise InvalidResponseError(f"non-lazy transfer empties leaf {src}")
            self.config[src] -= cnt
            self.config[dst] = self.config.get(dst, 0) + cnt
            step = cnt * self.tree.path_distance(src, dst)
            self.cost += step
            self.raw_cost += step

        self.round += 1
        if self.mode == "horizon":
            depth = self.tree.depth
            if all(depth[v] >= self.horizon for v in self.config):
                self.finished = True
            else:
                for v, cnt in self.config.items():
                    if depth[v] >= self.horizon and cnt > 1:
                        raise InvalidResponseError(
                            f"{cnt} miners stacked on horizon leaf {v}")

    def check_discount_identity(self) -> None:
        if self.cost != self.raw_cost - 2 * self.edges_created:
            raise AssertionError(
                f"discount identity broken: cost={self.cost} raw={self.raw_cost} "
                f"edges={self.edges_created}")


def apply_round(state: GameState, move: AdversaryMove,
                resp: PlayerResponse) -> GameState:
    """Functional round application: returns the successor state, input untouched."""
    nxt = state.clone()
    ctx = nxt.begin_round(move)
    nxt.install(ctx, resp)
    nxt.check_discount_identity()
    return nxt


# --------------------------------------------------------------------------
# Traces
# --------------------------------------------------------------------------


@dataclass
class TraceRound:
    move: AdversaryMove
    response: PlayerResponse
    cost: int
    raw_cost: int
    min_depth: Optional[int]


@dataclass
class GameTrace:
    """Replayable round-by-round record of a game."""

    k: int
    mode: str
    horizon: Optional[int]
    start_miners: int
    rounds: List[TraceRound] = field(default_factory=list)

    def cost_at_depth(self, D: int) -> int:
        """Maximum cost over the prefix of rounds whose min miner depth is <= D."""
        best = 0
        for r in self.rounds:
            if r.min_depth is None:
                break
            if r.min_depth <= D:
                best = max(best, r.cost)
        return best

    def final_cost(self) -> int:
        return self.rounds[-1].cost if self.rounds else 0

    # -- JSON wire format --------------------------------------------------

    def to_dict(self) -> dict:
        def enc_move(m: AdversaryMove):
            if isinstance(m, Kill):
                return {"kill": [m.leaf, m.c]}
            return "add_miner"

        rounds = [
            {
                "adv": enc_move(r.move),
                "resp": {
                    "placement": sorted(r.response.placement.items()),
                    "nonlazy": [list(t) for t in r.response.nonlazy],
                },
                "cost": r.cost,
                "raw_cost": r.raw_cost,
                "min_depth": r.min_depth,
            }
            for r in self.rounds
        ]
        return {
            "k": self.k,
            "mode": self.mode,
            "horizon": self.horizon,
            "start_miners": self.start_miners,
            "rounds": rounds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "GameTrace":
        rounds = []
        for row in data["rounds"]:
            adv = row["adv"]
            if adv == "add_miner":
                move: AdversaryMove = AddMiner()
            else:
                move = Kill(int(adv["kill"][0]), int(adv["kill"][1]))
            resp = PlayerResponse(
                placement={int(v): int(c) for v, c in row["resp"]["placement"]},
                nonlazy=[tuple(int(x) for x in t) for t in row["resp"]["nonlazy"]],
            )
            rounds.append(TraceRound(move, resp, int(row["cost"]), int(row["raw_cost"]),
                                     row["min_depth"]))
        return cls(k=int(data["k"]), mode=data["mode"], horizon=data.get("horizon"),
                   start_miners=int(data.get("start_miners", data["k"])), rounds=rounds)

    @classmethod
    def from_json(cls, text: str) -> "GameTrace":
        return cls.from_dict(json.loads(text))


def verify_game_trace(trace: GameTrace) -> List[str]:
    """Replay a trace from scratch and re-check every recorded quantity.

    Returns a list of violation descriptions; empty means clean.
    """
    errors: List[str] = []
    state = GameState(trace.k, mode=trace.mode, horizon=trace.horizon,
                      start_miners=trace.start_miners)
    for i, r in enumerate(trace.rounds):
        expected_k = state.k_cur + (1 if isinstance(r.move, AddMiner) else 0)
        try:
            state = apply_round(state, r.move, r.response)
        except (IllegalMoveError, InvalidResponseError, AssertionError) as e:
            errors.append(f"round {i}: {e}")
            return errors
        if state.k_cur != expected_k:
            errors.append(f"round {i}: miner conservation broken")
        if state.cost != r.cost:
            errors.append(f"round {i}: replayed cost {state.cost} != recorded {r.cost} "
                          f"(discount identity: raw - 2*edges = "
                          f"{state.raw_cost - 2 * state.edges_created})")
        if state.raw_cost != r.raw_cost:
            errors.append(f"round {i}: replayed raw cost {state.raw_cost} "
                          f"!= recorded {r.raw_cost}")
        if state.min_depth() != r.min_depth:
            errors.append(f"round {i}: replayed min depth {state.min_depth()} "
                          f"!= recorded {r.min_depth}")
        if errors:
            return errors
    return errors


# --------------------------------------------------------------------------
# Run loop
# --------------------------------------------------------------------------


@dataclass
class StopRule:
    """When to stop a game: round cap, depth target passed, or game finished.

    ``stop_depth`` halts once every miner sits strictly deeper than that
    depth, which freezes ``cost_at_depth(stop_depth)``.
    """

    max_rounds: int
    stop_depth: Optional[int] = None

    @classmethod
    def for_depth(cls, k: int, depth: int) -> "StopRule":
        # runaway guard: the measured games are infinite in principle
        return cls(max_rounds=10 * k * depth + 1000, stop_depth=depth)


class StrategyFault(RuntimeError):
    """A strategy produced an illegal move or response; carries the round index."""

    def __init__(self, round_index: int, side: str, err: Exception) -> None:
        super().__init__(f"{side} fault at round {round_index}: {err}")
        self.round_index = round_index
        self.side = side
        self.cause = err


def run_game(player, adversary, k: int, stop: StopRule, mode: str = "plain",
             horizon: Optional[int] = None, start_miners: Optional[int] = None,
             state: Optional[GameState] = None) -> GameTrace:
    """Alternate adversary and player until the stop rule fires.

    ``player`` exposes ``respond(state, ctx) -> PlayerResponse`` and
    ``adversary`` exposes ``next(state) -> AdversaryMove``.  A ``Finish`` move
    is expanded into killing every remaining leaf (smallest id first) with no
    children.
    """
    if state is None:
        state = GameState(k, mode=mode, horizon=horizon, start_miners=start_miners)
    trace = GameTrace(k=k, mode=state.mode, horizon=state.horizon,
                      start_miners=state.k_cur)

    def play_one(move: AdversaryMove) -> None:
        ctx = state.begin_round(move)
        try:
            resp = player.respond(state, ctx)
            state.install(ctx, resp)
        except (InvalidResponseError, IllegalMoveError) as e:
            raise StrategyFault(state.round, "player", e) from e
        state.check_discount_identity()
        trace.rounds.append(TraceRound(move, resp, state.cost, state.raw_cost,
                                       state.min_depth()))

    while not state.finished and len(trace.rounds) < stop.max_rounds:
        md = state.min_depth()
        if stop.stop_depth is not None and (md is None or md > stop.stop_depth):
            break
        try:
            move = adversary.next(state)
            state.check_adversary_move(move)
        except IllegalMoveError as e:
            raise StrategyFault(state.round, "adversary", e) from e
        if isinstance(move, Finish):
            while state.config and not state.finished:
                leaf = min(state.config)
                play_one(Kill(leaf, 0))
            break
        play_one(move)
    return trace
