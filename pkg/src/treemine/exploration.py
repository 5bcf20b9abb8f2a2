"""Collective tree exploration under the restricted asynchronous model.

An unknown rooted tree is explored by k robots that move one at a time, in an
order chosen by an adversarial scheduler.  The only per-step information is
whether the scheduled robot is adjacent to an unexplored edge (and, if so,
the ability to traverse it); a node whose last adjacent edge is known
explored becomes *mined*.  Exploration ends when every node is discovered
and mined.

The TEAM driver keeps one explored-node target per robot and three rules:
take an adjacent unexplored edge when present, otherwise step toward the
target, never stand still.  When a robot stands on its own mined target, the
targets are refreshed by one round of the tree-mining game: the target board
is the tree of all past targets, loads count targeting robots, and the kill
hands the freed robots to the game player's new configuration.

Every run maintains, move by move, the explored-edge inequalities
``2E >= M - S`` (for both the plain and the position-relative target
movement sums) and the environment-side frontier invariant that every node
with undiscovered edges has a robot weakly below it.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .game import GameState, GameTrace, InvalidResponseError, Kill, TraceRound
from .players import PlayerStrategy
from .trees import RootedTree


class ExplorationInvariantError(AssertionError):
    """A run-level invariant failed (the run itself is broken, not the input)."""


class TargetBoardExhausted(ExplorationInvariantError):
    """The target board is about to lose its last leaf before exploration ends.

    Impossible against a fixed tree; reachable when the tree is built
    adversarially round by round (the reciprocal reduction), where the freed
    robots' behavior is no longer specified by the algorithm.
    """


class MoveBudgetExceeded(RuntimeError):
    """The move bound was violated; signals a defective strategy."""


# --------------------------------------------------------------------------
# Static tree index: O(log n) geometry on the hidden tree
# --------------------------------------------------------------------------


class TreeIndex:
    """Binary-lifting index over a fixed rooted tree."""

    def __init__(self, tree: RootedTree) -> None:
        self.tree = tree
        self.depth = tree.depth
        n = len(tree)
        self.log = max(1, (n - 1).bit_length())
        up = [list(tree.parent)]
        for j in range(1, self.log):
            prev = up[-1]
            up.append([prev[prev[v]] for v in range(n)])
        self.up = up

    def kth_ancestor(self, v: int, k: int) -> int:
        j = 0
        while k:
            if k & 1:
                v = self.up[j][v]
            k >>= 1
            j += 1
        return v

    def lca(self, a: int, b: int) -> int:
        depth = self.depth
        if depth[a] > depth[b]:
            a = self.kth_ancestor(a, depth[a] - depth[b])
        elif depth[b] > depth[a]:
            b = self.kth_ancestor(b, depth[b] - depth[a])
        if a == b:
            return a
        for j in range(len(self.up) - 1, -1, -1):
            if self.up[j][a] != self.up[j][b]:
                a = self.up[j][a]
                b = self.up[j][b]
        return self.up[0][a]

    def dist(self, a: int, b: int) -> int:
        return self.depth[a] + self.depth[b] - 2 * self.depth[self.lca(a, b)]

    def is_strictly_below(self, x: int, u: int) -> bool:
        dd = self.depth[x] - self.depth[u]
        return dd > 0 and self.kth_ancestor(x, dd) == u

    def child_toward(self, u: int, x: int) -> int:
        """The child of u on the branch containing x (x strictly below u)."""
        return self.kth_ancestor(x, self.depth[x] - self.depth[u] - 1)


# --------------------------------------------------------------------------
# Environments
# --------------------------------------------------------------------------


class FixedEnvironment:
    """Ground-truth tree, seeded per-node reveal order, invariant monitors.

    The environment can see both sides, so it also tracks the frontier
    invariant online: every node that still hides an edge must have a robot
    weakly at or below it (O(1) per move via subtree robot counters).
    """

    def __init__(self, hidden: RootedTree, seed: int = 0, k: int = 1) -> None:
        self.hidden = hidden
        self.idx = TreeIndex(hidden)
        self.n = len(hidden)
        self.rng = random.Random(seed)
        n = self.n
        self._order: List[Optional[List[int]]] = [None] * n
        self._revealed: List[int] = [0] * n
        self.discovered = [False] * n
        self.discovered[0] = True
        self.discovered_count = 1
        self._mined = [False] * n
        self.mined_count = 0
        self._below = [0] * n
        self._below[0] = k
        self._in_frontier = [False] * n
        self._violating = 0
        self.frontier_violations = 0
        self._enter_frontier(0)

    # -- geometry (identical on the discovered prefix) --------------------

    def depth(self, v: int) -> int:
        return self.hidden.depth[v]

    def parent(self, v: int) -> int:
        return self.hidden.parent[v]

    def dist(self, a: int, b: int) -> int:
        return self.idx.dist(a, b)

    def is_strictly_below(self, x: int, u: int) -> bool:
        return self.idx.is_strictly_below(x, u)

    def child_toward(self, u: int, x: int) -> int:
        return self.idx.child_toward(u, x)

    def path(self, a: int, b: int) -> List[int]:
        return self.hidden.path(a, b)

    # -- frontier bookkeeping ----------------------------------------------

    def _hidden_left(self, v: int) -> int:
        return len(self.hidden.children[v]) - self._revealed[v]

    def _enter_frontier(self, v: int) -> None:
        # contract: a robot already stands weakly below v when this runs
        if self._hidden_left(v) > 0:
            self._in_frontier[v] = True
            if self._below[v] == 0:
                self._violating += 1
                self.frontier_violations += 1
                raise ExplorationInvariantError(
                    f"node {v} entered the frontier with no robot below it")

    def _leave_frontier(self, v: int) -> None:
        if self._in_frontier[v]:
            self._in_frontier[v] = False

    # -- queries and moves ----------------------------------------------------

    def reveal_next(self, p: int) -> Optional[int]:
        """Next unexplored edge at p per the seeded order, or None."""
        if self._hidden_left(p) == 0:
            return None
        order = self._order[p]
        if order is None:
            order = list(self.hidden.children[p])
            self.rng.shuffle(order)
            self._order[p] = order
        child = order[self._revealed[p]]
        self._revealed[p] += 1
        if self._hidden_left(p) == 0:
            self._leave_frontier(p)
        self.discovered[child] = True
        self.discovered_count += 1
        # the child joins the frontier when its discoverer arrives (note_step)
        return child

    def mined(self, v: int) -> bool:
        return self._mined[v]

    def set_mined(self, v: int) -> None:
        if not self._mined[v]:
            self._mined[v] = True
            self.mined_count += 1

    def dangling_count(self, v: int) -> int:
        """Unexplored-edge count at a discovered node.

        This is the synchronous model's information level (degrees revealed
        on discovery); the TEAM driver never reads it, it exists so that the
        synchronous greedy property can be checked from the outside.
        """
        if not self.discovered[v]:
            raise ValueError(f"node {v} is not discovered")
        return self._hidden_left(v)

    def note_step(self, frm: int, to: int) -> None:
        if self.hidden.parent[to] == frm:  # downward
            self._below[to] += 1
            if not self._in_frontier[to]:
                self._enter_frontier(to)
        else:  # upward
            self._below[frm] -= 1
            if self._in_frontier[frm] and self._below[frm] == 0:
                self._violating += 1
                self.frontier_violations += 1
                raise ExplorationInvariantError(
                    f"node {frm} with undiscovered edges lost its last robot below it")

    def complete(self) -> bool:
        return self.discovered_count == self.n and self.mined_count == self.n


class BoardEnvironment:
    """Adaptive environment over a live game board (reciprocal reduction).

    Edges are granted round by round; geometry is climbed on the shared
    board tree.  No frontier monitoring: the tree is adversarial, not fixed.
    """

    def __init__(self, tree: RootedTree) -> None:
        self.tree = tree
        self._grants: Dict[int, List[int]] = {}
        self._mined_set: set = set()
        self.frontier_violations = 0

    def grant(self, leaf: int, children: Sequence[int]) -> None:
        if children:
            self._grants.setdefault(leaf, []).extend(children)

    def depth(self, v: int) -> int:
        return self.tree.depth[v]

    def parent(self, v: int) -> int:
        return self.tree.parent[v]

    def dist(self, a: int, b: int) -> int:
        return self.tree.path_distance(a, b)

    def is_strictly_below(self, x: int, u: int) -> bool:
        return x != u and self.tree.is_ancestor(u, x)

    def child_toward(self, u: int, x: int) -> int:
        du = self.tree.depth[u]
        while self.tree.depth[x] > du + 1:
            x = self.tree.parent[x]
        return x

    def path(self, a: int, b: int) -> List[int]:
        return self.tree.path(a, b)

    def reveal_next(self, p: int) -> Optional[int]:
        pend = self._grants.get(p)
        if pend:
            return pend.pop(0)
        return None

    def mined(self, v: int) -> bool:
        return v in self._mined_set

    def set_mined(self, v: int) -> None:
        self._mined_set.add(v)

    def note_step(self, frm: int, to: int) -> None:
        pass

    def complete(self) -> bool:
        return False


# --------------------------------------------------------------------------
# Schedulers
# --------------------------------------------------------------------------


class RoundRobinScheduler:
    name = "rr"

    def next_robot(self, run: "TeamExplorer", t: int) -> int:
        return t % run.k


class SingleRobotScheduler:
    name = "single"

    def next_robot(self, run: "TeamExplorer", t: int) -> int:
        return 0


class DeepestFirstScheduler:
    name = "deepest"

    def next_robot(self, run: "TeamExplorer", t: int) -> int:
        env = run.env
        return max(range(run.k), key=lambda r: (env.depth(run.pos[r]), -r))


class RandomScheduler:
    def __init__(self, seed: int) -> None:
        self.name = f"random@seed={seed}"
        self.rng = random.Random(seed)

    def next_robot(self, run: "TeamExplorer", t: int) -> int:
        return self.rng.randrange(run.k)


def parse_scheduler(selector: str):
    if selector == "rr":
        return RoundRobinScheduler()
    if selector == "single":
        return SingleRobotScheduler()
    if selector == "deepest":
        return DeepestFirstScheduler()
    if selector.startswith("random@seed="):
        return RandomScheduler(int(selector.split("=", 1)[1]))
    raise ValueError(f"unknown scheduler selector {selector!r}")


ALL_SCHEDULERS = ("rr", "single", "deepest", "random@seed=1")


# --------------------------------------------------------------------------
# The TEAM driver
# --------------------------------------------------------------------------


class TeamExplorer:
    """Locally-greedy exploration with targets, refreshed by a game player."""

    def __init__(self, env, k: int, tm_player: PlayerStrategy,
                 record: bool = False) -> None:
        if k < 2:
            raise ValueError("team exploration needs k >= 2")
        self.env = env
        self.k = k
        self.tm = tm_player
        self.record = record

        self.pos = [0] * k
        self.targets = [0] * k
        self.target_count: Dict[int, int] = {0: k}
        self.route: List[Optional[List[int]]] = [None] * k
        self.route_pos = [0] * k
        self.dist_t = [0] * k

        # the target board, mirrored as a private game
        self.game = GameState(k, mode="extended", start_miners=k)
        self.real2game = {0: 0}
        self.game2real = {0: 0}
        self.game_trace = GameTrace(k=k, mode="extended", horizon=None, start_miners=k)

        self.M = 0
        self.E = 0
        self.S_plain = 0
        self.S_refined = 0
        self.S_game = 0
        self.c_rounds = 0
        self.moves_per_robot = [0] * k
        self.r1_per_robot = [0] * k
        self.sum_incr = [0] * k
        self.done = False
        self.events: List[dict] = []
        self.t = 0

    # -- movement ------------------------------------------------------------

    def _move(self, r: int, frm: int, to: int, rule: int, adj: bool) -> None:
        self.pos[r] = to
        self.M += 1
        self.moves_per_robot[r] += 1
        if rule == 1:
            self.E += 1
            self.r1_per_robot[r] += 1
            self.dist_t[r] += 1
        else:
            self.dist_t[r] -= 1
        self.env.note_step(frm, to)
        if self.record:
            self.events.append({"type": "move", "t": self.t, "r": r, "rule": rule,
                                "frm": frm, "to": to, "adj": adj})
        if 2 * self.E < self.M - self.S_plain or 2 * self.E < self.M - self.S_refined:
            raise ExplorationInvariantError(
                f"explored-edge inequality broken at move {self.M}")

    def _move_toward_target(self, r: int) -> None:
        p = self.pos[r]
        rt = self.route[r]
        if rt is None or self.route_pos[r] >= len(rt) - 1:
            rt = self.env.path(p, self.targets[r])
            self.route[r] = rt
            self.route_pos[r] = 0
        i = self.route_pos[r]
        if p == rt[i]:
            nxt = rt[i + 1]
            self.route_pos[r] = i + 1
        else:
            nxt = self.env.parent(p)  # climbing back from an R1 detour
        self._move(r, p, nxt, rule=2, adj=False)

    def _retarget(self, r: int, new: int, why: str, game_round: Optional[int]) -> None:
        old = self.targets[r]
        p = self.pos[r]
        d_new = self.env.dist(p, new)
        incr = d_new - self.dist_t[r]
        self.sum_incr[r] += incr
        self.S_refined += incr
        self.S_plain += self.env.dist(old, new)
        self.dist_t[r] = d_new
        self.targets[r] = new
        self.route[r] = None
        self.target_count[old] -= 1
        if self.target_count[old] == 0:
            del self.target_count[old]
        self.target_count[new] = self.target_count.get(new, 0) + 1
        if self.record:
            self.events.append({"type": "retarget", "t": self.t, "r": r, "old": old,
                                "new": new, "pos": p, "why": why,
                                "game_round": game_round})

    # -- the condition-C game round ----------------------------------------------

    def _condition_c(self, rt_robot: int, u: int) -> None:
        env = self.env
        targeting = [i for i in range(self.k) if self.targets[i] == u]
        if len(targeting) != self.target_count.get(u, 0):
            raise ExplorationInvariantError("target counter out of sync")
        below = [i for i in targeting if env.is_strictly_below(self.pos[i], u)]
        c = len(below)
        entry = {i: env.child_toward(u, self.pos[i]) for i in below}
        if len(set(entry.values())) != c:
            raise ExplorationInvariantError("two targeting robots share a branch below "
                                            f"{u}")
        if c == 0 and len(self.game.config) == 1:
            raise TargetBoardExhausted(u)

        gu = self.real2game[u]
        if self.game.config.get(gu) != len(targeting):
            raise ExplorationInvariantError("target board load out of sync")
        ctx = self.game.begin_round(Kill(gu, c))
        for gch, i in zip(ctx.children, below):
            rch = entry[i]
            self.real2game[rch] = gch
            self.game2real[gch] = rch
        resp = self.tm.respond(self.game, ctx)
        cost_before = self.game.cost
        self.game.install(ctx, resp)
        self.game.check_discount_identity()
        dcost = self.game.cost - cost_before
        self.S_game += dcost
        round_index = self.c_rounds
        self.c_rounds += 1
        if self.record:
            self.game_trace.rounds.append(TraceRound(
                Kill(gu, c), resp, self.game.cost, self.game.raw_cost,
                self.game.min_depth()))

        for i in below:
            self._retarget(i, entry[i], "c", round_index)

        demand: Dict[int, int] = {}
        for gv, cnt in resp.placement.items():
            rv = self.game2real[gv]
            demand[rv] = demand.get(rv, 0) + cnt
        for i in below:
            demand[entry[i]] -= 1
            if demand[entry[i]] == 0:
                del demand[entry[i]]
        others = [i for i in targeting if i not in below]
        if sum(demand.values()) != len(others):
            raise ExplorationInvariantError("player response does not cover the "
                                            "retargeted robots")
        # deepest robots first, each to its nearest demanded leaf
        for i in sorted(others, key=lambda i: (-env.depth(self.pos[i]), i)):
            best = min(demand, key=lambda v: (env.dist(self.pos[i], v), v))
            self._retarget(i, best, "c", round_index)
            demand[best] -= 1
            if demand[best] == 0:
                del demand[best]

        for gsrc, gdst, cnt in resp.nonlazy:
            src, dst = self.game2real[gsrc], self.game2real[gdst]
            cands = sorted((i for i in range(self.k) if self.targets[i] == src),
                           key=lambda i: (env.is_strictly_below(self.pos[i], src), i))
            for i in cands[:cnt]:
                self._retarget(i, dst, "nonlazy", round_index)

        if self.S_refined > self.S_game:
            raise ExplorationInvariantError(
                "position-relative target movement exceeded the game cost")

    # -- one scheduled move ------------------------------------------------------

    def step(self, r: int) -> None:
        env = self.env
        p = self.pos[r]
        child = env.reveal_next(p)
        if child is not None:
            self._move(r, p, child, rule=1, adj=True)
            self.t += 1
            return
        if not env.mined(p):
            env.set_mined(p)
            if self.record:
                self.events.append({"type": "mine", "t": self.t, "node": p})
        if env.complete():
            self.done = True
            return
        if self.targets[r] == p:
            self._condition_c(r, p)
            if self.game.finished and not env.complete():
                raise ExplorationInvariantError(
                    "target board emptied before exploration completed")
        self._move_toward_target(r)
        self.t += 1
        if env.complete():
            self.done = True


# --------------------------------------------------------------------------
# Run drivers and results
# --------------------------------------------------------------------------


@dataclass
class RobotStats:
    moves: int
    explored: int
    sum_incr: int
    final_dist: int

    def telescoping_holds(self) -> bool:
        # exact single-robot ledger: 2*R1 = m + d_m - sum of increments
        return 2 * self.explored == self.moves + self.final_dist - self.sum_incr


@dataclass
class ExplorationResult:
    n: int
    depth: int
    k: int
    scheduler: str
    moves: int
    explored_edges: int
    s_plain: int
    s_refined: int
    s_game: int
    game_cost: int
    c_rounds: int
    complete: bool
    frontier_violations: int
    robots: List[RobotStats]
    trace: Optional["ExplorationTrace"] = None
    game_trace: Optional[GameTrace] = None


def run_acte(tm_player: PlayerStrategy, hidden: RootedTree, scheduler, k: int,
             env_seed: int = 0, record: bool = False,
             move_cap: Optional[int] = None) -> ExplorationResult:
    """Drive TEAM to full exploration under the given schedule."""
    env = FixedEnvironment(hidden, seed=env_seed, k=k)
    ex = TeamExplorer(env, k, tm_player, record=record)
    t = 0
    while not ex.done:
        r = scheduler.next_robot(ex, t)
        ex.step(r)
        t += 1
        if move_cap is not None and ex.M > move_cap:
            raise MoveBudgetExceeded(f"{ex.M} moves exceed the cap {move_cap}")
    return _result(ex, hidden, scheduler)


def _result(ex: TeamExplorer, hidden: RootedTree, scheduler) -> ExplorationResult:
    robots = [RobotStats(ex.moves_per_robot[r], ex.r1_per_robot[r], ex.sum_incr[r],
                         ex.dist_t[r]) for r in range(ex.k)]
    trace = None
    if ex.record:
        trace = ExplorationTrace(
            n=ex.env.n, k=ex.k, parents=hidden.to_parents(),
            scheduler=getattr(scheduler, "name", "?"), events=ex.events,
            moves=ex.M, explored=ex.E, s_plain=ex.S_plain, s_refined=ex.S_refined,
            s_game=ex.S_game)
    return ExplorationResult(
        n=ex.env.n, depth=max(hidden.depth), k=ex.k,
        scheduler=getattr(scheduler, "name", "?"), moves=ex.M, explored_edges=ex.E,
        s_plain=ex.S_plain, s_refined=ex.S_refined, s_game=ex.S_game,
        game_cost=ex.game.cost, c_rounds=ex.c_rounds,
        complete=ex.env.complete(), frontier_violations=ex.env.frontier_violations,
        robots=robots, trace=trace,
        game_trace=ex.game_trace if ex.record else None)


@dataclass
class SyncResult:
    rounds: int
    explore_rounds: int
    return_rounds: int
    acte: ExplorationResult


def run_cte_sync(tm_player: PlayerStrategy, hidden: RootedTree, k: int,
                 env_seed: int = 0, record: bool = False,
                 check_greedy: bool = False) -> SyncResult:
    """Synchronous wrapper: robots move in fixed rotation, k moves per round.

    The emulation stops as soon as every edge is explored (full-map knowledge
    is available in the synchronous model); the robots then walk home along
    their root paths, overlapped, which costs the deepest position.

    With ``check_greedy`` each synchronous round is checked against the
    synchronous greedy property: a node with e unexplored edges holding x
    robots at the round start has exactly max(0, e - x) afterwards.
    """
    env = FixedEnvironment(hidden, seed=env_seed, k=k)
    ex = TeamExplorer(env, k, tm_player, record=record)
    n = env.n
    t = 0

    def snapshot():
        occupancy: Dict[int, int] = {}
        for p in ex.pos:
            occupancy[p] = occupancy.get(p, 0) + 1
        return {v: (env.dangling_count(v), x) for v, x in occupancy.items()}

    before = snapshot() if check_greedy else None
    while ex.E < n - 1:
        if ex.done:
            raise ExplorationInvariantError("run ended with unexplored edges")
        ex.step(t % k)
        t += 1
        if check_greedy and t % k == 0:
            for v, (e, x) in before.items():
                now = env.dangling_count(v)
                if now != max(0, e - x):
                    raise ExplorationInvariantError(
                        f"synchronous greedy property broken at node {v}: "
                        f"e={e} x={x} left={now}")
            before = snapshot()
    explore_rounds = (t - 1) // k + 1 if t else 0
    return_rounds = max(env.depth(p) for p in ex.pos) if n > 1 else 0
    return SyncResult(rounds=explore_rounds + return_rounds,
                      explore_rounds=explore_rounds, return_rounds=return_rounds,
                      acte=_result(ex, hidden, RoundRobinScheduler()))


def dfs_reference_rounds(hidden: RootedTree) -> int:
    """Round count of the one-active-robot baseline: a depth-first sweep
    traverses every edge twice and returns, in exactly 2(n-1) rounds."""
    return 2 * (len(hidden) - 1)


def anchors(ex: TeamExplorer) -> Dict[int, Optional[int]]:
    """Per robot, the shallowest unmined node on its root path (None if all mined)."""
    env = ex.env
    out: Dict[int, Optional[int]] = {}
    for r in range(ex.k):
        v = ex.pos[r]
        chain = []
        while True:
            chain.append(v)
            if v == 0:
                break
            v = env.parent(v)
        best = None
        for node in chain:  # deepest-to-root; keep the shallowest unmined
            if not env.mined(node):
                best = node
        out[r] = best
    return out


# --------------------------------------------------------------------------
# Recorded traces and their verification
# --------------------------------------------------------------------------


@dataclass
class ExplorationTrace:
    """Replay-grade event record of one exploration run (schema v1)."""

    n: int
    k: int
    parents: List[int]
    scheduler: str
    events: List[dict]
    moves: int
    explored: int
    s_plain: int
    s_refined: int
    s_game: int
    version: int = 1

    def to_json(self) -> str:
        return json.dumps(self.__dict__)

    @classmethod
    def from_json(cls, text: str) -> "ExplorationTrace":
        data = json.loads(text)
        return cls(**data)


def is_locally_greedy(trace: ExplorationTrace) -> bool:
    """True iff every move made while adjacent to an unexplored edge took one."""
    for ev in trace.events:
        if ev["type"] == "move" and ev.get("adj") and ev["rule"] != 1:
            return False
    return True


@dataclass
class TargetsReport:
    ok: bool
    first_violation: Optional[str]
    moves: int
    explored: int
    s_plain: int
    s_refined: int
    telescoping_ok: bool


def verify_targets_inequality(trace: ExplorationTrace) -> TargetsReport:
    """Recompute E, M and both target-movement sums from the raw events and
    check 2E >= M - S at every prefix, plus the per-robot telescoping ledger."""
    tree = RootedTree.from_parents(trace.parents)
    pos = [0] * trace.k
    tgt = [0] * trace.k
    dist_t = [0] * trace.k
    m = [0] * trace.k
    r1 = [0] * trace.k
    incr = [0] * trace.k
    M = E = s_plain = s_refined = 0
    first = None
    for ev in trace.events:
        if ev["type"] == "move":
            r = ev["r"]
            pos[r] = ev["to"]
            M += 1
            m[r] += 1
            if ev["rule"] == 1:
                E += 1
                r1[r] += 1
                dist_t[r] += 1
            else:
                dist_t[r] -= 1
            if first is None and (2 * E < M - s_plain or 2 * E < M - s_refined):
                first = f"prefix of {M} moves: E={E}, S_plain={s_plain}, S_ref={s_refined}"
        elif ev["type"] == "retarget":
            r = ev["r"]
            d_new = tree.path_distance(pos[r], ev["new"])
            delta = d_new - dist_t[r]
            incr[r] += delta
            s_refined += delta
            s_plain += tree.path_distance(ev["old"], ev["new"])
            dist_t[r] = d_new
            tgt[r] = ev["new"]
    tele = all(2 * r1[r] == m[r] + dist_t[r] - incr[r] for r in range(trace.k))
    ok = (first is None and tele and M == trace.moves and E == trace.explored
          and s_plain == trace.s_plain and s_refined == trace.s_refined)
    if first is None and not tele:
        first = "single-robot telescoping ledger failed"
    if first is None and not ok:
        first = "recorded totals disagree with the recomputation"
    return TargetsReport(ok=ok, first_violation=first, moves=M, explored=E,
                         s_plain=s_plain, s_refined=s_refined, telescoping_ok=tele)


# --------------------------------------------------------------------------
# Reciprocal reduction: a game player out of an exploration algorithm
# --------------------------------------------------------------------------


def team_algorithm(tm_player_factory: Callable[[], PlayerStrategy]):
    """Factory adapter: builds a fresh TEAM explorer on a given environment."""

    def build(env, k: int) -> TeamExplorer:
        return TeamExplorer(env, k, tm_player_factory())

    return build


class ExplorationBackedPlayer(PlayerStrategy):
    """Tree-mining player realized by scheduling an exploration algorithm.

    Each kill grants the first c scheduled robots at the victim one fresh
    edge each and lets every displaced robot walk until it stands on an
    active leaf again; the settled robot counts are the response.  The walk
    length of each round is exposed for the cost-domination check.

    Once the adversary exhausts the algorithm's target board (possible only
    because the board here is built adversarially), the displaced robots'
    behavior is no longer specified by the algorithm; from then on they are
    walked straight to the nearest surviving leaf.
    """

    def __init__(self, algorithm_factory, move_cap: int = 100000) -> None:
        self.factory = algorithm_factory
        self.move_cap = move_cap
        self.env: Optional[BoardEnvironment] = None
        self.ex: Optional[TeamExplorer] = None
        self.round_moves: List[int] = []
        self.pos: List[int] = []
        self.detached = False

    def _walk_unsettled(self, state: GameState, leaf: int, children, active_after,
                        steps: int) -> int:
        """Directly route every displaced robot: pending fresh edges first,
        then the nearest surviving leaf."""
        tree = state.tree
        grants = list(children)
        for r in range(len(self.pos)):
            p = self.pos[r]
            if p in active_after:
                continue
            if p == leaf and grants:
                self.pos[r] = grants.pop(0)
                steps += 1
            else:
                dest = min(active_after, key=lambda v: (tree.path_distance(p, v), v))
                self.pos[r] = dest
                steps += tree.path_distance(p, dest)
        return steps

    def respond(self, state: GameState, ctx) -> "PlayerResponse":
        from .game import PlayerResponse

        if ctx.kind != "kill":
            raise InvalidResponseError("the derived player supports the plain game only")
        if self.env is None:
            self.env = BoardEnvironment(state.tree)
            self.ex = self.factory(self.env, state.k_cur)
            self.pos = self.ex.pos
        survivors = {v: c for v, c in state.config.items() if v != ctx.leaf}
        active_after = set(survivors) | set(ctx.children)
        if not active_after:
            self.round_moves.append(0)
            return PlayerResponse({})

        steps = 0
        if not self.detached:
            self.env.grant(ctx.leaf, ctx.children)
            while True:
                unsettled = [r for r in range(self.ex.k)
                             if self.pos[r] not in active_after]
                if not unsettled:
                    break
                try:
                    self.ex.step(unsettled[0])
                except TargetBoardExhausted:
                    self.detached = True
                    self.pos = list(self.ex.pos)
                    break
                steps += 1
                if steps > self.move_cap:
                    raise MoveBudgetExceeded(
                        "exploration algorithm failed to settle on active leaves")
        if self.detached:
            pending = [ch for ch in ctx.children
                       if not any(p == ch for p in self.pos)]
            steps = self._walk_unsettled(state, ctx.leaf, pending, active_after, steps)
        self.round_moves.append(steps)

        counts: Dict[int, int] = {}
        for p in self.pos:
            counts[p] = counts.get(p, 0) + 1
        placement: Dict[int, int] = {}
        for v, cnt in counts.items():
            extra = cnt - survivors.get(v, 0)
            if extra > 0:
                placement[v] = extra
        return PlayerResponse(placement)


def game_from_exploration(algorithm_factory, move_cap: int = 100000) -> PlayerStrategy:
    return ExplorationBackedPlayer(algorithm_factory, move_cap=move_cap)
