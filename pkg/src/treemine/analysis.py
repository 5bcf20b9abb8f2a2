"""Numeric side: overhead coefficients, their growth, the idle-robots
competitive wrapper, adversary phase bounds, and a small exact game solver.

The coefficient recurrence

    c_2 = 2,    c_k = c_{k-1} + 2*k*c_{ceil(k/2)} + 20*k^2

bounds the worst-case discounted game cost per unit depth for the recursive
strategy; ``a_k``/``b_k`` split it per the two structure coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .game import GameState, Kill, PlayerResponse
from .trees import RootedTree


# --------------------------------------------------------------------------
# Overhead coefficients
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def ck(k: int) -> int:
    """Exact overhead coefficient per unit depth."""
    if k < 2:
        raise ValueError("coefficients are defined for k >= 2")
    if k == 2:
        return 2
    return ck(k - 1) + 2 * k * ck((k + 1) // 2) + 20 * k * k


def ak(k: int) -> int:
    if k < 3:
        raise ValueError("the split coefficients start at k = 3")
    return ck(k - 1) + k * ck((k + 1) // 2) + 10 * k * k


def bk(k: int) -> int:
    if k < 3:
        raise ValueError("the split coefficients start at k = 3")
    return k * ck((k + 1) // 2) + 10 * k * k


def growth_ratio(k: int) -> float:
    """ck(k) / k**log2(k), the normalized growth measure."""
    return ck(k) / float(k) ** math.log2(k)


@dataclass
class AsymptoticReport:
    k_max: int
    alpha: float
    beta: float
    gamma: float
    k0: Optional[int]
    C: float
    argmax_k: int
    # the parity of ceil(k/2) makes the raw ratio wiggle, so the tail is
    # summarized two ways: never exceeding the max again, and decreasing
    # along powers of two
    max_never_exceeded: bool
    dyadic_nonincreasing: bool
    ratios: Dict[int, float] = field(default_factory=dict)


def check_asymptotic(k_max: int, alpha: float = 1.0 / math.log(2.0),
                     beta: float = 1.0, gamma: float = 2.0,
                     c1: float = 2.0, c2: float = 20.0) -> AsymptoticReport:
    """Empirical growth check for the coefficient sequence.

    Requires ``alpha >= (beta + 1) / (2 ln 2)``.  Finds the smallest k0 such
    that ``u_{k-1} + c1*k^beta*u_{ceil(k/2)} + c2*k^gamma <= u_k`` holds for
    every k in [k0, k_max] with ``u_k = exp(alpha * ln(k)^2)``, and measures
    C = max_k ck(k)/k^{log2 k} together with where the maximum sits.
    """
    if alpha < (beta + 1.0) / (2.0 * math.log(2.0)) - 1e-12:
        raise ValueError("hypothesis alpha >= (beta+1)/(2 ln 2) violated")

    def u(k: int) -> float:
        return math.exp(alpha * math.log(k) ** 2)

    holds = {}
    for k in range(3, k_max + 1):
        lhs = u(k - 1) + c1 * k ** beta * u((k + 1) // 2) + c2 * k ** gamma
        holds[k] = lhs <= u(k)
    k0 = None
    for k in range(3, k_max + 1):
        if all(holds[j] for j in range(k, k_max + 1)):
            k0 = k
            break

    ratios = {k: growth_ratio(k) for k in range(2, k_max + 1)}
    argmax_k = max(ratios, key=lambda k: (ratios[k], -k))
    C = ratios[argmax_k]
    bounded = all(ratios[k] <= C for k in range(argmax_k + 1, k_max + 1))
    dyadic = [ratios[1 << j] for j in range(1, k_max.bit_length())
              if (1 << j) >= argmax_k and (1 << j) <= k_max]
    dy_noninc = all(b <= a + 1e-12 for a, b in zip(dyadic, dyadic[1:]))
    return AsymptoticReport(k_max=k_max, alpha=alpha, beta=beta, gamma=gamma,
                            k0=k0, C=C, argmax_k=argmax_k,
                            max_never_exceeded=bounded,
                            dyadic_nonincreasing=dy_noninc, ratios=ratios)


def competitive_team_size(k: int) -> int:
    """Team size k' whose overhead budget fits k: largest with
    k'^{log2 k'} <= k, via k' = floor(exp(sqrt(ln 2 * ln k))), clamped to >= 2."""
    if k < 2:
        raise ValueError("k >= 2 required")
    kp = int(math.exp(math.sqrt(math.log(2.0) * math.log(k))))
    while kp > 2 and float(kp) ** math.log2(kp) > k:
        kp -= 1
    return max(2, kp)


def lower_bound_value(k: int, depth: int) -> Tuple[float, int]:
    """Analytic and exact per-run floors forced by the phase adversary.

    Returns ``(k*(ln k - 4)*depth, depth * sum_{h=2}^{k-1} (2*ceil(k/h)) - 2(k-1))``.
    """
    if k < 3:
        raise ValueError("k >= 3 required")
    analytic = k * (math.log(k) - 4.0) * depth
    phase = sum(2 * -(-k // h) for h in range(2, k)) - 2 * (k - 1)
    return analytic, depth * phase


# --------------------------------------------------------------------------
# Exact solver for small truncated games
# --------------------------------------------------------------------------

NEG_INF = float("-inf")


@dataclass
class SolveResult:
    value: int
    principal_variation: List[str]
    states_visited: int


class MinimaxOracle:
    """Exhaustive adversary-max / player-min value of the truncated game.

    The objective is the maximum discounted cost attained while the
    shallowest miner sits at depth <= D.  Nodes beyond ``depth_cap`` are
    forbidden and play stops after ``round_cap`` rounds, so the result is a
    lower bound on the untruncated game value.  Boards are canonicalized by
    recursively sorting sibling subtrees on (shape, activity, load) so that
    symmetric positions share one table entry.
    """

    def __init__(self, k: int, depth: int, depth_cap: int, round_cap: int) -> None:
        if k > 4:
            raise ValueError("the exact oracle is limited to k <= 4")
        if depth_cap > 2 * depth:
            raise ValueError("depth_cap must stay within 2*depth")
        self.k = k
        self.depth = depth
        self.depth_cap = depth_cap
        self.round_cap = round_cap
        self.memo: Dict[Tuple, Tuple[float, Optional[tuple]]] = {}

    # -- canonical board keys ------------------------------------------------

    def _canon(self, state: GameState) -> Tuple:
        tree, config = state.tree, state.config

        def key(v: int) -> Tuple:
            kids = tuple(sorted(key(ch) for ch in tree.children[v]))
            return (config.get(v, 0), v in config, kids)

        return key(0)

    # -- move/response enumeration ---------------------------------------------

    def _responses(self, state: GameState, leaf: int, c: int,
                   children: Tuple[int, ...]) -> Iterable[Dict[int, int]]:
        freed = state.config[leaf]
        others = [v for v in state.config if v != leaf]
        slots = list(children) + others
        spare = freed - c

        def parts(i: int, left: int):
            if i == len(slots) - 1:
                yield (left,)
                return
            for take in range(left + 1):
                for rest in parts(i + 1, left - take):
                    yield (take,) + rest

        if not slots:
            yield {}
            return
        for split in parts(0, spare):
            placement = {}
            for v, extra in zip(slots, split):
                cnt = extra + (1 if v in children else 0)
                if cnt:
                    placement[v] = cnt
            yield placement

    def solve(self) -> SolveResult:
        state = GameState(self.k, mode="plain")
        value = self._value(state, self.round_cap)
        assert value >= 0
        return SolveResult(int(value), self._unroll(state, self.round_cap),
                           len(self.memo))

    def _search(self, state: GameState, rounds_left: int):
        """Yield (total, leaf, c, placement, successor) per adversary move,
        with the player reply already minimized."""
        for leaf in sorted(state.config):
            max_c = state.config[leaf] - 1
            if state.tree.depth[leaf] >= self.depth_cap:
                max_c = 0
            for c in range(max_c + 1):
                proto = state.clone()
                ctx = proto.begin_round(Kill(leaf, c))
                reply = None
                for placement in self._responses(state, leaf, c, ctx.children):
                    cand = proto.clone()
                    cand.install(ctx, PlayerResponse(dict(placement)))
                    inc = cand.cost - state.cost
                    # inc + (-inf) stays -inf: paths that never count again
                    total = inc + self._value(cand, rounds_left - 1)
                    if reply is None or total < reply[0]:
                        reply = (total, leaf, c, placement, cand)
                if reply is not None:
                    yield reply

    def _value(self, state: GameState, rounds_left: int) -> float:
        md = state.min_depth()
        peak = 0.0 if (md is not None and md <= self.depth) else NEG_INF
        if state.finished or rounds_left == 0:
            return peak
        key = (self._canon(state), rounds_left)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        best = peak
        for total, *_ in self._search(state, rounds_left):
            if total > best:
                best = total
        self.memo[key] = best
        return best

    def _unroll(self, state: GameState, rounds_left: int) -> List[str]:
        """Principal variation, re-deriving the argmax one ply at a time.

        Memo entries are canonical, so stored node ids cannot be replayed on
        a concrete board; the one-ply re-expansion resolves live ids.
        """
        lines: List[str] = []
        state = state.clone()
        while rounds_left > 0 and not state.finished:
            value = self._value(state, rounds_left)
            step = None
            for total, leaf, c, placement, cand in self._search(state, rounds_left):
                if total == value:
                    step = (leaf, c, placement, cand)
                    break
            if step is None:
                break
            leaf, c, placement, state = step
            lines.append(f"kill leaf {leaf} with {c} children -> place {dict(placement)}")
            rounds_left -= 1
        return lines


def minimax_value(k: int, depth: int, depth_cap: int, round_cap: int) -> SolveResult:
    return MinimaxOracle(k, depth, depth_cap, round_cap).solve()
