"""Player strategies for the tree-mining game.

Four entry points:

* ``strategy_k2``        -- the forced two-miner strategy (zero cost).
* ``strategy_k3``        -- the three-miner doubling strategy.
* ``strategy_recursive`` -- the epoch-based recursive strategy for any miner
                            count, with native bounded-horizon support.
* ``bounded_horizon``    -- generic projection of an unbounded strategy onto
                            the depth-limited game via a shadow board.

The recursive strategy is deliberately independent of the nominal miner
count: with fewer miners present it plays exactly as the smaller-team
strategy would, which is what makes nesting sound.  Its internal structure is
a tree of *instances*; each grouped epoch partitions the active leaves into
one fresh sub-instance per leaf plus a set of *parked* one-miner leaves at or
beyond the epoch horizon.  Ownership of every active leaf always resides at
exactly one instance.
"""

from __future__ import annotations

import copy
from typing import Dict, List, Optional, Set, Tuple

from .game import (
    AddMiner,
    GameState,
    InvalidResponseError,
    Kill,
    PlayerResponse,
    RoundContext,
)
from .trees import RootedTree


class PlayerStrategy:
    """Interface: stateful object producing one response per adversary move."""

    def respond(self, state: GameState, ctx: RoundContext) -> PlayerResponse:
        raise NotImplementedError

    def clone(self) -> "PlayerStrategy":
        return copy.deepcopy(self)


# --------------------------------------------------------------------------
# k = 2: the unique legal behavior
# --------------------------------------------------------------------------


class StrategyK2(PlayerStrategy):
    """Both miners always travel together; the board is a line."""

    def respond(self, state: GameState, ctx: RoundContext) -> PlayerResponse:
        if ctx.kind != "kill":
            raise InvalidResponseError("k=2 strategy plays the plain game only")
        if ctx.c == 0:
            others = [v for v in state.config if v != ctx.leaf]
            if others:
                # both miners rejoin the only other leaf (nested/horizon use)
                return PlayerResponse({min(others): ctx.freed})
            return PlayerResponse({})
        if ctx.c == 1:
            return PlayerResponse({ctx.children[0]: ctx.freed})
        raise InvalidResponseError(f"k=2 board cannot grant {ctx.c} children")


def strategy_k2() -> PlayerStrategy:
    return StrategyK2()


# --------------------------------------------------------------------------
# k = 3: doubling on the active sub-tree triple (d, d1, d2)
# --------------------------------------------------------------------------


class StrategyK3(PlayerStrategy):
    """Doubling strategy for three miners.

    The board always carries at most two active leaves; the pair leaf holds
    two miners, the lone leaf one.  Writing d for the depth of their LCA,
    d1 for the lone offset and d2 for the pair offset, the strategy keeps
    the invariant d2 <= 2*d1 - 1 and doubles the search radius whenever the
    adversary extends the pair leaf at the boundary d2 == 2*d1 - 1.
    """

    def respond(self, state: GameState, ctx: RoundContext) -> PlayerResponse:
        if ctx.kind != "kill":
            raise InvalidResponseError("k=3 strategy plays the plain game only")
        leaf = ctx.leaf
        assert leaf is not None
        others = [v for v in state.config if v != leaf]

        if not others:
            # all three miners on one leaf
            if ctx.freed != 3:
                raise InvalidResponseError("k=3 single-leaf state must hold 3 miners")
            if ctx.c == 0:
                return PlayerResponse({})
            if ctx.c == 1:
                return PlayerResponse({ctx.children[0]: 3})
            return PlayerResponse({ctx.children[0]: 2, ctx.children[1]: 1})

        other = others[0]
        if ctx.freed == 1:
            # lone leaf killed: the miner is forced
            if ctx.c == 0:
                return PlayerResponse({other: 1})
            return PlayerResponse({ctx.children[0]: 1})

        # pair leaf killed
        if ctx.c == 0:
            return PlayerResponse({other: 2})
        tree = state.tree
        d = tree.depth[tree.lca(leaf, other)]
        d1 = tree.depth[other] - d
        d2 = tree.depth[leaf] - d
        if d2 > 2 * d1 - 1:
            raise AssertionError(
                f"k=3 invariant broken: triple ({d}, {d1}, {d2}) has d2 > 2*d1 - 1")
        if d2 < 2 * d1 - 1:
            return PlayerResponse({ctx.children[0]: 2})
        # boundary: one miner descends, the other crosses to the lone leaf
        return PlayerResponse({ctx.children[0]: 1, other: 1})


def strategy_k3() -> PlayerStrategy:
    return StrategyK3()


# --------------------------------------------------------------------------
# Recursive strategy
# --------------------------------------------------------------------------


class _Instance:
    """One running strategy instance rooted at a board node.

    ``hrz`` is the absolute horizon depth (None only at an unbounded top).
    ``open_count`` tracks active leaves of this subtree strictly above the
    horizon; the instance is finished once it drops to zero.
    """

    __slots__ = ("uid", "parent", "root", "hrz", "mode", "load", "open_count",
                 "single_leaf", "eD", "ed", "delta", "hepoch", "subs", "parked",
                 "record")

    def __init__(self, uid: int, parent: Optional["_Instance"], root: int,
                 hrz: Optional[int]) -> None:
        self.uid = uid
        self.parent = parent
        self.root = root
        self.hrz = hrz
        self.mode = "single"
        self.load = 0
        self.open_count = 0
        self.single_leaf = root
        self.eD = 0
        self.ed = 0
        self.delta = 0
        self.hepoch: Optional[int] = None
        self.subs: List["_Instance"] = []
        self.parked: Set[int] = set()
        self.record: Optional[dict] = None


class RecursiveStrategy(PlayerStrategy):
    """Epoch-based recursive strategy for the extended tree-mining game.

    A grouped epoch starting from a (D, d)-structure with spread
    ``delta = D - d``:

    * trims every leaf at depth >= D + delta down to one miner,
    * balances the remaining leaves to within one miner of each other,
    * runs one nested instance per leaf with horizon depth D + delta,
    * reroutes miners freed on finished/parked leaves into the unfinished
      instance with the smallest load (ties by smallest root id),

    and ends when either every leaf reached the epoch horizon (split) or all
    miners gathered in a single instance (join).  Per-epoch non-lazy spending
    is metered into ``epoch_log`` for the cost-ledger checks.
    """

    def __init__(self, k: Optional[int] = None, horizon: Optional[int] = None) -> None:
        self.k = k  # informational; behavior never depends on it
        self.game_horizon = horizon
        self.top: Optional[_Instance] = None
        self.owner: Dict[int, Tuple[_Instance, str]] = {}
        self.loads: Dict[int, int] = {}
        self.epoch_log: List[dict] = []
        self._uid = 0
        self._tree: Optional[RootedTree] = None
        self._placement: Dict[int, int] = {}
        self._nonlazy: List[Tuple[int, int, int]] = []

    # -- small helpers ------------------------------------------------------

    def _depth(self, v: int) -> int:
        return self._tree.depth[v]

    def _dist(self, a: int, b: int) -> int:
        return self._tree.path_distance(a, b)

    def _new_uid(self) -> int:
        self._uid += 1
        return self._uid

    def _is_finished(self, inst: _Instance) -> bool:
        return inst.hrz is not None and inst.open_count == 0

    def _chain(self, inst: Optional[_Instance]):
        while inst is not None:
            yield inst
            inst = inst.parent

    def _leaf_enter(self, inst: _Instance, leaf: int) -> None:
        d = self._depth(leaf)
        for a in self._chain(inst):
            if a.hrz is None or d < a.hrz:
                a.open_count += 1

    def _leaf_exit(self, inst: _Instance, leaf: int) -> None:
        d = self._depth(leaf)
        for a in self._chain(inst):
            if a.hrz is None or d < a.hrz:
                a.open_count -= 1

    def _place(self, leaf: int, m: int) -> None:
        """Route m in-hand miners to an owned active leaf (placement part)."""
        self._placement[leaf] = self._placement.get(leaf, 0) + m
        self.loads[leaf] = self.loads.get(leaf, 0) + m
        inst = self.owner[leaf][0]
        for a in self._chain(inst):
            a.load += m

    def _own(self, leaf: int, inst: _Instance, kind: str) -> None:
        self.owner[leaf] = (inst, kind)

    def _gather(self, inst: _Instance) -> List[int]:
        if inst.mode == "single":
            return [inst.single_leaf]
        leaves = list(inst.parked)
        for sub in inst.subs:
            leaves.extend(self._gather(sub))
        return leaves

    # -- epoch records -------------------------------------------------------

    def _open_record(self, inst: _Instance, D: int, d: int, trim_budget: int) -> None:
        # records can open mid-round while freed miners are in flight, so the
        # load is also sampled at every settled point into k_seen
        inst.record = {
            "uid": inst.uid,
            "top": inst.parent is None,
            "hrz": inst.hrz,
            "k_start": inst.load,
            "k_seen": inst.load,
            "D": D,
            "d": d,
            "delta": D - d,
            "trim_budget": trim_budget,
            "m_trim": 0,
            "m_balance": 0,
            "m_between": 0,
            "cond": None,
            "k_end": None,
            "D2": None,
            "d2": None,
        }
        self.epoch_log.append(inst.record)

    def _close_record(self, inst: _Instance, cond: str,
                      leaves: Optional[List[int]] = None) -> None:
        rec = inst.record
        if rec is None:
            return
        rec["cond"] = cond
        rec["k_end"] = max(inst.load, rec["k_seen"])
        if leaves:
            sp = self._tree.structure_of(leaves)
            rec["D2"], rec["d2"] = sp.D, sp.d
        inst.record = None

    def _sample_loads(self, inst: _Instance) -> None:
        rec = inst.record
        if rec is not None and inst.load > rec["k_seen"]:
            rec["k_seen"] = inst.load
        if inst.mode == "grouped":
            for sub in inst.subs:
                self._sample_loads(sub)

    # -- settling: dissolve finished subs, fire epoch transitions ------------

    def _settle_inst(self, inst: _Instance) -> None:
        if inst.mode != "grouped":
            return
        for sub in list(inst.subs):
            if self._is_finished(sub):
                leaves = self._gather(sub)
                self._close_record(sub, "attained", leaves)
                self._discard_records(sub)
                for leaf in leaves:
                    self._own(leaf, inst, "parked")
                    inst.parked.add(leaf)
                inst.subs.remove(sub)
        if self._is_finished(inst):
            return
        if not inst.subs and inst.parked:
            leaves = list(inst.parked)
            self._close_record(inst, "split", leaves)
            self._new_epoch(inst, leaves, trim_budget=0)
        elif len(inst.subs) == 1 and not inst.parked:
            rec = inst.record
            k_epoch = max(inst.load, rec["k_seen"]) if rec else inst.load
            provision = 2 * k_epoch * (rec["delta"] if rec else 0)
            leaves = self._gather(inst.subs[0])
            self._close_record(inst, "join", leaves)
            self._discard_records(inst.subs[0])
            self._new_epoch(inst, leaves, trim_budget=provision)

    def _discard_records(self, inst: _Instance) -> None:
        self._close_record(inst, "discarded")
        for sub in inst.subs:
            self._discard_records(sub)

    def _settle_deep(self, inst: _Instance) -> None:
        if inst.mode == "grouped":
            for sub in list(inst.subs):
                self._settle_deep(sub)
        self._settle_inst(inst)

    # -- epoch construction ---------------------------------------------------

    def _new_epoch(self, inst: _Instance, leaves: List[int], trim_budget: int) -> None:
        if len(leaves) == 1:
            leaf = leaves[0]
            inst.mode = "single"
            inst.single_leaf = leaf
            inst.subs = []
            inst.parked = set()
            self._own(leaf, inst, "single")
            d = self._depth(leaf)
            self._open_record(inst, d, d, trim_budget)
            return

        sp = self._tree.structure_of(leaves)
        D, d = sp.D, sp.d
        delta = D - d
        hepoch = D + delta if inst.hrz is None else min(D + delta, inst.hrz)
        keep = sorted((v for v in leaves if self._depth(v) < hepoch))
        deep = [v for v in leaves if self._depth(v) >= hepoch]

        self._open_record(inst, D, d, trim_budget)
        rec = inst.record

        # trim deep leaves to one miner, balance the rest to within one
        m_keep = inst.load - len(deep)
        base, extra = divmod(m_keep, len(keep))
        by_load = sorted(keep, key=lambda v: (-self.loads[v], v))
        target = {v: base for v in keep}
        for v in by_load[:extra]:
            target[v] += 1
        for v in deep:
            target[v] = 1

        donors = [(v, self.loads[v] - target[v]) for v in leaves
                  if self.loads[v] > target[v]]
        donors.sort(key=lambda t: (-t[1], t[0]))
        takers = [(v, target[v] - self.loads[v]) for v in sorted(leaves)
                  if self.loads[v] < target[v]]
        ti = 0
        for src, surplus in donors:
            deep_src = self._depth(src) >= hepoch
            while surplus > 0:
                dst, want = takers[ti]
                cnt = min(surplus, want)
                self._nonlazy.append((src, dst, cnt))
                self.loads[src] -= cnt
                self.loads[dst] += cnt
                step = cnt * self._dist(src, dst)
                rec["m_trim" if deep_src else "m_balance"] += step
                surplus -= cnt
                want -= cnt
                takers[ti] = (dst, want)
                if want == 0:
                    ti += 1

        inst.mode = "grouped"
        inst.single_leaf = None
        inst.eD, inst.ed, inst.delta, inst.hepoch = D, d, delta, hepoch
        inst.subs = []
        inst.parked = set(deep)
        for v in deep:
            self._own(v, inst, "parked")
        for v in keep:
            sub = _Instance(self._new_uid(), inst, v, hepoch)
            sub.load = self.loads[v]
            sub.open_count = 1
            self._own(v, sub, "single")
            inst.subs.append(sub)

    # -- absorbing miners into the structure ----------------------------------

    def _absorb_dest(self, inst: _Instance) -> Optional[int]:
        """Destination leaf for one miner inside ``inst``, or None if full."""
        while True:
            if inst.mode == "single":
                leaf = inst.single_leaf
                if inst.hrz is not None and self._depth(leaf) >= inst.hrz:
                    return None
                return leaf
            self._settle_inst(inst)
            if inst.mode != "grouped":
                continue
            cands = [s for s in inst.subs if not self._is_finished(s)]
            if not cands:
                return None
            sub = min(cands, key=lambda s: (s.load, s.root))
            dest = self._absorb_dest(sub)
            if dest is not None:
                return dest
            # raced into a finished sub; settle and retry
            self._settle_inst(inst)

    def _absorb(self, inst: Optional[_Instance], m: int, origin: int,
                meter: bool, fallback: Tuple[int, ...]) -> None:
        remaining = m
        while remaining > 0 and inst is not None:
            dest = self._absorb_dest(inst)
            if dest is None:
                inst = inst.parent
                continue
            self._place(dest, 1)
            if meter and inst.record is not None:
                inst.record["m_between"] += self._dist(origin, dest)
            remaining -= 1
        if remaining > 0:
            self._fallback(remaining, fallback)

    def _fallback(self, m: int, prefer: Tuple[int, ...]) -> None:
        # only reachable on the game-ending round of a bounded-horizon game
        if prefer:
            dest = prefer[0]
        elif self.loads:
            dest = min(self.loads)
        else:
            return  # board empty: miners retire with the final kill
        self._place(dest, m)

    # -- kill handling ----------------------------------------------------------

    def _kill_single(self, inst: _Instance, ctx: RoundContext) -> None:
        leaf, c, children, freed = ctx.leaf, ctx.c, ctx.children, ctx.freed
        self._leaf_exit(inst, leaf)
        del self.owner[leaf]
        del self.loads[leaf]
        for a in self._chain(inst):
            a.load -= freed

        if c == 0:
            parent = inst.parent
            self._close_record(inst, "emptied")
            if parent is not None:
                parent.subs.remove(inst)
                self._absorb(parent, freed, origin=leaf, meter=True, fallback=())
            else:
                self.top = None  # game over: no active leaf remains
            return

        child_depth = self._depth(leaf) + 1
        if inst.hrz is not None and child_depth >= inst.hrz:
            # children sit at the instance horizon: one miner each, rest bubble up
            self._close_record(inst, "attained", list(children))
            inst.mode = "grouped"
            inst.single_leaf = None
            inst.subs = []
            inst.parked = set(children)
            for ch in children:
                self._own(ch, inst, "parked")
                self._leaf_enter(inst, ch)
                self._place(ch, 1)
            self._absorb(inst.parent, freed - c, origin=leaf, meter=True,
                         fallback=children)
            return

        base, extra = divmod(freed, c)
        shares = [base + 1] * extra + [base] * (c - extra)
        self._close_record(inst, "split", list(children))
        if c == 1:
            inst.single_leaf = children[0]
            self._own(children[0], inst, "single")
            self._leaf_enter(inst, children[0])
            self._place(children[0], freed)
            self._open_record(inst, child_depth, child_depth, 0)
            return
        inst.mode = "grouped"
        inst.single_leaf = None
        D = child_depth
        hepoch = D + 1 if inst.hrz is None else min(D + 1, inst.hrz)
        inst.eD, inst.ed, inst.delta, inst.hepoch = D, D - 1, 1, hepoch
        inst.subs = []
        inst.parked = set()
        self._open_record(inst, D, D - 1, 0)
        for ch, share in zip(children, shares):
            sub = _Instance(self._new_uid(), inst, ch, hepoch)
            self._own(ch, sub, "single")
            inst.subs.append(sub)
            self._leaf_enter(sub, ch)
            self._place(ch, share)

    def _kill_parked(self, inst: _Instance, ctx: RoundContext) -> None:
        leaf = ctx.leaf
        assert ctx.c == 0 and ctx.freed == 1, "parked leaves always hold one miner"
        self._leaf_exit(inst, leaf)
        del self.owner[leaf]
        del self.loads[leaf]
        for a in self._chain(inst):
            a.load -= 1
        inst.parked.discard(leaf)
        self._absorb(inst, 1, origin=leaf, meter=True, fallback=())

    # -- entry point -----------------------------------------------------------

    def respond(self, state: GameState, ctx: RoundContext) -> PlayerResponse:
        self._tree = state.tree
        self._placement = {}
        self._nonlazy = []

        if self.top is None:
            if self.owner:
                raise InvalidResponseError("strategy board lost its last leaf already")
            roots = list(state.config)
            if len(roots) != 1:
                raise InvalidResponseError("recursive strategy must start single-leaf")
            root = roots[0]
            top = _Instance(self._new_uid(), None, root, self.game_horizon)
            top.load = state.config[root]
            self._own(root, top, "single")
            self.loads = {root: top.load}
            self._leaf_enter(top, root)
            d = self._depth(root)
            self._open_record(top, d, d, 0)
            self.top = top

        if ctx.kind == "add":
            dest = self._absorb_dest(self.top)
            if dest is None:
                self._fallback(1, ())
            else:
                self._place(dest, 1)
        else:
            if self.loads.get(ctx.leaf) != ctx.freed:
                raise AssertionError(
                    f"strategy load mirror out of sync at leaf {ctx.leaf}")
            inst, kind = self.owner[ctx.leaf]
            if kind == "single":
                self._kill_single(inst, ctx)
            else:
                self._kill_parked(inst, ctx)

        if self.top is not None:
            self._settle_deep(self.top)
            self._sample_loads(self.top)
        return PlayerResponse(self._placement, self._nonlazy)


def strategy_recursive(k: Optional[int] = None,
                       horizon: Optional[int] = None) -> RecursiveStrategy:
    return RecursiveStrategy(k=k, horizon=horizon)


# --------------------------------------------------------------------------
# Generic bounded-horizon projection
# --------------------------------------------------------------------------


class EmulationLimitError(RuntimeError):
    """The shadow-board extension loop failed to drain stacked miners."""


class HorizonProjection(PlayerStrategy):
    """Project an unbounded strategy onto the depth-limited game.

    Keeps a shadow unbounded board isomorphic to the real board above the
    horizon.  Real moves are mimicked on the shadow; whenever the inner
    strategy stacks more than one miner at or below the horizon, the shadow
    adversary extends that leaf with single children until every such leaf
    carries exactly one miner, and the drained shadow configuration is
    projected back (miners below the horizon count toward their horizon-depth
    ancestor).  On the game-ending round the projection is direct.
    """

    def __init__(self, inner: PlayerStrategy, delta: int,
                 emulation_cap: int = 10000) -> None:
        if delta < 1:
            raise ValueError("horizon must be positive")
        self.inner = inner
        self.delta = delta
        self.emulation_cap = emulation_cap
        self.shadow: Optional[GameState] = None
        self.r2s: Dict[int, int] = {}
        self.s2r: Dict[int, int] = {}

    def _init_shadow(self, state: GameState) -> None:
        roots = list(state.config)
        if len(roots) != 1 or roots[0] != 0:
            raise InvalidResponseError("horizon projection must start at a fresh board")
        mode = "plain" if state.mode == "plain" else "extended"
        self.shadow = GameState(state.k_max, mode=mode, start_miners=state.k_cur)
        self.r2s = {0: 0}
        self.s2r = {0: 0}

    def _shadow_round(self, move) -> None:
        ctx = self.shadow.begin_round(move)
        resp = self.inner.respond(self.shadow, ctx)
        self.shadow.install(ctx, resp)

    def _drain(self) -> None:
        sh = self.shadow
        for _ in range(self.emulation_cap):
            stacked = [v for v, cnt in sh.config.items()
                       if sh.tree.depth[v] >= self.delta and cnt > 1]
            if not stacked:
                return
            leaf = min(stacked, key=lambda v: (sh.tree.depth[v], v))
            self._shadow_round(Kill(leaf, 1))
        raise EmulationLimitError(
            f"shadow board still stacked after {self.emulation_cap} extensions")

    def _projected_config(self) -> Dict[int, int]:
        sh = self.shadow
        out: Dict[int, int] = {}
        for z, cnt in sh.config.items():
            d = sh.tree.depth[z]
            while d > self.delta:
                z = sh.tree.parent[z]
                d -= 1
            v = self.s2r[z]
            out[v] = out.get(v, 0) + cnt
        return out

    @staticmethod
    def _reconcile(old: Dict[int, int], new: Dict[int, int], freed: int,
                   children: Tuple[int, ...]) -> PlayerResponse:
        need = {v: new[v] - old.get(v, 0) for v in new if new[v] > old.get(v, 0)}
        surplus = {v: old[v] - new.get(v, 0) for v in old if old[v] > new.get(v, 0)}
        placement: Dict[int, int] = {}
        order = [v for v in children if v in need]
        order += [v for v in sorted(need) if v not in children]
        left = freed
        for v in order:
            if left == 0:
                break
            take = min(left, need[v])
            placement[v] = take
            need[v] -= take
            left -= take
        need = {v: w for v, w in need.items() if w > 0}
        nonlazy: List[Tuple[int, int, int]] = []
        srcs = sorted(surplus)
        si = 0
        for v in sorted(need):
            want = need[v]
            while want > 0:
                src = srcs[si]
                cnt = min(want, surplus[src])
                nonlazy.append((src, v, cnt))
                surplus[src] -= cnt
                want -= cnt
                if surplus[src] == 0:
                    si += 1
        return PlayerResponse(placement, nonlazy)

    def respond(self, state: GameState, ctx: RoundContext) -> PlayerResponse:
        if self.shadow is None:
            self._init_shadow(state)
        old = {v: c for v, c in state.config.items() if v != ctx.leaf}

        if ctx.kind == "add":
            self._shadow_round(AddMiner())
            terminal = False
        else:
            sctx = self.shadow.begin_round(Kill(self.r2s[ctx.leaf], ctx.c))
            for rch, sch in zip(ctx.children, sctx.children):
                self.r2s[rch] = sch
                self.s2r[sch] = rch
            resp = self.inner.respond(self.shadow, sctx)
            self.shadow.install(sctx, resp)
            depth = state.tree.depth
            remaining = list(old) + list(ctx.children)
            terminal = all(depth[v] >= self.delta for v in remaining) if remaining else True

        if not terminal:
            self._drain()
        new = self._projected_config()
        return self._reconcile(old, new, ctx.freed, ctx.children)


def bounded_horizon(inner: PlayerStrategy, delta: int,
                    emulation_cap: int = 10000) -> HorizonProjection:
    return HorizonProjection(inner, delta, emulation_cap)


# --------------------------------------------------------------------------
# Selector strings (CLI surface)
# --------------------------------------------------------------------------


def parse_player(selector: str, k: int) -> PlayerStrategy:
    """Build a strategy from a selector: ``k2``, ``k3``, ``recursive``,
    or ``recursive@horizon=N``."""
    if selector == "k2":
        if k != 2:
            raise ValueError("k2 strategy requires k=2")
        return strategy_k2()
    if selector == "k3":
        if k != 3:
            raise ValueError("k3 strategy requires k=3")
        return strategy_k3()
    if selector == "recursive":
        return strategy_recursive(k)
    if selector.startswith("recursive@horizon="):
        depth = int(selector.split("=", 1)[1])
        return strategy_recursive(k, horizon=depth)
    raise ValueError(f"unknown player selector {selector!r}")
