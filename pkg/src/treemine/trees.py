"""Rooted-tree arena, miner configurations, and the transport distance.

Trees are append-only arenas of dense integer node ids.  Node 0 is always the
root; adding a child never invalidates existing ids, so boards and exploration
maps can grow monotonically and snapshots stay cheap.  A *configuration* is a
plain ``dict[int, int]`` mapping leaves to positive miner counts.

The transport distance between two equal-total configurations is computed
exactly with a single bottom-up sweep: on a tree, the optimal transport cost
equals the sum over edges of the absolute net imbalance crossing that edge.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

Configuration = Dict[int, int]


class TreeError(ValueError):
    """Raised for invalid node ids or malformed configurations."""


@dataclass(frozen=True)
class StructurePair:
    """Shape summary of an active-leaf set.

    ``D`` is the depth of the shallowest active leaf, ``d`` the depth of the
    lowest common ancestor of all active leaves.  Always ``d <= D``.
    """

    D: int
    d: int

    def __post_init__(self) -> None:
        if self.d > self.D:
            raise TreeError(f"structure pair requires d <= D, got ({self.D}, {self.d})")

    @property
    def spread(self) -> int:
        return self.D - self.d


class RootedTree:
    """Growable rooted tree with parent/children links and cached depths."""

    __slots__ = ("parent", "depth", "children")

    def __init__(self) -> None:
        self.parent: List[int] = [0]
        self.depth: List[int] = [0]
        self.children: List[List[int]] = [[]]

    def __len__(self) -> int:
        return len(self.parent)

    @property
    def n(self) -> int:
        return len(self.parent)

    def check_node(self, v: int) -> None:
        if not (0 <= v < len(self.parent)):
            raise TreeError(f"invalid node id {v} (tree has {len(self.parent)} nodes)")

    def add_child(self, parent: int) -> int:
        """Append a fresh child under ``parent`` and return its id."""
        self.check_node(parent)
        v = len(self.parent)
        self.parent.append(parent)
        self.depth.append(self.depth[parent] + 1)
        self.children.append([])
        self.children[parent].append(v)
        return v

    def lca(self, a: int, b: int) -> int:
        """Lowest common ancestor of ``a`` and ``b``; ``lca(a, a) == a``."""
        self.check_node(a)
        self.check_node(b)
        depth, parent = self.depth, self.parent
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a = parent[a]
            b = parent[b]
        return a

    def lca_many(self, nodes: Iterable[int]) -> int:
        it = iter(nodes)
        try:
            acc = next(it)
        except StopIteration:
            raise TreeError("lca of an empty node set")
        for v in it:
            acc = self.lca(acc, v)
        return acc

    def path_distance(self, a: int, b: int) -> int:
        """Number of edges on the unique a-b path."""
        return self.depth[a] + self.depth[b] - 2 * self.depth[self.lca(a, b)]

    def is_ancestor(self, anc: int, v: int) -> bool:
        """True iff ``anc`` lies on the root path of ``v`` (weakly)."""
        self.check_node(anc)
        self.check_node(v)
        depth, parent = self.depth, self.parent
        if depth[anc] > depth[v]:
            return False
        while depth[v] > depth[anc]:
            v = parent[v]
        return v == anc

    def path(self, a: int, b: int) -> List[int]:
        """Node sequence from ``a`` to ``b`` inclusive."""
        self.check_node(a)
        self.check_node(b)
        depth, parent = self.depth, self.parent
        up: List[int] = []
        down: List[int] = []
        while depth[a] > depth[b]:
            up.append(a)
            a = parent[a]
        while depth[b] > depth[a]:
            down.append(b)
            b = parent[b]
        while a != b:
            up.append(a)
            down.append(b)
            a = parent[a]
            b = parent[b]
        up.append(a)
        down.reverse()
        return up + down

    def structure_of(self, active: Iterable[int]) -> StructurePair:
        """(D, d)-structure of an active-leaf set: shallowest depth and LCA depth."""
        nodes = list(active)
        if not nodes:
            raise TreeError("structure_of requires a nonempty active set")
        for v in nodes:
            self.check_node(v)
        D = min(self.depth[v] for v in nodes)
        d = self.depth[self.lca_many(nodes)]
        return StructurePair(D, d)

    def clone(self) -> "RootedTree":
        t = RootedTree.__new__(RootedTree)
        t.parent = list(self.parent)
        t.depth = list(self.depth)
        t.children = [list(c) for c in self.children]
        return t

    # -- parent-array JSON, shared by corpus files and traces ------------

    def to_parents(self) -> List[int]:
        return list(self.parent)

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> "RootedTree":
        if not parents or parents[0] != 0:
            raise TreeError("parent array must start with the root mapping to itself")
        t = cls()
        for v in range(1, len(parents)):
            p = parents[v]
            if not (0 <= p < v):
                raise TreeError(f"parent of node {v} must be an earlier node, got {p}")
            got = t.add_child(p)
            assert got == v
        return t

    def to_json(self) -> str:
        return json.dumps({"parents": self.to_parents()})

    @classmethod
    def from_json(cls, text: str) -> "RootedTree":
        data = json.loads(text)
        return cls.from_parents(data["parents"])


def transport_distance(tree: RootedTree, x: Configuration, y: Configuration) -> int:
    """Minimum total edge traversals moving configuration ``x`` onto ``y``.

    Both configurations must have equal totals.  The imbalance of each node is
    pushed toward the root in decreasing-depth order; each push over an edge
    contributes its absolute value.
    """
    if sum(x.values()) != sum(y.values()):
        raise TreeError("transport requires equal totals")
    net: Dict[int, int] = {}
    for v, c in x.items():
        tree.check_node(v)
        net[v] = net.get(v, 0) + c
    for v, c in y.items():
        tree.check_node(v)
        net[v] = net.get(v, 0) - c
    cost = 0
    depth, parent = tree.depth, tree.parent
    heap = [(-depth[v], v) for v in net]
    heapq.heapify(heap)
    while heap:
        _, v = heapq.heappop(heap)
        if v not in net:
            continue
        flow = net.pop(v)
        if flow == 0 or v == 0:
            continue
        cost += abs(flow)
        p = parent[v]
        if p in net:
            net[p] += flow
        else:
            net[p] = flow
            heapq.heappush(heap, (-depth[p], p))
    # whatever reaches the root cancels exactly because totals match
    return cost


def min_active_depth(tree: RootedTree, config: Configuration) -> Optional[int]:
    """Depth of the shallowest loaded leaf, or None for an empty configuration."""
    if not config:
        return None
    return min(tree.depth[v] for v in config)
