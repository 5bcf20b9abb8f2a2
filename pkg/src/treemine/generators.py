"""Deterministic tree generators for the test corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Optional

from .trees import RootedTree


@dataclass(frozen=True)
class TreeSpec:
    """Generator name plus parameters; identical specs generate identical trees."""

    name: str
    params: tuple

    def __str__(self) -> str:
        inner = ",".join(str(p) for p in self.params)
        return f"{self.name}({inner})"


def path_tree(n: int) -> RootedTree:
    t = RootedTree()
    v = 0
    for _ in range(n - 1):
        v = t.add_child(v)
    return t


def star_tree(n: int) -> RootedTree:
    t = RootedTree()
    for _ in range(n - 1):
        t.add_child(0)
    return t


def binary_tree(depth: int) -> RootedTree:
    """Complete binary tree: 2**(depth+1) - 1 nodes."""
    t = RootedTree()
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            nxt.append(t.add_child(v))
            nxt.append(t.add_child(v))
        frontier = nxt
    return t


def caterpillar_tree(n: int, stride: int = 2) -> RootedTree:
    """Spine with one leg hung off every ``stride``-th spine node."""
    if stride < 1:
        raise ValueError("stride must be positive")
    t = RootedTree()
    spine = 0
    steps = 0
    while len(t) < n:
        spine = t.add_child(spine)
        steps += 1
        if steps % stride == 0 and len(t) < n:
            t.add_child(t.parent[spine])
    return t


def spider_tree(legs: int, length: int) -> RootedTree:
    """``legs`` disjoint paths of ``length`` edges sharing the root."""
    t = RootedTree()
    for _ in range(legs):
        v = 0
        for _ in range(length):
            v = t.add_child(v)
    return t


def random_tree(n: int, seed: int, max_degree: int = 3) -> RootedTree:
    """Random recursive tree with a degree cap; seeded, reproducible."""
    if max_degree < 1:
        raise ValueError("max_degree must be positive")
    rng = random.Random(seed)
    t = RootedTree()
    open_nodes = [0]
    while len(t) < n:
        i = rng.randrange(len(open_nodes))
        parent = open_nodes[i]
        child = t.add_child(parent)
        open_nodes.append(child)
        if len(t.children[parent]) >= max_degree:
            open_nodes[i] = open_nodes[-1]
            open_nodes.pop()
    return t


_GENERATORS = {
    "path": lambda p: path_tree(int(p[0])),
    "star": lambda p: star_tree(int(p[0])),
    "binary": lambda p: binary_tree(int(p[0])),
    "caterpillar": lambda p: caterpillar_tree(int(p[0]), int(p[1]) if len(p) > 1 else 2),
    "spider": lambda p: spider_tree(int(p[0]), int(p[1])),
    "random": lambda p: random_tree(int(p[0]), int(p[1]),
                                    int(p[2]) if len(p) > 2 else 3),
}


def generate(spec: TreeSpec) -> RootedTree:
    try:
        builder = _GENERATORS[spec.name]
    except KeyError:
        raise ValueError(f"unknown generator {spec.name!r}") from None
    return builder(spec.params)


def parse_tree_spec(text: str) -> TreeSpec:
    """Parse ``name:p1,p2,...`` or ``name(p1,p2)`` into a TreeSpec."""
    text = text.strip()
    if "(" in text:
        name, _, rest = text.partition("(")
        rest = rest.rstrip(")")
    else:
        name, _, rest = text.partition(":")
    params = tuple(int(x) for x in rest.split(",") if x != "")
    if name not in _GENERATORS:
        raise ValueError(f"unknown generator {name!r}")
    return TreeSpec(name, params)
