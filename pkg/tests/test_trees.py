"""Tree arena, distances, structures, and the transport metric."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treemine.trees import RootedTree, StructurePair, TreeError, transport_distance

from conftest import brute_transport, small_trees


def line(n_edges: int) -> RootedTree:
    t = RootedTree()
    v = 0
    for _ in range(n_edges):
        v = t.add_child(v)
    return t


class TestAddChild:
    def test_first_child(self):
        t = RootedTree()
        v = t.add_child(0)
        assert v == 1 and t.depth[1] == 1

    def test_chain_depth(self):
        t = RootedTree()
        a = t.add_child(0)
        b = t.add_child(a)
        assert t.depth[b] == 2

    def test_insertion_order(self):
        t = RootedTree()
        ids = [t.add_child(0) for _ in range(3)]
        assert t.children[0] == ids == [1, 2, 3]

    def test_invalid_parent(self):
        with pytest.raises(TreeError):
            RootedTree().add_child(5)


class TestLca:
    def test_root_is_ancestor_of_all(self):
        t = line(4)
        assert all(t.lca(0, v) == 0 for v in range(5))

    def test_identity(self):
        t = line(3)
        assert t.lca(2, 2) == 2

    def test_star_siblings(self):
        t = RootedTree()
        u, v = t.add_child(0), t.add_child(0)
        assert t.lca(u, v) == 0


class TestPathDistance:
    def test_zero(self):
        t = line(2)
        assert t.path_distance(2, 2) == 0

    def test_parent_child(self):
        t = line(2)
        assert t.path_distance(1, 2) == 1

    def test_two_branch_leaves(self):
        # lone miner at depth d+d1, pair at depth d+d2: distance d1+d2
        t = RootedTree()
        d, d1, d2 = 2, 3, 4
        v = 0
        for _ in range(d):
            v = t.add_child(v)
        a = v
        for _ in range(d1):
            a = t.add_child(a)
        b = v
        for _ in range(d2):
            b = t.add_child(b)
        assert t.path_distance(a, b) == d1 + d2

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_symmetry(self, data):
        parents = data.draw(st.sampled_from(list(small_trees(6))))
        t = RootedTree.from_parents(parents)
        a = data.draw(st.integers(0, len(t) - 1))
        b = data.draw(st.integers(0, len(t) - 1))
        assert t.path_distance(a, b) == t.path_distance(b, a)


class TestTransport:
    def test_identity_is_zero(self):
        t = line(3)
        assert transport_distance(t, {3: 2}, {3: 2}) == 0

    def test_two_miners_one_step_down(self):
        # 4-node line; both miners move from depth 1 to depth 2
        t = line(3)
        x, y = {1: 2}, {2: 2}
        assert transport_distance(t, x, y) == 2
        assert brute_transport(t, x, y) == 2

    def test_pair_split_to_child_and_far_leaf(self):
        # two miners at depth d+d2 split: one to a new child, one to the
        # leaf at distance d1+d2
        t = RootedTree()
        d, d1, d2 = 1, 2, 3
        v = 0
        for _ in range(d):
            v = t.add_child(v)
        lone = v
        for _ in range(d1):
            lone = t.add_child(lone)
        pair = v
        for _ in range(d2):
            pair = t.add_child(pair)
        child = t.add_child(pair)
        x = {pair: 2, lone: 1}
        y = {child: 1, lone: 2}
        expected = 1 + d1 + d2
        assert transport_distance(t, x, y) == expected
        assert brute_transport(t, x, y) == expected

    def test_unequal_totals_rejected(self):
        t = line(1)
        with pytest.raises(TreeError):
            transport_distance(t, {0: 1}, {1: 2})

    def test_matches_matching_oracle_everywhere(self):
        # full enumeration: trees up to 5 nodes, totals up to 3
        for parents in small_trees(5):
            t = RootedTree.from_parents(parents)
            nodes = range(len(t))
            for total in (1, 2, 3):
                configs = []
                for combo in itertools.combinations_with_replacement(nodes, total):
                    cfg = {}
                    for v in combo:
                        cfg[v] = cfg.get(v, 0) + 1
                    configs.append(cfg)
                for x in configs:
                    for y in configs:
                        assert transport_distance(t, x, y) == brute_transport(t, x, y)

    def test_metric_properties(self):
        for parents in small_trees(4):
            t = RootedTree.from_parents(parents)
            nodes = range(len(t))
            configs = []
            for combo in itertools.combinations_with_replacement(nodes, 2):
                cfg = {}
                for v in combo:
                    cfg[v] = cfg.get(v, 0) + 1
                configs.append(cfg)
            for x in configs:
                for y in configs:
                    dxy = transport_distance(t, x, y)
                    assert dxy == transport_distance(t, y, x)
                    assert (dxy == 0) == (x == y)
                    for z in configs:
                        assert dxy <= (transport_distance(t, x, z)
                                       + transport_distance(t, z, y))


class TestStructureOf:
    def test_singleton(self):
        t = line(5)
        assert t.structure_of([5]) == StructurePair(5, 5)

    def test_two_leaves(self):
        # leaves at depths 3 and 7, lca at depth 2
        t = RootedTree()
        v = 0
        for _ in range(2):
            v = t.add_child(v)
        a = t.add_child(v)
        b = v
        for _ in range(5):
            b = t.add_child(b)
        sp = t.structure_of([a, b])
        assert (sp.D, sp.d) == (3, 2)

    def test_game_start(self):
        t = RootedTree()
        assert t.structure_of([0]) == StructurePair(0, 0)

    def test_d_le_D_always(self):
        for parents in small_trees(6):
            t = RootedTree.from_parents(parents)
            leaves = [v for v in range(len(t)) if not t.children[v]]
            for r in (1, 2):
                for combo in itertools.combinations(leaves, min(r, len(leaves))):
                    sp = t.structure_of(list(combo))
                    assert sp.d <= sp.D

    def test_empty_rejected(self):
        with pytest.raises(TreeError):
            RootedTree().structure_of([])


class TestSerialization:
    def test_round_trip(self):
        t = RootedTree()
        t.add_child(0)
        t.add_child(0)
        t.add_child(1)
        back = RootedTree.from_json(t.to_json())
        assert back.to_parents() == t.to_parents() == [0, 0, 0, 1]

    def test_depth_consistency_after_growth(self):
        t = RootedTree()
        import random
        rng = random.Random(3)
        for _ in range(50):
            t.add_child(rng.randrange(len(t)))
        for v in range(1, len(t)):
            assert t.depth[v] == t.depth[t.parent[v]] + 1
            assert v in t.children[t.parent[v]]
