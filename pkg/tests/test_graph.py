import json
from itertools import combinations

import pytest
from hypothesis import given

from dmgdesign.graph import (ANCESTORS, Dmg, UGraph, classify_bidirected, component_graph,
                             directed_skeleton, double_directed_pairs, dumps_graph,
                             graph_from_dict, graph_to_dict, intervene, loads_graph, ra, rb,
                             rd, reachable, scc_anc_partition, scc_decompose, to_dot)

from fixtures import LAYERED7, CLIQUES6
from helpers import brute_sccs, closure_matrix, dmgs


class TestDmg:
    def test_bidirected_is_canonicalised(self):
        g = Dmg(3, frozenset(), frozenset({(2, 0)}))
        assert g.bidirected == {(0, 2)}
        assert g.has_bidirected(2, 0) and g.has_bidirected(0, 2)

    def test_rejects_self_loops_and_out_of_range(self):
        with pytest.raises(ValueError):
            Dmg(2, frozenset({(1, 1)}))
        with pytest.raises(ValueError):
            Dmg(2, frozenset({(0, 2)}))
        with pytest.raises(ValueError):
            Dmg(2, frozenset(), frozenset({(0, 0)}))
        with pytest.raises(ValueError):
            Dmg(-1)

    def test_neighbourhoods(self):
        g = Dmg(4, frozenset({(0, 1), (2, 1), (1, 3)}), frozenset({(0, 3)}))
        assert g.parents(1) == {0, 2}
        assert g.children(1) == {3}
        assert g.siblings(3) == {0}
        assert g.parents_of((1, 3)) == {0, 1, 2}
        assert g.adjacent(1, 0) and not g.adjacent(0, 3)


class TestScc:
    def test_empty_graph(self):
        assert scc_decompose(Dmg(3)) == [{0}, {1}, {2}]

    def test_two_cycle(self):
        assert scc_decompose(Dmg(3, frozenset({(0, 1), (1, 0)}))) == [{0, 1}, {2}]

    def test_layered7_reconstruction(self):
        sizes = sorted(len(c) for c in scc_decompose(LAYERED7))
        assert sizes == [1, 1, 2, 3]
        assert scc_decompose(LAYERED7) == brute_sccs(LAYERED7)

    @given(dmgs(max_n=7))
    def test_matches_mutual_reachability(self, g):
        assert scc_decompose(g) == brute_sccs(g)
        for x in g.nodes:
            assert g.scc_of(x) == next(c for c in brute_sccs(g) if x in c)


class TestReachable:
    def test_chain(self):
        g = Dmg(3, frozenset({(0, 1), (1, 2)}))
        assert reachable(g, 0) == {0, 1, 2}
        assert reachable(g, 0, ANCESTORS) == {0}

    @given(dmgs(max_n=7))
    def test_matches_closure_matrix(self, g):
        r = closure_matrix(g)
        for x in g.nodes:
            assert g.descendants(x) == {y for y in g.nodes if r[x][y]}
            assert g.ancestors(x) == {y for y in g.nodes if r[y][x]}

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            reachable(Dmg(2), 5)
        with pytest.raises(ValueError):
            reachable(Dmg(2), 0, "sideways")


class TestIntervene:
    def test_identity_on_empty_set(self):
        g = Dmg(2, frozenset({(0, 1)}), frozenset({(0, 1)}))
        assert intervene(g, ()) == g

    def test_removes_heads_at_target(self):
        g = Dmg(2, frozenset({(0, 1)}), frozenset({(0, 1)}))
        assert intervene(g, {1}) == Dmg(2)

    def test_all_nodes(self):
        g = Dmg(3, frozenset({(0, 1), (1, 2), (2, 0)}), frozenset({(0, 2)}))
        assert intervene(g, range(3)) == Dmg(3)

    @given(dmgs(max_n=6), dmgs(max_n=6))
    def test_idempotent_and_composes(self, g, other):
        a = frozenset(x for x in other.nodes if x < g.n and x % 2 == 0)
        b = frozenset(x for x in other.nodes if x < g.n and x % 3 == 0)
        once = intervene(g, a)
        assert intervene(once, a) == once
        assert intervene(intervene(g, a), b) == intervene(g, a | b)
        for u, v in once.directed:
            assert v not in a
        for u, v in once.bidirected:
            assert u not in a and v not in a


class TestEdgeOperators:
    def test_directed_only_graph_is_fixed(self):
        g = Dmg(3, frozenset({(0, 1), (1, 2)}))
        assert rb(g) == ra(g) == rd(g) == g

    def test_double_adjacent_confounder(self):
        g = Dmg(2, frozenset({(0, 1), (1, 0)}), frozenset({(0, 1)}))
        assert rd(g).bidirected == frozenset()
        assert ra(g).bidirected == frozenset()
        assert rb(g).directed == g.directed

    def test_classify(self):
        b = frozenset({(0, 1)})
        assert classify_bidirected(Dmg(2, frozenset(), b)).non_adjacent == b
        assert classify_bidirected(Dmg(2, frozenset({(0, 1)}), b)).single_adjacent == b
        assert classify_bidirected(Dmg(2, frozenset({(0, 1), (1, 0)}), b)).double_adjacent == b

    @given(dmgs(max_n=7))
    def test_identities(self, g):
        c = classify_bidirected(g)
        assert c.non_adjacent | c.single_adjacent | c.double_adjacent == g.bidirected
        assert not (c.non_adjacent & c.single_adjacent)
        assert rd(g).bidirected == c.non_adjacent | c.single_adjacent
        assert ra(g).bidirected == c.non_adjacent
        assert rb(g).bidirected == frozenset()
        assert rd(g).directed == ra(g).directed == rb(g).directed == g.directed
        assert c.double_adjacent <= double_directed_pairs(g)


class TestSkeleton:
    def test_complete_digraph(self):
        g = Dmg(4, frozenset((u, v) for u in range(4) for v in range(4) if u != v))
        assert len(directed_skeleton(g).edges) == 6
        assert component_graph(g).edges == frozenset()

    def test_empty_gives_complete_component_graph(self):
        assert component_graph(Dmg(4)).edges == frozenset(combinations(range(4), 2))

    def test_cliques6_are_independent(self):
        uc = component_graph(CLIQUES6)
        cliques = [{0, 5}, {0, 4}, {1, 4}, {1, 2, 3, 5}]
        for c in cliques:
            for a, b in combinations(sorted(c), 2):
                assert not CLIQUES6.adjacent(a, b)
        covered = {e for c in cliques for e in combinations(sorted(c), 2)}
        assert uc.edges == covered

    @given(dmgs(max_n=7))
    def test_skeleton_and_complement_partition_pairs(self, g):
        s, c = directed_skeleton(g).edges, component_graph(g).edges
        assert not (s & c)
        assert s | c == frozenset(combinations(range(g.n), 2))

    def test_ugraph_queries(self):
        u = UGraph(4, frozenset({(1, 0), (1, 2)}))
        assert u.edges == {(0, 1), (1, 2)}
        assert u.neighbors(1) == {0, 2}
        assert u.degree(3) == 0 and u.max_degree == 2
        assert u.to_networkx().number_of_nodes() == 4


class TestSccAncPartition:
    def test_chain(self):
        p = scc_anc_partition(Dmg(3, frozenset({(0, 1), (1, 2)})))
        assert p.layers == (((0,),), ((1,),), ((2,),))

    def test_layered7(self):
        p = scc_anc_partition(LAYERED7)
        assert p.layers == (((0, 1),), ((2,),), ((3,), (4, 5, 6)))
        assert p.length == 2
        assert p.zetas == [2, 1, 3]
        assert p.prefix(3) == {0, 1, 2}
        assert p.prefix_size(3) == 3

    def test_empty_graph(self):
        p = scc_anc_partition(Dmg(0))
        assert p.layers == () and p.n == 0

    @given(dmgs(max_n=7))
    def test_parent_closure_and_layer_order(self, g):
        p = scc_anc_partition(g)
        assert sorted(x for _, s in p.sccs() for x in s) == list(g.nodes)
        layer_of = {x: k for k, s in p.sccs() for x in s}
        for k, scc in p.sccs():
            for x in scc:
                assert g.parents(x) <= p.prefix(k) | set(scc)
            # longest-chain layering: every SCC past layer 1 has a parent one layer down
            if k > 1:
                assert any(layer_of[y] == k - 1 for x in scc for y in g.parents(x))


class TestIO:
    def test_dict_shape(self):
        g = Dmg(3, frozenset({(1, 0)}), frozenset({(0, 2)}))
        assert graph_to_dict(g) == {"n": 3, "directed": [[1, 0]], "bidirected": [[0, 2]]}

    @given(dmgs(max_n=7))
    def test_round_trip(self, g):
        assert loads_graph(dumps_graph(g)) == g
        assert dumps_graph(loads_graph(dumps_graph(g))) == dumps_graph(g)

    @pytest.mark.parametrize("doc", [
        {"directed": []},
        {"n": "3"},
        {"n": 2, "directed": [[0, 1, 2]]},
        {"n": 2, "directed": [[0, 5]]},
        {"n": 2, "bidirected": [[1, 0]]},
        {"n": 2, "directed": [[0, True]]},
        [1, 2],
    ])
    def test_malformed(self, doc):
        with pytest.raises(ValueError):
            graph_from_dict(doc)

    def test_not_json(self):
        with pytest.raises(json.JSONDecodeError):
            loads_graph("{n: 3")

    def test_dot(self):
        g = Dmg(2, frozenset({(0, 1)}), frozenset({(0, 1)}))
        dot = to_dot(g)
        assert dot.startswith("digraph G {")
        assert "0 -> 1;" in dot
        assert "0 -> 1 [dir=both, style=dashed];" in dot
