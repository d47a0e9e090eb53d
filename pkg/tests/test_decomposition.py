import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import barbell_k5, complete_graph, small_graphs
from oracles import adjacency_sets, coreness_by_pruning, flood_fill_components, kcore_by_pruning
from kcorelayout.decomposition import (KCoreDecomposition, component_tree, core_decomposition,
                                       format_analysis, kcore_membership, shell_clusters)
from kcorelayout.graph import Graph


def oracle_adj(g):
    return adjacency_sets(g.n, g.edges().tolist())


def test_k4():
    d = core_decomposition(complete_graph(4))
    assert d.coreness.tolist() == [3, 3, 3, 3]
    assert d.c_max == 3


def test_cycle_with_pendant():
    g = Graph.from_edges(7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6)])
    assert core_decomposition(g).coreness.tolist() == [2] * 6 + [1]


def test_isolated_and_empty():
    d = core_decomposition(Graph.from_edges(3, [(0, 1)]))
    assert d.coreness.tolist() == [1, 1, 0]
    d = core_decomposition(Graph.empty())
    assert d.coreness.size == 0 and d.c_max == 0


def test_matches_oracle_on_gnp():
    rng = np.random.default_rng(42)
    for _ in range(50):
        n = int(rng.integers(1, 51))
        pairs = np.array(list(itertools.combinations(range(n), 2))).reshape(-1, 2)
        g = Graph.from_edges(n, pairs[rng.random(len(pairs)) < 0.3])
        assert core_decomposition(g).coreness.tolist() == coreness_by_pruning(oracle_adj(g))


@given(small_graphs())
def test_decomposition_invariants(g):
    d = core_decomposition(g)
    assert (d.coreness <= g.degrees()).all()
    shells = d.shells
    assert sum(len(s) for s in shells.values()) == g.n
    for c, members in shells.items():
        assert (d.coreness[members] == c).all()
    adj = oracle_adj(g)
    for k in range(d.c_max + 1):
        core = set(kcore_membership(d, k).tolist())
        assert all(len(adj[v] & core) >= k for v in core)
        # no outside vertex could join: it has fewer than k neighbours inside
        assert all(len(adj[v] & core) < k for v in set(range(g.n)) - core)
        assert set(kcore_membership(d, k + 1).tolist()) <= core


@settings(max_examples=30)
@given(small_graphs(max_n=12))
def test_kcore_is_maximum_by_exhaustion(g):
    d = core_decomposition(g)
    adj = oracle_adj(g)
    for k in range(1, d.c_max + 2):
        core = set(kcore_membership(d, k).tolist())
        for r in range(1, g.n + 1):
            for subset in itertools.combinations(range(g.n), r):
                s = set(subset)
                if all(len(adj[v] & s) >= k for v in s):
                    assert s <= core


@given(small_graphs(), st.integers(0, 2**32 - 1))
def test_coreness_is_order_independent(g, seed):
    perm = np.random.default_rng(seed).permutation(g.n)
    e = g.edges()
    h = Graph.from_edges(g.n, perm[e] if e.size else e)
    c_g = core_decomposition(g).coreness
    c_h = core_decomposition(h).coreness
    assert (c_h[perm] == c_g).all()


def test_kcore_membership():
    d = core_decomposition(complete_graph(4))
    assert kcore_membership(d, 0).tolist() == [0, 1, 2, 3]
    assert kcore_membership(d, 3).tolist() == [0, 1, 2, 3]
    assert kcore_membership(d, 4).tolist() == []
    with pytest.raises(ValueError):
        kcore_membership(d, -1)


def test_kcore_membership_matches_oracle():
    rng = np.random.default_rng(8)
    pairs = np.array(list(itertools.combinations(range(40), 2)))
    g = Graph.from_edges(40, pairs[rng.random(len(pairs)) < 0.25])
    d = core_decomposition(g)
    adj = oracle_adj(g)
    for k in range(d.c_max + 2):
        assert set(kcore_membership(d, k).tolist()) == kcore_by_pruning(adj, k)


def test_clusters_k4():
    g = complete_graph(4)
    ct = shell_clusters(g, core_decomposition(g))
    assert ct.cluster_of.tolist() == [1, 1, 1, 1]
    assert ct.table == {(3, 1): (0.0, 1.0)}


def test_clusters_two_triangles():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    ct = shell_clusters(g, core_decomposition(g))
    assert ct.cluster_of.tolist() == [1, 1, 1, 2, 2, 2]
    assert ct.sector(2, 1) == (0.0, 0.5)
    assert ct.sector(2, 2) == (0.5, 0.5)


@given(small_graphs())
def test_clusters_match_traversal_oracle(g):
    d = core_decomposition(g)
    ct = shell_clusters(g, d)
    adj = oracle_adj(g)
    for c, members in d.shells.items():
        comps = flood_fill_components(adj, members.tolist())
        # oracle lists components by smallest member, which is the label order
        for q, comp in enumerate(comps, start=1):
            assert set(np.flatnonzero((d.coreness == c) & (ct.cluster_of == q))) == comp
        fractions = [ct.sector(c, q)[1] for q in range(1, len(comps) + 1)]
        assert sum(fractions) == pytest.approx(1.0)
        for q in range(1, len(comps) + 1):
            assert ct.sector(c, q)[0] == pytest.approx(sum(fractions[:q - 1]))


def test_tree_chain_for_unfragmented_graph():
    g = Graph.from_edges(7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6)])
    tree = component_tree(g, core_decomposition(g))
    assert [(n.level, n.size) for n in tree.nodes] == [(0, 7), (1, 7), (2, 6)]
    assert all(len(n.children) <= 1 for n in tree.nodes)


def test_tree_two_k4():
    edges = list(itertools.combinations(range(4), 2)) + list(itertools.combinations(range(4, 8), 2))
    g = Graph.from_edges(8, edges)
    tree = component_tree(g, core_decomposition(g))
    level1 = tree.level(1)
    assert len(level1) == 2
    assert [n.members.tolist() for n in level1] == [[0, 1, 2, 3], [4, 5, 6, 7]]
    for node in level1:
        chain = [node]
        while chain[-1].children:
            assert len(chain[-1].children) == 1
            chain.append(tree.nodes[chain[-1].children[0]])
        assert [c.level for c in chain] == [1, 2, 3]


def test_tree_barbell():
    g = barbell_k5()
    d = core_decomposition(g)
    # path interior vertices have two neighbours each, so they reach the 2-core
    assert d.coreness.tolist() == [4] * 10 + [2, 2]
    tree = component_tree(g, d)
    four = tree.level(4)
    assert [n.size for n in four] == [5, 5]
    # oracle: pruning degree < 4 by hand leaves the two K5s as separate pieces
    comps = flood_fill_components(oracle_adj(g), kcore_by_pruning(oracle_adj(g), 4))
    assert sorted(map(sorted, comps)) == sorted(n.members.tolist() for n in four)
    # the split already happens at level 3; the nearest shared ancestor is level 2
    parents = {n.parent for n in four}
    assert len(parents) == 2
    grand = {tree.nodes[p].parent for p in parents}
    assert len(grand) == 1 and tree.nodes[grand.pop()].level == 2


def test_tree_children_sorted_by_size_then_min_id():
    # K4 {0..3}, K5 {4..8}, K4 {9..12} chained through path vertices 13, 14
    edges = list(itertools.combinations(range(4), 2))
    edges += list(itertools.combinations(range(4, 9), 2))
    edges += list(itertools.combinations(range(9, 13), 2))
    edges += [(3, 13), (13, 4), (8, 14), (14, 9)]
    g = Graph.from_edges(15, edges)
    tree = component_tree(g, core_decomposition(g))
    level3 = tree.level(3)
    assert [n.members.tolist()[0] for n in level3] == [4, 0, 9]
    assert len({n.parent for n in level3}) == 1


@given(small_graphs())
def test_tree_level_sizes_sum_to_core_sizes(g):
    d = core_decomposition(g)
    tree = component_tree(g, d)
    adj = oracle_adj(g)
    for k in range(1, d.c_max + 1):
        nodes = tree.level(k)
        core = set(kcore_membership(d, k).tolist())
        assert sum(n.size for n in nodes) == len(core)
        assert sorted(map(sorted, flood_fill_components(adj, core))) == \
            sorted(n.members.tolist() for n in nodes)
        for n in nodes:
            parent = tree.nodes[n.parent]
            assert parent.level == k - 1
            assert set(n.members.tolist()) <= set(parent.members.tolist())
    for i in range(g.n):
        node = tree.nodes[tree.owner[i]]
        assert node.level == d.coreness[i]
        assert i in node.members


def test_estimator_and_dump():
    g = complete_graph(4)
    est = KCoreDecomposition().fit(g)
    assert est.c_max_ == 3
    assert est.fit_predict(g).tolist() == [3, 3, 3, 3]
    assert est.get_params() == {}
    dump = format_analysis(est.decomposition_, est.clusters_, est.tree_)
    assert dump.splitlines()[0] == "0 3 1 3"
    doc = est.tree_.to_dict()
    assert [n["level"] for n in doc["nodes"]] == [0, 1, 2, 3]
    assert doc["nodes"][1]["parent"] == 0
