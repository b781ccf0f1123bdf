import random
from collections import Counter

import networkx as nx
import pytest

from efxorient.atlas import canonical_form, canonical_graph, connected_graphs
from efxorient.graph import Graph, is_connected


@pytest.fixture(scope="module")
def atlas6():
    return connected_graphs(6)


def test_counts_by_vertices(atlas6):
    counts = Counter(g.n for g in atlas6)
    # independent count from the networkx graph atlas (all graphs up to 7 vertices)
    ref = Counter(h.number_of_nodes() for h in nx.graph_atlas_g() if h.number_of_nodes() <= 6 and h.number_of_nodes() > 0 and nx.is_connected(h))
    assert counts == ref
    assert [counts[n] for n in range(1, 7)] == [1, 1, 2, 6, 21, 112]


def test_counts_by_edges():
    graphs = connected_graphs(8, 7)
    counts = Counter(g.m for g in graphs)
    # connected graphs with m edges and no isolated vertices (m >= 1), plus K1
    assert [counts[m] for m in range(8)] == [1, 1, 1, 3, 5, 12, 30, 79]


def test_no_isomorphic_duplicates(atlas6):
    by_key = {}
    for g in atlas6:
        assert is_connected(g)
        h = nx.Graph(list(g.edges))
        h.add_nodes_from(range(g.n))
        key = (g.n, g.m, tuple(sorted(d for _, d in h.degree())))
        for other in by_key.get(key, []):
            assert not nx.is_isomorphic(h, other)
        by_key.setdefault(key, []).append(h)


def test_canonical_form_invariant_under_relabeling():
    rng = random.Random(13)
    for g in connected_graphs(6)[::5]:
        perm = list(range(g.n))
        rng.shuffle(perm)
        edges = [(perm[a], perm[b]) for a, b in g.edges]
        rng.shuffle(edges)
        assert canonical_form(Graph(g.n, edges)) == canonical_form(g)


def test_canonical_graph_is_fixed_point():
    g = Graph(4, [(2, 3), (0, 3), (1, 3)])
    c = canonical_graph(g)
    assert canonical_graph(c) == c


def test_trivial_bounds():
    assert connected_graphs(0) == []
    assert [g.edges for g in connected_graphs(2)] == [(), ((0, 1),)]
