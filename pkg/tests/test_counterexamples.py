import json
from fractions import Fraction

import pytest

from efxorient.characterize import check_01_characterization, matching_condition
from efxorient.counterexamples import (
    CertifiedInstance,
    bipartite_plus_edge_counterexample,
    certify,
    expand_zero_edge,
    gen_glued_triangles_vertex,
    gen_odd_cycles_family,
    gen_shared_edge_triangles,
    gen_triangles_path,
    generate,
    replay,
    subdivide_twice_preserving,
)
from efxorient.graph import Graph, GraphError, is_bipartite
from efxorient.search import check_counterexample
from efxorient.valuations import valuation_from_json
from oracles import additive, brute_efx_exists

TRIANGLES_BY_EDGE = gen_triangles_path(1).graph


def brute_confirm(inst: CertifiedInstance) -> bool:
    edges = list(inst.graph.edges)
    w = {(v, e): inst.valuation.weight(v, e) for e, ab in enumerate(edges) for v in ab}
    return not brute_efx_exists(inst.graph.n, edges, additive(edges, w))


def test_glued_triangles():
    inst = gen_glued_triangles_vertex()
    assert (inst.graph.n, inst.graph.m) == (5, 6)
    assert check_counterexample(inst.graph, inst.valuation).confirmed
    assert brute_confirm(inst)
    c = check_01_characterization(inst.graph)
    assert not c.orientable and c.forest == frozenset(e for e in range(6) if inst.valuation.weight(inst.graph.edges[e][0], e))


def test_triangles_path():
    one, two = gen_triangles_path(1), gen_triangles_path(2)
    assert not matching_condition(one.graph).satisfied
    for inst in (one, two):
        assert check_counterexample(inst.graph, inst.valuation).confirmed
        assert brute_confirm(inst)
    with pytest.raises(ValueError):
        gen_triangles_path(3)


def test_shared_edge_triangles():
    inst = gen_shared_edge_triangles()
    assert inst.graph.n == 4
    assert brute_confirm(inst)
    assert check_01_characterization(inst.graph).orientable
    assert inst.valuation.value(1, {2}) == Fraction(1, 2)


def test_subdivide_twice_preserving():
    g = Graph.complete(4)
    for _ in range(3):
        g = subdivide_twice_preserving(g, 0)
        assert not matching_condition(g).satisfied
    assert (g.n, g.m) == (10, 12)
    h = subdivide_twice_preserving(TRIANGLES_BY_EDGE, 1)
    assert h.m == 9 and not matching_condition(h).satisfied
    with pytest.raises(GraphError):
        subdivide_twice_preserving(Graph.cycle(4), 0)


def test_expand_zero_edge():
    inst = gen_shared_edge_triangles()
    big = expand_zero_edge(inst, 1, 3)
    assert (big.graph.n, big.graph.m) == (6, 7)
    assert check_counterexample(big.graph, big.valuation).confirmed
    assert brute_confirm(big)
    with pytest.raises(ValueError):
        expand_zero_edge(inst, 1, 4)
    with pytest.raises(ValueError):
        expand_zero_edge(inst, 0, 3)  # valued edge


@pytest.mark.parametrize("share", ["edge", "vertex", "path:1", "path:2", "path:3", "path:4"])
@pytest.mark.parametrize("lens", [(3, 3), (5, 3), (3, 5), (5, 5)])
def test_odd_cycles_family_confirmed(share, lens):
    inst = gen_odd_cycles_family(share, *lens)
    for key, want in (("cycle1", lens[0]), ("cycle2", lens[1])):
        seq = inst.layout[key]
        assert len(seq) == want
        assert all(inst.graph.has_edge(seq[i], seq[(i + 1) % want]) for i in range(want))
    if share.startswith("path"):
        assert len(inst.layout["path"]) - 1 == int(share.split(":")[1])
    assert inst.graph.m <= 14
    assert certify(inst) == "confirmed"
    again = replay(json.loads(json.dumps(inst.provenance)))
    assert again.canonical_json() == inst.canonical_json()


def test_odd_cycles_small_cases_match_gadgets():
    assert gen_odd_cycles_family("vertex", 3, 3).canonical_json() == gen_glued_triangles_vertex().canonical_json()
    assert gen_odd_cycles_family("edge", 3, 3).canonical_json() == gen_shared_edge_triangles().canonical_json()


def test_odd_cycles_bad_params():
    with pytest.raises(ValueError):
        gen_odd_cycles_family("edge", 4, 3)
    with pytest.raises(ValueError):
        gen_odd_cycles_family("corner", 3, 3)
    with pytest.raises(ValueError):
        gen_odd_cycles_family("path:0", 3, 3)


def test_bipartite_plus_edge():
    inst = bipartite_plus_edge_counterexample(Graph.cycle(6), 0, 2)
    assert inst.graph.m == 7
    assert sorted(len(inst.layout[k]) for k in ("cycle1", "cycle2")) == [3, 5]
    assert check_counterexample(inst.graph, inst.valuation).confirmed
    assert brute_confirm(inst)
    k24 = Graph.complete_bipartite(2, 4)
    inst = bipartite_plus_edge_counterexample(k24, 0, 1)
    assert not is_bipartite(inst.graph)
    assert check_counterexample(inst.graph, inst.valuation).confirmed
    assert replay(inst.provenance).canonical_json() == inst.canonical_json()
    with pytest.raises(GraphError):
        bipartite_plus_edge_counterexample(Graph.path(5), 0, 2)


def test_bundle_round_trip():
    inst = generate("odd-cycles", share="path:2", lens=[5, 3])
    data = json.loads(json.dumps(inst.to_json()))
    g = Graph.from_json(data["graph"])
    val = valuation_from_json(g, data["valuation"])
    assert data["claim"] == "NoEfxOrientation"
    assert check_counterexample(g, val).confirmed


def test_generate_dispatch():
    assert generate("triangles-path", path_len=2).graph.n == 7
    with pytest.raises(ValueError):
        generate("nope")


def test_certify_size_guard():
    inst = gen_odd_cycles_family("edge", 5, 5)
    assert certify(inst, max_edges=5) == "unverified at this size"
