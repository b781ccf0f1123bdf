"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the terminal summary.
"""
import itertools
import random
import time

import pytest

from efxorient.atlas import connected_graphs
from efxorient.characterize import (
    check_01_characterization,
    matching_condition,
    orient_01,
    orient_bipartite,
    orient_near_bipartite,
)
from efxorient.counterexamples import (
    expand_zero_edge,
    gen_glued_triangles_vertex,
    gen_shared_edge_triangles,
    gen_triangles_path,
    subdivide_twice_preserving,
)
from efxorient.graph import Graph, chromatic_number, remove_vertex
from efxorient.search import check_counterexample, exists_efx_for_all_01, find_efx_orientation
from efxorient.valuations import AdditiveValuation, MonotoneTableValuation, ZeroOneValuation
from efxorient.verify import Orientation, verify_efx, verify_efx_fast
from oracles import (
    additive,
    literal_violations,
    random_additive_weights,
    random_connected_bipartite,
    random_monotone_tables,
    random_near_bipartite,
    table,
)

SEED = 20240601


def all_graphs(max_m):
    """Every graph with at most ``max_m`` edges and no isolated vertex, one per isomorphism class.

    Built as multisets of connected components, so distinct multisets never collide.
    """
    comps = [g for g in connected_graphs(max_m + 1, max_m) if g.m > 0]
    out = [Graph(0)]

    def rec(start, chosen, m):
        for i in range(start, len(comps)):
            c = comps[i]
            if m + c.m > max_m:
                continue
            parts = chosen + [c]
            edges, offset = [], 0
            for p in parts:
                edges += [(a + offset, b + offset) for a, b in p.edges]
                offset += p.n
            out.append(Graph(offset, edges))
            rec(i, parts, m + c.m)

    rec(0, [], 0)
    return out


@pytest.fixture(scope="module")
def atlas_m7():
    return connected_graphs(8, 7)


@pytest.fixture(scope="module")
def atlas_n6():
    return connected_graphs(6)


def test_criterion_1_characterization_equals_bruteforce(acceptance, atlas_m7):
    start = time.perf_counter()
    bad = [g for g in atlas_m7 if check_01_characterization(g).orientable != exists_efx_for_all_01(g).all_orientable]
    ok = not bad and len(atlas_m7) == 132
    acceptance(1, "forest characterization == 0-1 brute force, connected m <= 7", ok,
               f"{len(atlas_m7)} graphs, {len(bad)} disagreements, {time.perf_counter() - start:.1f}s")
    assert ok, bad[:5]


def test_criterion_2_chromatic_bound(acceptance, atlas_n6):
    orientable = [g for g in atlas_n6 if check_01_characterization(g).orientable]
    bad = [g for g in orientable if chromatic_number(g) > 3]
    acceptance(2, "0-1-orientable => chi <= 3, connected n <= 6", not bad,
               f"{len(atlas_n6)} graphs, {len(orientable)} orientable, {len(bad)} violations")
    assert not bad


def test_criterion_3_matching_condition(acceptance, atlas_n6):
    bad, converse = [], []
    for g in atlas_n6:
        orientable = check_01_characterization(g).orientable
        sat = matching_condition(g).satisfied
        if orientable and not sat:
            bad.append(g)
        if sat and not orientable:
            converse.append(g)
    acceptance(3, "0-1-orientable => matching condition, connected n <= 6", not bad,
               f"{len(bad)} violations; {len(converse)} graphs satisfy the condition but are not 0-1-orientable")
    assert not bad


def _check(g, val, o, oracle_value):
    if not verify_efx(g, val, o).verdict:
        return False
    return not literal_violations(g.n, list(g.edges), oracle_value, list(o.heads))


def test_criterion_4_constructive_orienters(acceptance):
    rng = random.Random(SEED)
    fails = {"bipartite": 0, "near-bipartite": 0, "bipartite-table": 0, "near-bipartite-table": 0}
    runs = dict.fromkeys(fails, 0)
    for _ in range(1000):
        n = rng.randint(2, 10)
        edges = random_connected_bipartite(rng, n)
        g = Graph(n, edges)
        w = random_additive_weights(rng, edges, max_den=100)
        runs["bipartite"] += 1
        fails["bipartite"] += not _check(g, AdditiveValuation(g, w), orient_bipartite(g, AdditiveValuation(g, w)), additive(edges, w))
    for _ in range(1000):
        n, edges, v = random_near_bipartite(rng, 10)
        g = Graph(n, edges)
        w = random_additive_weights(rng, edges, max_den=100)
        val = AdditiveValuation(g, w)
        runs["near-bipartite"] += 1
        fails["near-bipartite"] += not _check(g, val, orient_near_bipartite(g, v, val), additive(edges, w))
    while runs["bipartite-table"] < 100:
        n = rng.randint(2, 10)
        edges = random_connected_bipartite(rng, n)
        g = Graph(n, edges)
        if max(g.degree(x) for x in range(n)) > 5:
            continue
        t = random_monotone_tables(rng, n, edges, max_den=100)
        val = MonotoneTableValuation(g, t)
        runs["bipartite-table"] += 1
        fails["bipartite-table"] += not _check(g, val, orient_bipartite(g, val), table(edges, t))
    while runs["near-bipartite-table"] < 100:
        n, edges, v = random_near_bipartite(rng, 10)
        g = Graph(n, edges)
        if max(g.degree(x) for x in range(n)) > 5:
            continue
        t = random_monotone_tables(rng, n, edges, max_den=100)
        val = MonotoneTableValuation(g, t)
        runs["near-bipartite-table"] += 1
        fails["near-bipartite-table"] += not _check(g, val, orient_near_bipartite(g, v, val), table(edges, t))
    ok = not any(fails.values())
    acceptance(4, "bipartite and near-bipartite orienters produce EFX orientations", ok,
               ", ".join(f"{k}: {fails[k]}/{runs[k]} failures" for k in fails))
    assert ok


def test_criterion_5_orient01_soundness(acceptance, atlas_m7):
    start = time.perf_counter()
    graphs = [g for g in atlas_m7 if check_01_characterization(g).orientable]
    checked, bad = 0, []
    for g in graphs:
        for code in range(4 ** g.m):
            val = ZeroOneValuation.from_bits(g, code)
            checked += 1
            if not verify_efx(g, val, orient_01(g, val), full=False).verdict:
                bad.append((g, code))
    acceptance(5, "orient_01 is EFX for every 0-1 valuation, orientable connected m <= 7", not bad,
               f"{len(graphs)} graphs, {checked} valuations, {len(bad)} failures, {time.perf_counter() - start:.1f}s")
    assert not bad, bad[:5]


def test_criterion_6_published_gadgets(acceptance):
    results = {}
    shared = gen_shared_edge_triangles()
    g = shared.graph
    results["shared-edge: all 32 orientations fail"] = all(
        not verify_efx(g, shared.valuation, Orientation(h)).verdict for h in itertools.product(*g.edges)
    ) and 2 ** g.m == 32
    results["shared-edge: 0-1-orientable"] = check_01_characterization(g).orientable
    for name, inst in (
        ("glued-triangles", gen_glued_triangles_vertex()),
        ("triangles-path-1", gen_triangles_path(1)),
        ("triangles-path-2", gen_triangles_path(2)),
    ):
        results[f"{name}: exhausted"] = not find_efx_orientation(inst.graph, inst.valuation).found
    mc = matching_condition(gen_triangles_path(1).graph)
    results["triangles-by-edge: |M| = 3 vs alpha = 2"] = (
        not mc.satisfied and len(mc.matching) == 3 and mc.max_independent == 2
    )
    ok = all(results.values())
    acceptance(6, "published counterexamples reproduce exactly", ok,
               "; ".join(f"{k}: {'ok' if v else 'MISMATCH'}" for k, v in results.items()))
    assert ok


def test_criterion_7_transformers(acceptance):
    steps, bad = 0, []
    for name, base in (("K4", Graph.complete(4)), ("triangles-by-edge", gen_triangles_path(1).graph)):
        for e in range(base.m):
            g = base
            for _ in range(3):
                g = subdivide_twice_preserving(g, e)
                steps += 1
                if matching_condition(g).satisfied:
                    bad.append((name, e, g.m))
    inst = gen_shared_edge_triangles()
    expansions = []
    for e, path_len in ((1, 3), (3, 5), (1, 3)):
        inst = expand_zero_edge(inst, e, path_len)
        confirmed = check_counterexample(inst.graph, inst.valuation).confirmed
        expansions.append(f"m={inst.graph.m}:{'confirmed' if confirmed else 'REFUTED'}")
        if not confirmed or inst.graph.m > 14:
            bad.append(("expand", e, inst.graph.m))
    for path_len in (3, 5, 7, 9):
        big = expand_zero_edge(gen_shared_edge_triangles(), 1, path_len)
        confirmed = check_counterexample(big.graph, big.valuation).confirmed
        expansions.append(f"single {path_len}:{'confirmed' if confirmed else 'REFUTED'}")
        if not confirmed:
            bad.append(("expand-single", 1, path_len))
    acceptance(7, "double subdivision keeps the matching violation; zero-edge expansion keeps the counterexample", not bad,
               f"{steps} subdivisions checked; expansions {', '.join(expansions)}")
    assert not bad, bad


def test_criterion_8_verifier_equivalence(acceptance):
    rng = random.Random(SEED + 8)
    start = time.perf_counter()
    graphs = [g for g in all_graphs(6) if g.m > 0]
    pairs, bad = 0, []

    def compare(g, val, o):
        a = verify_efx(g, val, o)
        b = verify_efx_fast(g, val, o)
        if a.violations != b.violations or a.envied_vertices != b.envied_vertices:
            bad.append((g, o))

    for g in graphs:
        orientations = [Orientation(h) for h in itertools.product(*g.edges)]
        if g.m <= 5:
            for code in range(4 ** g.m):
                val = ZeroOneValuation.from_bits(g, code)
                for o in orientations:
                    compare(g, val, o)
                    pairs += 1
        for _ in range(200):
            val = AdditiveValuation(g, random_additive_weights(rng, list(g.edges), max_den=100))
            for o in orientations:
                compare(g, val, o)
                pairs += 1
    acceptance(8, "literal and adjacency EFX verifiers agree, all graphs m <= 6", not bad,
               f"{len(graphs)} graphs, {pairs} (valuation, orientation) pairs, {len(bad)} disagreements, "
               f"{time.perf_counter() - start:.1f}s")
    assert not bad


def test_criterion_9_pendant_vertices(acceptance):
    checked, bad = 0, []
    for g in all_graphs(7):
        before = None
        for v in range(g.n):
            if g.degree(v) != 1:
                continue
            if before is None:
                before = check_01_characterization(g).orientable
            after = check_01_characterization(remove_vertex(g, v)[0]).orientable
            checked += 1
            if after != before:
                bad.append((g, v))
    acceptance(9, "removing a degree-1 vertex keeps 0-1 orientability, all graphs m <= 7", not bad,
               f"{checked} (graph, pendant vertex) pairs, {len(bad)} disagreements")
    assert not bad


def test_all_graphs_counts():
    # graphs with m edges and no isolated vertices: 1, 1, 2, 5, 11, 26, 68
    counts = [0] * 7
    for g in all_graphs(6):
        counts[g.m] += 1
    assert counts == [1, 1, 2, 5, 11, 26, 68]
