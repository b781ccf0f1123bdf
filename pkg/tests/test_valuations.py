import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from efxorient.counterexamples import gen_glued_triangles_vertex, gen_shared_edge_triangles
from efxorient.graph import Graph, SizeBoundError
from efxorient.valuations import (
    AdditiveValuation,
    InvalidValuation,
    MonotoneTableValuation,
    ZeroOneValuation,
    enumerate_01_valuations,
    is_zero_value_item,
    parse_number,
    validate,
    valuation_from_json,
    value,
)
from oracles import random_monotone_tables

TRI = Graph.complete(3)


def test_value_examples():
    inst = gen_shared_edge_triangles()
    # v2v3 is worth 1/2 to v2
    assert value(inst.valuation, 1, {2}) == Fraction(1, 2)
    assert value(inst.valuation, 1, set()) == 0
    assert value(AdditiveValuation.uniform(TRI), 0, {0, 1, 2}) == 2


def test_zero_value_items():
    val = AdditiveValuation(TRI, {(0, 0): 0, (1, 0): 1})
    assert is_zero_value_item(val, 0, 0)
    assert not is_zero_value_item(val, 1, 0)
    inst = gen_glued_triangles_vertex()
    for e in (3, 4, 5):  # the edges valued 0 by both endpoints
        a, b = inst.graph.edges[e]
        assert inst.valuation.is_zero_value_item(a, e) and inst.valuation.is_zero_value_item(b, e)


def test_table_zero_value_item_detects_flip():
    g = Graph(3, [(0, 1), (0, 2)])
    # edge 1 adds nothing alone but completes a pair
    t = {0: {frozenset(): 0, frozenset({0}): 1, frozenset({1}): 1, frozenset({0, 1}): 3}, 1: {frozenset(): 0, frozenset({0}): 0}, 2: {frozenset(): 0, frozenset({1}): 0}}
    val = MonotoneTableValuation(g, t)
    assert not val.is_zero_value_item(0, 1)
    t[0] = {frozenset(): 0, frozenset({0}): 1, frozenset({1}): 0, frozenset({0, 1}): 1}
    assert MonotoneTableValuation(g, t).is_zero_value_item(0, 1)
    t[0] = {frozenset(): 0, frozenset({0}): 1, frozenset({1}): 0, frozenset({0, 1}): 2}
    assert not MonotoneTableValuation(g, t).is_zero_value_item(0, 1)


def test_validate_examples():
    assert validate(AdditiveValuation.uniform(TRI)) == []
    g = Graph(3, [(0, 1), (0, 2)])
    t = {0: {frozenset(): 0, frozenset({0}): 2, frozenset({1}): 0, frozenset({0, 1}): 1}, 1: {frozenset(): 0, frozenset({0}): 0}, 2: {frozenset(): 0, frozenset({1}): 0}}
    bad = validate(MonotoneTableValuation(g, t, validate=False))
    assert [(b.kind, b.vertex, b.subset) for b in bad] == [("non-monotone", 0, frozenset({0, 1}))]
    with pytest.raises(InvalidValuation) as exc:
        AdditiveValuation(TRI, {(0, 0): -1})
    assert exc.value.violations[0].kind == "negative"
    with pytest.raises(InvalidValuation) as exc:
        AdditiveValuation(TRI, {(2, 0): 1})
    assert exc.value.violations[0].kind == "non-incident"
    with pytest.raises(InvalidValuation):
        ZeroOneValuation(TRI, {(0, 0): 2})
    with pytest.raises(InvalidValuation) as exc:
        MonotoneTableValuation(g, {0: {frozenset(): 0}})
    assert {b.kind for b in exc.value.violations} == {"missing-subset"}


def test_enumerate_01_counts():
    assert len(list(enumerate_01_valuations(Graph(2, [(0, 1)])))) == 4
    assert len(list(enumerate_01_valuations(Graph(4, [(0, 1), (2, 3)])))) == 16
    vals = list(enumerate_01_valuations(TRI))
    assert len(vals) == 64
    assert [v.code() for v in vals] == list(range(64))
    with pytest.raises(SizeBoundError):
        next(enumerate_01_valuations(Graph.complete(5), max_edges=9))


def test_parse_number_rejects_floats():
    assert parse_number("3/6") == Fraction(1, 2)
    assert parse_number(4) == 4
    with pytest.raises(ValueError):
        parse_number(0.5)


def test_table_degree_bound():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(SizeBoundError):
        MonotoneTableValuation(star, {}, max_degree=2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4 ** 5 - 1))
def test_01_json_round_trip(code):
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    val = ZeroOneValuation.from_bits(g, code)
    back = valuation_from_json(g, val.to_json())
    assert isinstance(back, ZeroOneValuation) and back.code() == code


def test_additive_and_table_json_round_trip():
    rng = random.Random(3)
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
    w = {(v, e): Fraction(rng.randint(0, 9), rng.randint(1, 9)) for e, ab in enumerate(g.edges) for v in ab}
    val = AdditiveValuation(g, w)
    assert valuation_from_json(g, val.to_json()) == val
    tables = random_monotone_tables(rng, g.n, list(g.edges))
    tv = MonotoneTableValuation(g, tables)
    back = valuation_from_json(g, tv.to_json())
    for v in range(g.n):
        for k, x in tables[v].items():
            assert back.value(v, k) == x


def test_additive_as_table_agrees():
    val = gen_shared_edge_triangles().valuation
    tab = val.as_table()
    for v in range(4):
        for mask in range(32):
            bundle = {e for e in range(5) if mask >> e & 1}
            assert tab.value(v, bundle) == val.value(v, bundle)
