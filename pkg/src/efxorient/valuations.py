"""Graphical valuations: each vertex values only its incident edges.

Three representations share one interface:

* :class:`AdditiveValuation` -- a nonnegative rational weight per (vertex, incident edge).
* :class:`ZeroOneValuation` -- additive with weights in ``{0, 1}``.
* :class:`MonotoneTableValuation` -- an explicit value for every subset of ``E(v)``.

All values are exact (``int`` or :class:`fractions.Fraction`). A bundle may contain
edges not incident to the queried vertex; they are ignored, i.e.
``value(v, X) == value(v, X & E(v))``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

from .graph import Graph, SizeBoundError, mask_of

Number = Union[int, Fraction]

DEFAULT_TABLE_DEGREE_BOUND = 12
DEFAULT_01_EDGE_BOUND = 10


class InvalidValuation(ValueError):
    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Violation:
    kind: str  # "negative" | "non-incident" | "non-monotone" | "missing-subset" | "not-binary"
    vertex: int
    subset: frozenset

    def __str__(self) -> str:
        return f"{self.kind} at vertex {self.vertex}, edges {sorted(self.subset)}"


def parse_number(x) -> Number:
    """Parse ``int``, ``"p/q"`` strings or Fractions; floats are rejected."""
    if isinstance(x, bool):
        raise ValueError(f"not a number: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        q = Fraction(x.strip())
        return q.numerator if q.denominator == 1 else q
    raise ValueError(f"expected an integer or a 'p/q' string, got {x!r}")


def format_number(x: Number) -> Union[int, str]:
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Valuation:
    """Common interface. Subclasses implement :meth:`value_mask` and :meth:`violations`."""

    graph: Graph

    def value_mask(self, v: int, mask: int) -> Number:
        raise NotImplementedError

    def value(self, v: int, bundle: Iterable[int]) -> Number:
        return self.value_mask(v, mask_of(bundle))

    def single(self, v: int, e: int) -> Number:
        return self.value_mask(v, 1 << e)

    def is_zero_value_item(self, v: int, e: int) -> bool:
        raise NotImplementedError

    def violations(self) -> list[Violation]:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class AdditiveValuation(Valuation):
    def __init__(self, graph: Graph, weights: Mapping[tuple[int, int], Number], validate: bool = True):
        self.graph = graph
        self.weights = {(int(v), int(e)): parse_number(w) for (v, e), w in weights.items()}
        # per-vertex weight list indexed by edge, only for incident edges
        self._w = [dict() for _ in range(graph.n)]
        for (v, e), w in self.weights.items():
            if 0 <= v < graph.n:
                self._w[v][e] = w
        self._inc_mask = [graph.incident_mask(v) for v in range(graph.n)]
        if validate:
            bad = self.violations()
            if bad:
                raise InvalidValuation(bad)

    @classmethod
    def uniform(cls, graph: Graph, w: Number = 1) -> "AdditiveValuation":
        return cls(graph, {(v, e): w for e, (a, b) in enumerate(graph.edges) for v in (a, b)})

    def weight(self, v: int, e: int) -> Number:
        return self._w[v].get(e, 0)

    def value_mask(self, v: int, mask: int) -> Number:
        mask &= self._inc_mask[v]
        if not mask:
            return 0
        w = self._w[v]
        total = 0
        for e, x in w.items():
            if (mask >> e) & 1:
                total += x
        return total

    def is_zero_value_item(self, v: int, e: int) -> bool:
        return self.weight(v, e) == 0

    def violations(self) -> list[Violation]:
        out = []
        for (v, e), w in sorted(self.weights.items()):
            if w < 0:
                out.append(Violation("negative", v, frozenset({e})))
            if not (0 <= v < self.graph.n) or not (0 <= e < self.graph.m) or v not in self.graph.edges[e]:
                out.append(Violation("non-incident", v, frozenset({e})))
        return out

    def as_table(self) -> "MonotoneTableValuation":
        tables = {}
        for v in range(self.graph.n):
            inc = self.graph.incident(v)
            tables[v] = {
                frozenset(sub): sum((self.weight(v, e) for e in sub), 0)
                for r in range(len(inc) + 1)
                for sub in itertools.combinations(inc, r)
            }
        return MonotoneTableValuation(self.graph, tables)

    def to_json(self) -> dict:
        return {
            "type": "additive",
            "weights": [
                {"v": v, "e": e, "w": format_number(w)} for (v, e), w in sorted(self.weights.items())
            ],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdditiveValuation):
            return NotImplemented
        strip = lambda d: {k: w for k, w in d.items() if w != 0}
        return self.graph == other.graph and strip(self.weights) == strip(other.weights)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.graph!r}, {self.weights!r})"


class ZeroOneValuation(AdditiveValuation):
    """Additive valuation with every (vertex, incident edge) weight in {0, 1}."""

    @classmethod
    def from_bits(cls, graph: Graph, code: int) -> "ZeroOneValuation":
        """Decode the integer ``code``: bit ``2e`` is the first endpoint's value of edge ``e``,
        bit ``2e+1`` the second endpoint's."""
        weights = {}
        for e, (a, b) in enumerate(graph.edges):
            weights[(a, e)] = (code >> (2 * e)) & 1
            weights[(b, e)] = (code >> (2 * e + 1)) & 1
        return cls(graph, weights, validate=False)

    @classmethod
    def from_edge_values(cls, graph: Graph, values: Mapping[int, tuple[int, int]]) -> "ZeroOneValuation":
        """``values[e] = (value for first endpoint, value for second endpoint)``; missing edges are 0/0."""
        weights = {}
        for e, (a, b) in enumerate(graph.edges):
            x, y = values.get(e, (0, 0))
            weights[(a, e)] = x
            weights[(b, e)] = y
        return cls(graph, weights)

    def code(self) -> int:
        out = 0
        for e, (a, b) in enumerate(self.graph.edges):
            out |= int(self.weight(a, e)) << (2 * e)
            out |= int(self.weight(b, e)) << (2 * e + 1)
        return out

    def violations(self) -> list[Violation]:
        out = super().violations()
        for (v, e), w in sorted(self.weights.items()):
            if w not in (0, 1):
                out.append(Violation("not-binary", v, frozenset({e})))
        return out

    def to_json(self) -> dict:
        data = super().to_json()
        data["type"] = "01"
        return data


class MonotoneTableValuation(Valuation):
    def __init__(
        self,
        graph: Graph,
        tables: Mapping[int, Mapping[frozenset, Number]],
        validate: bool = True,
        max_degree: int = DEFAULT_TABLE_DEGREE_BOUND,
    ):
        self.graph = graph
        for v in range(graph.n):
            if graph.degree(v) > max_degree:
                raise SizeBoundError(
                    f"vertex {v} has degree {graph.degree(v)} > table bound {max_degree}"
                )
        self.tables = {
            int(v): {frozenset(k): parse_number(x) for k, x in t.items()} for v, t in tables.items()
        }
        self._inc_mask = [graph.incident_mask(v) for v in range(graph.n)]
        self._by_mask = [dict() for _ in range(graph.n)]
        for v, t in self.tables.items():
            if 0 <= v < graph.n:
                for k, x in t.items():
                    self._by_mask[v][mask_of(k)] = x
        if validate:
            bad = self.violations()
            if bad:
                raise InvalidValuation(bad)

    def value_mask(self, v: int, mask: int) -> Number:
        return self._by_mask[v][mask & self._inc_mask[v]]

    def is_zero_value_item(self, v: int, e: int) -> bool:
        if not (self._inc_mask[v] >> e) & 1:
            return True
        bit = 1 << e
        t = self._by_mask[v]
        return all(t[k] == t[k | bit] for k in t if not k & bit)

    def violations(self) -> list[Violation]:
        out = []
        g = self.graph
        for v in sorted(self.tables):
            if not 0 <= v < g.n:
                out.append(Violation("non-incident", v, frozenset()))
        for v in range(g.n):
            inc = g.incident(v)
            t = self.tables.get(v, {})
            for k in sorted(t, key=sorted):
                if not k <= set(inc):
                    out.append(Violation("non-incident", v, k))
            subsets = [frozenset(s) for r in range(len(inc) + 1) for s in itertools.combinations(inc, r)]
            missing = [s for s in subsets if s not in t]
            out.extend(Violation("missing-subset", v, s) for s in missing)
            if missing:
                continue
            for s in subsets:
                if t[s] < 0:
                    out.append(Violation("negative", v, s))
            for s in subsets:
                # monotonicity is implied by the one-element extensions
                for e in inc:
                    if e not in s and t[s] > t[s | {e}]:
                        out.append(Violation("non-monotone", v, s | {e}))
        return out

    def to_json(self) -> dict:
        return {
            "type": "table",
            "tables": [
                {
                    "v": v,
                    "entries": [
                        {"edges": sorted(k), "w": format_number(x)}
                        for k, x in sorted(t.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
                    ],
                }
                for v, t in sorted(self.tables.items())
            ],
        }


def validate(val: Valuation, g: Optional[Graph] = None) -> list[Violation]:
    """Every violated constraint of ``val``; empty means well formed."""
    if g is not None and g != val.graph:
        raise ValueError("valuation was built for a different graph")
    return val.violations()


def value(val: Valuation, v: int, bundle: Iterable[int]) -> Number:
    return val.value(v, bundle)


def is_zero_value_item(val: Valuation, v: int, e: int) -> bool:
    return val.is_zero_value_item(v, e)


def enumerate_01_valuations(g: Graph, max_edges: int = DEFAULT_01_EDGE_BOUND) -> Iterator[ZeroOneValuation]:
    """All ``4**m`` binary valuations, in increasing :meth:`ZeroOneValuation.code` order."""
    if g.m > max_edges:
        raise SizeBoundError(f"enumerating 4^m binary valuations limited to m <= {max_edges}, got m = {g.m}")
    for code in range(4 ** g.m):
        yield ZeroOneValuation.from_bits(g, code)


def valuation_from_json(g: Graph, data: dict) -> Valuation:
    kind = data.get("type")
    if kind in ("additive", "01"):
        weights = {}
        for item in data.get("weights", []):
            key = (int(item["v"]), int(item["e"]))
            if key in weights:
                raise ValueError(f"duplicate weight for vertex {key[0]}, edge {key[1]}")
            weights[key] = parse_number(item["w"])
        cls = ZeroOneValuation if kind == "01" else AdditiveValuation
        return cls(g, weights)
    if kind == "table":
        tables = {}
        for t in data.get("tables", []):
            v = int(t["v"])
            tables[v] = {frozenset(int(e) for e in ent["edges"]): parse_number(ent["w"]) for ent in t["entries"]}
        return MonotoneTableValuation(g, tables)
    raise ValueError(f"unknown valuation type {kind!r}")
