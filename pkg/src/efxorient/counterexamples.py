"""Graphs with valuations that admit no EFX orientation, and ways to grow them.

Base gadgets (vertices ``v1, v2, ...`` are numbered ``0, 1, ...``):

* two triangles glued at a vertex (binary valuation on a two-tree forest),
* two triangles joined by a bridge or by a path of length two,
* two triangles sharing an edge, whose valuation needs the weight 1/2.

Two transformations grow them: doubling a subdivision of any edge keeps the
matching condition violated, and replacing an edge worthless to both endpoints
by an odd path of alternating 0 and 1 edges keeps the instance unorientable.
Every instance carries a provenance record that :func:`replay` rebuilds it from.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .characterize import matching_condition
from .graph import Graph, GraphError, cut_vertices, is_connected, subdivide_edge, two_coloring
from .search import check_counterexample
from .valuations import AdditiveValuation, ZeroOneValuation

DEFAULT_CONFIRM_EDGE_BOUND = 14

CLAIM = "NoEfxOrientation"


@dataclass
class CertifiedInstance:
    graph: Graph
    valuation: AdditiveValuation
    provenance: dict
    layout: dict = field(default_factory=dict)
    claim: str = CLAIM

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "valuation": self.valuation.to_json(),
            "claim": self.claim,
            "provenance": self.provenance,
            "layout": self.layout,
        }

    def canonical_json(self) -> str:
        return json.dumps(
            {"graph": self.graph.to_json(), "valuation": self.valuation.to_json()},
            sort_keys=True,
            separators=(",", ":"),
        )


def certify(inst: CertifiedInstance, max_edges: int = DEFAULT_CONFIRM_EDGE_BOUND, limit: Optional[int] = None) -> str:
    """``"confirmed"``, ``"refuted"`` or ``"unverified at this size"``."""
    if inst.graph.m > max_edges:
        return "unverified at this size"
    return "confirmed" if check_counterexample(inst.graph, inst.valuation, limit=limit).confirmed else "refuted"


def _symmetric(g: Graph, values: dict[int, Union[int, Fraction]], binary: bool) -> AdditiveValuation:
    weights = {}
    for e, (a, b) in enumerate(g.edges):
        w = values.get(e, 0)
        weights[(a, e)] = w
        weights[(b, e)] = w
    return (ZeroOneValuation if binary else AdditiveValuation)(g, weights)


def _provenance(family: str, params: dict, base: str) -> dict:
    return {"family": family, "params": params, "base": base, "chain": []}


def gen_glued_triangles_vertex() -> CertifiedInstance:
    # forest edges first, so the forest is also the first failing one found by
    # the characterization check
    g = Graph(5, [(0, 2), (2, 1), (3, 4), (0, 1), (2, 3), (2, 4)])
    val = _symmetric(g, {0: 1, 1: 1, 2: 1}, binary=True)
    layout = {"center": 2, "cycle1": [2, 0, 1], "cycle2": [2, 3, 4]}
    return CertifiedInstance(g, val, _provenance("glued-triangles-vertex", {}, "glued-triangles-vertex"), layout)


def gen_triangles_path(path_len: int) -> CertifiedInstance:
    if path_len == 1:
        g = Graph(6, [(0, 1), (2, 3), (4, 5), (0, 2), (1, 2), (3, 4), (3, 5)])
        val = _symmetric(g, {0: 1, 1: 1, 2: 1}, binary=True)
        layout = {"cycle1": [2, 0, 1], "path": [2, 3], "cycle2": [3, 4, 5]}
    elif path_len == 2:
        g = Graph(7, [(0, 2), (2, 1), (3, 4), (5, 6), (0, 1), (2, 3), (4, 5), (4, 6)])
        val = _symmetric(g, {0: 1, 1: 1, 2: 1, 3: 1}, binary=True)
        layout = {"cycle1": [2, 0, 1], "path": [2, 3, 4], "cycle2": [4, 5, 6]}
    else:
        raise ValueError(f"path_len must be 1 or 2, got {path_len}")
    prov = _provenance("triangles-path", {"path_len": path_len}, f"triangles-path-{path_len}")
    return CertifiedInstance(g, val, prov, layout)


def gen_shared_edge_triangles() -> CertifiedInstance:
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    val = _symmetric(g, {0: 1, 2: Fraction(1, 2), 4: 1}, binary=False)
    layout = {"shared": [1, 2], "cycle1": [1, 2, 0], "cycle2": [1, 2, 3]}
    return CertifiedInstance(g, val, _provenance("shared-edge-triangles", {}, "shared-edge-triangles"), layout)


_BASES = {
    "glued-triangles-vertex": gen_glued_triangles_vertex,
    "triangles-path-1": lambda: gen_triangles_path(1),
    "triangles-path-2": lambda: gen_triangles_path(2),
    "shared-edge-triangles": gen_shared_edge_triangles,
}


def _splice(layout: dict, u: int, v: int, inner: list[int]) -> dict:
    """Insert ``inner`` (ordered from ``u`` to ``v``) between adjacent ``u, v`` in every layout sequence."""
    out = {}
    for key, seq in layout.items():
        if not isinstance(seq, list) or len(seq) < 2:
            out[key] = seq
            continue
        cyclic = key.startswith("cycle")
        new = list(seq)
        pairs = range(len(seq)) if cyclic else range(len(seq) - 1)
        for i in pairs:
            a, b = seq[i], seq[(i + 1) % len(seq)]
            if (a, b) == (u, v):
                new = seq[: i + 1] + inner + seq[i + 1 :]
                break
            if (a, b) == (v, u):
                new = seq[: i + 1] + inner[::-1] + seq[i + 1 :]
                break
        out[key] = new
    return out


def _double_subdivide(g: Graph, e: int) -> tuple[Graph, int, int, int, int]:
    """``u-x1-x2-v`` replaces ``e = uv``; returns graph, x1, x2 and the two new edge indices.

    Edge ``e`` becomes ``u-x1``, the index ``m`` is ``x1-x2`` and ``m+1`` is ``x2-v``.
    """
    first = subdivide_edge(g, e)
    second = subdivide_edge(first.graph, first.new_edges[1])
    return second.graph, first.vertex, second.vertex, second.new_edges[0], second.new_edges[1]


def subdivide_twice_preserving(g: Graph, e: int) -> Graph:
    """Subdivide edge ``e`` twice; the input must violate the matching condition, and so does the output."""
    if matching_condition(g).satisfied:
        raise GraphError("input satisfies the matching condition")
    return _double_subdivide(g, e)[0]


def _subdivide_instance(inst: CertifiedInstance, e: int) -> CertifiedInstance:
    """Double subdivision carrying a binary matching valuation along.

    Valued edges form a matching. A matched edge becomes ``1, 0, 1`` along the
    new path, an unmatched one ``0, 1, 0``; the result is again a matching.
    """
    g = inst.graph
    u, v = g.edges[e]
    matched = inst.valuation.weight(u, e) == 1
    g2, x1, x2, mid, last = _double_subdivide(g, e)
    values = {f: 1 for f in range(g.m) if f != e and inst.valuation.weight(g.edges[f][0], f) == 1}
    if matched:
        values[e] = 1
        values[last] = 1
    else:
        values[mid] = 1
    val = _symmetric(g2, values, binary=True)
    prov = json.loads(json.dumps(inst.provenance))
    prov["chain"].append({"op": "subdivide_twice", "edge": e})
    return CertifiedInstance(g2, val, prov, _splice(inst.layout, u, v, [x1, x2]))


def expand_zero_edge(inst: CertifiedInstance, e: int, path_len: int) -> CertifiedInstance:
    """Replace ``e = uv``, worthless to both ends, by a path of odd length ``path_len``.

    Path edges alternate 0 and 1 for both endpoints, starting and ending with 0.
    Edge ``e`` becomes ``u-x1``; the other path edges are appended in order.
    """
    g = inst.graph
    if not 0 <= e < g.m:
        raise GraphError(f"edge index {e} outside [0, {g.m})")
    u, v = g.edges[e]
    if not (inst.valuation.is_zero_value_item(u, e) and inst.valuation.is_zero_value_item(v, e)):
        raise ValueError(f"edge {e} is not zero-valued for both endpoints")
    if path_len < 3 or path_len % 2 == 0:
        raise ValueError(f"path_len must be odd and at least 3, got {path_len}")
    inner = list(range(g.n, g.n + path_len - 1))
    chain = [u] + inner + [v]
    edges = list(g.edges)
    edges[e] = (u, inner[0])
    new_ids = [e]
    for a, b in zip(chain[1:], chain[2:]):
        new_ids.append(len(edges))
        edges.append((a, b))
    g2 = Graph(g.n + path_len - 1, edges)
    weights = {k: w for k, w in inst.valuation.weights.items() if k[1] != e}
    for pos, f in enumerate(new_ids):
        a, b = g2.edges[f]
        w = pos % 2  # 0, 1, 0, ..., 0
        weights[(a, f)] = w
        weights[(b, f)] = w
    val = type(inst.valuation)(g2, weights)
    prov = json.loads(json.dumps(inst.provenance))
    prov["chain"].append({"op": "expand_zero_edge", "edge": e, "path_len": path_len})
    return CertifiedInstance(g2, val, prov, _splice(inst.layout, u, v, inner))


def _apply_chain(inst: CertifiedInstance, chain: list[dict]) -> CertifiedInstance:
    for step in chain:
        if step["op"] == "expand_zero_edge":
            inst = expand_zero_edge(inst, step["edge"], step["path_len"])
        elif step["op"] == "subdivide_twice":
            inst = _subdivide_instance(inst, step["edge"])
        else:
            raise ValueError(f"unknown transformation {step['op']!r}")
    return inst


def _parse_share(share) -> tuple[str, int]:
    if isinstance(share, tuple):
        kind, length = share
    elif isinstance(share, str):
        kind, _, rest = share.partition(":")
        length = int(rest) if rest else 0
    else:
        raise ValueError(f"bad share value {share!r}")
    kind = kind.lower()
    if kind not in ("edge", "vertex", "path"):
        raise ValueError(f"share must be edge, vertex or path:<len>, got {share!r}")
    if kind == "path" and length < 1:
        raise ValueError("path share needs a length >= 1")
    return kind, length


def gen_odd_cycles_family(share, len1: int, len2: int) -> CertifiedInstance:
    """Two odd cycles of lengths ``len1`` and ``len2`` sharing one edge, one vertex, or joined by a path.

    ``share`` is ``"edge"``, ``"vertex"`` or ``"path:<len>"`` (or a ``(kind, len)`` tuple).
    Odd-length paths come from the bridge gadget by double subdivisions;
    everything else from the glued, path-2 or shared-edge gadget by expanding
    zero-valued edges.
    """
    kind, length = _parse_share(share)
    for c in (len1, len2):
        if c < 3 or c % 2 == 0:
            raise ValueError(f"cycle lengths must be odd and >= 3, got {len1}, {len2}")
    params = {"share": kind if kind != "path" else f"path:{length}", "lens": [len1, len2]}
    chain: list[dict] = []
    if kind == "edge":
        base = "shared-edge-triangles"
        # edge 1 = v1v3 lies on the first triangle, edge 3 = v2v4 on the second
        if len1 > 3:
            chain.append({"op": "expand_zero_edge", "edge": 1, "path_len": len1 - 2})
        if len2 > 3:
            chain.append({"op": "expand_zero_edge", "edge": 3, "path_len": len2 - 2})
    elif kind == "vertex":
        base = "glued-triangles-vertex"
        # edge 3 = v1v2 on the first triangle, edge 4 = v3v4 on the second
        if len1 > 3:
            chain.append({"op": "expand_zero_edge", "edge": 3, "path_len": len1 - 2})
        if len2 > 3:
            chain.append({"op": "expand_zero_edge", "edge": 4, "path_len": len2 - 2})
    elif length % 2 == 0:
        base = "triangles-path-2"
        # edge 4 = v1v2, edge 6 = v5v6, edge 5 = v3v4 on the path
        if len1 > 3:
            chain.append({"op": "expand_zero_edge", "edge": 4, "path_len": len1 - 2})
        if len2 > 3:
            chain.append({"op": "expand_zero_edge", "edge": 6, "path_len": len2 - 2})
        if length > 2:
            chain.append({"op": "expand_zero_edge", "edge": 5, "path_len": length - 1})
    else:
        base = "triangles-path-1"
        # edge 3 = v1v3, edge 5 = v4v5, edge 1 = the bridge v3v4; the last piece
        # of a subdivided edge is the highest index, so keep splitting that one
        inst = _BASES[base]()
        m = inst.graph.m
        for which, count in ((3, (len1 - 3) // 2), (5, (len2 - 3) // 2)):
            for _ in range(count):
                chain.append({"op": "subdivide_twice", "edge": which})
                m += 2
        bridge = 1
        for _ in range((length - 1) // 2):
            chain.append({"op": "subdivide_twice", "edge": bridge})
            m += 2
            bridge = m - 1
    inst = _apply_chain(_BASES[base](), chain)
    inst.provenance = {"family": "odd-cycles", "params": params, "base": base, "chain": inst.provenance["chain"]}
    return inst


def _two_disjoint_paths(g: Graph, s: int, t: int) -> Optional[tuple[list[int], list[int]]]:
    """Two internally vertex-disjoint ``s``-``t`` paths via unit-capacity max flow on split vertices."""
    # node 2x is x_in, 2x+1 is x_out
    cap: dict[tuple[int, int], int] = {}
    out_adj: dict[int, list[int]] = {}

    def arc(a: int, b: int, c: int) -> None:
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)
        out_adj.setdefault(a, []).append(b)
        out_adj.setdefault(b, []).append(a)

    for x in range(g.n):
        arc(2 * x, 2 * x + 1, 2 if x in (s, t) else 1)
    for a, b in g.edges:
        arc(2 * a + 1, 2 * b, 1)
        arc(2 * b + 1, 2 * a, 1)
    for k in out_adj:
        out_adj[k] = sorted(set(out_adj[k]))
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < 2:
        prev = {source: None}
        queue = deque([source])
        while queue and sink not in prev:
            a = queue.popleft()
            for b in out_adj.get(a, []):
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            return None
        b = sink
        while prev[b] is not None:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    # flow on an original arc x_out -> y_in is 1 exactly when its reverse gained capacity
    carries = set()
    for a, b in g.edges:
        for x, y in ((a, b), (b, a)):
            if cap[(2 * x + 1, 2 * y)] == 0:
                carries.add((x, y))
    used = {}
    for x, y in carries:
        if (y, x) not in carries:  # opposite unit flows cancel
            used.setdefault(x, []).append(y)
    paths = []
    for y in sorted(used.get(s, [])):
        path = [s, y]
        while path[-1] != t:
            path.append(sorted(used[path[-1]])[0])
        paths.append(path)
    return paths[0], paths[1]


def bipartite_plus_edge_counterexample(g: Graph, u: int, v: int) -> CertifiedInstance:
    """Join two same-class vertices of a 2-connected bipartite graph and map the shared-edge valuation.

    A cycle through ``u`` and ``v`` is split by the new edge ``uv`` into two odd
    cycles sharing ``uv``; edges off those cycles are worthless to both ends.
    """
    if g.n < 4:
        raise GraphError("need at least 4 vertices")
    if not is_connected(g) or cut_vertices(g):
        raise GraphError("graph must stay connected after deleting any vertex")
    coloring = two_coloring(g)
    if coloring is None:
        raise GraphError("graph is not bipartite")
    a_side, b_side = coloring
    if u == v or not ({u, v} <= a_side or {u, v} <= b_side):
        raise GraphError(f"vertices {u} and {v} are not distinct members of one color class")
    paths = _two_disjoint_paths(g, u, v)
    assert paths is not None, "2-connected graph without two disjoint paths"
    p1, p2 = paths
    host = Graph(g.n, list(g.edges) + [(u, v)])
    cycle1 = [u, v] + p1[-2:0:-1]
    cycle2 = [u, v] + p2[-2:0:-1]
    fam = gen_odd_cycles_family("edge", len(cycle1), len(cycle2))
    val = map_family_valuation(host, fam, {"shared": [u, v], "cycle1": cycle1, "cycle2": cycle2})
    prov = {
        "family": "bipartite-plus-edge",
        "params": {"graph": g.to_json(), "u": u, "v": v},
        "base": "odd-cycles",
        "chain": [],
        "source": fam.provenance,
    }
    return CertifiedInstance(host, val, prov, {"shared": [u, v], "cycle1": cycle1, "cycle2": cycle2})


def map_family_valuation(host: Graph, fam: CertifiedInstance, match: dict) -> AdditiveValuation:
    """Carry ``fam``'s valuation onto ``host`` along matching layout sequences.

    ``match`` has the same keys and sequence lengths as ``fam.layout``. Host
    edges outside the image get weight 0 for both endpoints.
    """
    phi: dict[int, int] = {}
    for key, seq in fam.layout.items():
        target = match[key]
        if isinstance(seq, int):
            seq, target = [seq], [target]
        if len(seq) != len(target):
            raise ValueError(f"layout {key!r} has length {len(seq)}, match has {len(target)}")
        for a, b in zip(seq, target):
            if phi.setdefault(a, b) != b:
                raise ValueError(f"inconsistent image for family vertex {a}")
    if len(set(phi.values())) != len(phi) or len(phi) != fam.graph.n:
        raise ValueError("layout match is not a bijection onto the family's vertices")
    weights = {}
    for e, (a, b) in enumerate(fam.graph.edges):
        f = host.edge_index(phi[a], phi[b])
        weights[(phi[a], f)] = fam.valuation.weight(a, e)
        weights[(phi[b], f)] = fam.valuation.weight(b, e)
    for f, (a, b) in enumerate(host.edges):
        weights.setdefault((a, f), 0)
        weights.setdefault((b, f), 0)
    return type(fam.valuation)(host, weights)


def replay(provenance: dict) -> CertifiedInstance:
    """Rebuild an instance from its provenance record."""
    family = provenance["family"]
    if family == "bipartite-plus-edge":
        p = provenance["params"]
        return bipartite_plus_edge_counterexample(Graph.from_json(p["graph"]), p["u"], p["v"])
    inst = _apply_chain(_BASES[provenance["base"]](), provenance["chain"])
    if family == "odd-cycles":
        inst.provenance = {
            "family": family,
            "params": provenance["params"],
            "base": provenance["base"],
            "chain": inst.provenance["chain"],
        }
    return inst


def generate(family: str, **params) -> CertifiedInstance:
    """Dispatch by family name, as used by the command line."""
    if family == "glued-triangles-vertex":
        return gen_glued_triangles_vertex()
    if family == "triangles-path":
        return gen_triangles_path(int(params.get("path_len", 1)))
    if family == "shared-edge-triangles":
        return gen_shared_edge_triangles()
    if family == "odd-cycles":
        len1, len2 = params["lens"]
        return gen_odd_cycles_family(params["share"], len1, len2)
    if family == "bipartite-plus-edge":
        return bipartite_plus_edge_counterexample(params["graph"], params["u"], params["v"])
    raise ValueError(f"unknown family {family!r}")
