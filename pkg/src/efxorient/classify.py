"""Strong orientability verdicts assembled from the known sufficient and forbidden structures.

Pipeline on a graph ``g``:

1. strip degree-1 vertices (they never change the answer);
2. bipartite core: yes;
3. a vertex whose every incident edge is a bipartizing edge: yes;
4. the binary characterization fails: no, with the forest valuation;
5. two odd cycles sharing one edge, sharing one vertex, or joined by a path: no,
   with the family valuation carried onto the match;
6. otherwise unknown.

A "no" is confirmed by exhaustive search on ``g`` when ``g`` has at most
``confirm_edges`` edges, else on the matched structure alone when that is small
enough, else left flagged as unverified.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .characterize import (
    DEFAULT_FOREST_EDGE_BOUND,
    check_01_characterization,
    find_near_bipartite_vertex,
    peel_degree_one,
)
from .counterexamples import DEFAULT_CONFIRM_EDGE_BOUND, gen_odd_cycles_family, map_family_valuation
from .graph import Graph, is_bipartite, subgraph
from .search import check_counterexample
from .valuations import AdditiveValuation, ZeroOneValuation

DEFAULT_CYCLE_SCAN_BOUND = 14
DEFAULT_MAX_CYCLES = 20000


@dataclass
class StrongClassification:
    verdict: str  # "yes" | "no" | "unknown"
    reason: str
    details: dict = field(default_factory=dict)
    valuation: Optional[AdditiveValuation] = None
    confirmed: Optional[bool] = None  # None: not checked by search
    peel: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "reason": self.reason,
            "details": self.details,
            "peel": [list(p) for p in self.peel],
            "bounds": self.bounds,
        }
        if self.valuation is not None:
            out["valuation"] = self.valuation.to_json()
            out["confirmed"] = self.confirmed
        return out


def _odd_cycles(g: Graph, max_len: int, max_count: int) -> list[tuple[int, ...]]:
    """Simple odd cycles up to ``max_len`` edges; each once, starting at its smallest vertex."""
    out = []
    adj = [sorted(g._adj[v]) for v in range(g.n)]
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def rec(x: int) -> None:
            for y in adj[x]:
                if y < s:
                    continue
                if y == s:
                    if len(path) >= 3 and len(path) % 2 == 1 and path[1] < path[-1]:
                        out.append(tuple(path))
                        if len(out) > max_count:
                            raise OverflowError
                    continue
                if y in on_path or len(path) >= max_len:
                    continue
                path.append(y)
                on_path.add(y)
                rec(y)
                on_path.discard(y)
                path.pop()

        rec(s)
    out.sort(key=lambda c: (len(c), c))
    return out


def _cycle_edges(c: tuple[int, ...]) -> set[frozenset]:
    return {frozenset((c[i], c[(i + 1) % len(c)])) for i in range(len(c))}


def _rotate(c: tuple[int, ...], first: int, second: int) -> list[int]:
    """Cycle as a list starting ``first, second``; they must be adjacent on it."""
    k = len(c)
    i = c.index(first)
    if c[(i + 1) % k] == second:
        return [c[(i + j) % k] for j in range(k)]
    if c[(i - 1) % k] == second:
        return [c[(i - j) % k] for j in range(k)]
    raise ValueError("vertices not adjacent on the cycle")


def _rotate_from(c: tuple[int, ...], first: int) -> list[int]:
    i = c.index(first)
    return [c[(i + j) % len(c)] for j in range(len(c))]


def _connecting_path(g: Graph, c1: set, c2: set, max_len: int) -> Optional[list[int]]:
    """Shortest path from ``c1`` to ``c2`` whose inner vertices avoid both cycles."""
    prev = {s: None for s in sorted(c1)}
    queue = deque((s, 0) for s in sorted(c1))
    while queue:
        x, d = queue.popleft()
        if d >= max_len:
            continue
        for y in sorted(g._adj[x]):
            if y in prev:
                continue
            if y in c2:
                path = [y, x]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            if y in c1:
                continue
            prev[y] = x
            queue.append((y, d + 1))
    return None


def forbidden_structure_scan(
    g: Graph, max_total: int = DEFAULT_CYCLE_SCAN_BOUND, max_cycles: int = DEFAULT_MAX_CYCLES
) -> Optional[dict]:
    """Find two odd cycles sharing exactly one edge or one vertex, or disjoint and joined by a path.

    Candidates with the fewest total edges come first. Returns the share kind,
    cycle lengths and layout sequences in ``g``'s labels, or ``None``.
    """
    try:
        cycles = _odd_cycles(g, max_total - 2, max_cycles)
    except OverflowError:
        return None
    candidates = []
    for i, c1 in enumerate(cycles):
        s1, e1 = set(c1), _cycle_edges(c1)
        for c2 in cycles[i + 1 :]:
            if len(c1) + len(c2) - 1 > max_total:
                continue
            s2, e2 = set(c2), _cycle_edges(c2)
            common = s1 & s2
            if len(common) == 2 and len(e1 & e2) == 1:
                x, y = sorted(common)
                if frozenset((x, y)) in e1 & e2:
                    total = len(c1) + len(c2) - 1
                    layout = {"shared": [x, y], "cycle1": _rotate(c1, x, y), "cycle2": _rotate(c2, x, y)}
                    candidates.append((total, 0, c1, c2, ("edge", 0), layout))
            elif len(common) == 1:
                (x,) = common
                total = len(c1) + len(c2)
                if total <= max_total:
                    layout = {"center": x, "cycle1": _rotate_from(c1, x), "cycle2": _rotate_from(c2, x)}
                    candidates.append((total, 1, c1, c2, ("vertex", 0), layout))
            elif not common:
                budget = max_total - len(c1) - len(c2)
                if budget < 1:
                    continue
                path = _connecting_path(g, s1, s2, budget)
                if path is None:
                    continue
                total = len(c1) + len(c2) + len(path) - 1
                layout = {
                    "cycle1": _rotate_from(c1, path[0]),
                    "path": path,
                    "cycle2": _rotate_from(c2, path[-1]),
                }
                candidates.append((total, 2, c1, c2, ("path", len(path) - 1), layout))
    if not candidates:
        return None
    total, _, c1, c2, (kind, length), layout = min(candidates, key=lambda c: c[:4])
    return {"share": kind if kind != "path" else f"path:{length}", "lens": [len(c1), len(c2)], "total_edges": total, "layout": layout}


def _lift(g: Graph, sub: Graph, edge_map: list[int], sub_val, binary: bool) -> AdditiveValuation:
    weights = {}
    for f, (a, b) in enumerate(g.edges):
        weights[(a, f)] = 0
        weights[(b, f)] = 0
    for i, e in enumerate(edge_map):
        a, b = sub.edges[i]
        ga, gb = g.edges[e]
        # sub vertices are relabeled monotonically, so endpoint order is preserved
        weights[(ga, e)] = sub_val.weight(a, i)
        weights[(gb, e)] = sub_val.weight(b, i)
    return (ZeroOneValuation if binary else AdditiveValuation)(g, weights)


def _confirm(g: Graph, val: AdditiveValuation, image_edges: list[int], confirm_edges: int) -> Optional[bool]:
    if g.m <= confirm_edges:
        return check_counterexample(g, val).confirmed
    if len(image_edges) <= confirm_edges:
        sub, verts, eids = subgraph(g, image_edges)
        pos = {x: i for i, x in enumerate(verts)}
        weights = {}
        for i, e in enumerate(eids):
            for x in g.edges[e]:
                weights[(pos[x], i)] = val.weight(x, e)
        return check_counterexample(sub, type(val)(sub, weights)).confirmed
    return None


def classify_strong(
    g: Graph,
    forest_edges: int = DEFAULT_FOREST_EDGE_BOUND,
    scan_edges: int = DEFAULT_CYCLE_SCAN_BOUND,
    confirm_edges: int = DEFAULT_CONFIRM_EDGE_BOUND,
) -> StrongClassification:
    bounds = {"forest_edges": forest_edges, "scan_edges": scan_edges, "confirm_edges": confirm_edges}
    peel = peel_degree_one(g)
    core = peel.core
    chain = [list(p) for p in peel.order]
    if core.m == 0 or is_bipartite(core):
        return StrongClassification("yes", "Bipartite", {}, peel=chain, bounds=bounds)
    v = find_near_bipartite_vertex(core)
    if v is not None:
        return StrongClassification(
            "yes", "NearBipartiteVertex", {"vertex": peel.core_vertices[v]}, peel=chain, bounds=bounds
        )

    c01 = check_01_characterization(core, max_edges=forest_edges)
    if not c01.orientable:
        val = _lift(g, core, peel.core_edges, c01.valuation, binary=True)
        forest = sorted(peel.core_edges[e] for e in c01.forest)
        # the bad zero edge lives among the forest's vertices
        spanned = {x for e in forest for x in g.edges[e]}
        induced = [e for e, (a, b) in enumerate(g.edges) if a in spanned and b in spanned]
        confirmed = _confirm(g, val, induced, confirm_edges)
        return StrongClassification(
            "no", "01-characterization", {"forest": forest}, val, confirmed, chain, bounds
        )

    match = forbidden_structure_scan(core, max_total=scan_edges)
    if match is not None:
        fam = gen_odd_cycles_family(match["share"], *match["lens"])
        to_g = lambda x: peel.core_vertices[x]
        layout = {
            k: (to_g(seq) if isinstance(seq, int) else [to_g(x) for x in seq]) for k, seq in match["layout"].items()
        }
        val = map_family_valuation(g, fam, layout)
        image = sorted(
            {g.edge_index(seq[i], seq[(i + 1) % len(seq)]) for k, seq in layout.items() if k.startswith("cycle") for i in range(len(seq))}
            | {g.edge_index(a, b) for a, b in zip(layout.get("path", []), layout.get("path", [])[1:])}
        )
        confirmed = _confirm(g, val, image, confirm_edges)
        details = {"share": match["share"], "lens": match["lens"], "layout": layout, "family": fam.provenance}
        return StrongClassification("no", "forbidden-structure", details, val, confirmed, chain, bounds)

    return StrongClassification("unknown", "no known structure applies", {}, peel=chain, bounds=bounds)
