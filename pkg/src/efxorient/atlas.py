"""Small connected graphs up to isomorphism.

Canonical form: color refinement fixes an isomorphism-invariant ordered
partition of the vertices, then every relabeling that respects the partition is
tried and the lexicographically smallest sorted edge list wins.
"""
from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .graph import Graph


def _refine(g: Graph) -> list[list[int]]:
    color = [len(g._adj[v]) for v in range(g.n)]
    while True:
        sig = [(color[v], tuple(sorted(color[u] for u in g._adj[v]))) for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if len(set(new)) == len(set(color)):
            color = new
            break
        color = new
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(color[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    cells = _refine(g)
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in cells)):
        label = {}
        for v in itertools.chain.from_iterable(perms):
            label[v] = len(label)
        key = tuple(sorted((min(label[a], label[b]), max(label[a], label[b])) for a, b in g.edges))
        if best is None or key < best:
            best = key
    return g.n, best


def canonical_graph(g: Graph) -> Graph:
    n, edges = canonical_form(g)
    return Graph(n, edges)


def connected_graphs(max_n: int, max_m: Optional[int] = None) -> list[Graph]:
    """Every connected graph with ``1 <= n <= max_n`` and ``m <= max_m``, one per isomorphism class.

    Graphs are grown one edge at a time, either between two existing vertices
    or to a new pendant vertex; every connected graph with an edge has a cycle
    edge or a leaf whose removal keeps it connected, so this reaches all of
    them. Output is sorted by ``(n, m, canonical edges)``.
    """
    if max_n < 1:
        return []
    if max_m is None:
        max_m = max_n * (max_n - 1) // 2
    k1 = Graph(1)
    level = {canonical_form(k1): k1}
    out = dict(level)
    for _ in range(max_m):
        nxt = {}
        for g in level.values():
            children = []
            for u, v in itertools.combinations(range(g.n), 2):
                if not g.has_edge(u, v):
                    children.append(Graph(g.n, list(g.edges) + [(u, v)]))
            if g.n < max_n:
                for u in range(g.n):
                    children.append(Graph(g.n + 1, list(g.edges) + [(u, g.n)]))
            for c in children:
                key = canonical_form(c)
                if key not in nxt:
                    nxt[key] = Graph(*key)
        if not nxt:
            break
        level = nxt
        out.update(level)
    return [out[k] for k in sorted(out, key=lambda k: (k[0], len(k[1]), k[1]))]


def iter_pendant_vertices(g: Graph) -> Iterator[int]:
    return (v for v in range(g.n) if g.degree(v) == 1)
