"""Simple undirected graphs with stable edge indices.

Vertices are ``0..n-1``; edge ``i`` is the ``i``-th pair given at construction.
Edge subsets are ``frozenset`` objects of edge indices; the enumerators work on
integer bitmasks internally and convert on the way out.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

DEFAULT_CHROMATIC_BOUND = 16

EdgeSubset = frozenset


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range queries."""


class SizeBoundError(ValueError):
    """Raised when an exact procedure is asked to run past its configured size guard."""

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.stage = stage


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    _inc: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _adj: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        normalized = []
        index = {}
        for i, pair in enumerate(edges):
            u, v = (int(x) for x in pair)
            if u == v:
                raise GraphError(f"edge {i} is a self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {i} = ({u}, {v}) has an endpoint outside [0, {n})")
            key = (min(u, v), max(u, v))
            if key in index:
                raise GraphError(f"edge {i} = ({u}, {v}) duplicates edge {index[key]}")
            index[key] = i
            normalized.append((u, v))
        inc = [[] for _ in range(n)]
        adj = [set() for _ in range(n)]
        for i, (u, v) in enumerate(normalized):
            inc[u].append(i)
            inc[v].append(i)
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "_inc", tuple(tuple(x) for x in inc))
        object.__setattr__(self, "_adj", tuple(frozenset(x) for x in adj))
        object.__setattr__(self, "_index", index)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} outside [0, {self.n})")

    def _check_edge(self, e: int) -> None:
        if not 0 <= e < self.m:
            raise GraphError(f"edge index {e} outside [0, {self.m})")

    def incident(self, v: int) -> tuple[int, ...]:
        """Indices of the edges incident to ``v``, ascending."""
        self._check_vertex(v)
        return self._inc[v]

    def incident_mask(self, v: int) -> int:
        mask = 0
        for e in self.incident(v):
            mask |= 1 << e
        return mask

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._inc[v])

    def other(self, e: int, v: int) -> int:
        """The endpoint of edge ``e`` that is not ``v``."""
        u, w = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._index[(min(u, v), max(u, v))]
        except KeyError:
            raise GraphError(f"no edge between {u} and {v}") from None

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            return cls(int(data["n"]), data["edges"])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"graph JSON needs 'n' and 'edges': {exc}") from None

    # small constructors used throughout the tests and generators

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, itertools.combinations(range(n), 2))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def as_edge_subset(g: Graph, edges: Iterable[int]) -> frozenset:
    h = frozenset(int(e) for e in edges)
    for e in h:
        g._check_edge(e)
    return h


def mask_of(edges: Iterable[int]) -> int:
    mask = 0
    for e in edges:
        mask |= 1 << e
    return mask


def edges_of(mask: int) -> frozenset:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return frozenset(out)


def neighbors(g: Graph, v: int) -> set[int]:
    g._check_vertex(v)
    return set(g._adj[v])


def neighbors_in(g: Graph, h: Iterable[int], v: int) -> set[int]:
    """Neighbors of ``v`` through edges of the subset ``h`` only."""
    g._check_vertex(v)
    out = set()
    for e in h:
        a, b = g.edges[e]
        if a == v:
            out.add(b)
        elif b == v:
            out.add(a)
    return out


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    for v in s:
        g._check_vertex(v)
        if g._adj[v] & s:
            return False
    return True


def min_degree(g: Graph) -> int:
    if g.n == 0:
        return 0
    return min(len(x) for x in g._inc)


def _acyclic_mask(g: Graph, mask: int) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    e = 0
    while mask:
        if mask & 1:
            u, v = g.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        mask >>= 1
        e += 1
    return True


def is_forest(g: Graph, h: Iterable[int]) -> bool:
    return _acyclic_mask(g, mask_of(h))


def _forest_masks(g: Graph) -> Iterator[int]:
    # Depth-first extension in edge order: a subset is generated only from its
    # acyclic prefix, so cyclic branches are cut early. Output is re-sorted below.
    m = g.m
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(e: int, mask: int):
        if e == m:
            yield mask
            return
        yield from rec(e + 1, mask)
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            yield from rec(e + 1, mask | (1 << e))
            parent[ru] = ru

    yield from rec(0, 0)


def forest_masks(g: Graph, order: str = "bitmask") -> list[int]:
    """All acyclic edge subsets as bitmasks.

    ``order="bitmask"`` sorts by integer value; ``order="popcount"`` sorts by
    size first and integer value second.
    """
    masks = list(_forest_masks(g))
    if order == "bitmask":
        masks.sort()
    elif order == "popcount":
        masks.sort(key=lambda x: (x.bit_count(), x))
    else:
        raise ValueError(f"unknown order {order!r}")
    return masks


def enumerate_forests(g: Graph, order: str = "bitmask") -> Iterator[frozenset]:
    for mask in forest_masks(g, order):
        yield edges_of(mask)


def matching_masks(g: Graph) -> list[int]:
    out = []
    m = g.m

    def rec(e: int, mask: int, used: int):
        if e == m:
            out.append(mask)
            return
        rec(e + 1, mask, used)
        u, v = g.edges[e]
        if not (used >> u) & 1 and not (used >> v) & 1:
            rec(e + 1, mask | (1 << e), used | (1 << u) | (1 << v))

    rec(0, 0, 0)
    out.sort()
    return out


def enumerate_matchings(g: Graph) -> Iterator[frozenset]:
    for mask in matching_masks(g):
        yield edges_of(mask)


def forest_components(g: Graph, h: Iterable[int]) -> list[tuple[frozenset, frozenset]]:
    """Trees of the forest ``h`` as ``(edges, vertices)`` pairs.

    Only components with at least one edge are returned, ordered by their
    smallest vertex.
    """
    h = sorted(set(h))
    if not _acyclic_mask(g, mask_of(h)):
        raise GraphError("edge subset contains a cycle")
    parent = {}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in h:
        for x in g.edges[e]:
            parent.setdefault(x, x)
    for e in h:
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, tuple[list, set]] = {}
    for e in h:
        r = find(g.edges[e][0])
        es, vs = groups.setdefault(r, ([], set()))
        es.append(e)
        vs.update(g.edges[e])
    return [(frozenset(es), frozenset(vs)) for _, (es, vs) in sorted(groups.items(), key=lambda kv: min(kv[1][1]))]


def two_coloring(g: Graph) -> Optional[tuple[frozenset, frozenset]]:
    """Proper 2-coloring ``(A, B)`` or ``None``.

    Each component is colored by BFS from its smallest vertex, which goes to ``A``.
    """
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        for x in queue:
            for y in sorted(g._adj[x]):
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    a = frozenset(v for v in range(g.n) if color[v] == 0)
    b = frozenset(v for v in range(g.n) if color[v] == 1)
    return a, b


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def _greedy_clique(adj: list[int], n: int) -> int:
    best = 0
    for s in range(n):
        clique = 1 << s
        cand = adj[s]
        size = 1
        while cand:
            v = (cand & -cand).bit_length() - 1
            clique |= 1 << v
            cand &= adj[v]
            size += 1
        best = max(best, size)
    return best


def _colorable(adj: list[int], order: list[int], k: int) -> bool:
    n = len(order)
    colors = {}

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        forbidden = {colors[u] for u in colors if (adj[v] >> u) & 1}
        # Symmetry breaking: a fresh color is only tried once.
        for c in range(min(used + 1, k)):
            if c in forbidden:
                continue
            colors[v] = c
            if rec(i + 1, max(used, c + 1)):
                return True
            del colors[v]
        return False

    return rec(0, 0)


def chromatic_number(g: Graph, max_vertices: int = DEFAULT_CHROMATIC_BOUND) -> int:
    """Exact chromatic number by backtracking between clique and greedy bounds."""
    if g.n > max_vertices:
        raise SizeBoundError(f"chromatic_number limited to n <= {max_vertices}, got n = {g.n}")
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    # largest-degree-first ordering for both the greedy bound and the search
    order = sorted(range(g.n), key=lambda v: (-len(g._adj[v]), v))
    greedy = {}
    for v in order:
        taken = {greedy[u] for u in g._adj[v] if u in greedy}
        greedy[v] = next(c for c in range(g.n) if c not in taken)
    upper = max(greedy.values()) + 1
    lower = _greedy_clique(adj, g.n)
    for k in range(lower, upper):
        if _colorable(adj, order, k):
            return k
    return upper


def cut_vertices(g: Graph) -> set[int]:
    """Articulation points by iterative DFS low-link."""
    disc = [-1] * g.n
    low = [0] * g.n
    out = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        stack = [(root, -1, iter(sorted(g._adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        children += 1
                    stack.append((w, v, iter(sorted(g._adj[w]))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    out.add(p)
        if children > 1:
            out.add(root)
    return out


@dataclass(frozen=True)
class Subdivision:
    graph: Graph
    vertex: int
    new_edges: tuple[int, int]
    remap: dict  # old edge index -> new edge index, for every surviving edge


def subdivide_edge(g: Graph, e: int) -> Subdivision:
    """Replace edge ``e = uv`` by ``u-w`` (kept at index ``e``) and ``w-v`` (appended).

    ``u`` is the first endpoint as stored. All other edge indices are unchanged.
    """
    g._check_edge(e)
    u, v = g.edges[e]
    w = g.n
    edges = list(g.edges)
    edges[e] = (u, w)
    edges.append((w, v))
    remap = {i: i for i in range(g.m) if i != e}
    return Subdivision(Graph(g.n + 1, edges), w, (e, g.m), remap)


def remove_vertex(g: Graph, v: int) -> tuple[Graph, list[int], list[int]]:
    """Delete ``v`` and its edges; returns ``(graph, vertex_map, edge_map)``.

    ``vertex_map[i]`` / ``edge_map[i]`` give the original label of new vertex/edge ``i``.
    """
    g._check_vertex(v)
    vertex_map = [x for x in range(g.n) if x != v]
    pos = {x: i for i, x in enumerate(vertex_map)}
    edge_map = [i for i, (a, b) in enumerate(g.edges) if v not in (a, b)]
    edges = [(pos[g.edges[i][0]], pos[g.edges[i][1]]) for i in edge_map]
    return Graph(g.n - 1, edges), vertex_map, edge_map


def subgraph(g: Graph, edge_ids: Iterable[int]) -> tuple[Graph, list[int], list[int]]:
    """Edge-induced subgraph, vertices relabeled in increasing original order."""
    edge_ids = sorted(set(edge_ids))
    verts = sorted({x for e in edge_ids for x in g.edges[e]})
    pos = {x: i for i, x in enumerate(verts)}
    return Graph(len(verts), [(pos[g.edges[e][0]], pos[g.edges[e][1]]) for e in edge_ids]), verts, edge_ids


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        for x in comp:
            for y in g._adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1
