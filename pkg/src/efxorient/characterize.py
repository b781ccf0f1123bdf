"""Binary strong orientability and the constructive orienters.

A graph admits an EFX orientation for every 0-1 additive valuation exactly when,
for every forest ``H`` of it with trees ``T_1..T_k``, one can pick a vertex
``x_i`` in each tree so that the union of the ``H``-neighborhoods of the picks is
independent in the whole graph. :func:`check_01_characterization` tests this by
enumeration, :func:`orient_01` turns a passing graph plus a valuation into an
orientation, and the remaining functions cover bipartite-like graphs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import (
    Graph,
    GraphError,
    SizeBoundError,
    edges_of,
    forest_components,
    forest_masks,
    is_bipartite,
    matching_masks,
    mask_of,
    two_coloring,
)
from .valuations import Valuation, ZeroOneValuation
from .verify import Orientation

DEFAULT_FOREST_EDGE_BOUND = 16
DEFAULT_MATCHING_EDGE_BOUND = 30


class CharacterizationFailure(ValueError):
    """The root selection needed by :func:`orient_01` does not exist."""


@dataclass
class Classification01:
    orientable: bool
    forest: Optional[frozenset] = None
    trees: list = field(default_factory=list)  # [(edges, vertices), ...]
    valuation: Optional[ZeroOneValuation] = None
    selections_tried: int = 0  # x-choices rejected for the witness forest
    forests_checked: int = 0

    def to_json(self) -> dict:
        out = {"orientable": self.orientable, "forests_checked": self.forests_checked}
        if not self.orientable:
            out["forest"] = sorted(self.forest)
            out["trees"] = [{"edges": sorted(es), "vertices": sorted(vs)} for es, vs in self.trees]
            out["selections_tried"] = self.selections_tried
            out["valuation"] = self.valuation.to_json()
        return out


def _forest_neighborhoods(g: Graph, h_mask: int) -> dict[int, int]:
    """Vertex -> bitmask of its neighbors through forest edges."""
    nb: dict[int, int] = {}
    for e in edges_of(h_mask):
        a, b = g.edges[e]
        nb[a] = nb.get(a, 0) | (1 << b)
        nb[b] = nb.get(b, 0) | (1 << a)
    return nb


def _adjacency_masks(g: Graph) -> list[int]:
    adj = [0] * g.n
    for a, b in g.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def _closed(adj: Sequence[int], s: int) -> int:
    """Union of neighborhoods of the vertices in ``s``."""
    out = 0
    while s:
        low = s & -s
        out |= adj[low.bit_length() - 1]
        s ^= low
    return out


def _select_roots(
    adj: Sequence[int], trees_vertices: Sequence[Sequence[int]], nb: dict[int, int]
) -> tuple[Optional[list[int]], int]:
    """Backtracking search for the picks; returns ``(picks or None, rejected count)``."""
    k = len(trees_vertices)
    picks = [0] * k
    tried = 0
    # neighborhoods that are not themselves independent can never be used
    options = []
    for verts in trees_vertices:
        opts = []
        for x in verts:
            n_x = nb[x]
            if not _closed(adj, n_x) & n_x:
                opts.append((x, n_x, _closed(adj, n_x)))
        options.append(opts)

    def rec(i: int, union: int, blocked: int) -> bool:
        nonlocal tried
        if i == k:
            return True
        for x, n_x, n_adj in options[i]:
            if n_x & blocked:
                tried += 1
                continue
            picks[i] = x
            if rec(i + 1, union | n_x, blocked | n_adj):
                return True
        return False

    return (list(picks) if rec(0, 0, 0) else None), tried


def find_root_selection(g: Graph, trees: Sequence[tuple[frozenset, frozenset]]) -> Optional[list[int]]:
    """Pick ``x_i`` in each tree with the union of forest-neighborhoods independent.

    Trees are tried in the given order and their vertices in increasing index;
    the first success is returned.
    """
    h_mask = 0
    for es, _ in trees:
        h_mask |= mask_of(es)
    picks, _ = _select_roots(_adjacency_masks(g), [sorted(vs) for _, vs in trees], _forest_neighborhoods(g, h_mask))
    return picks


def check_01_characterization(g: Graph, max_edges: int = DEFAULT_FOREST_EDGE_BOUND) -> Classification01:
    """Decide binary strong orientability; on failure return the first bad forest.

    Forests are visited by increasing size, then increasing bitmask.
    """
    if g.m > max_edges:
        raise SizeBoundError(f"forest enumeration limited to m <= {max_edges}, got m = {g.m}", stage="01-characterization")
    adj = _adjacency_masks(g)
    checked = 0
    for h_mask in forest_masks(g, order="popcount"):
        checked += 1
        if h_mask.bit_count() < 2:
            continue  # a single edge always has a leaf pick
        trees = forest_components(g, edges_of(h_mask))
        if len(trees) == 1:
            continue  # any leaf of a lone tree has a single neighbor
        picks, tried = _select_roots(adj, [sorted(vs) for _, vs in trees], _forest_neighborhoods(g, h_mask))
        if picks is None:
            h = edges_of(h_mask)
            return Classification01(False, h, trees, adversarial_01_valuation(g, h), tried, checked)
    return Classification01(True, forests_checked=checked)


@dataclass
class MatchingCheck:
    satisfied: bool
    matching: Optional[frozenset] = None
    max_independent: Optional[int] = None

    def to_json(self) -> dict:
        out = {"satisfied": self.satisfied}
        if not self.satisfied:
            out["matching"] = sorted(self.matching)
            out["max_independent"] = self.max_independent
        return out


def _max_independent(adj: Sequence[int], verts: int) -> int:
    if not verts:
        return 0
    low = verts & -verts
    v = low.bit_length() - 1
    rest = verts ^ low
    without = _max_independent(adj, rest)
    if without >= _popcount(rest & ~adj[v]) + 1:
        return without
    return max(without, 1 + _max_independent(adj, rest & ~adj[v]))


def _popcount(x: int) -> int:
    return x.bit_count()


def max_independent_set_size(g: Graph, vertices) -> int:
    return _max_independent(_adjacency_masks(g), mask_of(vertices))


def matching_condition(g: Graph, max_edges: int = DEFAULT_MATCHING_EDGE_BOUND) -> MatchingCheck:
    """Every matching ``M`` must leave an independent set of size ``|M|`` among its vertices."""
    if g.m > max_edges:
        raise SizeBoundError(f"matching enumeration limited to m <= {max_edges}, got m = {g.m}")
    adj = _adjacency_masks(g)
    for mm in matching_masks(g):
        if mm.bit_count() < 2:
            continue
        verts = 0
        for e in edges_of(mm):
            a, b = g.edges[e]
            verts |= (1 << a) | (1 << b)
        alpha = _max_independent(adj, verts)
        if alpha < mm.bit_count():
            return MatchingCheck(False, edges_of(mm), alpha)
    return MatchingCheck(True)


def adversarial_01_valuation(g: Graph, h) -> ZeroOneValuation:
    """1 for both endpoints on the forest edges, 0 everywhere else."""
    h = frozenset(h)
    forest_components(g, h)  # raises on a cycle
    return ZeroOneValuation.from_edge_values(g, {e: (1, 1) for e in h})


def _bfs_parent_edges(g: Graph, root: int, edge_mask: int) -> dict[int, int]:
    """Vertex -> edge to its BFS parent, over the edges of ``edge_mask``."""
    parent = {root: -1}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in g._inc[x]:
            if (edge_mask >> e) & 1:
                y = g.other(e, x)
                if y not in parent:
                    parent[y] = e
                    queue.append(y)
    del parent[root]
    return parent


def _components_by_edges(g: Graph, edge_mask: int) -> list[tuple[list[int], list[int]]]:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    es = sorted(edges_of(edge_mask))
    for e in es:
        a, b = g.edges[e]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, tuple[list, set]] = {}
    for e in es:
        r = find(g.edges[e][0])
        ge, gv = groups.setdefault(r, ([], set()))
        ge.append(e)
        gv.update(g.edges[e])
    return [(ge, sorted(gv)) for _, (ge, gv) in sorted(groups.items())]


def orient_01(g: Graph, val: ZeroOneValuation) -> Orientation:
    """EFX orientation for a binary valuation on a graph passing the characterization.

    Steps: asymmetric edges go to the endpoint that values them ("special"
    vertices); components of the mutually valued subgraph containing a special
    vertex are spanned from it; cyclic components drop one cycle edge ``uv`` and
    are spanned from ``v``, which also takes ``uv``; the remaining tree
    components are rooted at a valid selection; everything left is valued by
    nobody and goes to an endpoint that nobody envies.
    """
    heads = [-1] * g.m
    special = set()
    both = 0
    for e, (a, b) in enumerate(g.edges):
        wa, wb = val.weight(a, e), val.weight(b, e)
        if wa != wb:
            heads[e] = a if wa > wb else b
            special.add(heads[e])
        elif wa > 0:
            both |= 1 << e

    trees = []
    for ces, cvs in _components_by_edges(g, both):
        cmask = mask_of(ces)
        roots = sorted(special.intersection(cvs))
        if roots:
            span = _bfs_parent_edges(g, roots[0], cmask)
            for x, e in span.items():
                heads[e] = x
        elif len(ces) >= len(cvs):
            # first edge whose removal keeps the component connected lies on a cycle
            for e in ces:
                rest = cmask & ~(1 << e)
                u, v = g.edges[e]
                span = _bfs_parent_edges(g, v, rest)
                if len(span) == len(cvs) - 1:
                    break
            else:
                raise AssertionError("cyclic component without a cycle edge")
            for x, f in span.items():
                heads[f] = x
            heads[e] = v
        else:
            trees.append((frozenset(ces), frozenset(cvs)))
            continue
        for e in ces:
            if heads[e] == -1:
                heads[e] = min(g.edges[e])

    envied = set()
    if trees:
        picks = find_root_selection(g, trees)
        if picks is None:
            raise CharacterizationFailure("no root selection exists for the unit-valued tree components")
        h_mask = 0
        for es, _ in trees:
            h_mask |= mask_of(es)
        for (es, _), x in zip(trees, picks):
            for y, e in _bfs_parent_edges(g, x, mask_of(es)).items():
                heads[e] = y
            envied.update(g.other(e, x) for e in g._inc[x] if (h_mask >> e) & 1)

    for e, (a, b) in enumerate(g.edges):
        if heads[e] != -1:
            continue
        free = [x for x in sorted((a, b)) if x not in envied]
        if not free:
            raise CharacterizationFailure(f"edge {e} joins two envied vertices")
        heads[e] = free[0]
    return Orientation(heads)


def _favorite(g: Graph, val: Valuation, v: int, allowed: int) -> Optional[int]:
    best, best_w = None, None
    for e in g._inc[v]:
        if (allowed >> e) & 1:
            w = val.single(v, e)
            if best is None or w > best_w:
                best, best_w = e, w
    return best


def orient_bipartite(g: Graph, val: Valuation) -> Orientation:
    """Each vertex of the first color class takes its favorite edge; the rest go to the other class."""
    coloring = two_coloring(g)
    if coloring is None:
        raise GraphError("graph is not bipartite")
    a_side, _ = coloring
    return _orient_two_classes(g, val, a_side, a_side, (1 << g.m) - 1, [-1] * g.m)


def _orient_two_classes(g: Graph, val: Valuation, a_side, pickers, allowed: int, heads: list[int]) -> Orientation:
    """``pickers`` take their favorite allowed edge; every other open edge goes to its endpoint outside ``a_side``."""
    for a in sorted(pickers):
        fav = _favorite(g, val, a, allowed)
        if fav is not None:
            heads[fav] = a
    for e, (x, y) in enumerate(g.edges):
        if heads[e] == -1:
            heads[e] = y if x in a_side else x
    return Orientation(heads)


def _without_edge(g: Graph, e: int) -> Graph:
    return Graph(g.n, [uv for i, uv in enumerate(g.edges) if i != e])


def _is_near_bipartite_vertex(g: Graph, v: int, bipartite: bool) -> bool:
    if bipartite:
        return True
    if g.degree(v) == 0:
        return False
    return all(is_bipartite(_without_edge(g, e)) for e in g.incident(v))


def find_near_bipartite_vertex(g: Graph) -> Optional[int]:
    """Lowest vertex ``v`` such that deleting any one edge at ``v`` leaves a bipartite graph.

    An isolated vertex only qualifies when the graph is already bipartite.
    """
    bip = is_bipartite(g)
    for v in range(g.n):
        if _is_near_bipartite_vertex(g, v, bip):
            return v
    return None


def orient_near_bipartite(g: Graph, v: int, val: Valuation) -> Orientation:
    bip = is_bipartite(g)
    if not _is_near_bipartite_vertex(g, v, bip):
        raise GraphError(f"vertex {v} is not a near-bipartite vertex")
    full = (1 << g.m) - 1
    fav = _favorite(g, val, v, full)
    if fav is None:
        return orient_bipartite(g, val)
    rest = _without_edge(g, fav)
    a_side, b_side = two_coloring(rest)
    if v in b_side:
        # swap the classes on v's component only
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in rest._adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        a_side = (a_side - comp) | (b_side & comp)
    heads = [-1] * g.m
    heads[fav] = v
    # v's remaining edges all lead into the other class
    return _orient_two_classes(g, val, a_side, a_side - {v}, full & ~(1 << fav), heads)


@dataclass
class PeelResult:
    core: Graph
    order: list[tuple[int, int]]  # (peeled vertex, its edge), in g's labels
    core_vertices: list[int]  # core vertex i is g's vertex core_vertices[i]
    core_edges: list[int]  # core edge i is g's edge core_edges[i]
    graph: Graph

    def extend(self, core_orientation: Orientation) -> Orientation:
        """Lift a core orientation to ``g``; each peeled edge points at its peeled vertex."""
        heads = [-1] * self.graph.m
        for i, h in enumerate(core_orientation.heads):
            heads[self.core_edges[i]] = self.core_vertices[h]
        for v, e in self.order:
            heads[e] = v
        return Orientation(heads)


def peel_degree_one(g: Graph) -> PeelResult:
    """Strip degree-1 vertices (lowest index first) until none remain."""
    deg = [g.degree(v) for v in range(g.n)]
    live = [True] * g.m
    order = []
    while True:
        leaves = [v for v in range(g.n) if deg[v] == 1]
        if not leaves:
            break
        v = leaves[0]
        e = next(f for f in g._inc[v] if live[f])
        live[e] = False
        order.append((v, e))
        deg[v] -= 1
        deg[g.other(e, v)] -= 1
    core_edges = [e for e in range(g.m) if live[e]]
    core_vertices = sorted({x for e in core_edges for x in g.edges[e]})
    pos = {x: i for i, x in enumerate(core_vertices)}
    core = Graph(len(core_vertices), [(pos[g.edges[e][0]], pos[g.edges[e][1]]) for e in core_edges])
    return PeelResult(core, order, core_vertices, core_edges, g)
