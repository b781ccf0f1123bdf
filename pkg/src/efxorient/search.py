"""Exhaustive search for EFX orientations.

Edges are decided in index order, the lower endpoint tried first as head. A
partial assignment is cut only by a violation no extension can undo: an agent
``i`` all of whose edges are decided, an edge ``ij`` already given to ``j``,
``|X_j| >= 2`` and ``f_i({ij}) > f_i(X_i)``. Bundles only grow, and ``i``'s own
bundle is final, so such a violation survives in every completion.
"""
from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .graph import Graph, SizeBoundError
from .valuations import Valuation, ZeroOneValuation
from .verify import Orientation, verify_efx

DEFAULT_SEARCH_EDGE_BOUND = 24
DEFAULT_ORACLE_EDGE_BOUND = 8
BUDGET_ENV = "EFXORIENT_BUDGET"


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, stats: dict):
        self.stats = stats
        super().__init__(f"node budget exhausted after {stats['nodes']} nodes")


@dataclass
class SearchOutcome:
    orientation: Optional[Orientation]
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.orientation is not None


def default_budget() -> Optional[int]:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else None


class _Searcher:
    def __init__(self, g: Graph, val: Valuation, limit: Optional[int]):
        self.g = g
        self.val = val
        self.limit = limit
        self.sv = [(val.single(a, e), val.single(b, e)) for e, (a, b) in enumerate(g.edges)]
        self.empty = [val.value_mask(v, 0) for v in range(g.n)]
        self.heads = [-1] * g.m
        self.masks = [0] * g.n
        self.count = [0] * g.n
        self.own = list(self.empty)
        self.remaining = [g.degree(v) for v in range(g.n)]
        self.nodes = 0
        self.prunes = 0

    def _tail_value(self, e: int, i: int):
        a, b = self.g.edges[e]
        return self.sv[e][0] if i == a else self.sv[e][1]

    def _violated(self, e: int) -> bool:
        g = self.g
        h = self.heads[e]
        t = g.other(e, h)
        if self.count[h] >= 2:
            mask = self.masks[h]
            for f in g._inc[h]:
                if (mask >> f) & 1:
                    i = g.other(f, h)
                    if self.remaining[i] == 0 and self._tail_value(f, i) > self.own[i]:
                        return True
        for x in (t, h):
            if self.remaining[x]:
                continue
            for f in g._inc[x]:
                j = self.heads[f]
                if j != x and self.count[j] >= 2 and self._tail_value(f, x) > self.own[x]:
                    return True
        return False

    def _assign(self, e: int, h: int) -> None:
        a, b = self.g.edges[e]
        self.heads[e] = h
        self.masks[h] |= 1 << e
        self.count[h] += 1
        self.own[h] = self.val.value_mask(h, self.masks[h])
        self.remaining[a] -= 1
        self.remaining[b] -= 1

    def _undo(self, e: int) -> None:
        a, b = self.g.edges[e]
        h = self.heads[e]
        self.heads[e] = -1
        self.masks[h] &= ~(1 << e)
        self.count[h] -= 1
        self.own[h] = self.val.value_mask(h, self.masks[h])
        self.remaining[a] += 1
        self.remaining[b] += 1

    def _step(self, e: int, h: int) -> bool:
        """Assign and report whether the branch survives pruning."""
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise SearchBudgetExceeded(self.stats())
        self._assign(e, h)
        if self._violated(e):
            self.prunes += 1
            self._undo(e)
            return False
        return True

    def run(self, prefix: Sequence[int] = ()) -> Optional[list[int]]:
        for e, h in enumerate(prefix):
            if not self._step(e, h):
                return None
        return self._dfs(len(prefix))

    def _dfs(self, e: int) -> Optional[list[int]]:
        if e == self.g.m:
            return list(self.heads)
        a, b = self.g.edges[e]
        for h in sorted((a, b)):
            if self._step(e, h):
                found = self._dfs(e + 1)
                if found is not None:
                    return found
                self._undo(e)
        return None

    def stats(self) -> dict:
        return {"nodes": self.nodes, "prunes": self.prunes}


def _run_prefix(args) -> tuple[Optional[list[int]], dict]:
    g, val, prefix, limit = args
    s = _Searcher(g, val, limit)
    return s.run(prefix), s.stats()


def find_efx_orientation(
    g: Graph,
    val: Valuation,
    limit: Optional[int] = None,
    jobs: int = 1,
    max_edges: int = DEFAULT_SEARCH_EDGE_BOUND,
) -> SearchOutcome:
    """Return an EFX orientation or prove none exists.

    ``limit`` caps the number of search nodes; running out raises
    :class:`SearchBudgetExceeded` rather than claiming nonexistence. With
    ``jobs > 1`` the first few edges are fixed per worker; the witness is the
    same one the sequential search returns.
    """
    if g.m > max_edges:
        raise SizeBoundError(f"orientation search limited to m <= {max_edges}, got m = {g.m}")
    start = time.perf_counter()
    if jobs <= 1 or g.m < 4:
        s = _Searcher(g, val, limit)
        heads = s.run()
        stats = s.stats()
    else:
        k = min(g.m - 1, max(1, (4 * jobs - 1).bit_length()))
        prefixes = [list(p) for p in itertools.product(*[sorted(g.edges[e]) for e in range(k)])]
        heads, stats = None, {"nodes": 0, "prunes": 0}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # results arrive in prefix order, which is the sequential visiting order
            for result, sub in pool.map(_run_prefix, [(g, val, p, limit) for p in prefixes]):
                stats["nodes"] += sub["nodes"]
                stats["prunes"] += sub["prunes"]
                if heads is None and result is not None:
                    heads = result
        stats["jobs"] = jobs
        if limit is not None and stats["nodes"] > limit and heads is None:
            raise SearchBudgetExceeded(stats)
    stats["elapsed"] = time.perf_counter() - start
    if heads is None:
        return SearchOutcome(None, stats)
    o = Orientation(heads)
    assert verify_efx(g, val, o, full=False).verdict, "search returned a non-EFX orientation"
    return SearchOutcome(o, stats)


@dataclass
class CounterexampleCheck:
    confirmed: bool
    orientation: Optional[Orientation]
    stats: dict


def check_counterexample(g: Graph, val: Valuation, limit: Optional[int] = None, jobs: int = 1) -> CounterexampleCheck:
    """Confirmed iff the search exhausts without an EFX orientation."""
    out = find_efx_orientation(g, val, limit=limit, jobs=jobs)
    return CounterexampleCheck(not out.found, out.orientation, out.stats)


@dataclass
class Oracle01Result:
    all_orientable: bool
    counterexample: Optional[ZeroOneValuation] = None


def _bit_matrix(m: int) -> np.ndarray:
    codes = np.arange(4**m, dtype=np.int64)
    return ((codes[:, None] >> np.arange(2 * m, dtype=np.int64)) & 1).astype(bool)


def exists_efx_for_all_01(g: Graph, max_edges: int = DEFAULT_ORACLE_EDGE_BOUND) -> Oracle01Result:
    """Brute force over all ``4**m`` binary valuations and all ``2**m`` orientations.

    Vectorized over valuations: for each orientation the EFX test is evaluated
    for every valuation at once. The counterexample, if any, is the one with the
    smallest :meth:`ZeroOneValuation.code`.
    """
    m, n = g.m, g.n
    if m > max_edges:
        raise SizeBoundError(f"binary brute force limited to m <= {max_edges}, got m = {m}")
    if m == 0:
        return Oracle01Result(True)
    bits = _bit_matrix(m)
    ok = np.zeros(bits.shape[0], dtype=bool)
    sides = [(2 * e, 2 * e + 1) for e in range(m)]
    for choice in itertools.product((0, 1), repeat=m):
        heads = [g.edges[e][c] for e, c in enumerate(choice)]
        count = [0] * n
        for h in heads:
            count[h] += 1
        # own[v] is True when v values something it received
        own = [None] * n
        for e, h in enumerate(heads):
            col = bits[:, sides[e][choice[e]]]
            own[h] = col if own[h] is None else (own[h] | col)
        bad = np.zeros_like(ok)
        for e, h in enumerate(heads):
            if count[h] < 2:
                continue
            t = g.edges[e][1 - choice[e]]
            tail_values = bits[:, sides[e][1 - choice[e]]]
            bad |= tail_values if own[t] is None else (tail_values & ~own[t])
        ok |= ~bad
        if ok.all():
            return Oracle01Result(True)
    first = int(np.flatnonzero(~ok)[0])
    return Oracle01Result(False, ZeroOneValuation.from_bits(g, first))
