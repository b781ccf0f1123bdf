"""EFX checks for orientations.

:func:`verify_efx` evaluates the definition literally over every ordered pair of
agents and every removable good. :func:`verify_efx_fast` uses the fact that in an
orientation ``X_j`` only contains edges at ``j``, so agent ``i`` can see at most
the single edge ``ij`` inside ``X_j``: ``i`` EFX-envies ``j`` exactly when ``ij``
points at ``j``, ``|X_j| >= 2`` and ``f_i({ij}) > f_i(X_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, GraphError
from .valuations import Valuation


@dataclass(frozen=True)
class Orientation:
    heads: tuple[int, ...]

    def __init__(self, heads: Iterable[int]):
        object.__setattr__(self, "heads", tuple(int(h) for h in heads))

    def check(self, g: Graph) -> None:
        if len(self.heads) != g.m:
            raise GraphError(f"orientation has {len(self.heads)} heads for {g.m} edges")
        for e, h in enumerate(self.heads):
            if h not in g.edges[e]:
                raise GraphError(f"head {h} of edge {e} is not one of its endpoints {g.edges[e]}")

    def to_json(self) -> dict:
        return {"heads": list(self.heads)}

    @classmethod
    def from_json(cls, data: dict) -> "Orientation":
        return cls(data["heads"])


@dataclass
class EfxReport:
    verdict: bool
    violations: list[tuple[int, int, int]] = field(default_factory=list)  # (envier, enviee, removed edge)
    envied_vertices: set[int] = field(default_factory=set)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "violations": [list(t) for t in self.violations],
            "envied_vertices": sorted(self.envied_vertices),
        }


def bundle(o: Orientation, v: int) -> frozenset:
    return frozenset(e for e, h in enumerate(o.heads) if h == v)


def bundle_masks(g: Graph, o: Orientation) -> list[int]:
    o.check(g)
    masks = [0] * g.n
    for e, h in enumerate(o.heads):
        masks[h] |= 1 << e
    # partition property: every edge lands in exactly one bundle
    union = 0
    for x in masks:
        assert not union & x
        union |= x
    assert union == (1 << g.m) - 1
    return masks


def _plain_envied(g: Graph, val: Valuation, masks: Sequence[int], own: Sequence) -> set[int]:
    out = set()
    for j in range(g.n):
        for i in range(g.n):
            if i != j and val.value_mask(i, masks[j]) > own[i]:
                out.add(j)
                break
    return out


def verify_efx(g: Graph, val: Valuation, o: Orientation, full: bool = True) -> EfxReport:
    """Check ``f_i(X_i) >= f_i(X_j - {g})`` for all ``i != j`` and ``g in X_j``.

    With ``full=False`` the check stops at the first violation and the report
    carries only that one (and no envied-vertex set).
    """
    masks = bundle_masks(g, o)
    own = [val.value_mask(i, masks[i]) for i in range(g.n)]
    violations = []
    for i in range(g.n):
        fi = own[i]
        for j in range(g.n):
            if i == j:
                continue
            xj = masks[j]
            rest = xj
            while rest:
                low = rest & -rest
                rest ^= low
                if fi < val.value_mask(i, xj ^ low):
                    violations.append((i, j, low.bit_length() - 1))
                    if not full:
                        return EfxReport(False, violations)
    envied = _plain_envied(g, val, masks, own) if full else set()
    return EfxReport(not violations, violations, envied)


def verify_efx_fast(g: Graph, val: Valuation, o: Orientation, full: bool = True) -> EfxReport:
    masks = bundle_masks(g, o)
    count = [m.bit_count() for m in masks]
    own = [val.value_mask(i, masks[i]) for i in range(g.n)]
    violations = []
    for e, (a, b) in enumerate(g.edges):
        j = o.heads[e]
        if count[j] < 2:
            continue
        i = b if j == a else a
        if val.single(i, e) > own[i]:
            # any other good of X_j may be removed; each removal leaves e behind
            for f in g._inc[j]:
                if f != e and (masks[j] >> f) & 1:
                    violations.append((i, j, f))
            if not full:
                return EfxReport(False, violations)
    violations.sort()
    envied = _plain_envied(g, val, masks, own) if full else set()
    return EfxReport(not violations, violations, envied)


def is_efx(g: Graph, val: Valuation, o: Orientation) -> bool:
    return verify_efx(g, val, o, full=False).verdict


def envied_vertices(g: Graph, val: Valuation, o: Orientation) -> set[int]:
    """Vertices ``j`` with ``f_i(X_j) > f_i(X_i)`` for some ``i`` (plain envy)."""
    masks = bundle_masks(g, o)
    own = [val.value_mask(i, masks[i]) for i in range(g.n)]
    return _plain_envied(g, val, masks, own)
