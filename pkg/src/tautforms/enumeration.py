"""Enumeration of contracted r-marked graphs up to isomorphism."""

from __future__ import annotations

from functools import lru_cache

from .graphs import MarkedGraph, canonical_form, canonical_key, is_contracted


def _slots(n: int) -> list:
    return [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]


def _graphs_with(r: int, u: int, e: int):
    """All edge multisets of size ``e`` on ``r+u`` vertices that can be contracted.

    Multiplicities are assigned slot by slot; a branch dies once the edges left
    cannot lift every unmarked vertex to degree 3.
    """
    n = r + u
    slots = _slots(n)
    deg = [0] * (n + 1)
    mult = [0] * len(slots)

    def deficit():
        return sum(max(0, 3 - deg[v]) for v in range(r + 1, n + 1))

    # slot index after which vertex v receives no more edges: its last slot is (v, n)
    last = {slots.index((v, n)): v for v in range(r + 1, n + 1)}

    def settled_ok(v):
        dv = deg[v]
        if dv < 3 or (dv == 3 and mult[slots.index((v, v))]):
            return False
        # unmarked degrees are kept non-increasing to cut symmetric copies
        return v == r + 1 or dv <= deg[v - 1]

    def rec(i, left):
        if 2 * left < deficit():
            return
        if i == len(slots):
            if left == 0:
                yield {slots[j]: m for j, m in enumerate(mult) if m}
            return
        a, b = slots[i]
        for m in range(left, -1, -1):
            mult[i] = m
            deg[a] += m
            deg[b] += m
            if i not in last or settled_ok(last[i]):
                yield from rec(i + 1, left - m)
            deg[a] -= m
            deg[b] -= m
        mult[i] = 0

    yield from rec(0, e)


@lru_cache(maxsize=None)
def _enumerate(r: int, d: int) -> tuple:
    found = {}
    for u in range(0, 2 * d + 1):
        e = d + u
        for edges in _graphs_with(r, u, e):
            G = MarkedGraph(r, u, edges)
            degs = G.degrees()[r:]
            if degs != sorted(degs, reverse=True):
                continue
            if not is_contracted(G):
                continue
            key = canonical_key(G)
            if key not in found:
                found[key] = canonical_form(G)
    return tuple(found[k] for k in sorted(found))


def enumerate_contracted(r: int, d: int) -> list:
    """One representative per isomorphism class of contracted r-marked graphs
    with Euler characteristic ``r - d`` (forms of degree ``2d``), sorted by key."""
    if r < 0 or d < 0:
        raise ValueError("r and d must be non-negative")
    return list(_enumerate(r, d))


def count_contracted(r: int, d: int) -> int:
    return len(enumerate_contracted(r, d))


def count_table(r_max: int, d_max: int) -> list:
    """Rows ``[count(r, 0), ..., count(r, d_max)]`` for ``r = 0..r_max``."""
    return [[count_contracted(r, d) for d in range(d_max + 1)] for r in range(r_max + 1)]
