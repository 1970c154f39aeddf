"""Functors on marked graphs and the contraction rewriting steps.

``glue`` realizes the wedge product, ``pushforward`` the pullback of forms
along a tautological morphism and ``pullback`` the fiber integral along a
tautological submersion.  Contractions remove low-degree unmarked vertices
and report the scalar the associated form picks up.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .graphs import GraphError, MarkedGraph, is_contracted


@dataclass(frozen=True)
class SetMap:
    """A map ``{1..source} -> {1..target}``; ``images[k-1]`` is the image of ``k``."""

    source: int
    target: int
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if self.source < 0 or self.target < 0:
            raise GraphError("set sizes must be non-negative")
        if len(images) != self.source:
            raise GraphError(f"expected {self.source} images, got {len(images)}")
        for x in images:
            if not isinstance(x, int) or not 1 <= x <= self.target:
                raise GraphError(f"image {x!r} is outside 1..{self.target}")

    @classmethod
    def of(cls, images: Sequence[int], target: int) -> "SetMap":
        return cls(len(images), target, tuple(images))

    @classmethod
    def identity(cls, n: int) -> "SetMap":
        return cls(n, n, tuple(range(1, n + 1)))

    @classmethod
    def forget(cls, r: int, marks: Iterable[int]) -> "SetMap":
        """The increasing injection onto the complement of ``marks`` in ``1..r``.

        Integrating along it forgets the listed coordinates.
        """
        marks = set(marks)
        for k in marks:
            if not 1 <= k <= r:
                raise GraphError(f"mark {k} is outside 1..{r}")
        keep = [k for k in range(1, r + 1) if k not in marks]
        return cls(len(keep), r, tuple(keep))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)


def compose(phi: SetMap, psi: SetMap) -> SetMap:
    """``phi o psi``: first ``psi``, then ``phi``."""
    if psi.target != phi.source:
        raise GraphError(f"cannot compose: psi lands in {psi.target} points, phi starts at {phi.source}")
    return SetMap(psi.source, phi.target, tuple(phi(psi(k)) for k in range(1, psi.source + 1)))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # the smaller index wins so target marks stay representatives
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _pushout(r: int, pieces, identify) -> tuple:
    """Glue the disjoint union of ``{1..r}`` and the vertex sets in ``pieces``.

    ``pieces`` is a list of vertex counts; ``identify`` yields pairs
    ``(k, (piece, v))`` meaning target mark ``k`` is identified with vertex
    ``v`` of that piece.  Returns per-piece maps to the new ids, where the
    classes of the target marks keep ids ``1..r`` and every other class gets
    a fresh id in order of first appearance.
    """
    offsets = []
    total = r
    for size in pieces:
        offsets.append(total)
        total += size
    uf = _UnionFind(total)
    for k, (p, v) in identify:
        uf.union(k - 1, offsets[p] + v - 1)
    new_id = {}
    for k in range(r):
        new_id[uf.find(k)] = k + 1
    nxt = r + 1
    maps = []
    for p, size in enumerate(pieces):
        m = {}
        for v in range(1, size + 1):
            root = uf.find(offsets[p] + v - 1)
            if root not in new_id:
                new_id[root] = nxt
                nxt += 1
            m[v] = new_id[root]
        maps.append(m)
    return maps, nxt - 1 - r


def _image_edges(G: MarkedGraph, vmap, into: dict) -> None:
    for (a, b), m in G.edge_items():
        a2, b2 = vmap[a], vmap[b]
        key = (a2, b2) if a2 <= b2 else (b2, a2)
        into[key] = into.get(key, 0) + m


def glue(G: MarkedGraph, H: MarkedGraph) -> MarkedGraph:
    """Identify the marked vertices of ``G`` and ``H`` pairwise."""
    if G.r != H.r:
        raise GraphError(f"cannot glue a {G.r}-marked graph to a {H.r}-marked graph")
    r = G.r
    identify = [(k, (0, k)) for k in range(1, r + 1)] + [(k, (1, k)) for k in range(1, r + 1)]
    (mg, mh), u = _pushout(r, [G.n, H.n], identify)
    edges: dict = {}
    _image_edges(G, mg, edges)
    _image_edges(H, mh, edges)
    return MarkedGraph(r, u, edges)


def pushforward(phi: SetMap, G: MarkedGraph) -> MarkedGraph:
    """``phi_* G``: mark ``k`` of ``G`` is merged into target mark ``phi(k)``."""
    if G.r != phi.source:
        raise GraphError(f"pushforward along a map from {phi.source} points needs a {phi.source}-marked graph, got r={G.r}")
    identify = [(phi(k), (0, k)) for k in range(1, phi.source + 1)]
    (mg,), u = _pushout(phi.target, [G.n], identify)
    edges: dict = {}
    _image_edges(G, mg, edges)
    return MarkedGraph(phi.target, u, edges)


def pullback(phi: SetMap, G: MarkedGraph) -> MarkedGraph:
    """``phi^* G``: precompose the marking with the injection ``phi``.

    Marks outside the image of ``phi`` become unmarked vertices (placed first,
    in increasing order, ahead of the existing unmarked vertices).
    """
    if not phi.is_injective():
        raise GraphError(f"pullback needs an injective map, got images {phi.images}")
    if G.r != phi.target:
        raise GraphError(f"pullback along a map into {phi.target} points needs a {phi.target}-marked graph, got r={G.r}")
    s, r = phi.source, phi.target
    new_id = {phi(k): k for k in range(1, s + 1)}
    nxt = s + 1
    for v in range(1, r + 1):
        if v not in new_id:
            new_id[v] = nxt
            nxt += 1
    for v in G.unmarked():
        new_id[v] = v
    edges: dict = {}
    _image_edges(G, new_id, edges)
    return MarkedGraph(s, G.u + r - s, edges)


# contractions ---------------------------------------------------------------------


class Multiplier(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    TWO_MINUS_2G = "two_minus_2g"


@dataclass(frozen=True)
class ContractionResult:
    graph: MarkedGraph
    multiplier: Multiplier
    case: str


def _remove_vertex(G: MarkedGraph, v: int, edges: dict) -> MarkedGraph:
    """Drop unmarked vertex ``v`` (no edges may touch it) and shift later ids down."""

    def shift(x):
        return x - 1 if x > v else x

    out = {}
    for (a, b), m in edges.items():
        if m:
            if a == v or b == v:
                raise AssertionError("edge still touches the removed vertex")
            out[(shift(a), shift(b))] = m
    return MarkedGraph(G.r, G.u - 1, out)


def is_contractible(G: MarkedGraph, v: int) -> bool:
    if G.is_marked(v):
        return False
    d = G.degree(v)
    return d <= 2 or (d == 3 and G.loops(v) == 1)


def contract_vertex(G: MarkedGraph, v: int) -> ContractionResult:
    """Contract the unmarked vertex ``v``.

    Cases, by degree of ``v``: 0 removes it (form vanishes); 1 removes it with
    its edge; 2 smooths it out (2a: two neighbours w != w' get an edge,
    2b: one neighbour w gets a loop, 2c: a lone loop is dropped and the form
    picks up 2-2g); 3 with a loop moves the loop to the other neighbour.
    """
    G.check_vertex(v)
    if G.is_marked(v):
        raise GraphError(f"vertex {v} is marked and cannot be contracted")
    d = G.degree(v)
    loops = G.loops(v)
    edges = G.edges
    others = G.incident(v)

    def drop(a, b, k=1):
        key = (min(a, b), max(a, b))
        edges[key] -= k
        if not edges[key]:
            del edges[key]

    def add(a, b):
        key = (min(a, b), max(a, b))
        edges[key] = edges.get(key, 0) + 1

    if d == 0:
        return ContractionResult(_remove_vertex(G, v, edges), Multiplier.ZERO, "0")
    if d == 1:
        drop(v, others[0])
        return ContractionResult(_remove_vertex(G, v, edges), Multiplier.ONE, "1")
    if d == 2:
        if loops == 1:
            drop(v, v)
            return ContractionResult(_remove_vertex(G, v, edges), Multiplier.TWO_MINUS_2G, "2c")
        w, w2 = others
        drop(v, w)
        drop(v, w2)
        add(w, w2)
        return ContractionResult(_remove_vertex(G, v, edges), Multiplier.ONE, "2a" if w != w2 else "2b")
    if d == 3 and loops == 1:
        (w,) = others
        drop(v, v)
        drop(v, w)
        add(w, w)
        return ContractionResult(_remove_vertex(G, v, edges), Multiplier.ONE, "3")
    raise GraphError(f"vertex {v} of degree {d} with {loops} loop(s) is not contractible")


def contractible_vertices(G: MarkedGraph) -> list:
    deg = G.degrees()
    return [
        v
        for v in G.unmarked()
        if deg[v - 1] <= 2 or (deg[v - 1] == 3 and G.loops(v) == 1)
    ]


def contract_fully(
    G: MarkedGraph, choose: Optional[Callable[[list], int]] = None
) -> tuple:
    """Contract until the graph is contracted.

    Returns ``(graph, k)`` where ``k`` counts the factors ``2-2g`` picked up, or
    ``(None, 0)`` if some step kills the form.  By default the lowest
    contractible id goes first; ``choose`` picks from the candidate list instead.
    """
    k = 0
    while True:
        candidates = contractible_vertices(G)
        if not candidates:
            assert is_contracted(G)
            return G, k
        v = candidates[0] if choose is None else choose(candidates)
        res = contract_vertex(G, v)
        if res.multiplier is Multiplier.ZERO:
            return None, 0
        if res.multiplier is Multiplier.TWO_MINUS_2G:
            k += 1
        G = res.graph
