"""r-marked multigraphs.

Vertices are integer ids.  Marked vertices are ``1..r`` and unmarked ones are
``r+1..r+u``, so a marking is positional and automatically injective.  Edges
form a multiset of unordered pairs, stored as ``{(a, b): multiplicity}`` with
``a <= b``; a loop is the pair ``(v, v)``.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, Union


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph operations."""


class MarkedGraph:
    """An immutable r-marked multigraph."""

    __slots__ = ("r", "u", "_edges", "_hash")

    def __init__(self, r: int, u: int, edges: Union[Mapping, Iterable] = ()):
        if not isinstance(r, int) or not isinstance(u, int) or r < 0 or u < 0:
            raise GraphError(f"r and u must be non-negative integers, got r={r!r}, u={u!r}")
        n = r + u
        counts: dict = {}
        items = edges.items() if isinstance(edges, Mapping) else ((pair, 1) for pair in edges)
        for pair, mult in items:
            a, b = pair
            if not (1 <= a <= n and 1 <= b <= n):
                raise GraphError(f"edge {pair!r} has an endpoint outside 1..{n}")
            if mult < 0:
                raise GraphError(f"negative multiplicity for edge {pair!r}")
            if mult:
                key = (a, b) if a <= b else (b, a)
                counts[key] = counts.get(key, 0) + mult
        self.r = r
        self.u = u
        self._edges = tuple(sorted(counts.items()))
        self._hash = None

    # basic queries ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.r + self.u

    @property
    def edges(self) -> dict:
        return dict(self._edges)

    def edge_items(self) -> tuple:
        return self._edges

    def edge_list(self) -> list:
        """Edges expanded with multiplicity, in sorted order."""
        return [pair for pair, m in self._edges for _ in range(m)]

    @property
    def num_edges(self) -> int:
        return sum(m for _, m in self._edges)

    def multiplicity(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        return dict(self._edges).get(key, 0)

    def loops(self, v: int) -> int:
        return self.multiplicity(v, v)

    def is_marked(self, v: int) -> bool:
        return 1 <= v <= self.r

    def unmarked(self) -> range:
        return range(self.r + 1, self.n + 1)

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.n:
            raise GraphError(f"vertex {v!r} is not in 1..{self.n}")

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        d = 0
        for (a, b), m in self._edges:
            if a == v:
                d += m
            if b == v:
                d += m
        return d

    def degrees(self) -> list:
        """Degrees of vertices ``1..n`` (index 0 is vertex 1)."""
        deg = [0] * self.n
        for (a, b), m in self._edges:
            deg[a - 1] += m
            deg[b - 1] += m
        return deg

    def incident(self, v: int) -> list:
        """Other endpoints of the edges at ``v``, one entry per non-loop edge."""
        out = []
        for (a, b), m in self._edges:
            if a == b:
                continue
            if a == v:
                out.extend([b] * m)
            elif b == v:
                out.extend([a] * m)
        return out

    def euler_char(self) -> int:
        return self.n - self.num_edges

    # value semantics ------------------------------------------------------------

    def _data(self):
        return (self.r, self.u, self._edges)

    def __eq__(self, other):
        if not isinstance(other, MarkedGraph):
            return NotImplemented
        return self._data() == other._data()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._data())
        return self._hash

    def __repr__(self):
        edges = ", ".join(
            f"({a},{b})" if m == 1 else f"({a},{b})x{m}" for (a, b), m in self._edges
        )
        return f"MarkedGraph(r={self.r}, u={self.u}, edges=[{edges}])"

    # serialization ------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"r": self.r, "u": self.u, "edges": [[a, b] for a, b in self.edge_list()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "MarkedGraph":
        try:
            r, u, edges = obj["r"], obj["u"], obj["edges"]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"graph JSON needs r, u and edges: {obj!r}") from exc
        pairs = []
        for e in edges:
            if len(e) != 2 or not all(isinstance(x, int) for x in e):
                raise GraphError(f"bad edge {e!r}")
            pairs.append(tuple(e))
        return cls(r, u, pairs)

    @classmethod
    def from_json(cls, text: str) -> "MarkedGraph":
        return cls.from_json_obj(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(1, self.n + 1):
            if self.is_marked(v):
                lines.append(f'  v{v} [label="{v}", shape=circle, style=filled, fillcolor=lightgray];')
            else:
                lines.append(f'  v{v} [label="", shape=point, width=0.12];')
        for a, b in self.edge_list():
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines)


def make_graph(r: int, u: int, edges: Iterable[Sequence[int]] = ()) -> MarkedGraph:
    return MarkedGraph(r, u, [tuple(e) for e in edges])


def unit_graph(r: int = 0) -> MarkedGraph:
    """The graph with ``r`` bare marks and no edges; its form is the constant 1."""
    return MarkedGraph(r, 0)


def euler_char(G: MarkedGraph) -> int:
    return G.euler_char()


def vertex_degree(G: MarkedGraph, v: int) -> int:
    return G.degree(v)


def induced_graph(
    G: MarkedGraph, f: Union[Mapping[int, int], Callable[[int], int]], n_target: int | None = None
) -> MarkedGraph:
    """The graph induced from ``G`` by a vertex map ``f``.

    The result has no marking semantics: it is returned as a 0-marked graph on
    vertices ``1..n_target`` (default: the largest image).
    """
    get = f.get if isinstance(f, Mapping) else f
    images = {}
    for v in range(1, G.n + 1):
        w = get(v)
        if w is None:
            raise GraphError(f"vertex map is not defined on vertex {v}")
        images[v] = w
    if n_target is None:
        n_target = max(images.values(), default=0)
    edges = {}
    for (a, b), m in G.edge_items():
        a2, b2 = images[a], images[b]
        key = (min(a2, b2), max(a2, b2))
        edges[key] = edges.get(key, 0) + m
    return MarkedGraph(0, n_target, edges)


def relabel(G: MarkedGraph, new_id: Mapping[int, int], r: int, u: int) -> MarkedGraph:
    """Apply a vertex bijection/map and reinterpret with ``r`` marks and ``u`` unmarked."""
    edges = {}
    for (a, b), m in G.edge_items():
        a2, b2 = new_id[a], new_id[b]
        key = (min(a2, b2), max(a2, b2))
        edges[key] = edges.get(key, 0) + m
    return MarkedGraph(r, u, edges)


# canonical labeling -------------------------------------------------------------


def _refine_colors(G: MarkedGraph) -> dict:
    """Isomorphism-invariant colors of the unmarked vertices (1-WL style)."""
    r = G.r
    unmarked = list(G.unmarked())
    if not unmarked:
        return {}
    mult = G.edges
    deg = G.degrees()

    def m(a, b):
        return mult.get((a, b) if a <= b else (b, a), 0)

    sig = {
        v: (deg[v - 1], m(v, v), tuple(m(v, k) for k in range(1, r + 1))) for v in unmarked
    }
    color = _rank(sig)
    while True:
        sig = {
            v: (
                color[v],
                tuple(sorted((color[w], m(v, w)) for w in unmarked if w != v and m(v, w))),
            )
            for v in unmarked
        }
        new = _rank(sig)
        if len(set(new.values())) == len(set(color.values())):
            return new
        color = new


def _rank(sig: dict) -> dict:
    values = sorted(set(sig.values()))
    index = {s: i for i, s in enumerate(values)}
    return {v: index[s] for v, s in sig.items()}


def _encode(G: MarkedGraph, new_id: Mapping[int, int]) -> tuple:
    triples = []
    for (a, b), mlt in G.edge_items():
        a2, b2 = new_id[a], new_id[b]
        if a2 > b2:
            a2, b2 = b2, a2
        triples.append((a2, b2, mlt))
    triples.sort()
    return tuple(x for t in triples for x in t)


@lru_cache(maxsize=200_000)
def _canonical(G: MarkedGraph):
    r = G.r
    color = _refine_colors(G)
    cells: dict = {}
    for v, c in color.items():
        cells.setdefault(c, []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    best = None
    best_map = None
    for choice in itertools.product(*(itertools.permutations(cell) for cell in ordered)):
        new_id = {k: k for k in range(1, r + 1)}
        nxt = r + 1
        for perm in choice:
            for v in perm:
                new_id[v] = nxt
                nxt += 1
        enc = _encode(G, new_id)
        if best is None or enc < best:
            best, best_map = enc, new_id
    if best is None:
        best_map = {k: k for k in range(1, r + 1)}
        best = _encode(G, best_map)
    key = (r, G.u, G.num_edges) + best
    return key, relabel(G, best_map, r, G.u)


def canonical_key(G: MarkedGraph) -> tuple:
    """A tuple of ints; equal exactly when the graphs are isomorphic as r-marked graphs.

    The encoding is the lexicographically least sorted edge list over all
    relabelings of the unmarked vertices that respect a color refinement.
    """
    return _canonical(G)[0]


def canonical_form(G: MarkedGraph) -> MarkedGraph:
    """The representative of ``G``'s isomorphism class that realizes its key."""
    return _canonical(G)[1]


def is_isomorphic(G: MarkedGraph, H: MarkedGraph) -> bool:
    if G.r != H.r:
        raise GraphError(f"cannot compare a {G.r}-marked graph with a {H.r}-marked graph")
    if G.u != H.u or G.num_edges != H.num_edges:
        return False
    return canonical_key(G) == canonical_key(H)


def is_contracted(G: MarkedGraph) -> bool:
    """Unmarked vertices have degree >= 3, and degree-3 ones carry no loop."""
    deg = G.degrees()
    for v in G.unmarked():
        d = deg[v - 1]
        if d < 3 or (d == 3 and G.loops(v)):
            return False
    return True


def graph_from_key(key: Sequence[int]) -> MarkedGraph:
    r, u, _ = key[:3]
    flat = key[3:]
    edges = {(flat[i], flat[i + 1]): flat[i + 2] for i in range(0, len(flat), 3)}
    return MarkedGraph(r, u, edges)
