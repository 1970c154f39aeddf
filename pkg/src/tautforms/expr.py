"""Tautological forms as linear combinations of marked graphs.

A :class:`TautExpr` lives on a fixed ``C_g^r`` and maps canonical keys to
``(graph, coefficient)``, where each graph stands for its associated form and
coefficients are polynomials (usually in ``g``).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .coeffs import TWO_MINUS_2G, Poly, PolyLike
from .graph_ops import SetMap, contract_fully, glue, pullback, pushforward
from .graphs import GraphError, MarkedGraph, canonical_form, canonical_key, unit_graph


class AmbientMismatch(GraphError):
    """Operands live on different ``C_g^r``."""


class TautExpr:
    __slots__ = ("r", "_terms")

    def __init__(self, r: int, terms: Iterable = ()):
        """``terms`` is an iterable of ``(graph, coefficient)`` pairs; like terms merge."""
        if r < 0:
            raise GraphError("ambient mark count must be non-negative")
        self.r = r
        acc: dict = {}
        for graph, coeff in terms:
            if graph.r != r:
                raise AmbientMismatch(f"a {graph.r}-marked graph cannot live on C^{r}")
            coeff = Poly.coerce(coeff)
            if coeff.is_zero():
                continue
            key = canonical_key(graph)
            if key in acc:
                acc[key] = (acc[key][0], acc[key][1] + coeff)
            else:
                acc[key] = (canonical_form(graph), coeff)
        self._terms = {k: v for k, v in acc.items() if not v[1].is_zero()}

    @classmethod
    def _raw(cls, r: int, terms: dict) -> "TautExpr":
        obj = cls.__new__(cls)
        obj.r = r
        obj._terms = terms
        return obj

    # inspection ------------------------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list:
        """``(key, graph, coeff)`` triples in rendering order (see :func:`term_order`)."""
        return [(k, g, c) for k, (g, c) in sorted(self._terms.items(), key=lambda kv: term_order(kv[0]))]

    def coefficient(self, graph: MarkedGraph) -> Poly:
        entry = self._terms.get(canonical_key(graph))
        return entry[1] if entry else Poly()

    def graphs(self) -> list:
        return [g for _, g, _ in self.terms()]

    def __eq__(self, other):
        """Term-by-term equality of the stored combinations (no normalization)."""
        if not isinstance(other, TautExpr):
            return NotImplemented
        return self.r == other.r and {k: c for k, (_, c) in self._terms.items()} == {
            k: c for k, (_, c) in other._terms.items()
        }

    __hash__ = None

    def __str__(self):
        from .dsl import render_expr

        return render_expr(self)

    def __repr__(self):
        return f"TautExpr(r={self.r}, {str(self)!r})"

    # algebra ---------------------------------------------------------------------

    def _check(self, other: "TautExpr"):
        if not isinstance(other, TautExpr):
            raise TypeError(f"expected TautExpr, got {type(other).__name__}")
        if other.r != self.r:
            raise AmbientMismatch(f"ambient mismatch: C^{self.r} vs C^{other.r}")

    def __add__(self, other):
        if not isinstance(other, TautExpr):
            return NotImplemented
        return add_expr(self, other)

    def __sub__(self, other):
        if not isinstance(other, TautExpr):
            return NotImplemented
        return add_expr(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, TautExpr):
            return wedge(self, other)
        try:
            return scale(self, other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return scale(self, other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        return power(self, k)


def term_order(key: tuple) -> tuple:
    """Order on canonical keys: more unmarked vertices first, then more edges,
    then the edge encoding ascending."""
    return (-key[1], -key[2], key[3:])


# generators ------------------------------------------------------------------------


def _check_mark(r: int, i: int):
    if not isinstance(i, int) or not 1 <= i <= r:
        raise GraphError(f"mark index {i!r} out of range 1..{r}")


def zero_expr(r: int) -> TautExpr:
    return TautExpr(r)


def unit_expr(r: int) -> TautExpr:
    return TautExpr(r, [(unit_graph(r), 1)])


def from_graph(G: MarkedGraph, coeff: PolyLike = 1) -> TautExpr:
    return TautExpr(G.r, [(G, coeff)])


def gen_h(r: int, i: int, j: int) -> TautExpr:
    """``p_ij^* h``; with ``i == j`` this is ``p_i^* e^A``."""
    _check_mark(r, i)
    _check_mark(r, j)
    return from_graph(MarkedGraph(r, 0, [(i, j)]))


def gen_eA(r: int, i: int) -> TautExpr:
    return gen_h(r, i, i)


def ed_graph(r: int, d: int) -> MarkedGraph:
    """r bare marks plus an unmarked vertex with ``d+1`` loops."""
    if not isinstance(d, int) or d < 1:
        raise GraphError(f"e_d needs d >= 1, got {d!r}")
    return MarkedGraph(r, 1, {(r + 1, r + 1): d + 1})


def nu_graph(r: int) -> MarkedGraph:
    """r bare marks plus two unmarked vertices joined by three edges."""
    return MarkedGraph(r, 2, {(r + 1, r + 2): 3})


def gen_ed(r: int, d: int) -> TautExpr:
    return from_graph(ed_graph(r, d))


def gen_nu(r: int) -> TautExpr:
    return from_graph(nu_graph(r))


# linear and ring structure -----------------------------------------------------------


def add_expr(A: TautExpr, B: TautExpr) -> TautExpr:
    A._check(B)
    terms = dict(A._terms)
    for k, (g, c) in B._terms.items():
        if k in terms:
            c = terms[k][1] + c
            if c.is_zero():
                del terms[k]
            else:
                terms[k] = (terms[k][0], c)
        else:
            terms[k] = (g, c)
    return TautExpr._raw(A.r, terms)


def scale(A: TautExpr, c: PolyLike) -> TautExpr:
    c = Poly.coerce(c)
    if c.is_zero():
        return zero_expr(A.r)
    return TautExpr._raw(A.r, {k: (g, v * c) for k, (g, v) in A._terms.items()})


def wedge(A: TautExpr, B: TautExpr) -> TautExpr:
    """Bilinear extension of gluing."""
    A._check(B)
    acc: dict = {}
    for ga, ca in A._terms.values():
        for gb, cb in B._terms.values():
            G = glue(ga, gb)
            acc.setdefault(G, []).append(ca * cb)
    return TautExpr(A.r, [(G, sum(cs, Poly())) for G, cs in acc.items()])


def power(A: TautExpr, k: int) -> TautExpr:
    if not isinstance(k, int) or k < 0:
        raise ValueError("power needs a non-negative integer exponent")
    result = unit_expr(A.r)
    for _ in range(k):
        result = wedge(result, A)
    return result


def specialize(A: TautExpr, bindings: Mapping[str, PolyLike]) -> TautExpr:
    return TautExpr(A.r, [(g, c.substitute(bindings)) for _, g, c in A.terms()])


# pullback, fiber integration, normalization -----------------------------------------------


def pullback_expr(phi: SetMap, A: TautExpr) -> TautExpr:
    """Pull a form on ``C^s`` back to ``C^r`` (graph pushforward along ``phi``)."""
    if A.r != phi.source:
        raise AmbientMismatch(f"map starts at {phi.source} points but the form lives on C^{A.r}")
    return TautExpr(phi.target, [(pushforward(phi, g), c) for _, g, c in A.terms()])


@lru_cache(maxsize=200_000)
def _contracted(G: MarkedGraph):
    H, k = contract_fully(G)
    if H is None:
        return None, 0
    return canonical_form(H), k


def _contract_terms(r: int, pairs) -> TautExpr:
    out = []
    for G, c in pairs:
        H, k = _contracted(G)
        if H is not None:
            out.append((H, c * TWO_MINUS_2G ** k if k else c))
    return TautExpr(r, out)


def normalize(A: TautExpr) -> TautExpr:
    """Rewrite every term as a multiple of a contracted graph and collect."""
    return _contract_terms(A.r, ((g, c) for _, g, c in A.terms()))


def integrate(phi: SetMap, A: TautExpr) -> TautExpr:
    """Fiber integral along the submersion ``C^r -> C^s`` given by injective ``phi``.

    The result is already normalized.
    """
    if not phi.is_injective():
        raise GraphError(f"fiber integration needs an injective map, got images {phi.images}")
    if A.r != phi.target:
        raise AmbientMismatch(f"map lands in {phi.target} points but the form lives on C^{A.r}")
    return _contract_terms(phi.source, ((pullback(phi, g), c) for _, g, c in A.terms()))


def integrate_out(A: TautExpr, marks: Iterable[int]) -> TautExpr:
    """Integrate out the listed coordinates of ``C^r``."""
    return integrate(SetMap.forget(A.r, marks), A)


def normal_equal(A: TautExpr, B: TautExpr) -> bool:
    """Equality of normal forms.

    Sound but not complete for equality of forms: distinct contracted graphs
    can still satisfy linear relations (e.g. in genus 2).
    """
    A._check(B)
    return normalize(A) == normalize(B)


def form_degrees(A: TautExpr) -> set:
    return {2 * (A.r - g.euler_char()) for _, g, _ in A.terms()}


def coefficient_split(A: TautExpr, names: Iterable[str]) -> dict:
    """Group terms by their monomial in the indeterminates ``names``.

    Returns ``{monomial: TautExpr}`` with coefficients free of ``names``.
    """
    names = list(names)
    out: dict = {}
    for _, g, c in A.terms():
        for mono, rest in c.coefficients_in(names).items():
            out.setdefault(mono, []).append((g, rest))
    return {mono: TautExpr(A.r, pairs) for mono, pairs in out.items()}
