"""Exact computation with tautological forms on moduli of marked curves,
encoded as linear combinations of marked multigraphs."""

from .coeffs import Poly
from .dsl import evaluate, parse, render_expr
from .enumeration import count_contracted, enumerate_contracted
from .expr import (
    TautExpr,
    form_degrees,
    gen_eA,
    gen_ed,
    gen_h,
    gen_nu,
    integrate,
    integrate_out,
    normal_equal,
    normalize,
    power,
    pullback_expr,
    scale,
    specialize,
    unit_expr,
    wedge,
)
from .graph_ops import SetMap, compose, contract_fully, contract_vertex, glue, pullback, pushforward
from .graphs import MarkedGraph, canonical_key, is_contracted, is_isomorphic, make_graph
from .relations import RWQuery, omega_pullback, rw_relation, verify_paper_identities

__version__ = "0.1.0"
