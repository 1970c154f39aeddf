import random

import pytest

from tautforms import props
from tautforms.coeffs import Poly
from tautforms.expr import (
    AmbientMismatch,
    TautExpr,
    add_expr,
    form_degrees,
    from_graph,
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
    zero_expr,
)
from tautforms.graph_ops import SetMap
from tautforms.graphs import GraphError, make_graph

g = Poly.var("g")


def test_generators():
    h = gen_h(2, 1, 2)
    assert h.graphs() == [make_graph(2, 0, [(1, 2)])] and h.coefficient(make_graph(2, 0, [(1, 2)])) == 1
    assert gen_ed(0, 1).graphs() == [make_graph(0, 1, [(1, 1), (1, 1)])]
    assert gen_h(2, 1, 1) == gen_eA(2, 1)
    assert gen_nu(1).graphs() == [make_graph(1, 2, [(2, 3)] * 3)]
    with pytest.raises(GraphError):
        gen_h(2, 1, 3)
    with pytest.raises(GraphError):
        gen_ed(1, 0)


def test_wedge_examples():
    h = gen_h(2, 1, 2)
    assert wedge(h, h) == from_graph(make_graph(2, 0, [(1, 2), (1, 2)]))
    assert wedge(gen_eA(1, 1), gen_eA(1, 1)) == from_graph(make_graph(1, 0, [(1, 1)] * 2))
    A = gen_h(2, 1, 2) + scale(gen_ed(2, 1), 3)
    assert wedge(A, unit_expr(2)) == A
    with pytest.raises(AmbientMismatch):
        wedge(h, gen_eA(1, 1))


def test_pullback_expr_examples():
    assert pullback_expr(SetMap.of([1, 1], 1), gen_h(2, 1, 2)) == gen_eA(1, 1)
    assert pullback_expr(SetMap.of([2], 2), gen_eA(1, 1)) == gen_eA(2, 2)
    assert pullback_expr(SetMap.of([], 3), gen_ed(0, 1)) == gen_ed(3, 1)
    with pytest.raises(AmbientMismatch):
        pullback_expr(SetMap.identity(1), gen_h(2, 1, 2))


def test_integrate_examples():
    forget2 = SetMap.forget(2, [2])
    h = gen_h(2, 1, 2)
    assert integrate(forget2, h) == unit_expr(1)
    assert integrate(forget2, wedge(h, h)) == gen_eA(1, 1)
    assert integrate(SetMap.forget(1, [1]), gen_eA(1, 1)) == scale(unit_expr(0), 2 - 2 * g)
    assert integrate(SetMap.forget(3, [3]), wedge(gen_h(3, 1, 3), gen_h(3, 2, 3))) == gen_h(2, 1, 2)
    with pytest.raises(GraphError):
        integrate(SetMap.of([1, 1], 2), h)


def test_normalize_examples():
    assert normalize(from_graph(make_graph(1, 1, [(1, 2)]))) == unit_expr(1)
    assert normalize(from_graph(make_graph(1, 1, []))).is_zero()
    A = gen_h(2, 1, 2) + gen_nu(2)
    assert normalize(A) == A


def test_normalize_collects_terms():
    # a pendant path on mark 1 and the bare unit both normalize to 1
    A = from_graph(make_graph(1, 2, [(1, 2), (2, 3)])) + scale(unit_expr(1), -1)
    assert normalize(A).is_zero()


def test_ring_plumbing():
    A = gen_h(2, 1, 2)
    assert power(A, 1) == A
    assert power(unit_expr(2), 5) == unit_expr(2)
    assert scale(A, 0).is_zero()
    assert (A - A).is_zero()
    with pytest.raises(AmbientMismatch):
        add_expr(A, gen_eA(1, 1))


def test_specialize():
    G = make_graph(0, 2, [(1, 2)] * 3)
    A = from_graph(G, 2 - 2 * g)
    assert specialize(A, {"g": 2}) == from_graph(G, -2)
    assert specialize(zero_expr(1), {"g": 2}).is_zero()
    assert specialize(A, {"n": 5}) == A


def test_specialize_can_cancel():
    A = from_graph(make_graph(1, 0, [(1, 1)]), g - 2)
    assert specialize(A, {"g": 2}).is_zero()


def test_form_degrees():
    assert form_degrees(gen_h(2, 1, 2)) == {2}
    assert form_degrees(gen_nu(0)) == {2}
    assert form_degrees(unit_expr(3)) == {0}
    assert form_degrees(gen_h(2, 1, 2) + power(gen_eA(2, 1), 2)) == {2, 4}


def test_normal_equal():
    assert normal_equal(from_graph(make_graph(1, 1, [(1, 2), (1, 2)])), gen_eA(1, 1))
    assert not normal_equal(gen_nu(0), gen_ed(0, 1))


def test_graphs_of_wrong_ambient_rejected():
    with pytest.raises(AmbientMismatch):
        TautExpr(1, [(make_graph(2, 0), 1)])


@pytest.mark.parametrize(
    "check",
    [props.check_normalize_idempotent, props.check_projection_formula, props.check_degrees],
)
def test_seeded_properties(check):
    res = check(random.Random(5), 200)
    assert res.passed, res.example


def test_normalize_commutes_with_wedge():
    rng = random.Random(9)
    for _ in range(200):
        r = rng.randint(0, 3)
        A, B = props.random_expr(rng, r), props.random_expr(rng, r)
        assert normalize(wedge(A, B)) == normalize(wedge(normalize(A), normalize(B)))
        assert normalize(wedge(A, B)) == normalize(wedge(B, A))
        C = props.random_expr(rng, r, terms=2)
        assert normalize(wedge(wedge(A, B), C)) == normalize(wedge(A, wedge(B, C)))


def test_integrate_out_twice_equals_once():
    rng = random.Random(2)
    for _ in range(100):
        A = props.random_expr(rng, 3)
        once = integrate_out(A, [2, 3])
        twice = integrate_out(integrate_out(A, [3]), [2])
        assert once == twice
