import random

import pytest
from hypothesis import given, strategies as st

from tautforms.graph_ops import (
    Multiplier,
    SetMap,
    compose,
    contract_fully,
    contract_vertex,
    glue,
    pullback,
    pushforward,
)
from tautforms.graphs import GraphError, MarkedGraph, canonical_key, is_contracted, make_graph
from tautforms import props

H12 = make_graph(2, 0, [(1, 2)])
LOOP1 = make_graph(1, 0, [(1, 1)])


def test_glue_examples():
    assert glue(H12, H12).edges == {(1, 2): 2}
    a, b = make_graph(0, 1, [(1, 1)]), make_graph(0, 2, [(1, 2)])
    d = glue(a, b)
    assert d.u == 3 and d.edges == {(1, 1): 1, (2, 3): 1}
    two = glue(LOOP1, LOOP1)
    assert two.edges == {(1, 1): 2} and two.euler_char() == -1


def test_glue_keeps_unmarked_apart():
    G = make_graph(1, 1, [(1, 2)])
    K = glue(G, G)
    assert K.u == 2 and K.edges == {(1, 2): 1, (1, 3): 1}


def test_glue_rejects_mismatch():
    with pytest.raises(GraphError):
        glue(H12, LOOP1)


def test_pushforward_examples():
    assert pushforward(SetMap.of([1, 1], 1), H12) == LOOP1
    out = pushforward(SetMap.of([1], 2), LOOP1)
    assert out.r == 2 and out.edges == {(1, 1): 1}
    assert pushforward(SetMap.identity(2), H12) == H12
    with pytest.raises(GraphError):
        pushforward(SetMap.identity(1), H12)


def test_pushforward_moves_unmarked():
    G = make_graph(1, 1, [(1, 2), (2, 2)])
    out = pushforward(SetMap.of([2], 3), G)
    assert out.r == 3 and out.u == 1 and out.edges == {(2, 4): 1, (4, 4): 1}


def test_pullback_examples():
    out = pullback(SetMap.of([1], 2), H12)
    assert out.r == 1 and out.u == 1 and out.edges == {(1, 2): 1}
    out = pullback(SetMap.of([], 1), LOOP1)
    assert out.r == 0 and out.u == 1 and out.edges == {(1, 1): 1}
    assert pullback(SetMap.identity(2), H12) == H12


def test_pullback_reorders_marks():
    G = make_graph(3, 0, [(1, 3), (2, 2)])
    out = pullback(SetMap.of([3, 1], 3), G)
    # new mark 1 = old 3, new mark 2 = old 1, old mark 2 becomes vertex 3
    assert out.r == 2 and out.u == 1 and out.edges == {(1, 2): 1, (3, 3): 1}


def test_pullback_errors():
    with pytest.raises(GraphError):
        pullback(SetMap.of([1, 1], 2), H12)
    with pytest.raises(GraphError):
        pullback(SetMap.of([1], 1), H12)


def test_setmap_validation_and_compose():
    phi = SetMap.of([1], 2)
    assert compose(SetMap.identity(2), phi) == phi
    assert compose(phi, SetMap.identity(1)) == phi
    assert compose(phi, SetMap.of([1], 1)) == phi
    with pytest.raises(GraphError):
        compose(phi, phi)
    with pytest.raises(GraphError):
        SetMap.of([3], 2)
    assert SetMap.forget(3, [2]).images == (1, 3)
    assert SetMap.forget(2, [1, 2]).images == ()


def test_contraction_cases():
    res = contract_vertex(make_graph(1, 1, []), 2)
    assert res.multiplier is Multiplier.ZERO and res.case == "0"

    res = contract_vertex(make_graph(0, 1, [(1, 1)]), 1)
    assert res.multiplier is Multiplier.TWO_MINUS_2G and res.graph == MarkedGraph(0, 0)

    res = contract_vertex(make_graph(2, 1, [(1, 3), (2, 3)]), 3)
    assert res.multiplier is Multiplier.ONE and res.graph == H12 and res.case == "2a"

    res = contract_vertex(make_graph(1, 1, [(1, 2), (1, 2)]), 2)
    assert res.graph == LOOP1 and res.case == "2b"

    res = contract_vertex(make_graph(1, 1, [(2, 2), (1, 2)]), 2)
    assert res.multiplier is Multiplier.ONE and res.graph == LOOP1 and res.case == "3"

    res = contract_vertex(make_graph(1, 1, [(1, 2)]), 2)
    assert res.graph == make_graph(1, 0) and res.case == "1"


def test_contraction_shifts_later_ids():
    G = make_graph(1, 3, [(1, 2), (2, 3), (3, 4), (4, 4), (4, 4)])
    res = contract_vertex(G, 2)
    assert res.graph == make_graph(1, 2, [(1, 2), (2, 3), (3, 3), (3, 3)])


def test_contraction_errors():
    with pytest.raises(GraphError):
        contract_vertex(LOOP1, 1)
    with pytest.raises(GraphError):
        contract_vertex(make_graph(0, 2, [(1, 2)] * 3), 1)
    with pytest.raises(GraphError):
        contract_vertex(make_graph(0, 1, [(1, 1)] * 2), 1)


def test_contract_fully_examples():
    assert contract_fully(MarkedGraph(0, 0)) == (MarkedGraph(0, 0), 0)
    assert contract_fully(make_graph(0, 1, [(1, 1)])) == (MarkedGraph(0, 0), 1)
    assert contract_fully(make_graph(1, 1, [(1, 2), (1, 2)])) == (LOOP1, 0)
    assert contract_fully(make_graph(0, 2, [(1, 2)])) == (None, 0)


def test_contract_fully_dumbbell_gives_two_loops():
    H, k = contract_fully(make_graph(0, 2, [(1, 1), (1, 2), (2, 2)]))
    assert k == 0 and H == make_graph(0, 1, [(1, 1), (1, 1)])


@st.composite
def graphs(draw):
    r = draw(st.integers(0, 3))
    u = draw(st.integers(0, 5))
    n = r + u
    if not n:
        return MarkedGraph(0, 0)
    return MarkedGraph(r, u, draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=8)))


@given(graphs(), st.randoms(use_true_random=False))
def test_contraction_order_independent(G, rnd):
    H, k = contract_fully(G)
    H2, k2 = contract_fully(G, rnd.choice)
    if H is None:
        assert H2 is None
    else:
        assert is_contracted(H)
        assert (canonical_key(H), k) == (canonical_key(H2), k2)


@given(graphs(), graphs())
def test_glue_chi(G, H):
    if G.r == H.r:
        assert glue(G, H).euler_char() == G.euler_char() + H.euler_char() - G.r


@pytest.mark.parametrize(
    "check",
    [
        props.check_chi_glue,
        props.check_chi_pushforward,
        props.check_chi_pullback,
        props.check_pushforward_composition,
        props.check_pullback_composition,
        props.check_glue_pushforward,
    ],
)
def test_seeded_properties(check):
    res = check(random.Random(3), 300)
    assert res.passed, res.example
