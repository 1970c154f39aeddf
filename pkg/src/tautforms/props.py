"""Seeded randomized property checks for the graph calculus.

Each check draws ``cases`` random instances from a ``random.Random`` and
returns a :class:`PropertyResult`; the first failing instance is kept.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from . import expr as ex
from .coeffs import Poly
from .graph_ops import (
    SetMap,
    compose,
    contract_fully,
    glue,
    pullback,
    pushforward,
)
from .graphs import MarkedGraph, canonical_key, is_contracted


@dataclass
class PropertyResult:
    name: str
    cases: int
    failures: int = 0
    example: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def as_dict(self) -> dict:
        return {"property": self.name, "cases": self.cases, "failures": self.failures, "example": self.example}


# generators ------------------------------------------------------------------------------


def random_graph(rng: random.Random, r: int, u_max: int = 4, e_max: int = 6) -> MarkedGraph:
    u = rng.randint(0, u_max)
    n = r + u
    e = rng.randint(0, e_max) if n else 0
    edges = []
    for _ in range(e):
        a = rng.randint(1, n)
        b = a if rng.random() < 0.25 else rng.randint(1, n)
        edges.append((a, b))
    return MarkedGraph(r, u, edges)


def random_map(rng: random.Random, s: int, r: int, injective: bool = False) -> SetMap:
    if injective:
        return SetMap(s, r, tuple(rng.sample(range(1, r + 1), s)))
    return SetMap(s, r, tuple(rng.randint(1, r) for _ in range(s)))


def random_coeff(rng: random.Random) -> Poly:
    c = Poly.const(rng.choice([-3, -2, -1, 1, 2, 5]))
    if rng.random() < 0.3:
        c = c * Poly.var("g") + rng.randint(-2, 2)
    return c


def random_expr(rng: random.Random, r: int, terms: int = 3, u_max: int = 2, e_max: int = 4) -> ex.TautExpr:
    return ex.TautExpr(
        r, [(random_graph(rng, r, u_max, e_max), random_coeff(rng)) for _ in range(rng.randint(0, terms))]
    )


# checks --------------------------------------------------------------------------------------


def _run(name: str, cases: int, rng: random.Random, case: Callable) -> PropertyResult:
    res = PropertyResult(name, cases)
    for _ in range(cases):
        ok, info = case(rng)
        if not ok:
            res.failures += 1
            if res.example is None:
                res.example = info
    return res


def check_chi_glue(rng, cases):
    def case(rng):
        r = rng.randint(0, 3)
        G, H = random_graph(rng, r), random_graph(rng, r)
        K = glue(G, H)
        ok = K.euler_char() == G.euler_char() + H.euler_char() - r and K.u == G.u + H.u
        return ok, f"{G} | {H}"

    return _run("chi(glue(G,H)) = chi(G) + chi(H) - r", cases, rng, case)


def check_chi_pushforward(rng, cases):
    def case(rng):
        s, r = rng.randint(0, 3), rng.randint(0, 3)
        if s and not r:
            r = 1
        G = random_graph(rng, s)
        phi = random_map(rng, s, r)
        P = pushforward(phi, G)
        ok = P.euler_char() == G.euler_char() - s + r and P.num_edges == G.num_edges and P.u == G.u
        return ok, f"{phi} {G}"

    return _run("chi(phi_* G) = chi(G) - s + r", cases, rng, case)


def check_chi_pullback(rng, cases):
    def case(rng):
        r = rng.randint(0, 4)
        s = rng.randint(0, r)
        G = random_graph(rng, r)
        phi = random_map(rng, s, r, injective=True)
        P = pullback(phi, G)
        ok = P.euler_char() == G.euler_char() and P.u == G.u + r - s
        return ok, f"{phi} {G}"

    return _run("chi(phi^* G) = chi(G)", cases, rng, case)


def check_pushforward_composition(rng, cases):
    def case(rng):
        t, s, r = rng.randint(0, 3), rng.randint(1, 3), rng.randint(1, 3)
        G = random_graph(rng, t)
        psi, phi = random_map(rng, t, s), random_map(rng, s, r)
        lhs = canonical_key(pushforward(compose(phi, psi), G))
        rhs = canonical_key(pushforward(phi, pushforward(psi, G)))
        return lhs == rhs, f"{phi} {psi} {G}"

    return _run("(phi psi)_* = phi_* psi_*", cases, rng, case)


def check_pullback_composition(rng, cases):
    def case(rng):
        r = rng.randint(0, 4)
        s = rng.randint(0, r)
        t = rng.randint(0, s)
        G = random_graph(rng, r)
        phi, psi = random_map(rng, s, r, True), random_map(rng, t, s, True)
        lhs = canonical_key(pullback(compose(phi, psi), G))
        rhs = canonical_key(pullback(psi, pullback(phi, G)))
        return lhs == rhs, f"{phi} {psi} {G}"

    return _run("(phi psi)^* = psi^* phi^*", cases, rng, case)


def check_glue_pushforward(rng, cases):
    def case(rng):
        s, r = rng.randint(0, 3), rng.randint(1, 3)
        G, H = random_graph(rng, s, 3, 4), random_graph(rng, s, 3, 4)
        phi = random_map(rng, s, r)
        lhs = canonical_key(pushforward(phi, glue(G, H)))
        rhs = canonical_key(glue(pushforward(phi, G), pushforward(phi, H)))
        return lhs == rhs, f"{phi} {G} {H}"

    return _run("phi_*(G glue H) = phi_* G glue phi_* H", cases, rng, case)


def _contract_outcome(G, choose=None):
    H, k = contract_fully(G, choose)
    if H is None:
        return None
    if not is_contracted(H):
        return "not contracted"
    return canonical_key(H), k


def check_confluence(rng, cases, orders: int = 6):
    def case(rng):
        G = random_graph(rng, rng.randint(0, 3), u_max=6, e_max=8)
        ref = _contract_outcome(G)
        for _ in range(orders):
            if _contract_outcome(G, rng.choice) != ref:
                return False, f"{G}"
        return ref != "not contracted", f"{G}"

    return _run("contraction is order independent", cases, rng, case)


def check_normalize_idempotent(rng, cases):
    def case(rng):
        A = random_expr(rng, rng.randint(0, 3), u_max=3, e_max=6)
        N = ex.normalize(A)
        ok = ex.normalize(N) == N and all(is_contracted(g) for g in N.graphs())
        return ok, str(A)

    return _run("normalize is idempotent", cases, rng, case)


def check_projection_formula(rng, cases):
    def case(rng):
        r = rng.randint(1, 3)
        s = rng.randint(0, r)
        phi = random_map(rng, s, r, injective=True)
        A, B = random_expr(rng, r), random_expr(rng, s)
        lhs = ex.normalize(ex.integrate(phi, ex.wedge(ex.pullback_expr(phi, B), A)))
        rhs = ex.normalize(ex.wedge(B, ex.integrate(phi, A)))
        return lhs == rhs, f"{phi} A={A} B={B}"

    return _run("int(pb(B) ^ A) = B ^ int(A)", cases, rng, case)


def check_degrees(rng, cases):
    def case(rng):
        r = rng.randint(0, 3)
        A, B = random_expr(rng, r), random_expr(rng, r)
        W = ex.wedge(A, B)
        sums = {a + b for a in ex.form_degrees(A) for b in ex.form_degrees(B)}
        ok = ex.form_degrees(W) <= sums
        s = rng.randint(0, r)
        phi = random_map(rng, s, r, injective=True)
        for _, G, c in A.terms():
            I = ex.integrate(phi, ex.from_graph(G, c))
            want = 2 * (r - G.euler_char()) - 2 * (r - s)
            ok = ok and all(d == want for d in ex.form_degrees(I))
        return ok, f"A={A} B={B} {phi}"

    return _run("degree bookkeeping under wedge and integrate", cases, rng, case)


ALL_CHECKS = (
    check_chi_glue,
    check_chi_pushforward,
    check_chi_pullback,
    check_pushforward_composition,
    check_pullback_composition,
    check_glue_pushforward,
    check_confluence,
    check_normalize_idempotent,
    check_projection_formula,
    check_degrees,
)


def run_all(seed: int = 0, cases: int = 1000) -> list:
    results = []
    for i, check in enumerate(ALL_CHECKS):
        results.append(check(random.Random(f"{seed}:{i}"), cases))
    return results
