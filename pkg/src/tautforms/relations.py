"""Normal-function pullbacks and relations from vanishing powers.

For ``m = (m_1..m_r)`` and ``n`` with ``sum(m) = (2g-2) n`` the pullback of the
Betti form along ``F_m`` satisfies

    -2 F_m^* w0 = sum_{i<j} 2 m_i m_j h_ij + sum_i (m_i^2 + 2 m_i n) e^A_i + n^2 e1

and ``w0^(g+1) = 0``, so every fiber integral of the ``(g+1)``-st power is a
relation among tautological forms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .coeffs import Poly
from .expr import (
    TautExpr,
    coefficient_split,
    gen_eA,
    gen_ed,
    gen_h,
    gen_nu,
    integrate_out,
    normalize,
    power,
    scale,
    specialize,
    unit_expr,
    wedge,
    zero_expr,
)

Scalar = Union[int, Poly, str]


class ConstraintError(ValueError):
    """``sum(m) != (2g-2) n`` for fully numeric data."""


@dataclass(frozen=True)
class RWQuery:
    """Data of a relation query.

    ``m`` entries and ``n`` may be integers or polynomials (strings are read as
    indeterminates).  ``g`` is an integer genus or ``None`` for symbolic ``g``.
    ``forget_to`` is the number of marks kept after fiber integration.
    """

    g: Optional[int]
    m: tuple
    n: Scalar = 0
    forget_to: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))
        if self.g is not None and (not isinstance(self.g, int) or self.g < 2):
            raise ValueError(f"genus must be an integer >= 2, got {self.g!r}")
        s = self.target_r
        if not 0 <= s <= self.r:
            raise ValueError(f"forget_to must lie in 0..{self.r}, got {s}")

    @property
    def r(self) -> int:
        return len(self.m)

    @property
    def target_r(self) -> int:
        return self.r if self.forget_to is None else self.forget_to

    def is_numeric(self) -> bool:
        return self.g is not None and all(isinstance(x, int) for x in (*self.m, self.n))

    def check(self) -> None:
        if self.is_numeric() and sum(self.m) != (2 * self.g - 2) * self.n:
            raise ConstraintError(
                f"sum(m) = {sum(self.m)} but (2g-2)n = {(2 * self.g - 2) * self.n} for g={self.g}"
            )


def symbolic_m(r: int) -> tuple:
    return tuple(f"m{i}" for i in range(1, r + 1))


def omega_pullback(q: RWQuery) -> TautExpr:
    """``-2 F_m^* w0`` on ``C^r`` as a combination of ``h_ij``, ``e^A_i`` and ``e1``."""
    q.check()
    r = q.r
    m = [Poly.coerce(x) for x in q.m]
    n = Poly.coerce(q.n)
    out = zero_expr(r)
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            out = out + scale(gen_h(r, i, j), 2 * m[i - 1] * m[j - 1])
    for i in range(1, r + 1):
        out = out + scale(gen_eA(r, i), m[i - 1] ** 2 + 2 * m[i - 1] * n)
    out = out + scale(gen_ed(r, 1), n ** 2)
    if q.g is not None:
        out = specialize(out, {"g": q.g})
    return out


def rw_power(q: RWQuery) -> TautExpr:
    """``(2 F_m^* w0)^(g+1)`` on ``C^r``, expanded but not integrated."""
    if q.g is None:
        raise ValueError("the exponent g+1 needs a numeric genus")
    return power(scale(omega_pullback(q), -1), q.g + 1)


def rw_relation(q: RWQuery) -> TautExpr:
    """Integrate ``(2 F_m^* w0)^(g+1)`` down to ``C^forget_to`` and normalize.

    With numeric data satisfying the degree constraint the result represents
    the zero form.  With symbolic ``m``/``n`` it is a candidate: split it with
    :func:`relation_components` to get one relation per monomial.
    """
    top = rw_power(q)
    s = q.target_r
    out = integrate_out(top, range(s + 1, q.r + 1)) if s < q.r else normalize(top)
    return specialize(out, {"g": q.g})


def relation_components(A: TautExpr, r: int) -> dict:
    """Split a symbolic-``m`` result into ``{monomial in m, n: TautExpr}``."""
    return coefficient_split(A, [*symbolic_m(r), "n"])


# identity suite -----------------------------------------------------------------------------


@dataclass
class IdentityCheck:
    name: str
    expected: str
    computed: str
    passed: bool

    def as_dict(self) -> dict:
        return {
            "identity": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
        }


def _check(name: str, computed: TautExpr, expected: TautExpr) -> IdentityCheck:
    return IdentityCheck(name, str(expected), str(computed), computed == expected)


def e1_chain() -> tuple:
    """The two fiber integrals recovering ``e1`` from ``delta^* w0`` (symbolic g)."""
    X = omega_pullback(RWQuery(None, (1, -1), 0))
    step1 = integrate_out(power(X, 2), [2])
    step2 = integrate_out(power(step1, 2), [1])
    return step1, step2


def verify_paper_identities() -> list:
    g = Poly.var("g")
    checks = []

    X = omega_pullback(RWQuery(None, (1, -1), 0))
    checks.append(
        _check(
            "-2 delta^* w0 = -2h + e(1) + e(2)",
            X,
            scale(gen_h(2, 1, 2), -2) + gen_eA(2, 1) + gen_eA(2, 2),
        )
    )
    step1, step2 = e1_chain()
    checks.append(
        _check("int_p1 (-2 delta^* w0)^2 = -4g e^A + e1", step1, scale(gen_eA(1, 1), -4 * g) + gen_ed(1, 1))
    )
    checks.append(
        _check("int_p (-4g e^A + e1)^2 = 16g(2g-1) e1", step2, scale(gen_ed(0, 1), 16 * g * (2 * g - 1)))
    )

    rel = rw_relation(RWQuery(2, (1, -1), 0, forget_to=0))
    checks.append(_check("genus 2: 8 nu + 12 e1 = 0", rel, scale(gen_nu(0), 8) + scale(gen_ed(0, 1), 12)))
    cube = rw_power(RWQuery(2, (1, -1), 0))
    checks.append(
        IdentityCheck("genus 2: the cube has ten 6-form terms", "10", str(len(cube)), len(cube) == 10)
    )

    h12 = gen_h(2, 1, 2)
    checks.append(_check("int_p1 h = 1", integrate_out(h12, [2]), unit_expr(1)))
    checks.append(_check("int_p1 h^2 = e^A", integrate_out(power(h12, 2), [2]), gen_eA(1, 1)))
    for i in (1, 2):
        checks.append(
            _check(
                f"int_p1 h ^ p{i}^* e^A = e^A",
                integrate_out(wedge(h12, gen_eA(2, i)), [2]),
                gen_eA(1, 1),
            )
        )
    checks.append(
        _check(
            "int_p12 p13^* h ^ p23^* h = h",
            integrate_out(wedge(gen_h(3, 1, 3), gen_h(3, 2, 3)), [3]),
            gen_h(2, 1, 2),
        )
    )
    checks.append(_check("int_p e^A = 2 - 2g", integrate_out(gen_eA(1, 1), [1]), scale(unit_expr(0), 2 - 2 * g)))
    return checks


def report_json(checks: Sequence[IdentityCheck]) -> str:
    return json.dumps([c.as_dict() for c in checks], indent=2)


def report_table(checks: Sequence[IdentityCheck]) -> str:
    width = max(len(c.name) for c in checks)
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status}  {c.name:<{width}}  computed: {c.computed}")
        if not c.passed:
            lines.append(f"      {'':<{width}}  expected: {c.expected}")
    return "\n".join(lines)
