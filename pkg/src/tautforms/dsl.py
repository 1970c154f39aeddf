"""A small expression language for tautological forms.

Grammar::

    program := ("@r=" UINT)? expr
    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "-" factor | atom
    atom    := base ("^" UINT)?
    base    := SCALAR | SYMBOL | GEN
             | "int" "[" marks "]" "(" expr ")"
             | "pb" "[" marks "]" "(" expr ")"
             | "(" expr ")"
    GEN     := h(i,j) | e(i) | e1 | ed(d) | nu
    SCALAR  := UINT ("/" UINT)?
    SYMBOL  := g | n | m1 | m2 | ...

``@r=K`` fixes the ambient ``C^K`` of the whole expression (default 0).
``int[L](E)`` evaluates ``E`` on ``C^(K+|L|)`` and integrates out the marks
listed in ``L``; ``pb[i1,...,is](E)`` evaluates ``E`` on ``C^s`` and pulls it
back along ``k -> i_k``.  ``e1``, ``ed(d)`` and ``nu`` are pulled back to the
current ambient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .coeffs import Poly, PolyLike
from .expr import (
    TautExpr,
    gen_ed,
    gen_h,
    gen_nu,
    integrate_out,
    power,
    pullback_expr,
    scale,
    specialize,
    unit_expr,
    wedge,
    add_expr,
)
from .graph_ops import SetMap
from .graphs import GraphError, MarkedGraph


class DslError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: Optional[int] = None):
        if pos is not None:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            msg = f"line {line}, column {col}: {msg}"
            self.line, self.column = line, col
        super().__init__(msg)


# AST ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Gen:
    name: str  # "h", "e", "ed", "nu"
    args: tuple
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((sign, node), ...)


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Integral:
    marks: tuple
    body: object
    pos: int = 0


@dataclass(frozen=True)
class Pullback:
    images: tuple
    body: object
    pos: int = 0


@dataclass(frozen=True)
class Program:
    r: int
    body: object


# tokenizer ---------------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<dir>@r\s*=)|(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()\[\],]))"
)
_SYMBOL_RE = re.compile(r"^(g|n|m\d+)$")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise DslError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return DslError(msg, self.text, tok[2])

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def uint(self):
        tok = self.next()
        if tok[0] != "num":
            raise self.error(f"expected an integer, found {tok[1] or 'end of input'!r}", tok)
        return int(tok[1])

    def program(self) -> Program:
        r = 0
        if self.peek()[0] == "dir":
            self.next()
            r = self.uint()
        body = self.expr()
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return Program(r, body)

    def expr(self):
        terms = [(1, self.term())]
        while self.peek()[1] in ("+", "-"):
            sign = 1 if self.next()[1] == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.peek()[1] == "*":
            self.next()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self):
        if self.peek()[1] == "-":
            self.next()
            return Neg(self.factor())
        return self.atom()

    def atom(self):
        base = self.base()
        if self.peek()[1] == "^":
            self.next()
            return Pow(base, self.uint())
        return base

    def marks(self):
        self.expect("[")
        out = []
        if self.peek()[1] != "]":
            out.append(self.uint())
            while self.peek()[1] == ",":
                self.next()
                out.append(self.uint())
        self.expect("]")
        return tuple(out)

    def args(self):
        self.expect("(")
        out = [self.uint()]
        while self.peek()[1] == ",":
            self.next()
            out.append(self.uint())
        self.expect(")")
        return tuple(out)

    def base(self):
        tok = self.peek()
        kind, val, pos = tok
        if kind == "num":
            self.next()
            num = Fraction(int(val))
            if self.peek()[1] == "/":
                self.next()
                den = self.uint()
                if den == 0:
                    raise self.error("division by zero", tok)
                num = num / den
            return Num(num)
        if val == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind != "id":
            raise self.error(f"unexpected {val or 'end of input'!r}")
        self.next()
        if val == "int":
            marks = self.marks()
            self.expect("(")
            body = self.expr()
            self.expect(")")
            if len(set(marks)) != len(marks):
                raise DslError(f"int list {list(marks)} repeats a mark", self.text, pos)
            return Integral(marks, body, pos)
        if val == "pb":
            images = self.marks()
            self.expect("(")
            body = self.expr()
            self.expect(")")
            return Pullback(images, body, pos)
        if val == "h":
            args = self.args()
            if len(args) != 2:
                raise DslError("h takes two mark indices", self.text, pos)
            return Gen("h", args, pos)
        if val == "e":
            args = self.args()
            if len(args) != 1:
                raise DslError("e takes one mark index", self.text, pos)
            return Gen("h", (args[0], args[0]), pos)
        if val == "ed":
            args = self.args()
            if len(args) != 1 or args[0] < 1:
                raise DslError("ed takes one index d >= 1", self.text, pos)
            return Gen("ed", args, pos)
        if val == "e1":
            return Gen("ed", (1,), pos)
        if val == "nu":
            return Gen("nu", (), pos)
        if _SYMBOL_RE.match(val):
            return Sym(val)
        raise DslError(f"unknown name {val!r}", self.text, pos)


def parse(text: str) -> Program:
    return _Parser(text).program()


# evaluation -----------------------------------------------------------------------------


def _as_form(x, r: int) -> TautExpr:
    return scale(unit_expr(r), x) if isinstance(x, Poly) else x


def _eval(node, r: int, text: str):
    if isinstance(node, Num):
        return Poly.const(node.value)
    if isinstance(node, Sym):
        return Poly.var(node.name)
    if isinstance(node, Gen):
        try:
            if node.name == "h":
                return gen_h(r, *node.args)
            if node.name == "ed":
                return gen_ed(r, node.args[0])
            return gen_nu(r)
        except GraphError as exc:
            raise DslError(f"{exc} (ambient C^{r})", text, node.pos) from None
    if isinstance(node, Neg):
        v = _eval(node.arg, r, text)
        return -v if isinstance(v, Poly) else scale(v, -1)
    if isinstance(node, Sum):
        acc = None
        for sign, t in node.terms:
            v = _eval(t, r, text)
            if sign < 0:
                v = -v if isinstance(v, Poly) else scale(v, -1)
            if acc is None:
                acc = v
            elif isinstance(acc, Poly) and isinstance(v, Poly):
                acc = acc + v
            else:
                acc = add_expr(_as_form(acc, r), _as_form(v, r))
        return acc
    if isinstance(node, Prod):
        acc = None
        for f in node.factors:
            v = _eval(f, r, text)
            if acc is None:
                acc = v
            elif isinstance(acc, Poly) and isinstance(v, Poly):
                acc = acc * v
            elif isinstance(acc, Poly):
                acc = scale(v, acc)
            elif isinstance(v, Poly):
                acc = scale(acc, v)
            else:
                acc = wedge(acc, v)
        return acc
    if isinstance(node, Pow):
        v = _eval(node.base, r, text)
        return v ** node.exp if isinstance(v, Poly) else power(v, node.exp)
    if isinstance(node, Integral):
        inner = r + len(node.marks)
        for k in node.marks:
            if not 1 <= k <= inner:
                raise DslError(f"int mark {k} outside 1..{inner}", text, node.pos)
        body = _as_form(_eval(node.body, inner, text), inner)
        return integrate_out(body, node.marks)
    if isinstance(node, Pullback):
        for k in node.images:
            if not 1 <= k <= r:
                raise DslError(f"pb image {k} outside 1..{r}", text, node.pos)
        s = len(node.images)
        body = _as_form(_eval(node.body, s, text), s)
        return pullback_expr(SetMap(s, r, node.images), body)
    raise TypeError(f"unknown node {node!r}")


def evaluate(
    program: Union[Program, str],
    genus: Optional[int] = None,
    bindings: Optional[Mapping[str, PolyLike]] = None,
) -> TautExpr:
    """Evaluate a program to a :class:`TautExpr` on its declared ambient.

    ``genus`` (if given) and ``bindings`` are substituted into the coefficients.
    """
    text = program if isinstance(program, str) else ""
    if isinstance(program, str):
        program = parse(program)
    result = _as_form(_eval(program.body, program.r, text), program.r)
    subs = dict(bindings or {})
    if genus is not None:
        subs["g"] = genus
    return specialize(result, subs) if subs else result


def parse_poly(text: str) -> Poly:
    value = _eval(parse(text).body, 0, text)
    if not isinstance(value, Poly):
        raise DslError(f"{text!r} is not a polynomial")
    return value


# rendering -----------------------------------------------------------------------------------


def _edge_factors(pairs: list) -> list:
    out = []
    for (a, b), m in pairs:
        atom = f"e({a})" if a == b else f"h({a},{b})"
        out.append(atom if m == 1 else f"{atom}^{m}")
    return out


def _clusters(G: MarkedGraph) -> list:
    parent = {v: v for v in G.unmarked()}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for (a, b), _ in G.edge_items():
        if a > G.r and b > G.r:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for v in G.unmarked():
        groups.setdefault(find(v), []).append(v)
    return [groups[k] for k in sorted(groups)]


def render_graph(G: MarkedGraph) -> str:
    """Text for the form of ``G``: a product of generators and integrals.

    Edges between marks become ``h``/``e`` factors.  Each cluster of unmarked
    vertices becomes ``e1``, ``ed(d)``, ``nu`` when it is one of those graphs,
    and an explicit ``int[...]`` otherwise.
    """
    r = G.r
    factors = _edge_factors([(p, m) for p, m in G.edge_items() if p[1] <= r])
    for cluster in _clusters(G):
        local = {k: k for k in range(1, r + 1)}
        for i, v in enumerate(cluster):
            local[v] = r + 1 + i
        pairs = {}
        for (a, b), m in G.edge_items():
            if a in cluster or b in cluster:
                a2, b2 = sorted((local[a], local[b]))
                pairs[(a2, b2)] = m
        pairs = sorted(pairs.items())
        touches_marks = any(a <= r for (a, _), _ in pairs)
        if not touches_marks and len(cluster) == 1 and pairs and pairs[0][1] >= 2:
            d = pairs[0][1] - 1
            factors.append("e1" if d == 1 else f"ed({d})")
            continue
        if not touches_marks and len(cluster) == 2 and pairs == [((r + 1, r + 2), 3)]:
            factors.append("nu")
            continue
        body = "*".join(_edge_factors(pairs)) or "1"
        marks = ",".join(str(r + 1 + i) for i in range(len(cluster)))
        factors.append(f"int[{marks}]({body})")
    return "*".join(factors) if factors else "1"


def render_expr(A: TautExpr) -> str:
    """Terms in :func:`~tautforms.expr.term_order`, coefficients in canonical order."""
    parts = []
    for _, G, c in A.terms():
        gtext = render_graph(G)
        is_unit = gtext == "1"
        if c.is_single_term():
            ctext = str(c)
            negative = ctext.startswith("-")
            mag = ctext[1:] if negative else ctext
            if is_unit:
                body = mag
            elif mag == "1":
                body = gtext
            else:
                body = f"{mag}*{gtext}"
        else:
            negative = False
            body = f"({c})" if is_unit else f"({c})*{gtext}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts) if parts else "0"


def render_program(A: TautExpr) -> str:
    return f"@r={A.r} {render_expr(A)}"
