"""Sparse multivariate polynomials with exact rational coefficients.

The coefficient ring of the form calculus.  Indeterminates are arbitrary
strings; the engine itself only uses ``g``, ``n`` and ``m1``, ``m2``, ...
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Monomial = tuple  # sorted tuple of (name, exponent) with exponent > 0

_NAME_RE = re.compile(r"^([A-Za-z_]+)(\d*)$")


def var_order(name: str):
    """Sort key for indeterminates: alphabetic prefix, then numeric suffix."""
    m = _NAME_RE.match(name)
    if m is None:
        return (name, -1)
    prefix, digits = m.groups()
    return (prefix, int(digits) if digits else -1)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items(), key=lambda kv: var_order(kv[0])))


class Poly:
    """An immutable polynomial, stored as ``{monomial: Fraction}`` without zeros."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    mono = tuple(
                        sorted(((n, e) for n, e in mono if e), key=lambda kv: var_order(kv[0]))
                    )
                    c = clean.get(mono, 0) + c
                    if c:
                        clean[mono] = c
                    else:
                        clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, c: Rational) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Poly":
        if not _NAME_RE.match(name):
            raise ValueError(f"bad indeterminate name {name!r}")
        return cls({((name, exp),): 1})

    @classmethod
    def coerce(cls, x: "PolyLike") -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, str):
            return cls.var(x)
        if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Poly")

    # accessors -----------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def variables(self) -> set:
        return {name for mono in self._terms for name, _ in mono}

    def degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self._terms), default=-1)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def coefficients_in(self, names: Iterable[str]) -> dict:
        """Split into ``{monomial in names: Poly in the remaining variables}``."""
        names = set(names)
        out: dict = {}
        for mono, c in self._terms.items():
            inner = tuple((n, e) for n, e in mono if n in names)
            rest = tuple((n, e) for n, e in mono if n not in names)
            out.setdefault(inner, {})
            out[inner][rest] = out[inner].get(rest, 0) + c
        return {k: Poly(v) for k, v in out.items()}

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return Poly(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Poly(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute(self, bindings: Mapping[str, "PolyLike"]) -> "Poly":
        """Simultaneously replace indeterminates by rationals or polynomials."""
        bound = {name: Poly.coerce(v) for name, v in bindings.items()}
        result = Poly()
        for mono, c in self._terms.items():
            term = Poly.const(c)
            free = []
            for name, e in mono:
                if name in bound:
                    term = term * bound[name] ** e
                else:
                    free.append((name, e))
            result = result + term * Poly({tuple(free): 1})
        return result

    # comparison / hashing ----------------------------------------------------

    def __eq__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # rendering ---------------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order (``g > m1 > m2 > ... > n``)."""
        names = sorted(self.variables(), key=var_order)

        def key(item):
            exps = dict(item[0])
            vec = tuple(exps.get(n, 0) for n in names)
            return (sum(vec), vec)

        return sorted(self._terms.items(), key=key, reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            factors = [n if e == 1 else f"{n}^{e}" for n, e in mono]
            if a != 1 or not factors:
                factors.insert(0, str(a))
            body = "*".join(factors)
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def is_single_term(self) -> bool:
        return len(self._terms) == 1


PolyLike = Union[Poly, int, Fraction, str]

ZERO = Poly()
ONE = Poly.const(1)
G = Poly.var("g")
TWO_MINUS_2G = 2 - 2 * G


def add(a: PolyLike, b: PolyLike) -> Poly:
    return Poly.coerce(a) + Poly.coerce(b)


def mul(a: PolyLike, b: PolyLike) -> Poly:
    return Poly.coerce(a) * Poly.coerce(b)


def pow(a: PolyLike, k: int) -> Poly:  # noqa: A001 - mirrors the ring operation name
    return Poly.coerce(a) ** k


def substitute(p: PolyLike, bindings: Mapping[str, PolyLike]) -> Poly:
    return Poly.coerce(p).substitute(bindings)


def is_zero(p: PolyLike) -> bool:
    return Poly.coerce(p).is_zero()
