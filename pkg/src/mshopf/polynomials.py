"""Sparse multivariate polynomials with exact rational coefficients.

Variables are tuples such as ``("q",)``, ``("l", 2)`` or ``("a", key)``; a
monomial is a sorted tuple of ``(variable, exponent)`` pairs.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

Var = tuple
Mono = tuple


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Mono, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = Fraction(c)

    @classmethod
    def const(cls, c) -> Poly:
        return cls({(): c})

    @classmethod
    def var(cls, v: Var, power: int = 1) -> Poly:
        return cls({((v, power),): 1} if power else {(): 1})

    @staticmethod
    def lift(x) -> Poly:
        return x if isinstance(x, Poly) else Poly.const(x)

    def _add_into(self, m, c):
        v = self.terms.get(m, 0) + c
        if v:
            self.terms[m] = v
        else:
            self.terms.pop(m, None)

    def __add__(self, other):
        other = Poly.lift(other)
        out = Poly(self.terms)
        for m, c in other.terms.items():
            out._add_into(m, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        out = Poly()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._add_into(_mono_mul(m1, m2), c1 * c2)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self, select: Callable[[Var], bool] | None = None) -> int:
        """Total degree, counting only variables accepted by ``select``."""
        best = 0
        for m in self.terms:
            best = max(best, sum(e for v, e in m if select is None or select(v)))
        return best

    def truncate(self, select: Callable[[Var], bool], order: int) -> Poly:
        """Drop monomials whose ``select``-degree exceeds ``order``."""
        return Poly(
            {m: c for m, c in self.terms.items() if sum(e for v, e in m if select(v)) <= order}
        )

    def substitute(
        self,
        mapping: dict[Var, "Poly"],
        select: Callable[[Var], bool] | None = None,
        order: int | None = None,
    ) -> Poly:
        """Replace variables by polynomials, truncating products on the fly."""

        def trunc(p):
            return p.truncate(select, order) if order is not None else p

        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                base = Poly.lift(mapping[v])
                p = Poly.const(1)
                for _ in range(e):
                    p = trunc(p * base)
                powers[key] = p
            return powers[key]

        out = Poly()
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                if v in mapping:
                    term = trunc(term * power(v, e))
                else:
                    term = trunc(term * Poly.var(v, e))
            out = out + term
        return out

    def coefficient(self, monomial: Iterable[tuple[Var, int]], select: Callable[[Var], bool]) -> Poly:
        """Coefficient (a polynomial in the other variables) of a monomial in the selected ones."""
        target = tuple(sorted(monomial))
        out = Poly()
        for m, c in self.terms.items():
            sel = tuple((v, e) for v, e in m if select(v))
            if sel == target:
                out._add_into(tuple((v, e) for v, e in m if not select(v)), c)
        return out

    def split(self, select: Callable[[Var], bool]) -> dict[Mono, "Poly"]:
        """Group by the monomial in the selected variables."""
        out: dict[Mono, Poly] = {}
        for m, c in self.terms.items():
            sel = tuple((v, e) for v, e in m if select(v))
            rest = tuple((v, e) for v, e in m if not select(v))
            out.setdefault(sel, Poly())._add_into(rest, c)
        return out

    def evaluate(self, values: dict[Var, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= Fraction(values[v]) ** e
            total += t
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.items():
            body = "*".join(
                ("".join(str(x) for x in v) if len(v) < 3 else str(v)) + (f"^{e}" if e != 1 else "")
                for v, e in m
            )
            parts.append(f"{c}" + (f"*{body}" if body else ""))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            [[[list(map(_jsonable, v)), e] for v, e in m], [str(c.numerator), str(c.denominator)]]
            for m, c in self.items()
        ]


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


Q = ("q",)


def q_power(n: int) -> Poly:
    return Poly.var(Q, n)


def q_coefficients(p: Poly) -> list[Fraction]:
    """Coefficient list in q (only valid for polynomials in q alone)."""
    if p.variables() - {Q}:
        raise ValueError("polynomial involves variables other than q")
    deg = p.degree()
    out = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        out[dict(m).get(Q, 0)] = c
    return out
