"""Exact rational functions in y = x^(1/q^L) over F_{q^s}.

Polynomial arithmetic (products, gcds) is delegated to python-flint's
``fq_default_poly``.  Our tower encoding is carried over to flint's flat
representation through the primitive element: the element with discrete
log k maps to ``z^k``, where flint's field is defined by the minimal
polynomial of that primitive element over F_p.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import flint

from ..errors import DivisionByZero, FqInputError, NotInvertible
from .ffield import FiniteField
from .laurent import PerfLaurent


class _Bridge:
    def __init__(self, F: FiniteField):
        # minimal polynomial of the primitive element over F_p, in our arithmetic
        prim = F.primitive
        conj, c = [], prim
        while True:
            conj.append(c)
            c = F.pow(c, F.p)
            if c == prim:
                break
        poly = [1]
        for r in conj:
            nr = F.neg(r)
            nxt = [0] * (len(poly) + 1)
            for i, a in enumerate(poly):
                nxt[i + 1] = F.add(nxt[i + 1], a)
                nxt[i] = F.add(nxt[i], F.mul(a, nr))
            poly = nxt
        if any(not F.in_prime_field(a) for a in poly):
            raise FqInputError("minimal polynomial left the prime field")
        mod = flint.fmpz_mod_poly_ctx(F.p)(poly)
        self.ctx = flint.fq_default_ctx(modulus=mod, var="z")
        z = self.ctx.gen()
        n = F.order - 1
        to_fl = [self.ctx(0)] * F.order
        acc = self.ctx(1)
        for k in range(n):
            to_fl[F._exp[k]] = acc
            acc = acc * z
        self.to_fl = to_fl
        self.from_fl = {e: i for i, e in enumerate(to_fl)}
        self.poly_ctx = flint.fq_default_poly_ctx(self.ctx)


@lru_cache(maxsize=None)
def _bridge(F: FiniteField) -> _Bridge:
    return _Bridge(F)


class RatFunRing:
    """F_{q^s}(y) with y = x^(1/q^level)."""

    def __init__(self, F: FiniteField, level: int):
        self.field = F
        self.level = level
        self._b = _bridge(F)
        self.P = self._b.poly_ctx

    def poly(self, coeffs):
        return self.P([self._b.to_fl[c] for c in coeffs])

    def zero(self) -> "RatFun":
        return RatFun(self, self.P(0), self.P(1), normalized=True)

    def one(self) -> "RatFun":
        return RatFun(self, self.P(1), self.P(1), normalized=True)

    def from_laurent(self, f: PerfLaurent) -> "RatFun":
        if not f.is_exact():
            raise FqInputError("only exact series embed into rational functions")
        if f.level > self.level:
            raise FqInputError(f"series level {f.level} exceeds ring level {self.level}")
        if not f.terms:
            return self.zero()
        terms = f._lifted(self.level)
        lo = min(min(terms), 0)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for k, c in terms.items():
            coeffs[k - lo] = c
        num = self.poly(coeffs)
        den = self.P([0] * (-lo) + [1]) if lo < 0 else self.P(1)
        return RatFun(self, num, den)

    def __eq__(self, other):
        return isinstance(other, RatFunRing) and other.field is self.field and other.level == self.level

    def __hash__(self):
        return hash((id(self.field), self.level))


class RatFun:
    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: RatFunRing, num, den, normalized: bool = False):
        self.ring = ring
        if not normalized:
            if den.is_zero():
                raise DivisionByZero("zero denominator")
            if num.is_zero():
                num, den = ring.P(0), ring.P(1)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num.exact_division(g)
                    den = den.exact_division(g)
                lc = den.leading_coefficient()
                if not lc.is_one():
                    inv = lc ** -1
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def degree(self) -> int:
        """Size measure used for pivoting: deg num + deg den."""
        if self.num.is_zero():
            return -1
        return self.num.degree() + self.den.degree()

    def _check(self, other):
        if not isinstance(other, RatFun) or other.ring != self.ring:
            raise FqInputError("rational functions from different rings")

    def __add__(self, other):
        self._check(other)
        if self.den == other.den:
            return RatFun(self.ring, self.num + other.num, self.den)
        return RatFun(self.ring, self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        self._check(other)
        if self.den == other.den:
            return RatFun(self.ring, self.num - other.num, self.den)
        return RatFun(self.ring, self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFun(self.ring, -self.num, self.den, normalized=True)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self.ring.zero()
        return RatFun(self.ring, self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFun(self.ring, self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        return (
            isinstance(other, RatFun)
            and other.ring == self.ring
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __repr__(self):
        return f"RatFun(({self.num}) / ({self.den}), y=x^(1/{self.ring.field.q}^{self.ring.level}))"

    # -- back to series ------------------------------------------------
    def _poly_to_laurent(self, poly, shift: int = 0) -> PerfLaurent:
        F = self.ring.field
        back = self.ring._b.from_fl
        terms = {}
        for i, c in enumerate(poly.coeffs()):
            v = back[c]
            if v:
                terms[i + shift] = v
        return PerfLaurent(F, terms, self.ring.level)

    def is_laurent_polynomial(self) -> bool:
        d = self.den
        return d.degree() == 0 or all(c.is_zero() for c in d.coeffs()[:-1])

    def to_laurent(self) -> PerfLaurent:
        """Exact conversion; the denominator must be a power of y."""
        if not self.is_laurent_polynomial():
            raise NotInvertible("denominator is not a monomial; use to_series")
        return self._poly_to_laurent(self.num, -self.den.degree())

    def to_series(self, rel_prec) -> PerfLaurent:
        """Embedding into the Laurent series field, to relative precision rel_prec."""
        if self.is_laurent_polynomial():
            return self.to_laurent()
        num = self._poly_to_laurent(self.num)
        den = self._poly_to_laurent(self.den)
        return num * den.inverse(Fraction(rel_prec))


def common_ring(values) -> RatFunRing:
    values = list(values)
    if not values:
        raise FqInputError("no values")
    F = values[0].field
    level = max((v.level for v in values), default=0)
    return RatFunRing(F, level)
