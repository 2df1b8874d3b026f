"""Truncated Laurent series over F_{q^s} with exponents in Z[1/q].

A :class:`PerfLaurent` stores its support at a common *level* L: the int
key ``k`` stands for the exponent ``k / q**L``.  The level is kept minimal
(some key is not divisible by q), which makes the representation
canonical.  ``prec`` is an absolute exponent bound: every term with
exponent >= prec is unknown.  ``prec is None`` marks an exact value.

Precision rules:
  add      prec = min(prec_f, prec_g)
  mul      prec = min(prec_f + val g, prec_g + val f), with val(0) = prec
  frob k   prec * q**k
  inverse  relative precision (prec - val) is preserved
"""
from __future__ import annotations

import heapq
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from ..errors import FqInputError, LevelExhausted, NotInvertible, ValuationOfZero
from .ffield import FFElem, FiniteField

DEFAULT_REL_PREC = Fraction(32)
_MAX_LEVEL = [64]


@contextmanager
def level_cap(n: int):
    """Temporarily bound the exponent level reachable through q-th roots."""
    old = _MAX_LEVEL[0]
    _MAX_LEVEL[0] = n
    try:
        yield
    finally:
        _MAX_LEVEL[0] = old


def max_level() -> int:
    return _MAX_LEVEL[0]


@dataclass(frozen=True, order=False)
class Exponent:
    """The rational ``num / q**level``, normalized (level 0 or q does not divide num)."""

    num: int
    level: int
    q: int

    @classmethod
    def of(cls, e, q: int) -> "Exponent":
        key, level = split_exponent(Fraction(e), q)
        return cls(key, level, q)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.q**self.level)

    def __lt__(self, other):
        return self.value < other.value

    def __le__(self, other):
        return self.value <= other.value


def split_exponent(e: Fraction, q: int) -> tuple[int, int]:
    """(key, level) with e = key / q**level and level minimal."""
    e = Fraction(e)
    den, level, ql = e.denominator, 0, 1
    while ql % den:
        ql *= q
        level += 1
        if level > 8 * max_level():
            raise FqInputError(f"exponent {e} is not in Z[1/{q}]")
    return e.numerator * (ql // den), level


def _ceil_bound(prec: Fraction, q: int, level: int) -> int:
    """Smallest int B with key < B  <=>  key / q**level < prec."""
    num = prec.numerator * q**level
    return -((-num) // prec.denominator)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a < b else b


class PerfLaurent:
    __slots__ = ("field", "level", "terms", "prec")

    def __init__(self, field: FiniteField, terms: dict | None = None, level: int = 0, prec=None):
        self.field = field
        q = field.q
        terms = {k: c for k, c in (terms or {}).items() if c}
        if prec is not None:
            prec = Fraction(prec)
            if terms:
                bound = _ceil_bound(prec, q, level)
                terms = {k: c for k, c in terms.items() if k < bound}
        if not terms:
            level = 0
        else:
            while level > 0 and all(k % q == 0 for k in terms):
                terms = {k // q: c for k, c in terms.items()}
                level -= 1
        self.terms = terms
        self.level = level
        self.prec = prec

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, field) -> "PerfLaurent":
        return cls(field)

    @classmethod
    def one(cls, field) -> "PerfLaurent":
        return cls(field, {0: 1})

    @classmethod
    def const(cls, field, c) -> "PerfLaurent":
        return cls(field, {0: _coef(field, c)})

    @classmethod
    def monomial(cls, field, c, e) -> "PerfLaurent":
        key, level = split_exponent(Fraction(e), field.q)
        return cls(field, {key: _coef(field, c)}, level)

    @classmethod
    def x(cls, field) -> "PerfLaurent":
        return cls(field, {1: 1})

    @classmethod
    def big_o(cls, field, e) -> "PerfLaurent":
        return cls(field, {}, 0, Fraction(e))

    @classmethod
    def from_exponents(cls, field, items, prec=None) -> "PerfLaurent":
        """Build from (exponent, coefficient) pairs; repeated exponents add up."""
        q = field.q
        pairs = [(split_exponent(Fraction(e), q), _coef(field, c)) for e, c in items]
        level = max((lv for (_, lv), _ in pairs), default=0)
        terms: dict[int, int] = {}
        for (k, lv), c in pairs:
            kk = k * q ** (level - lv)
            terms[kk] = field.add(terms.get(kk, 0), c)
        return cls(field, terms, level, prec)

    # -- inspection ---------------------------------------------------
    @property
    def q(self) -> int:
        return self.field.q

    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True when no term is known to be nonzero (exact 0 or O(x^prec))."""
        return not self.terms

    def is_exact_zero(self) -> bool:
        return not self.terms and self.prec is None

    def valuation(self) -> Fraction:
        if not self.terms:
            raise ValuationOfZero("valuation of zero")
        return Fraction(min(self.terms), self.q**self.level)

    def _val_or_prec(self):
        if self.terms:
            return Fraction(min(self.terms), self.q**self.level)
        return self.prec

    def abs_log(self) -> Fraction:
        """log_q |f| = -valuation."""
        return -self.valuation()

    def rel_prec(self):
        if self.prec is None:
            return None
        return self.prec - self._val_or_prec()

    def items(self) -> list[tuple[Fraction, int]]:
        d = self.q**self.level
        return [(Fraction(k, d), self.terms[k]) for k in sorted(self.terms)]

    def coeff(self, e) -> int:
        key, level = split_exponent(Fraction(e), self.q)
        if level > self.level:
            return 0
        return self.terms.get(key * self.q ** (self.level - level), 0)

    def leading(self) -> tuple[Fraction, int]:
        k = min(self.terms)
        return Fraction(k, self.q**self.level), self.terms[k]

    def max_exponent(self) -> Fraction:
        return Fraction(max(self.terms), self.q**self.level)

    def constant_value(self):
        """The F_{q^s} value if this is an exact constant, else None."""
        if self.prec is not None:
            return None
        if not self.terms:
            return 0
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        return None

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = PerfLaurent.const(self.field, other)
        elif isinstance(other, FFElem):
            other = PerfLaurent.const(self.field, other)
        if not isinstance(other, PerfLaurent):
            return NotImplemented
        return (
            self.field is other.field
            and self.prec == other.prec
            and self.level == other.level
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.level, self.prec, frozenset(self.terms.items())))

    def __repr__(self):
        from ..textio import format_laurent

        return f"PerfLaurent({format_laurent(self)})"

    def __str__(self):
        from ..textio import format_laurent

        return format_laurent(self)

    # -- arithmetic ---------------------------------------------------
    def _lifted(self, level: int) -> dict:
        if level == self.level:
            return self.terms
        m = self.q ** (level - self.level)
        return {k * m: c for k, c in self.terms.items()}

    def _coerce(self, other):
        if isinstance(other, PerfLaurent):
            if other.field is not self.field:
                raise FqInputError("series over different fields")
            return other
        if isinstance(other, (int, FFElem)) and not isinstance(other, bool):
            return PerfLaurent.const(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._addsub(other, False)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._addsub(other, True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._addsub(self, True)

    def _addsub(self, other: "PerfLaurent", negate: bool) -> "PerfLaurent":
        F = self.field
        level = max(self.level, other.level)
        out = dict(self._lifted(level))
        add, neg = F.add, F.neg
        for k, c in other._lifted(level).items():
            if negate:
                c = neg(c)
            out[k] = add(out.get(k, 0), c)
        return PerfLaurent(F, out, level, _min_prec(self.prec, other.prec))

    def __neg__(self):
        neg = self.field.neg
        return PerfLaurent(self.field, {k: neg(c) for k, c in self.terms.items()}, self.level, self.prec)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._mul(other)

    __rmul__ = __mul__

    def scale(self, c: int) -> "PerfLaurent":
        """Multiply by an F_{q^s} element given as int encoding."""
        mul = self.field.mul
        return PerfLaurent(self.field, {k: mul(c, v) for k, v in self.terms.items()}, self.level, self.prec)

    def _mul(self, other: "PerfLaurent") -> "PerfLaurent":
        F = self.field
        if self.is_exact_zero() or other.is_exact_zero():
            return PerfLaurent(F)
        if self.prec is None and other.prec is None:
            prec = None
        else:
            vf, vg = self._val_or_prec(), other._val_or_prec()
            cand = []
            if self.prec is not None:
                cand.append(self.prec + vg)
            if other.prec is not None:
                cand.append(other.prec + vf)
            prec = min(cand)
        if not self.terms or not other.terms:
            return PerfLaurent(F, {}, 0, prec)
        level = max(self.level, other.level)
        a_items = sorted(self._lifted(level).items())
        b_items = sorted(other._lifted(level).items())
        if len(a_items) > len(b_items):
            a_items, b_items = b_items, a_items
        out: dict[int, int] = {}
        get = out.get
        add, mul = F.add, F.mul
        if prec is None:
            for ka, ca in a_items:
                for kb, cb in b_items:
                    k = ka + kb
                    out[k] = add(get(k, 0), mul(ca, cb))
        else:
            bound = _ceil_bound(prec, F.q, level)
            for ka, ca in a_items:
                lim = bound - ka
                for kb, cb in b_items:
                    if kb >= lim:
                        break
                    k = ka + kb
                    out[k] = add(get(k, 0), mul(ca, cb))
        return PerfLaurent(F, out, level, prec)

    def __pow__(self, n: int) -> "PerfLaurent":
        if n < 0:
            return self.inverse() ** (-n)
        q = self.q
        # q-power maps are ring homomorphisms: use the Frobenius when possible
        k, m = 0, n
        while m > 1 and m % q == 0:
            m //= q
            k += 1
        base = self.frobenius(k) if k else self
        out = PerfLaurent.one(self.field)
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def frobenius(self, k: int) -> "PerfLaurent":
        """Coefficientwise c -> c^(q^k), exponents scaled by q^k."""
        if k == 0:
            return self
        F = self.field
        q = F.q
        frob = F.frob
        terms = {key: frob(c, k) for key, c in self.terms.items()}
        level = self.level - k
        if level < 0:
            m = q ** (-level)
            terms = {key * m: c for key, c in terms.items()}
            level = 0
        elif terms and level > _MAX_LEVEL[0]:
            raise LevelExhausted(f"exponent level {level} exceeds cap {_MAX_LEVEL[0]}")
        prec = None if self.prec is None else self.prec * Fraction(q) ** k
        return PerfLaurent(F, terms, level, prec)

    def truncate(self, prec) -> "PerfLaurent":
        prec = _min_prec(self.prec, Fraction(prec))
        return PerfLaurent(self.field, self.terms, self.level, prec)

    def truncate_rel(self, rel) -> "PerfLaurent":
        """Keep terms below val + rel.  Exact values whose support already
        fits are returned unchanged (nothing would be dropped)."""
        if rel is None or not self.terms:
            return self
        rel = Fraction(rel)
        bound = self.valuation() + rel
        if self.prec is None and self.max_exponent() < bound:
            return self
        if self.prec is not None and self.prec <= bound:
            return self
        return self.truncate(bound)

    def inverse(self, rel_prec=None) -> "PerfLaurent":
        F = self.field
        if not self.terms:
            raise NotInvertible("zero or precision-zero series is not invertible")
        q, level = F.q, self.level
        k0 = min(self.terms)
        c0inv = F.inv(self.terms[k0])
        if len(self.terms) == 1 and self.prec is None:
            return PerfLaurent(F, {-k0: c0inv}, level)
        rel = self.rel_prec()
        if rel_prec is not None:
            rel = Fraction(rel_prec) if rel is None else min(rel, Fraction(rel_prec))
        if rel is None:
            rel = DEFAULT_REL_PREC
        n_bound = _ceil_bound(rel, q, level)
        mul, add, neg = F.mul, F.add, F.neg
        h = sorted((k - k0, mul(c, c0inv)) for k, c in self.terms.items() if k != k0)
        # 1 / (1 + h) by the triangular recurrence g_e = -sum h_k g_{e-k}
        g = {0: 1}
        heap = [k for k, _ in h if k < n_bound]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            e = heapq.heappop(heap)
            acc = 0
            for k, hk in h:
                if k > e:
                    break
                ge = g.get(e - k)
                if ge:
                    acc = add(acc, mul(hk, ge))
            if acc:
                g[e] = neg(acc)
                for k, _ in h:
                    nxt = e + k
                    if nxt >= n_bound:
                        break
                    if nxt not in seen:
                        seen.add(nxt)
                        heapq.heappush(heap, nxt)
        val = Fraction(-k0, q**level)
        terms = {e - k0: mul(c, c0inv) for e, c in g.items()}
        return PerfLaurent(F, terms, level, val + rel)

    def divide(self, other: "PerfLaurent", rel_prec=None) -> "PerfLaurent":
        other = self._coerce(other)
        if not other.terms:
            raise NotInvertible("division by a zero or precision-zero series")
        if len(other.terms) == 1 and other.prec is None:
            return self * other.inverse()
        if self.prec is not None:
            if not self.terms:
                return PerfLaurent(self.field, {}, 0, self.prec - other.valuation())
            rel = self.rel_prec()
            rel_prec = rel if rel_prec is None else min(rel, Fraction(rel_prec))
        return self * other.inverse(rel_prec)

    def __truediv__(self, other):
        return self.divide(other)


def _coef(field: FiniteField, c) -> int:
    """Python ints are integers (reduced mod p); FFElem carries an encoding."""
    if isinstance(c, FFElem):
        return c.value
    return field.from_int(c)


# -- functional aliases ------------------------------------------------------
def pl_arith(f: PerfLaurent, g: PerfLaurent, kind: str) -> PerfLaurent:
    if kind == "add":
        return f + g
    if kind == "mul":
        return f * g
    raise ValueError(f"unknown kind {kind!r}")


def pl_invert(f: PerfLaurent, rel_prec=None) -> PerfLaurent:
    return f.inverse(rel_prec)


def pl_frobenius_q(f: PerfLaurent, k: int) -> PerfLaurent:
    return f.frobenius(k)


def pl_valuation(f: PerfLaurent) -> Fraction:
    return f.valuation()
