"""The constant field F_{q^s}, built as a tower F_p < F_q < F_{q^s}.

Elements are plain ints: the base-p digits of the int are the coordinates
with respect to the tower basis ``alpha^i * gamma^j`` (digit index
``i + v*j``), where ``alpha`` is a root of ``modulus_q`` over F_p and
``gamma`` a root of ``modulus_s`` over F_q.  An element of F_q therefore
has the same int encoding inside F_{q^s}, and so does an element of F_p.

Arithmetic runs on exp/log tables built once per field from the slow
tower multiplication; addition is XOR for p = 2 and a Zech-log lookup
otherwise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from ..errors import DivisionByZero, FqInputError, IrreducibilityError

Poly = tuple[int, ...]  # low -> high coefficients


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, v) with q = p**v, or raise."""
    if q < 2:
        raise FqInputError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    v, r = 0, q
    while r % p == 0:
        r //= p
        v += 1
    if r != 1:
        raise FqInputError(f"q={q} is not a prime power")
    return p, v


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class _PolyOps:
    """Dense polynomial arithmetic over a small field given by callables."""

    def __init__(self, add, mul, neg, inv, order):
        self.add, self.mul, self.neg, self.inv, self.order = add, mul, neg, inv, order

    def trim(self, f):
        f = list(f)
        while f and f[-1] == 0:
            f.pop()
        return f

    def rem(self, f, g):
        f, g = self.trim(f), self.trim(g)
        lead_inv = self.inv(g[-1])
        dg = len(g) - 1
        while len(f) - 1 >= dg and f:
            c = self.mul(f[-1], lead_inv)
            shift = len(f) - 1 - dg
            for i, gi in enumerate(g):
                f[shift + i] = self.add(f[shift + i], self.neg(self.mul(c, gi)))
            f = self.trim(f)
        return f

    def mulmod(self, f, g, m):
        out = [0] * max(len(f) + len(g) - 1, 1)
        for i, a in enumerate(f):
            if a == 0:
                continue
            for j, b in enumerate(g):
                if b:
                    out[i + j] = self.add(out[i + j], self.mul(a, b))
        return self.rem(out, m)

    def monic_polys(self, degree):
        for low in itertools.product(range(self.order), repeat=degree):
            yield tuple(reversed(low)) + (1,)

    def is_irreducible(self, f) -> bool:
        """Trial division by every monic polynomial of degree <= deg(f)/2."""
        f = self.trim(f)
        n = len(f) - 1
        if n < 1:
            return False
        for d in range(1, n // 2 + 1):
            for g in self.monic_polys(d):
                if not self.rem(f, g):
                    return False
        return True

    def first_irreducible(self, degree) -> Poly:
        if degree == 1:
            return (0, 1)
        candidates = sorted(self.monic_polys(degree), key=lambda f: f[::-1])
        for f in candidates:
            if f[0] != 0 and self.is_irreducible(f):
                return tuple(f)
        raise IrreducibilityError(f"no irreducible polynomial of degree {degree}")


def _prime_ops(p: int) -> _PolyOps:
    return _PolyOps(
        add=lambda a, b: (a + b) % p,
        mul=lambda a, b: (a * b) % p,
        neg=lambda a: (-a) % p,
        inv=lambda a: pow(a, p - 2, p),
        order=p,
    )


@dataclass(frozen=True)
class FieldDesc:
    """Parameters of the coefficient field F_{q^s}, q = p**v.

    ``modulus_q`` has F_p coefficients (low to high, monic, degree v);
    ``modulus_s`` has F_q coefficients in the int encoding (monic, degree s).
    ``None`` selects the default modulus (first irreducible in
    lexicographic order).
    """

    p: int
    v: int = 1
    s: int = 1
    modulus_q: Poly | None = None
    modulus_s: Poly | None = None

    @property
    def q(self) -> int:
        return self.p**self.v

    def resolved(self) -> "FieldDesc":
        if not is_prime(self.p):
            raise FqInputError(f"p={self.p} is not prime")
        if self.v < 1 or self.s < 1:
            raise FqInputError("v and s must be >= 1")
        pops = _prime_ops(self.p)
        mq = self.modulus_q
        if mq is None:
            mq = pops.first_irreducible(self.v)
        else:
            mq = tuple(int(c) % self.p for c in mq)
            if len(pops.trim(mq)) != self.v + 1 or mq[-1] != 1:
                raise IrreducibilityError(f"modulus_q must be monic of degree {self.v}")
            if self.v > 1 and not pops.is_irreducible(mq):
                raise IrreducibilityError(f"modulus_q {mq} is reducible over F_{self.p}")
        ms = self.modulus_s
        if self.s > 1 or ms is not None:
            base = _finite_field(FieldDesc(self.p, self.v, 1, tuple(mq), (0, 1)))
            bops = base._poly_ops()
            if ms is None:
                ms = bops.first_irreducible(self.s)
            else:
                ms = tuple(int(c) for c in ms)
                if any(not 0 <= c < base.order for c in ms):
                    raise FqInputError("modulus_s coefficients must be F_q elements")
                if len(bops.trim(ms)) != self.s + 1 or ms[-1] != 1:
                    raise IrreducibilityError(f"modulus_s must be monic of degree {self.s}")
                if self.s > 1 and not bops.is_irreducible(ms):
                    raise IrreducibilityError(f"modulus_s {ms} is reducible over F_{self.q}")
        else:
            ms = (0, 1)
        return FieldDesc(self.p, self.v, self.s, tuple(mq), tuple(ms))


class FiniteField:
    """Table-driven F_{q^s}.  Obtain instances through :func:`GF`."""

    def __init__(self, desc: FieldDesc):
        self.desc = desc
        self.p, self.v, self.s = desc.p, desc.v, desc.s
        self.q = desc.q
        self.order = self.q**self.s
        self.degree = self.v * self.s
        self._build_tables()

    # -- construction -------------------------------------------------
    def _digits(self, a: int, base: int, n: int) -> list[int]:
        out = []
        for _ in range(n):
            a, r = divmod(a, base)
            out.append(r)
        return out

    def _undigits(self, ds, base: int) -> int:
        out = 0
        for d in reversed(ds):
            out = out * base + d
        return out

    def _slow_add(self, a: int, b: int) -> int:
        p = self.p
        da, db = self._digits(a, p, self.degree), self._digits(b, p, self.degree)
        return self._undigits([(x + y) % p for x, y in zip(da, db)], p)

    def _slow_mul(self, a: int, b: int) -> int:
        if self.s == 1:
            ops = _prime_ops(self.p)
            f = self._digits(a, self.p, self.v)
            g = self._digits(b, self.p, self.v)
            r = ops.mulmod(f, g, self.desc.modulus_q)
            return self._undigits(r + [0] * (self.v - len(r)), self.p)
        base = _finite_field(FieldDesc(self.p, self.v, 1, self.desc.modulus_q, (0, 1)))
        ops = base._poly_ops()
        f = self._digits(a, self.q, self.s)
        g = self._digits(b, self.q, self.s)
        r = ops.mulmod(f, g, self.desc.modulus_s)
        return self._undigits(r + [0] * (self.s - len(r)), self.q)

    def _slow_pow(self, a: int, n: int) -> int:
        out = 1
        while n:
            if n & 1:
                out = self._slow_mul(out, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return out

    def _build_tables(self):
        Q = self.order
        n = Q - 1
        factors = _prime_factors(n) if n > 1 else []
        for cand in range(1, Q):
            if n == 1 or all(self._slow_pow(cand, n // r) != 1 for r in factors):
                prim = cand
                break
        self.primitive = prim
        exp = [1] * n
        for i in range(1, n):
            exp[i] = self._slow_mul(exp[i - 1], prim)
        log = [-1] * Q
        for i, e in enumerate(exp):
            log[e] = i
        self._exp, self._log = exp, log
        self._minus_one = (n // 2) if self.p != 2 else 0
        if self.p != 2:
            # zech[k] = log(1 + g^k), -1 when 1 + g^k = 0
            self._zech = [log[self._slow_add(1, exp[k])] for k in range(n)]
        # frob_tab[j][a] = a^(q^j)
        self._frob = []
        for j in range(self.s):
            e = pow(self.q, j, n) if n > 1 else 0
            tab = [0] * Q
            for a in range(1, Q):
                tab[a] = exp[(log[a] * e) % n] if n > 1 else 1
            self._frob.append(tab)

    def _poly_ops(self) -> _PolyOps:
        return _PolyOps(self.add, self.mul, self.neg, self.inv, self.order)

    # -- arithmetic on int encodings -------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        n = self.order - 1
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % n]
        return 0 if z < 0 else self._exp[(la + z) % n]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self._exp[(self._log[a] + self._minus_one) % (self.order - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in F_%d" % self.order)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def frob(self, a: int, k: int) -> int:
        """a^(q^k); negative k gives q-th roots since a^(q^s) = a."""
        return self._frob[k % self.s][a]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    def in_base_field(self, a: int) -> bool:
        """Membership in F_q (fixed by the q-Frobenius)."""
        return a < self.q

    def digits(self, a: int) -> list[int]:
        return self._digits(a, self.p, self.degree)

    def generator(self) -> int:
        """The element printed as ``g``: gamma if s > 1, else alpha."""
        if self.s > 1:
            return self.q
        return self.p if self.v > 1 else 1

    def elements(self):
        return range(self.order)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})[q={self.q}, s={self.s}]"

    # one field object per resolved description
    def __reduce__(self):
        return (_finite_field, (self.desc,))


@lru_cache(maxsize=None)
def _finite_field(desc: FieldDesc) -> FiniteField:
    return FiniteField(desc)


def GF(p: int, v: int = 1, s: int = 1, modulus_q=None, modulus_s=None) -> FiniteField:
    mq = tuple(modulus_q) if modulus_q is not None else None
    ms = tuple(modulus_s) if modulus_s is not None else None
    return _finite_field(FieldDesc(p, v, s, mq, ms).resolved())


def field_for_q(q: int, s: int = 1, modulus_q=None, modulus_s=None) -> FiniteField:
    p, v = prime_power(q)
    return GF(p, v, s, modulus_q, modulus_s)


class FFElem:
    """User-facing wrapper around an int encoding of an F_{q^s} element."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FFElem):
            if other.field is not self.field:
                raise FqInputError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FFElem(self.field, self.field.div(self.value, b))

    def __pow__(self, e: int):
        return FFElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FFElem":
        return FFElem(self.field, self.field.inv(self.value))

    def frobenius(self, k: int) -> "FFElem":
        return FFElem(self.field, self.field.frob(self.value, k))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return isinstance(other, FFElem) and other.field is self.field and other.value == self.value

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        from ..textio import format_ff

        return f"FFElem({format_ff(self.field, self.value)})"


def ff_arith(a: FFElem, b: FFElem | None, kind: str) -> FFElem:
    """Dispatch for ``add``, ``mul`` and ``inv`` (of ``a``)."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    raise ValueError(f"unknown kind {kind!r}")


def ff_frobenius_q(a: FFElem, k: int) -> FFElem:
    return a.frobenius(k)
