"""The ring of polynomial differential operators sum lambda_ij tau^i d^j.

Coefficients are :class:`PerfLaurent` values placed on the left.  The
commutation rules are

    tau lambda = lambda^q tau,   d lambda = lambda^(1/q) d,   d tau - tau d = [1]^(1/q),

and every product is brought back to the normal form sum lambda_ij tau^i d^j.
An operator whose coefficients are all exact is in "exact mode"; that is
the mode used for identities, center tests and Ore witnesses.  Operators
with truncated coefficients are meant for acting on series.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .carlitz import FqLinearSeries, apply_d, apply_tau, bracket
from .coeff_field.ffield import FFElem, FiniteField
from .coeff_field.laurent import PerfLaurent
from .coeff_field.linalg import rf_kernel
from .coeff_field.ratfun import RatFunRing
from .errors import DegreeBudgetExceeded, FqArithmeticError, FqInputError

Key = tuple[int, int]


class SkewOperator:
    __slots__ = ("field", "terms")

    def __init__(self, field: FiniteField, terms: dict[Key, PerfLaurent] | None = None):
        self.field = field
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_exact_zero()}

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, F) -> "SkewOperator":
        return cls(F)

    @classmethod
    def one(cls, F) -> "SkewOperator":
        return cls(F, {(0, 0): PerfLaurent.one(F)})

    @classmethod
    def scalar(cls, c: PerfLaurent) -> "SkewOperator":
        return cls(c.field, {(0, 0): c})

    @classmethod
    def tau(cls, F, i: int = 1) -> "SkewOperator":
        return cls(F, {(i, 0): PerfLaurent.one(F)})

    @classmethod
    def d(cls, F, j: int = 1) -> "SkewOperator":
        return cls(F, {(0, j): PerfLaurent.one(F)})

    @classmethod
    def monomial(cls, c: PerfLaurent, i: int, j: int) -> "SkewOperator":
        return cls(c.field, {(i, j): c})

    # -- inspection ---------------------------------------------------
    def scalar_value(self) -> PerfLaurent | None:
        """The coefficient if the operator is a pure scalar, else None."""
        if not self.terms:
            return PerfLaurent.zero(self.field)
        if set(self.terms) == {(0, 0)}:
            return self.terms[(0, 0)]
        return None

    def is_zero(self) -> bool:
        """Structural test: empty normal form."""
        return all(c.is_zero() for c in self.terms.values())

    def is_exact(self) -> bool:
        return all(c.is_exact() for c in self.terms.values())

    def degree(self) -> int:
        """Total degree max(i + j); -1 for the zero operator."""
        return max((i + j for (i, j), c in self.terms.items() if not c.is_zero()), default=-1)

    def tau_degree(self) -> int:
        return max((i for (i, _), c in self.terms.items() if not c.is_zero()), default=0)

    def d_degree(self) -> int:
        return max((j for (_, j), c in self.terms.items() if not c.is_zero()), default=0)

    def coeff(self, i: int, j: int) -> PerfLaurent:
        return self.terms.get((i, j), PerfLaurent.zero(self.field))

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "SkewOperator":
        if isinstance(other, SkewOperator):
            if other.field is not self.field:
                raise FqInputError("operators over different fields")
            return other
        if isinstance(other, PerfLaurent):
            return SkewOperator.scalar(other)
        if isinstance(other, int) and not isinstance(other, bool):
            return SkewOperator.scalar(PerfLaurent.const(self.field, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return SkewOperator(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewOperator(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return op_mul(other, self)

    def left_scale(self, c: PerfLaurent) -> "SkewOperator":
        return SkewOperator(self.field, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SkewOperator):
            return NotImplemented
        return other.field is self.field and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        from .textio import format_operator

        return f"SkewOperator({format_operator(self)})"

    def __str__(self):
        from .textio import format_operator

        return format_operator(self)


# -- normal forms ---------------------------------------------------------


@lru_cache(maxsize=None)
def _d_tau_normal_form(F: FiniteField, j: int, k: int) -> tuple[tuple[int, int, PerfLaurent], ...]:
    """Normal form of d^j tau^k as ((r, s, c), ...) meaning sum c tau^r d^s.

    Built from the single relation d tau = tau d + [1]^(1/q):
    d tau^k = tau (d tau^(k-1)) + [1]^(1/q) tau^(k-1), and d^j tau^k = d (d^(j-1) tau^k).
    """
    if j == 0:
        return ((k, 0, PerfLaurent.one(F)),)
    if j == 1:
        if k == 0:
            return ((0, 1, PerfLaurent.one(F)),)
        acc: dict[Key, PerfLaurent] = {}
        for r, s, c in _d_tau_normal_form(F, 1, k - 1):
            _accum(acc, (r + 1, s), c.frobenius(1))
        _accum(acc, (k - 1, 0), bracket(F, 1).frobenius(-1))
        return _freeze(acc)
    acc = {}
    for r, s, c in _d_tau_normal_form(F, j - 1, k):
        croot = c.frobenius(-1)
        for r2, s2, c2 in _d_tau_normal_form(F, 1, r):
            _accum(acc, (r2, s2 + s), croot * c2)
    return _freeze(acc)


def _accum(acc: dict, key: Key, c: PerfLaurent) -> None:
    acc[key] = acc[key] + c if key in acc else c


def _freeze(acc: dict) -> tuple:
    return tuple((r, s, c) for (r, s), c in sorted(acc.items()) if not c.is_exact_zero())


def op_mul(a: SkewOperator, b: SkewOperator) -> SkewOperator:
    """Normal form of a*b.

    lambda tau^i d^j * mu tau^k d^l
        = sum lambda mu^(q^(i-j)) c^(q^i) tau^(i+r) d^(s+l)  over  d^j tau^k = sum c tau^r d^s.
    """
    F = a.field
    if b.field is not F:
        raise FqInputError("operators over different fields")
    acc: dict[Key, PerfLaurent] = {}
    for (i, j), lam in a.terms.items():
        for (k, l), mu in b.terms.items():
            lm = lam * mu.frobenius(i - j)
            for r, s, c in _d_tau_normal_form(F, j, k):
                _accum(acc, (i + r, s + l), lm * c.frobenius(i))
    return SkewOperator(F, acc)


def op_commutator(a: SkewOperator, b: SkewOperator) -> SkewOperator:
    return op_mul(a, b) - op_mul(b, a)


def op_apply(a: SkewOperator, u: FqLinearSeries) -> FqLinearSeries:
    """sum lambda_ij tau^i d^j u; index precision drops by the d-degree."""
    F = u.field
    out = FqLinearSeries.zero(F, max(u.n_prec - a.d_degree(), 0))
    d_pows = [u]
    for _ in range(a.d_degree()):
        d_pows.append(apply_d(d_pows[-1]))
    for (i, j), lam in sorted(a.terms.items()):
        v = d_pows[j]
        for _ in range(i):
            v = apply_tau(v)
        out = out + v.scale(lam)
    return out


def probe_is_zero(a: SkewOperator) -> bool:
    """Decide a == 0 from the action on psi_0, ..., psi_(m+n) alone."""
    F = a.field
    m, n = a.tau_degree(), a.d_degree()
    for l in range(m + n + 1):
        u = FqLinearSeries.psi(F, l, l + m + n + 1)
        if not op_apply(a, u).is_zero():
            return False
    return True


def op_is_zero(a: SkewOperator, probe: bool = True) -> bool:
    """Zero test on the normal form, cross-checked against the psi-probe."""
    structural = a.is_zero()
    if probe and a.is_exact():
        if probe_is_zero(a) != structural:
            raise FqArithmeticError("normal form and action probe disagree")
    return structural


@dataclass(frozen=True)
class CenterResult:
    central: bool
    witness: SkewOperator | None = None
    commutator: SkewOperator | None = None

    def describe(self) -> str:
        if self.central:
            return "central"
        name = "tau" if self.witness.terms.keys() == {(1, 0)} else "d"
        return f"not central; witness {name}"


def center_membership(a: SkewOperator) -> CenterResult:
    """Central iff a commutes with both tau and d."""
    F = a.field
    if not a.is_exact():
        raise FqInputError("center test needs exact coefficients")
    for w in (SkewOperator.tau(F), SkewOperator.d(F)):
        c = op_commutator(w, a)
        if not c.is_zero():
            return CenterResult(False, w, c)
    return CenterResult(True)


# -- Ore witnesses --------------------------------------------------------


@dataclass(frozen=True)
class OreWitness:
    """u*a = v*b (left) or a*u = b*v (right), with the residual recorded."""

    u: SkewOperator
    v: SkewOperator
    side: str
    nu: int
    residual: SkewOperator

    @property
    def verified(self) -> bool:
        return self.residual.is_zero() and not self.u.is_zero() and not self.v.is_zero()


def filtration_dim(nu: int) -> int:
    return (nu + 1) * (nu + 2) // 2


def ore_degree_bound(nu1: int) -> int:
    """First nu with 2 dim A_nu > dim A_(nu+nu1): a common multiple exists by then."""
    nu = 0
    while 2 * filtration_dim(nu) <= filtration_dim(nu + nu1):
        nu += 1
    return nu


def _monomials(nu: int) -> list[Key]:
    return [(i, t - i) for t in range(nu + 1) for i in range(t, -1, -1)]


def _products(a: SkewOperator, mons: list[Key], side: str) -> list[SkewOperator]:
    F = a.field
    one = PerfLaurent.one(F)
    if side == "left":
        return [op_mul(SkewOperator.monomial(one, i, j), a) for i, j in mons]
    return [op_mul(a, SkewOperator.monomial(one, i, j)) for i, j in mons]


def _row_frobenius(key: Key, side: str) -> int:
    # a tau^i d^j lambda puts lambda^(q^(k-l)) at tau^k d^l; undo it per row
    k, l = key
    return 0 if side == "left" else l - k


def _solve_at(a, b, nu, side):
    F = a.field
    mons = _monomials(nu)
    cols = _products(a, mons, side) + [-p for p in _products(b, mons, side)]
    rows = sorted({k for c in cols for k in c.terms})
    entries = [
        [c.coeff(*key).frobenius(_row_frobenius(key, side)) for c in cols] for key in rows
    ]
    level = max((e.level for row in entries for e in row), default=0)
    ring = RatFunRing(F, level)
    M = [[ring.from_laurent(e) for e in row] for row in entries]
    for vec in rf_kernel(ring, M, len(cols)):
        half = len(mons)
        if all(x.is_zero() for x in vec[:half]) or all(x.is_zero() for x in vec[half:]):
            continue
        return mons, _clear_denominators(ring, vec)
    return None


def _clear_denominators(ring: RatFunRing, vec):
    den = ring.P(1)
    for x in vec:
        den = den * x.den.exact_division(den.gcd(x.den))
    from .coeff_field.ratfun import RatFun

    dr = RatFun(ring, den, ring.P(1))
    return [(x * dr).to_laurent() for x in vec]


def _assemble(F, mons, coeffs, side) -> SkewOperator:
    one = PerfLaurent.one(F)
    out = SkewOperator.zero(F)
    for (i, j), c in zip(mons, coeffs):
        if c.is_exact_zero():
            continue
        mono = SkewOperator.monomial(one, i, j)
        out = out + (SkewOperator.scalar(c) * mono if side == "left" else mono * SkewOperator.scalar(c))
    return out


def ore_witness(a: SkewOperator, b: SkewOperator, side: str = "left", max_nu: int | None = None) -> OreWitness:
    """Smallest-degree nonzero u, v with u a = v b (left) or a u = b v (right)."""
    if side not in ("left", "right"):
        raise FqInputError(f"side must be left or right, not {side!r}")
    if a.is_zero() or b.is_zero():
        raise FqInputError("Ore witnesses need nonzero operators")
    if not (a.is_exact() and b.is_exact()):
        raise FqInputError("Ore witnesses need exact coefficients")
    F = a.field
    bound = ore_degree_bound(max(a.degree(), b.degree()))
    cap = bound if max_nu is None else min(bound, max_nu)
    for nu in range(cap + 1):
        found = _solve_at(a, b, nu, side)
        if found is None:
            continue
        mons, coeffs = found
        half = len(mons)
        u = _assemble(F, mons, coeffs[:half], side)
        v = _assemble(F, mons, coeffs[half:], side)
        residual = u * a - v * b if side == "left" else a * u - b * v
        w = OreWitness(u, v, side, nu, residual)
        if not w.verified:
            raise FqArithmeticError("Ore witness failed exact re-verification")
        return w
    raise DegreeBudgetExceeded(f"no common multiple found up to degree {cap}")


def random_operator(F: FiniteField, rng, degree: int = 2, max_exp: int = 2, density: float = 0.7) -> SkewOperator:
    """Random exact operator of total degree <= degree with Laurent polynomial coefficients."""
    terms = {}
    for i, j in _monomials(degree):
        if rng.random() > density:
            continue
        items = [(e, FFElem(F, rng.randrange(F.order))) for e in range(-1, max_exp + 1) if rng.random() < 0.5]
        c = PerfLaurent.from_exponents(F, items)
        if not c.is_exact_zero():
            terms[(i, j)] = c
    return SkewOperator(F, terms)

