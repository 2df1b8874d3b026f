"""Carlitz brackets and factorials, F_q-linear series and the actions of tau and d.

An F_q-linear series is stored by its coefficients ``u_n`` against the
basis ``psi_n = t^(q^n) / D_n``.  On that basis

    d psi_n   = psi_{n-1}            (d psi_0 = 0)
    tau psi_n = [n+1] psi_{n+1}

and both operators are semilinear: ``tau(c u) = c^q tau(u)``,
``d(c u) = c^(1/q) d(u)``.  Index precision (``n_prec``) counts the known
coefficients; ``d`` loses one of them and never pads.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coeff_field.ffield import FiniteField
from .coeff_field.laurent import DEFAULT_REL_PREC, PerfLaurent
from .errors import DivergentEvaluation, FqInputError


class CarlitzCache:
    """Append-only memo of brackets [i] and exact factorials D_n for one field."""

    _registry: dict[int, "CarlitzCache"] = {}

    def __init__(self, F: FiniteField):
        self.field = F
        self.brackets: dict[int, PerfLaurent] = {}
        self.factorials: dict[int, PerfLaurent] = {0: PerfLaurent.one(F)}
        self.products: dict[tuple[int, int], PerfLaurent] = {}

    @classmethod
    def of(cls, F: FiniteField) -> "CarlitzCache":
        c = cls._registry.get(id(F))
        if c is None or c.field is not F:
            c = cls._registry[id(F)] = cls(F)
        return c

    def bracket(self, i: int) -> PerfLaurent:
        b = self.brackets.get(i)
        if b is None:
            F = self.field
            b = PerfLaurent.from_exponents(F, [(Fraction(F.q) ** i, 1), (1, -1)])
            self.brackets[i] = b
        return b

    def factorial(self, n: int) -> PerfLaurent:
        if n < 0:
            raise FqInputError("Carlitz factorial of a negative index")
        top = max(self.factorials)
        for m in range(top + 1, n + 1):
            self.factorials[m] = self.bracket(m) * self.factorials[m - 1].frobenius(1)
        return self.factorials[n]

    def shift_product(self, n: int, k: int) -> PerfLaurent:
        """[n+1]^(q^(k-1)) [n+2]^(q^(k-2)) ... [n+k], the factor with tau^k psi_n = (.) psi_{n+k}."""
        key = (n, k)
        b = self.products.get(key)
        if b is None:
            if k == 0:
                b = PerfLaurent.one(self.field)
            else:
                b = self.shift_product(n, k - 1).frobenius(1) * self.bracket(n + k)
            self.products[key] = b
        return b


def bracket(F: FiniteField, i: int) -> PerfLaurent:
    """[i] = x^(q^i) - x, for any integer i."""
    return CarlitzCache.of(F).bracket(i)


def carlitz_factorial(F: FiniteField, n: int, rel_prec=None) -> PerfLaurent:
    """D_n = [n] D_{n-1}^q; exact unless ``rel_prec`` asks for a truncation."""
    if rel_prec is None:
        return CarlitzCache.of(F).factorial(n)
    d = PerfLaurent.one(F)
    for m in range(1, n + 1):
        d = (bracket(F, m) * d.frobenius(1)).truncate_rel(rel_prec)
    return d


def factorial_valuation(q: int, n: int) -> int:
    return (q**n - 1) // (q - 1)


def shift_product(F: FiniteField, n: int, k: int) -> PerfLaurent:
    return CarlitzCache.of(F).shift_product(n, k)


class FqLinearSeries:
    """Coefficients (u_0, ..., u_{n_prec-1}) of sum u_n t^(q^n) / D_n."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Sequence[PerfLaurent]):
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def n_prec(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> PerfLaurent:
        return self.coeffs[n]

    @classmethod
    def zero(cls, F, n_prec: int) -> "FqLinearSeries":
        z = PerfLaurent.zero(F)
        return cls(F, [z] * n_prec)

    @classmethod
    def psi(cls, F, n: int, n_prec: int, coeff: PerfLaurent | None = None) -> "FqLinearSeries":
        c = PerfLaurent.one(F) if coeff is None else coeff
        z = PerfLaurent.zero(F)
        return cls(F, [c if i == n else z for i in range(n_prec)])

    @classmethod
    def ones(cls, F, n_prec: int, start: int = 0) -> "FqLinearSeries":
        one, z = PerfLaurent.one(F), PerfLaurent.zero(F)
        return cls(F, [one if i >= start else z for i in range(n_prec)])

    def truncated(self, n_prec: int) -> "FqLinearSeries":
        return FqLinearSeries(self.field, self.coeffs[:n_prec])

    def _zip(self, other, fn):
        n = min(self.n_prec, other.n_prec)
        return FqLinearSeries(self.field, [fn(a, b) for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return FqLinearSeries(self.field, [-c for c in self.coeffs])

    def scale(self, lam: PerfLaurent) -> "FqLinearSeries":
        """Left multiplication by a scalar function value."""
        return FqLinearSeries(self.field, [lam * c for c in self.coeffs])

    def map(self, fn) -> "FqLinearSeries":
        return FqLinearSeries(self.field, [fn(c) for c in self.coeffs])

    def truncate_rel(self, rel) -> "FqLinearSeries":
        return self.map(lambda c: c.truncate_rel(rel))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FqLinearSeries)
            and other.field is self.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        from .textio import format_laurent

        body = ", ".join(f"{n}: {format_laurent(c)}" for n, c in enumerate(self.coeffs) if not c.is_exact_zero())
        return f"FqLinearSeries(nprec={self.n_prec}; {body})"


def apply_tau(u: FqLinearSeries) -> FqLinearSeries:
    """(tau u)_n = [n] u_{n-1}^q, (tau u)_0 = 0."""
    F = u.field
    out = [PerfLaurent.zero(F)]
    for n in range(1, u.n_prec):
        out.append(bracket(F, n) * u.coeffs[n - 1].frobenius(1))
    return FqLinearSeries(F, out[: u.n_prec])


def apply_d(u: FqLinearSeries) -> FqLinearSeries:
    """(d u)_n = u_{n+1}^(1/q); one index of precision is lost."""
    return FqLinearSeries(u.field, [c.frobenius(-1) for c in u.coeffs[1:]])


def apply_tau_series(A: Sequence[PerfLaurent], u: FqLinearSeries, a_prec: int | None = None) -> FqLinearSeries:
    """Formal action of sum_k A[k] tau^k on u.

    ``a_prec`` is the index precision of the operator series itself (None
    for a polynomial); the result is known for l < min(n_prec, a_prec).
    """
    F = u.field
    n_out = u.n_prec if a_prec is None else min(u.n_prec, a_prec)
    cache = CarlitzCache.of(F)
    out = []
    for l in range(n_out):
        acc = PerfLaurent.zero(F)
        for k in range(min(l, len(A) - 1) + 1):
            alpha = A[k]
            if alpha.is_exact_zero():
                continue
            n = l - k
            un = u.coeffs[n]
            if un.is_exact_zero():
                continue
            acc = acc + alpha * un.frobenius(k) * cache.shift_product(n, k)
        out.append(acc)
    return FqLinearSeries(F, out)


def _require_rel(rel):
    return DEFAULT_REL_PREC if rel is None else Fraction(rel)


def term_valuations(u: FqLinearSeries, t: PerfLaurent) -> list[tuple[int, Fraction]]:
    """val(u_n) + q^n val(t) - val(D_n) over the nonzero tracked coefficients."""
    q = u.field.q
    vt = t.valuation()
    return [
        (n, c.valuation() + q**n * vt - factorial_valuation(q, n))
        for n, c in enumerate(u.coeffs)
        if not c.is_zero()
    ]


def evaluate(u: FqLinearSeries, t: PerfLaurent, prec=None, rel_prec=None) -> PerfLaurent:
    """Sum the tracked terms u_n t^(q^n) / D_n.

    The tracked term valuations must increase strictly from the dominant
    term onward, and the dominant term may not be the last of several
    tracked terms; otherwise :class:`DivergentEvaluation` is raised.  The
    output precision is ``prec`` (default: dominant valuation + rel_prec),
    further limited by the precision of each term.
    """
    F = u.field
    if t.is_exact_zero():
        return PerfLaurent.zero(F)
    rel = _require_rel(rel_prec)
    vals = term_valuations(u, t)
    if not vals:
        return PerfLaurent(F, {}, 0, prec) if prec is not None else PerfLaurent.zero(F)
    dom = min(range(len(vals)), key=lambda i: (vals[i][1], i))
    if len(vals) > 1 and dom == len(vals) - 1:
        raise DivergentEvaluation(f"term valuations decrease up to the last tracked index {vals[-1][0]}")
    for (n0, v0), (n1, v1) in zip(vals[dom:], vals[dom + 1 :]):
        if v1 <= v0:
            raise DivergentEvaluation(
                f"term valuation does not increase: v_{n0}={v0}, v_{n1}={v1}"
            )
    target = Fraction(prec) if prec is not None else vals[dom][1] + rel
    acc = PerfLaurent(F, {}, 0, target)
    for n, v in vals:
        if v >= target:
            break
        need = target - v
        num = u.coeffs[n] * t.frobenius(n)
        d = carlitz_factorial(F, n, rel_prec=need)
        acc = acc + num.divide(d, rel_prec=need)
    return acc


@dataclass
class RadiusEstimate:
    """Prefix statistics for the radius of convergence.

    ``sequence`` holds (n, (val(u_n) - val(D_n)) / q^n) for the nonzero
    tracked coefficients; ``r_log`` is its minimum.  Over the tracked
    prefix the series converges for val(t) > -r_log.
    """

    r_log: Fraction | None
    sequence: list[tuple[int, Fraction]]
    skipped: list[int] = field(default_factory=list)
    bounded_below: bool = True

    def to_tsv(self) -> str:
        rows = ["n\tratio"]
        rows += [f"{n}\t{r}" for n, r in self.sequence]
        return "\n".join(rows) + "\n"


def no_downward_drift(values: Sequence, slack=1) -> bool:
    """Finite proxy for 'bounded below': the minimum over the second half
    of the sequence is not below the first-half minimum by more than slack."""
    vals = list(values)
    if len(vals) < 4:
        return True
    half = len(vals) // 2
    return min(vals[half:]) >= min(vals[:half]) - slack


def radius_log_lower_estimate(u: FqLinearSeries, slack=1) -> RadiusEstimate:
    if u.n_prec < 4:
        raise FqInputError("radius estimate needs at least 4 tracked coefficients")
    q = u.field.q
    seq, skipped = [], []
    for n, c in enumerate(u.coeffs):
        if c.is_zero():
            skipped.append(n)
            continue
        seq.append((n, (c.valuation() - factorial_valuation(q, n)) / Fraction(q) ** n))
    r_log = min((r for _, r in seq), default=None)
    return RadiusEstimate(r_log, seq, skipped, no_downward_drift([r for _, r in seq], slack))
