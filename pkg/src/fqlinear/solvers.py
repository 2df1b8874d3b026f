"""Solvers for F_q-linear differential equations.

Regular systems ``d y = P(tau) y + f`` are solved by the division-free
recurrence

    y_(l+1) = sum_(n+k=l) pi_k^q  y_n^(q^(k+1))  B(n,k)^q  +  phi_l^q,

where ``B(n,k) = [n+1]^(q^(k-1)) ... [n+k]`` is the factor in
``tau^k psi_n = B(n,k) psi_(n+k)``.

Singular equations ``sum_j A_j(tau) d^j u = f`` with
``A_j(tau) = sum_i a_ji tau^(i+j)`` are solved by matching the
coefficient of psi_l:

    Phi_l u_l + sum_(i>=1) sum_j a_ji u_(l-i)^(q^i) B(l-i-j, i+j) = phi_l,
    Phi_l = sum_j a_j0 B(l-j, j).

The i >= 1 part only involves earlier coefficients, so the recursion is
triangular.  Indices with Phi_l = 0 are either free (the right side
vanishes) or inconsistent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .carlitz import (
    FqLinearSeries,
    RadiusEstimate,
    apply_d,
    apply_tau_series,
    bracket,
    factorial_valuation,
    no_downward_drift,
    radius_log_lower_estimate,
    shift_product,
)
from .coeff_field.ffield import FiniteField
from .coeff_field.laurent import DEFAULT_REL_PREC, PerfLaurent
from .errors import Inconsistent, InvalidPartition, ZeroOperator

Matrix = tuple[tuple[PerfLaurent, ...], ...]


def _rel(rel_prec):
    return DEFAULT_REL_PREC if rel_prec is None else Fraction(rel_prec)


def _f_coeff(f: FqLinearSeries | None, l: int, F: FiniteField) -> PerfLaurent:
    if f is None or l >= f.n_prec:
        return PerfLaurent.zero(F)
    return f.coeffs[l]


# -- regular systems --------------------------------------------------------


@dataclass(frozen=True)
class RegularSystem:
    """d y = P(tau) y + f with P(tau) = sum_k pi_k tau^k (pi_k an m x m matrix)."""

    field: FiniteField
    pi: tuple[Matrix, ...]
    f: tuple[FqLinearSeries | None, ...]
    y0: tuple[PerfLaurent, ...]

    @property
    def dim(self) -> int:
        return len(self.y0)

    def __post_init__(self):
        m = self.dim
        if len(self.f) != m:
            raise ValueError("f must have one series per component")
        for P in self.pi:
            if len(P) != m or any(len(row) != m for row in P):
                raise ValueError("each pi_k must be an m x m matrix")

    @classmethod
    def scalar(cls, F, pi: Sequence[PerfLaurent], f: FqLinearSeries | None, y0: PerfLaurent) -> "RegularSystem":
        return cls(F, tuple(((p,),) for p in pi), (f,), (y0,))

    def pi_entry(self, k: int, r: int, c: int) -> PerfLaurent:
        return self.pi[k][r][c]

    def coefficient_diagnostics(self) -> dict[str, list[tuple[int, Fraction]]]:
        """val(pi_k)/q^k and val(phi_j)/q^j over the supplied prefixes."""
        q = self.field.q
        pis = []
        for k, P in enumerate(self.pi):
            nz = [e for row in P for e in row if not e.is_zero()]
            if nz:
                pis.append((k, min(e.valuation() for e in nz) / Fraction(q) ** k))
        phis = []
        for f in self.f:
            if f is None:
                continue
            for j, c in enumerate(f.coeffs):
                if not c.is_zero():
                    phis.append((j, c.valuation() / Fraction(q) ** j))
        return {"pi": pis, "phi": phis}


@dataclass
class GrowthDiagnostic:
    """-val(y_l)/q^l over the nonzero tracked coefficients; C is its maximum."""

    sequence: list[tuple[int, Fraction]]
    C: Fraction | None
    bounded: bool

    def to_tsv(self) -> str:
        return "l\tneg_val_over_q^l\n" + "".join(f"{l}\t{g}\n" for l, g in self.sequence)


@dataclass
class RegularSolution:
    y: list[FqLinearSeries]
    growth: GrowthDiagnostic
    residual_window: int


def growth_diagnostic(ys: Sequence[FqLinearSeries], slack=1) -> GrowthDiagnostic:
    q = ys[0].field.q
    seq = []
    for l in range(ys[0].n_prec):
        nz = [y.coeffs[l] for y in ys if not y.coeffs[l].is_zero()]
        if nz:
            seq.append((l, -min(c.valuation() for c in nz) / Fraction(q) ** l))
    C = max((g for _, g in seq), default=None)
    # bounded above <=> the negated sequence shows no downward drift
    return GrowthDiagnostic(seq, C, no_downward_drift([-g for _, g in seq], slack))


def solve_regular(sys: RegularSystem, l_max: int, rel_prec=None) -> RegularSolution:
    """Coefficients y_0 .. y_(l_max) of the unique solution with y(psi_0-part) = y0."""
    F, m = sys.field, sys.dim
    R = _rel(rel_prec)
    n_prec = l_max + 1
    for f in sys.f:
        if f is not None:
            n_prec = min(n_prec, f.n_prec + 1)
    ys = [[PerfLaurent.const(F, c) if isinstance(c, int) else c] for c in sys.y0]
    # pi_k^q, precomputed
    piq = [[[e.frobenius(1) for e in row] for row in P] for P in sys.pi]
    for l in range(n_prec - 1):
        for r in range(m):
            acc = _f_coeff(sys.f[r], l, F).frobenius(1)
            for k in range(min(l, len(piq) - 1) + 1):
                n = l - k
                bq = shift_product(F, n, k).frobenius(1)
                for c in range(m):
                    p = piq[k][r][c]
                    if p.is_exact_zero():
                        continue
                    yn = ys[c][n]
                    if yn.is_exact_zero():
                        continue
                    acc = acc + p * yn.frobenius(k + 1) * bq
            ys[r].append(acc.truncate_rel(R))
    out = [FqLinearSeries(F, col) for col in ys]
    return RegularSolution(out, growth_diagnostic(out), n_prec - 1)


def regular_residual(sys: RegularSystem, ys: Sequence[FqLinearSeries]) -> list[FqLinearSeries]:
    """d y - P(tau) y - f, componentwise; known for indices < n_prec - 1."""
    m = sys.dim
    out = []
    for r in range(m):
        res = apply_d(ys[r])
        for c in range(m):
            A = [P[r][c] for P in sys.pi]
            res = res - apply_tau_series(A, ys[c])
        f = sys.f[r]
        if f is not None:
            res = res - f
        out.append(res)
    return out


def reduce_order_to_system(
    B: Sequence[Sequence[PerfLaurent]],
    f: FqLinearSeries | None,
    u_init: Sequence[PerfLaurent],
) -> RegularSystem:
    """Companion system of d^m u + sum_(j<m) B_j(tau) d^j u = f.

    Components are y_i = d^i u; ``u_init[i]`` is the psi_0 coefficient of
    d^i u.  Rows i < m-1 read d y_i = y_(i+1); the last row reads
    d y_(m-1) = -sum_j B_j(tau) y_j + f.
    """
    m = len(B)
    if m == 0 or len(u_init) != m:
        raise ValueError("need m >= 1 coefficient series and m initial values")
    F = u_init[0].field
    K = max(1, max(len(b) for b in B))
    zero, one = PerfLaurent.zero(F), PerfLaurent.one(F)
    pis = []
    for k in range(K):
        P = [[zero] * m for _ in range(m)]
        if k == 0:
            for i in range(m - 1):
                P[i][i + 1] = one
        for j in range(m):
            if k < len(B[j]):
                P[m - 1][j] = P[m - 1][j] - B[j][k]
        pis.append(tuple(tuple(row) for row in P))
    fs = tuple([None] * (m - 1) + [f])
    return RegularSystem(F, tuple(pis), fs, tuple(u_init))


def scalar_regular_residual(B, f, u: FqLinearSeries) -> FqLinearSeries:
    """d^m u + sum_j B_j(tau) d^j u - f."""
    m = len(B)
    ds = [u]
    for _ in range(m):
        ds.append(apply_d(ds[-1]))
    res = ds[m]
    for j in range(m):
        res = res + apply_tau_series(B[j], ds[j])
    return res - f if f is not None else res


# -- singular equations -----------------------------------------------------


def model_phi(F: FiniteField, a: Sequence[PerfLaurent], n: int) -> PerfLaurent:
    """Phi_n = sum_j a_j B(n-j, j), the multiplier of u_n for sum_j a_j tau^j d^j.

    B(n-j, j) = [n-j+1]^(q^(j-1)) ... [n-1]^q [n]; terms with j > n vanish.
    """
    acc = PerfLaurent.zero(F)
    for j, aj in enumerate(a):
        if j > n or aj.is_exact_zero():
            continue
        acc = acc + aj * shift_product(F, n - j, j)
    return acc


@dataclass
class SingularReport:
    determined: list[int] = field(default_factory=list)
    free: dict[int, PerfLaurent] = field(default_factory=dict)
    shift: int = 0
    window: int = 0
    radius: RadiusEstimate | None = None
    residual_zero: bool | None = None

    def to_tsv(self) -> str:
        from .textio import format_laurent

        rows = ["index\tstatus\tvalue"]
        status = {l: "determined" for l in self.determined}
        status.update({l: "free" for l in self.free})
        for l in sorted(status):
            v = format_laurent(self.free[l]) if l in self.free else ""
            rows.append(f"{l}\t{status[l]}\t{v}")
        return "\n".join(rows) + "\n"


@dataclass
class SingularSolution:
    u: FqLinearSeries
    report: SingularReport


def solve_model(
    F: FiniteField,
    a: Sequence[PerfLaurent],
    f: FqLinearSeries | None,
    n_max: int,
    free_values: Mapping[int, PerfLaurent] | None = None,
    rel_prec=None,
) -> SingularSolution:
    """u_n = phi_n / Phi_n for sum_j a_j tau^j d^j u = f."""
    R = _rel(rel_prec)
    free_values = dict(free_values or {})
    report = SingularReport()
    coeffs = []
    for n in range(n_max + 1):
        phi = model_phi(F, a, n)
        rhs = _f_coeff(f, n, F)
        if phi.is_zero():
            if not rhs.is_zero():
                raise Inconsistent(n, "Phi vanishes but the right side does not")
            val = free_values.get(n, PerfLaurent.zero(F))
            report.free[n] = val
            coeffs.append(val)
            continue
        report.determined.append(n)
        coeffs.append(rhs.divide(phi, R) if not rhs.is_exact_zero() else PerfLaurent.zero(F))
    u = FqLinearSeries(F, coeffs)
    report.window = n_max + 1 - max(0, len(a) - 1)
    if u.n_prec >= 4:
        report.radius = radius_log_lower_estimate(u)
    return SingularSolution(u, report)


@dataclass(frozen=True)
class SingularEquation:
    """sum_j A_j(tau) d^j u = f.

    ``A`` holds the equation as given (A[j][k] is the coefficient of tau^k
    in A_j); ``table[j][i]`` is the coefficient of tau^(i+j) after the
    equation was multiplied by tau^shift, and ``f_shifted`` is the
    correspondingly transformed right side.
    """

    field: FiniteField
    A: tuple[tuple[PerfLaurent, ...], ...]
    f: FqLinearSeries | None
    table: tuple[tuple[PerfLaurent, ...], ...]
    shift: int
    f_shifted: FqLinearSeries | None

    @property
    def order(self) -> int:
        return len(self.A) - 1

    def diagonal(self) -> list[PerfLaurent]:
        return [row[0] if row else PerfLaurent.zero(self.field) for row in self.table]


def _tau_order(Aj: Sequence[PerfLaurent]) -> int | None:
    for k, c in enumerate(Aj):
        if not c.is_exact_zero():
            return k
    return None


def normalize_singular(A: Sequence[Sequence[PerfLaurent]], f: FqLinearSeries | None, field_: FiniteField | None = None) -> SingularEquation:
    """Multiply by tau^s (s may be negative: factor tau^|s| out) so that
    every A_j starts at tau^j or later and some A_j has a tau^j term."""
    orders = {j: _tau_order(Aj) for j, Aj in enumerate(A)}
    live = {j: o for j, o in orders.items() if o is not None}
    if not live:
        raise ZeroOperator("all operator coefficients vanish")
    F = field_ if field_ is not None else next(c for Aj in A for c in Aj if c is not None).field
    s = max(j - o for j, o in live.items())
    table = []
    for j, Aj in enumerate(A):
        # tau^s alpha tau^k = alpha^(q^s) tau^(k+s); keep the part from tau^j on
        row = {}
        for k, c in enumerate(Aj):
            if c.is_exact_zero():
                continue
            row[k + s - j] = c.frobenius(s)
        top = max(row, default=-1)
        table.append(tuple(row.get(i, PerfLaurent.zero(F)) for i in range(top + 1)))
    if s >= 0:
        fs = f
        for _ in range(s):
            fs = None if fs is None else _tau_series(fs)
    else:
        fs = None if f is None else _untau(f, -s)
    A_t = tuple(tuple(Aj) for Aj in A)
    return SingularEquation(F, A_t, f, tuple(table), s, fs)


def _tau_series(u: FqLinearSeries) -> FqLinearSeries:
    from .carlitz import apply_tau

    return apply_tau(u)


def _untau(f: FqLinearSeries, s: int, rel_prec=None) -> FqLinearSeries:
    """g with tau^s g = f; requires f_0 = ... = f_(s-1) = 0."""
    F = f.field
    R = _rel(rel_prec)
    for n in range(min(s, f.n_prec)):
        if not f.coeffs[n].is_zero():
            raise Inconsistent(n, "right side is not in the image of tau")
    out = []
    for n in range(f.n_prec - s):
        c = f.coeffs[n + s]
        if c.is_exact_zero():
            out.append(c)
        else:
            out.append(c.divide(shift_product(F, n, s), R).frobenius(-s))
    return FqLinearSeries(F, out)


def solve_singular(
    eq: SingularEquation,
    n_max: int,
    free_values: Mapping[int, PerfLaurent] | None = None,
    rel_prec=None,
    check_residual: bool = True,
) -> SingularSolution:
    """Coefficients u_0 .. u_(n_max) by triangular coefficient matching."""
    F = eq.field
    R = _rel(rel_prec)
    free_values = dict(free_values or {})
    m = eq.order
    table = eq.table
    diag = eq.diagonal()
    report = SingularReport(shift=eq.shift)
    n_prec = n_max + 1
    if eq.f_shifted is not None:
        n_prec = min(n_prec, eq.f_shifted.n_prec)
    u: list[PerfLaurent] = []
    for l in range(n_prec):
        rhs = _f_coeff(eq.f_shifted, l, F)
        for j, row in enumerate(table):
            for i in range(1, len(row)):
                a = row[i]
                if a.is_exact_zero() or l - i - j < 0:
                    continue
                prev = u[l - i]
                if prev.is_exact_zero():
                    continue
                rhs = rhs - a * prev.frobenius(i) * shift_product(F, l - i - j, i + j)
        phi = model_phi(F, diag, l)
        if phi.is_zero():
            if not rhs.is_zero():
                raise Inconsistent(l, "Phi vanishes but the right side does not")
            val = free_values.get(l, PerfLaurent.zero(F))
            report.free[l] = val
            u.append(val)
            continue
        report.determined.append(l)
        u.append(PerfLaurent.zero(F) if rhs.is_exact_zero() else rhs.divide(phi, R))
    sol = FqLinearSeries(F, u)
    report.window = max(0, sol.n_prec - m)
    if sol.n_prec >= 4:
        report.radius = radius_log_lower_estimate(sol)
    if check_residual:
        report.residual_zero = singular_residual(eq, sol).is_zero()
    return SingularSolution(sol, report)


def singular_residual(eq: SingularEquation, u: FqLinearSeries) -> FqLinearSeries:
    """sum_j A_j(tau) d^j u - f for the equation as originally given."""
    ds = [u]
    for _ in range(eq.order):
        ds.append(apply_d(ds[-1]))
    n_out = ds[-1].n_prec
    res = FqLinearSeries.zero(eq.field, n_out)
    for j, Aj in enumerate(eq.A):
        if all(c.is_exact_zero() for c in Aj):
            continue
        res = res + apply_tau_series(list(Aj), ds[j])
    if eq.f is not None:
        res = res - eq.f
    return res


def thakur_2f1_equation(F: FiniteField, a: int, b: int, c: int, n_prec: int | None = None) -> SingularEquation:
    """Equation of the F_q-linear Gauss hypergeometric function, f = 0:

    A_2 = (1 - tau) tau,  A_1 = ([-1]^q + [-b] + [-c]) tau - [-c],  A_0 = -[-a][-b].
    """
    one = PerfLaurent.one(F)
    zero = PerfLaurent.zero(F)
    br = lambda i: bracket(F, i)  # noqa: E731
    A2 = (zero, one, -one)
    A1 = (-br(-c), br(-1).frobenius(1) + br(-b) + br(-c))
    A0 = (-(br(-a) * br(-b)),)
    return normalize_singular([A0, A1, A2], None, F)


# -- the Lemma ---------------------------------------------------------------


def lemma_partition_check(q: int, k: int, parts: Sequence[int]) -> bool:
    """q^(i_1+...+i_r) + q^(i_2+...+i_r) + ... + q^(i_r) <= q^(k+1)."""
    parts = list(parts)
    if k < 2:
        raise InvalidPartition(f"k must be at least 2, got {k}")
    if not parts or any(not isinstance(i, int) or i <= 0 for i in parts):
        raise InvalidPartition(f"parts must be positive integers: {parts}")
    if sum(parts) != k:
        raise InvalidPartition(f"parts {parts} do not sum to {k}")
    lhs, tail = 0, 0
    for i in reversed(parts):
        tail += i
        lhs += q**tail
    return lhs <= q ** (k + 1)


def compositions(k: int):
    """All ordered tuples of positive integers summing to k."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in compositions(k - first):
            yield (first,) + rest


def lemma_counterexamples(q: int, k_max: int) -> list[tuple[int, tuple[int, ...]]]:
    return [(k, p) for k in range(2, k_max + 1) for p in compositions(k) if not lemma_partition_check(q, k, p)]


def radius_sequence_plus(u: FqLinearSeries) -> list[tuple[int, Fraction]]:
    """(val(u_n) + val(D_n)) / q^n over nonzero coefficients."""
    q = u.field.q
    return [
        (n, (c.valuation() + factorial_valuation(q, n)) / Fraction(q) ** n)
        for n, c in enumerate(u.coeffs)
        if not c.is_zero()
    ]
