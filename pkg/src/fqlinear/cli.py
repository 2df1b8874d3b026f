"""Command-line front end.

    fqlinear solve  regular|model|singular|hypergeometric  [options]
    fqlinear op     mul|commutator|apply|center|ore        OPERATOR [OPERATOR]
    fqlinear verify identities|lemma|growth|radius         [options]

Series go to ``--output`` (or stdout, ahead of the report).  Reports are
TSV sections opened by ``# <section>`` lines under a one-line schema
header.  Exit codes: 0 ok, 1 verification failure, 2 input error,
3 arithmetic or precision error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .carlitz import (
    FqLinearSeries,
    apply_d,
    apply_tau,
    bracket,
    radius_log_lower_estimate,
)
from .coeff_field.ffield import FieldDesc, field_for_q, prime_power, _finite_field
from .coeff_field.laurent import DEFAULT_REL_PREC, PerfLaurent, level_cap
from .errors import FqArithmeticError, FqInputError
from .skew_ring import SkewOperator, center_membership, op_apply, op_commutator, op_mul, ore_witness
from .solvers import (
    RegularSystem,
    growth_diagnostic,
    lemma_counterexamples,
    model_phi,
    normalize_singular,
    reduce_order_to_system,
    regular_residual,
    scalar_regular_residual,
    singular_residual,
    solve_model,
    solve_regular,
    solve_singular,
    thakur_2f1_equation,
)
from .textio import format_laurent, format_operator, format_series, parse_laurent, parse_operator, parse_series

SCHEMA = "# fqlinear-report v1"
MAX_INDEXED = 10


@dataclass(frozen=True)
class JobConfig:
    q: int = 2
    v: int | None = None
    s: int = 1
    modulus: tuple[int, ...] | None = None
    modulus_s: tuple[int, ...] | None = None
    rel_prec: Fraction = DEFAULT_REL_PREC
    n_max: int = 16
    level: int = 64
    free: tuple[tuple[int, str], ...] = ()
    input: str | None = None
    output: str | None = None

    def __post_init__(self):
        if self.rel_prec <= 0 or self.n_max < 0 or self.level < 0:
            raise FqInputError("precisions must be positive")

    def field_(self):
        try:
            p, v = prime_power(self.q)
        except ValueError as e:
            raise FqInputError(str(e)) from None
        if self.v is not None and self.v != v:
            raise FqInputError(f"q={self.q} is not p^{self.v}")
        if self.modulus is None and self.modulus_s is None:
            return field_for_q(self.q, self.s)
        return _finite_field(FieldDesc(p, v, self.s, self.modulus, self.modulus_s).resolved())

    @classmethod
    def from_args(cls, ns) -> "JobConfig":
        return cls(
            q=ns.q,
            v=ns.v,
            s=ns.s,
            modulus=_int_tuple(ns.modulus),
            modulus_s=_int_tuple(ns.modulus_s),
            rel_prec=Fraction(ns.prec_exp),
            n_max=ns.nmax,
            level=ns.level,
            free=tuple(_free_pair(t) for t in ns.free),
            input=ns.input,
            output=ns.output,
        )


def _int_tuple(text):
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise FqInputError(f"bad modulus {text!r}; expected comma-separated integers") from None


def _free_pair(text: str) -> tuple[int, str]:
    n, sep, val = text.partition("=")
    if not sep or not n.strip().isdigit():
        raise FqInputError(f"--free expects n=value, got {text!r}")
    return int(n), val.strip()


# -- output ----------------------------------------------------------------


class Report:
    def __init__(self):
        self.lines = [SCHEMA]

    def section(self, name: str, header: Sequence[str]):
        self.lines.append(f"# {name}")
        self.lines.append("\t".join(header))

    def row(self, *cells):
        self.lines.append("\t".join(str(c) for c in cells))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise FqInputError(f"cannot read {path}: {e.strerror}") from None


def _emit(cfg: JobConfig, out, series_text: str | None, report: Report):
    if series_text is not None:
        if cfg.output and cfg.output != "-":
            Path(cfg.output).write_text(series_text)
        else:
            out.write(series_text)
    out.write(report.text())


def _series_arg(F, spec: str | None, n_prec: int) -> FqLinearSeries | None:
    """ones | zero | psi:n | path."""
    if spec is None or spec == "zero":
        return None
    if spec == "ones":
        return FqLinearSeries.ones(F, n_prec)
    if spec.startswith("psi:"):
        try:
            n = int(spec[4:])
        except ValueError:
            raise FqInputError(f"bad series spec {spec!r}") from None
        return FqLinearSeries.psi(F, n, max(n_prec, n + 1))
    return parse_series(_read_text(spec), F)


def _tau_poly(F, text: str) -> list[PerfLaurent]:
    """Coefficient list of a polynomial in tau (no d)."""
    op = parse_operator(F, text)
    if op.d_degree() > 0:
        raise FqInputError(f"expected a polynomial in tau, got {text!r}")
    k = op.tau_degree()
    return [op.coeff(i, 0) for i in range(k + 1)]


def _matrix(F, text: str) -> tuple[tuple[PerfLaurent, ...], ...]:
    rows = [r for r in text.split(";")]
    M = tuple(tuple(parse_laurent(F, e.strip()) for e in r.split(",")) for r in rows)
    if any(len(r) != len(M) for r in M):
        raise FqInputError(f"matrix {text!r} is not square")
    return M


def _free_values(F, cfg: JobConfig) -> dict[int, PerfLaurent]:
    return {n: parse_laurent(F, v) for n, v in cfg.free}


def _report_series_stats(rep: Report, u: FqLinearSeries):
    if u.n_prec >= 4:
        est = radius_log_lower_estimate(u)
        rep.section("radius", ["n", "(val u_n - val D_n)/q^n"])
        for n, r in est.sequence:
            rep.row(n, r)
        rep.section("radius-summary", ["key", "value"])
        rep.row("r_log", est.r_log)
        rep.row("skipped_zero_indices", ",".join(map(str, est.skipped)) or "-")
        rep.row("bounded_below", "yes" if est.bounded_below else "no")
        return est
    return None


# -- solve -----------------------------------------------------------------


def cmd_solve(cfg: JobConfig, ns, out) -> int:
    F = cfg.field_()
    kind = ns.kind
    rep = Report()
    rep.section("job", ["key", "value"])
    rep.row("command", f"solve {kind}")
    rep.row("q", F.q)
    rep.row("s", F.s)
    rep.row("nmax", cfg.n_max)
    rep.row("prec_exp", cfg.rel_prec)
    status = 0
    if kind == "regular":
        u, status = _solve_regular(F, cfg, ns, rep)
    elif kind == "model":
        u, status = _solve_model(F, cfg, ns, rep)
    elif kind == "singular":
        u, status = _solve_singular(F, cfg, ns, rep, None)
    else:
        eq = thakur_2f1_equation(F, ns.a, ns.b, ns.c)
        u, status = _solve_singular(F, cfg, ns, rep, eq)
    _emit(cfg, out, format_series(u), rep)
    return status


def _solve_regular(F, cfg, ns, rep):
    Bs = [getattr(ns, f"B{j}") for j in range(MAX_INDEXED)]
    y0 = [parse_laurent(F, t.strip()) for t in (ns.y0 or "0").split(",")]
    if any(b is not None for b in Bs):
        m = max(j for j, b in enumerate(Bs) if b is not None) + 1
        B = [_tau_poly(F, b) if b is not None else [] for b in Bs[:m]]
        if len(y0) != m:
            raise FqInputError(f"--y0 needs {m} values for an order-{m} equation")
        f = _series_arg(F, ns.f, cfg.n_max)
        sys_ = reduce_order_to_system(B, f, y0)
        sol = solve_regular(sys_, cfg.n_max, cfg.rel_prec)
        res_zero = scalar_regular_residual(B, f, sol.y[0]).is_zero()
    else:
        ps = [getattr(ns, f"p{k}") for k in range(MAX_INDEXED)]
        K = max((k for k, p in enumerate(ps) if p is not None), default=-1) + 1
        m = len(y0)
        zero_m = tuple(tuple(PerfLaurent.zero(F) for _ in range(m)) for _ in range(m))
        pis = tuple(_matrix(F, p) if p is not None else zero_m for p in ps[:K])
        if any(len(P) != m for P in pis):
            raise FqInputError("pi matrices and y0 disagree on the dimension")
        fs = ns.f_list or []
        if len(fs) > m:
            raise FqInputError("more --f series than components")
        f = tuple(_series_arg(F, fs[r] if r < len(fs) else None, cfg.n_max) for r in range(m))
        sys_ = RegularSystem(F, pis, f, tuple(y0))
        sol = solve_regular(sys_, cfg.n_max, cfg.rel_prec)
        res_zero = all(r.is_zero() for r in regular_residual(sys_, sol.y))
    rep.row("dimension", len(sol.y))
    rep.row("residual", "zero" if res_zero else "nonzero")
    rep.row("residual_window", sol.residual_window)
    g = sol.growth
    rep.section("growth", ["l", "-val(y_l)/q^l"])
    for l, v in g.sequence:
        rep.row(l, v)
    rep.section("growth-summary", ["key", "value"])
    rep.row("C", g.C if g.C is not None else "-")
    rep.row("bounded", "yes" if g.bounded else "no")
    _report_series_stats(rep, sol.y[0])
    return sol.y[0], 0 if res_zero else 1


def _solve_model(F, cfg, ns, rep):
    if ns.coeffs is None:
        raise FqInputError("solve model needs --coeffs a_0,...,a_m")
    a = [parse_laurent(F, t.strip()) for t in ns.coeffs.split(",")]
    f = _series_arg(F, ns.f, cfg.n_max + 1)
    sol = solve_model(F, a, f, cfg.n_max, _free_values(F, cfg), cfg.rel_prec)
    eq = normalize_singular([[PerfLaurent.zero(F)] * j + [aj] for j, aj in enumerate(a)], f, F)
    res_zero = singular_residual(eq, sol.u).is_zero()
    rep.row("residual", "zero" if res_zero else "nonzero")
    rep.row("residual_window", sol.report.window)
    rep.section("phi", ["n", "val Phi_n"])
    for n in range(cfg.n_max + 1):
        ph = model_phi(F, a, n)
        rep.row(n, ph.valuation() if not ph.is_zero() else "zero")
    _singular_sections(rep, sol.report)
    _report_series_stats(rep, sol.u)
    return sol.u, 0 if res_zero else 1


def _solve_singular(F, cfg, ns, rep, eq):
    free = _free_values(F, cfg)
    if eq is None:
        As = [getattr(ns, f"A{j}") for j in range(MAX_INDEXED)]
        m = max((j for j, A in enumerate(As) if A is not None), default=-1) + 1
        if m == 0:
            raise FqInputError("solve singular needs --A0 ... --A<m>")
        A = [_tau_poly(F, t) if t is not None else [] for t in As[:m]]
        f = _series_arg(F, ns.f, cfg.n_max + 1)
        eq = normalize_singular(A, f, F)
    elif not free:
        # kernel solution: first degenerate index set to 1
        diag = eq.diagonal()
        for l in range(cfg.n_max + 1):
            if model_phi(F, diag, l).is_zero():
                free = {l: PerfLaurent.one(F)}
                break
    sol = solve_singular(eq, cfg.n_max, free, cfg.rel_prec)
    r = sol.report
    rep.row("order", eq.order)
    rep.row("shift", r.shift)
    rep.row("residual", "zero" if r.residual_zero else "nonzero")
    rep.row("residual_window", r.window)
    _singular_sections(rep, r)
    _report_series_stats(rep, sol.u)
    return sol.u, 0 if r.residual_zero else 1


def _singular_sections(rep, r):
    rep.section("indices", ["index", "status", "value"])
    status = {l: "determined" for l in r.determined}
    status.update({l: "free" for l in r.free})
    for l in sorted(status):
        rep.row(l, status[l], format_laurent(r.free[l]) if l in r.free else "")


# -- op --------------------------------------------------------------------


def cmd_op(cfg: JobConfig, ns, out) -> int:
    F = cfg.field_()
    ops = [parse_operator(F, t) for t in ns.operands]
    need = {"mul": 2, "commutator": 2, "apply": 1, "center": 1, "ore": 2}[ns.kind]
    if len(ops) != need:
        raise FqInputError(f"op {ns.kind} takes {need} operator(s), got {len(ops)}")
    depth = sum(o.d_degree() for o in ops)
    if cfg.level < depth:
        raise FqInputError(f"--level {cfg.level} is below the job's d-degree {depth}")
    rep = Report()
    rep.section("job", ["key", "value"])
    rep.row("command", f"op {ns.kind}")
    rep.row("q", F.q)
    rep.row("s", F.s)
    series_text = None
    status = 0
    if ns.kind == "mul":
        rep.row("result", format_operator(op_mul(*ops)))
    elif ns.kind == "commutator":
        rep.row("result", format_operator(op_commutator(*ops)))
    elif ns.kind == "apply":
        if cfg.input is None:
            raise FqInputError("op apply needs --input <series file>")
        u = parse_series(_read_text(cfg.input), F)
        res = op_apply(ops[0], u)
        rep.row("index_precision", res.n_prec)
        series_text = format_series(res)
    elif ns.kind == "center":
        c = center_membership(ops[0])
        rep.row("result", c.describe())
        if not c.central:
            rep.row("commutator", format_operator(c.commutator))
    else:
        w = ore_witness(ops[0], ops[1], ns.side)
        rep.row("side", w.side)
        rep.row("degree", w.nu)
        rep.row("u", format_operator(w.u))
        rep.row("v", format_operator(w.v))
        rep.row("residual", "zero" if w.residual.is_zero() else format_operator(w.residual))
        status = 0 if w.verified else 1
    _emit(cfg, out, series_text, rep)
    return status


# -- verify ----------------------------------------------------------------


def identity_checks(F, depth: int):
    """Yield (name, ok, value) for the basic operator identities."""
    T, D = SkewOperator.tau(F), SkewOperator.d(F)
    n_prec = depth + 2
    for n in range(depth + 1):
        u = FqLinearSeries.psi(F, n, n_prec)
        du = apply_d(u)
        want = FqLinearSeries.psi(F, n - 1, n_prec - 1) if n >= 1 else FqLinearSeries.zero(F, n_prec - 1)
        yield f"d psi_{n} = psi_{n - 1}" if n else "d psi_0 = 0", du == want, du
        tu = apply_tau(u)
        want = FqLinearSeries.psi(F, n + 1, n_prec, bracket(F, n + 1))
        yield f"tau psi_{n} = [{n + 1}] psi_{n + 1}", tu == want, tu
        comm = apply_d(apply_tau(u)) - apply_tau(apply_d(u))
        want = FqLinearSeries.psi(F, n, n_prec - 1, bracket(F, 1).frobenius(-1))
        yield f"(d tau - tau d) psi_{n} = [1]^(1/q) psi_{n}", comm == want, comm
    c = op_commutator(D, T)
    yield "d tau - tau d = [1]^(1/q)", c == SkewOperator.scalar(bracket(F, 1).frobenius(-1)), c
    Ti = T
    for i in range(1, depth + 1):
        c = op_commutator(D, Ti)
        want = SkewOperator.monomial(bracket(F, i).frobenius(-1), i - 1, 0)
        yield f"[d, tau^{i}] = [{i}]^(1/q) tau^{i - 1}", c == want, c
        Ti = Ti * T
    Dj = D
    for j in range(1, depth + 1):
        c = op_commutator(Dj, T)
        want = SkewOperator.monomial(bracket(F, j).frobenius(-j), 0, j - 1)
        yield f"[d^{j}, tau] = [{j}]^(1/q^{j}) d^{j - 1}", c == want, c
        Dj = Dj * D


def cmd_verify(cfg: JobConfig, ns, out) -> int:
    rep = Report()
    rep.section("job", ["key", "value"])
    rep.row("command", f"verify {ns.suite}")
    failures = 0
    if ns.suite == "identities":
        F = cfg.field_()
        rep.row("q", F.q)
        rep.row("s", F.s)
        rep.section("checks", ["check", "result", "counterexample"])
        for name, ok, val in identity_checks(F, ns.depth):
            failures += not ok
            shown = "" if ok else (format_operator(val) if isinstance(val, SkewOperator) else format_series(val).replace("\n", " | "))
            rep.row(name, "pass" if ok else "fail", shown)
    elif ns.suite == "lemma":
        rep.row("q", cfg.q)
        rep.row("kmax", ns.kmax)
        bad = lemma_counterexamples(cfg.q, ns.kmax)
        rep.section("counterexamples", ["k", "parts"])
        for k, parts in bad:
            rep.row(k, ",".join(map(str, parts)))
        failures = len(bad)
    else:
        if cfg.input is None:
            raise FqInputError(f"verify {ns.suite} needs --input <series file>")
        F = cfg.field_()
        u = parse_series(_read_text(cfg.input), F)
        if ns.suite == "growth":
            g = growth_diagnostic([u])
            rep.section("growth", ["l", "-val(y_l)/q^l"])
            for l, v in g.sequence:
                rep.row(l, v)
            rep.section("growth-summary", ["key", "value"])
            rep.row("C", g.C if g.C is not None else "-")
            rep.row("bounded", "yes" if g.bounded else "no")
            failures = not g.bounded
        else:
            est = _report_series_stats(rep, u)
            if est is None:
                raise FqInputError("radius estimate needs at least 4 tracked coefficients")
            failures = not est.bounded_below
    rep.section("verdict", ["key", "value"])
    rep.row("status", "pass" if not failures else "fail")
    _emit(cfg, out, None, rep)
    return 1 if failures else 0


# -- argument parsing ------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("field and precision")
    g.add_argument("--q", type=int, default=2, help="size of the base field F_q")
    g.add_argument("--v", type=int, default=None, help="optional check that q = p^v")
    g.add_argument("--s", type=int, default=1, help="degree of the coefficient field over F_q")
    g.add_argument("--modulus", default=None, help="F_q modulus over F_p, coefficients low to high")
    g.add_argument("--modulus-s", default=None, help="F_(q^s) modulus over F_q, coefficients low to high")
    g.add_argument("--prec-exp", default=str(DEFAULT_REL_PREC), help="relative exponent precision")
    g.add_argument("--nmax", type=int, default=16, help="last series index computed")
    g.add_argument("--level", type=int, default=64, help="largest allowed q-power denominator level")
    g.add_argument("--free", action="append", default=[], help="n=value for a free index (repeatable)")
    g.add_argument("--input", default=None, help="input series file, '-' for stdin")
    g.add_argument("--output", default=None, help="output series file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="fqlinear", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve an equation")
    ssub = sp.add_subparsers(dest="kind", required=True)
    for kind in ("regular", "model", "singular", "hypergeometric"):
        k = ssub.add_parser(kind, parents=[common])
        if kind == "regular":
            for i in range(MAX_INDEXED):
                k.add_argument(f"--p{i}", default=None, help=argparse.SUPPRESS if i > 2 else "pi_k matrix, rows ';' entries ','")
                k.add_argument(f"--B{i}", default=None, help=argparse.SUPPRESS if i > 2 else "B_j(tau) of a scalar equation")
            k.add_argument("--y0", default=None, help="initial values, comma separated")
            k.add_argument("--f", dest="f_list", action="append", default=None,
                           help="right side per component: ones|zero|psi:n|path")
        elif kind == "model":
            k.add_argument("--coeffs", default=None, help="a_0,...,a_m")
        elif kind == "singular":
            for j in range(MAX_INDEXED):
                k.add_argument(f"--A{j}", default=None, help=argparse.SUPPRESS if j > 2 else "A_j(tau)")
        else:
            k.add_argument("--a", type=int, required=True)
            k.add_argument("--b", type=int, required=True)
            k.add_argument("--c", type=int, required=True)
        if kind != "regular":
            k.add_argument("--f", default=None, help="right side: ones|zero|psi:n|path")

    op = sub.add_parser("op", help="operator ring computations")
    osub = op.add_subparsers(dest="kind", required=True)
    for kind in ("mul", "commutator", "apply", "center", "ore"):
        k = osub.add_parser(kind, parents=[common])
        k.add_argument("operands", nargs="+")
        if kind == "ore":
            k.add_argument("--side", choices=("left", "right"), default="left")

    vp = sub.add_parser("verify", help="verification suites")
    vsub = vp.add_subparsers(dest="suite", required=True)
    for suite in ("identities", "lemma", "growth", "radius"):
        k = vsub.add_parser(suite, parents=[common])
        if suite == "identities":
            k.add_argument("--depth", type=int, default=6)
        if suite == "lemma":
            k.add_argument("--kmax", type=int, default=12)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if ns.command == "solve" and ns.kind == "regular":
        ns.f = None
    try:
        cfg = JobConfig.from_args(ns)
        with level_cap(cfg.level):
            if ns.command == "solve":
                return cmd_solve(cfg, ns, out)
            if ns.command == "op":
                return cmd_op(cfg, ns, out)
            return cmd_verify(cfg, ns, out)
    except FqArithmeticError as e:
        err.write(f"error: {e}\n")
        return 3
    except FqInputError as e:
        err.write(f"error: {e}\n")
        return 2


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
