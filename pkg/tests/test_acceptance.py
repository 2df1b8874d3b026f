"""Acceptance criteria 1-9, one pass/fail line each.

The lines are collected into a terminal summary section at the end of
any pytest run that includes this module.
"""
from __future__ import annotations

import io
import random
import time
from fractions import Fraction

from fqlinear.carlitz import FqLinearSeries, apply_d, apply_tau, bracket
from fqlinear.cli import run
from fqlinear.coeff_field import GF, FFElem, PerfLaurent, field_for_q
from fqlinear.skew_ring import (
    SkewOperator,
    center_membership,
    op_commutator,
    ore_witness,
    probe_is_zero,
    random_operator,
)
from fqlinear.solvers import (
    RegularSystem,
    lemma_counterexamples,
    model_phi,
    radius_sequence_plus,
    regular_residual,
    singular_residual,
    solve_model,
    solve_regular,
    solve_singular,
    thakur_2f1_equation,
)

from .golden_cases import CASES, GOLDEN_DIR, resolve

RESULTS: dict[int, str] = {}


def criterion(number, title, limit, check):
    """Time ``check`` (returns (ok, detail)), print one line, then assert."""
    t0 = time.perf_counter()
    try:
        ok, detail = check()
    except Exception as e:  # a crash is a failure, reported on the same line
        ok, detail = False, f"{type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    within = dt < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"criterion {number} [{status}] {title}: {detail}; {dt:.2f}s (limit {limit}s)"
    RESULTS[number] = line
    print(line)
    assert ok, line
    assert within, line


# -- 1 -------------------------------------------------------------------------


def identity_suite():
    failures, count = [], 0
    for q in (2, 3, 4):
        for s in (1, 2):
            F = field_for_q(q, s)
            T, D = SkewOperator.tau(F), SkewOperator.d(F)
            root1 = bracket(F, 1).frobenius(-1)
            for n in range(0, 8):
                psi = FqLinearSeries.psi(F, n, 9)
                checks = [
                    apply_d(psi) == (FqLinearSeries.psi(F, n - 1, 8) if n else FqLinearSeries.zero(F, 8)),
                    apply_tau(psi) == FqLinearSeries.psi(F, n + 1, 9, bracket(F, n + 1)) if n < 8 else True,
                    apply_d(apply_tau(psi)) - apply_tau(apply_d(psi)) == FqLinearSeries.psi(F, n, 8, root1),
                ]
                count += len(checks)
                failures += [(q, s, "psi", n, k) for k, c in enumerate(checks) if not c]
            count += 1
            if D * T - T * D != SkewOperator.scalar(root1):
                failures.append((q, s, "dtau"))
            for i in range(1, 7):
                count += 2
                want = SkewOperator.monomial(bracket(F, i).frobenius(-1), i - 1, 0)
                if op_commutator(D, SkewOperator.tau(F, i)) != want:
                    failures.append((q, s, "d,tau^i", i))
                want = SkewOperator.monomial(bracket(F, i).frobenius(-i), 0, i - 1)
                if op_commutator(SkewOperator.d(F, i), T) != want:
                    failures.append((q, s, "d^j,tau", i))
    return not failures, f"{count} exact checks, {len(failures)} failures {failures[:3]}"


def test_criterion_1_identities():
    criterion(1, "basis actions, commutator families and d tau - tau d", 5, identity_suite)


# -- 2 -------------------------------------------------------------------------


def exponential():
    F = GF(2)
    one = PerfLaurent.one(F)
    sol = solve_regular(RegularSystem.scalar(F, [one], None, one), 64)
    u = sol.y[0]
    ok = u.n_prec == 65 and all(c == one for c in u.coeffs)
    return ok, f"u_n = 1 exactly for n <= {u.n_prec - 1}"


def test_criterion_2_exponential():
    criterion(2, "Carlitz exponential from dy = y", 5, exponential)


# -- 3 -------------------------------------------------------------------------


def random_regular_system(F, rng):
    m = rng.choice([1, 2])

    def poly():
        items = [(e, FFElem(F, rng.randrange(F.order))) for e in range(0, 3) if rng.random() < 0.5]
        return PerfLaurent.from_exponents(F, items)

    pis = tuple(tuple(tuple(poly() for _ in range(m)) for _ in range(m)) for _ in range(3))
    f = tuple(
        FqLinearSeries(F, [poly() if rng.random() < 0.3 else PerfLaurent.zero(F) for _ in range(26)])
        for _ in range(m)
    )
    y0 = tuple(poly() for _ in range(m))
    return RegularSystem(F, pis, f, y0)


def regular_systems():
    rng = random.Random(3)
    bad, worst_C = [], Fraction(0)
    for trial in range(25):
        F = field_for_q(rng.choice([2, 3]))
        sys_ = random_regular_system(F, rng)
        sol = solve_regular(sys_, 25)
        res = regular_residual(sys_, sol.y)
        if not all(r.n_prec >= 25 and r.truncated(25).is_zero() for r in res) or not sol.growth.bounded:
            bad.append(trial)
        if sol.growth.C is not None:
            worst_C = max(worst_C, sol.growth.C)
    return not bad, f"25 systems, residual zero through index 24, max C = {worst_C}, failing {bad}"


def test_criterion_3_regular_systems():
    criterion(3, "uniqueness and growth for random regular systems", 60, regular_systems)


# -- 4 -------------------------------------------------------------------------


def model_equation():
    F = GF(2)
    x, one = PerfLaurent.x(F), PerfLaurent.one(F)
    v_x1 = [model_phi(F, [x, one], n).valuation() for n in range(21)]
    v_11 = [model_phi(F, [one, one], n).valuation() for n in range(21)]
    ok = v_x1 == [2**n for n in range(21)] and v_11 == [0] * 21
    low = []
    for a in ([x, one], [one, one]):
        sol = solve_model(F, a, FqLinearSeries.ones(F, 21), 20)
        low.append(min(r for _, r in radius_sequence_plus(sol.u)))
    ok = ok and all(m >= -1 for m in low)
    return ok, f"val Phi_n = 2^n and 0 for n <= 20; min (val u_n + val D_n)/q^n = {[str(m) for m in low]}"


def test_criterion_4_model_equation():
    criterion(4, "model equation Phi_n valuations and solution bound", 10, model_equation)


# -- 5 -------------------------------------------------------------------------


def thakur():
    bad, r_logs = [], []
    for q in (2, 3):
        F = field_for_q(q)
        for a in (1, 2):
            for b in (1, 2):
                for c in (1, 2):
                    eq = thakur_2f1_equation(F, a, b, c)
                    sol = solve_singular(eq, 34, {0: PerfLaurent.one(F)})
                    res = singular_residual(eq, sol.u)
                    if res.n_prec < 33 or not res.is_zero() or not sol.report.radius.bounded_below:
                        bad.append((q, a, b, c))
                    r_logs.append(sol.report.radius.r_log)
    return not bad, f"16 kernel solutions, residual zero through n = 32, min r_log = {min(r_logs)}, failing {bad}"


def test_criterion_5_thakur():
    criterion(5, "Thakur 2F1 kernel solutions", 60, thakur)


# -- 6 -------------------------------------------------------------------------


def lemma():
    found = {q: lemma_counterexamples(q, 12) for q in (2, 3, 4)}
    ok = not any(found.values())
    return ok, f"all compositions of k <= 12 for q in (2, 3, 4), counterexamples {found}"


def test_criterion_6_lemma():
    criterion(6, "exhaustive partition lemma", 5, lemma)


# -- 7 -------------------------------------------------------------------------


def skew_ring():
    rng = random.Random(7)
    fields = [field_for_q(q) for q in (2, 3, 4)]
    disagree = 0
    for k in range(100):
        F = fields[k % 3]
        a = random_operator(F, rng, degree=2)
        if k % 4 == 0:
            a = a - a  # exercise structural zero too
        disagree += probe_is_zero(a) != a.is_zero()
    zero_div = 0
    products = 0
    while products < 100:
        F = fields[products % 3]
        a, b = random_operator(F, rng, 2), random_operator(F, rng, 2)
        if a.is_zero() or b.is_zero():
            continue
        products += 1
        ab = a * b
        zero_div += ab.is_zero() or probe_is_zero(ab) or ab.degree() != a.degree() + b.degree()
    wrong = []
    for q, s in ((2, 1), (3, 1), (4, 1), (4, 2)):
        F = field_for_q(q, s)
        T, D = SkewOperator.tau(F), SkewOperator.d(F)
        cands = [(f"const {c}", SkewOperator.scalar(PerfLaurent.const(F, FFElem(F, c))), True) for c in range(F.q)]
        if s > 1:
            g = FFElem(F, F.generator())
            cands.append(("extension const", SkewOperator.scalar(PerfLaurent.const(F, g)), False))
        cands += [
            ("x", SkewOperator.scalar(PerfLaurent.x(F)), False),
            ("tau", T, False),
            ("d", D, False),
            ("tau d", T * D, False),
        ]
        wrong += [(q, s, name) for name, op, want in cands if center_membership(op).central != want]
    ok = disagree == 0 and zero_div == 0 and not wrong
    return ok, f"probe disagreements {disagree}/100, zero divisors {zero_div}/100, center misclassified {wrong}"


def test_criterion_7_skew_ring():
    criterion(7, "normal form, no zero divisors, center", 30, skew_ring)


# -- 8 -------------------------------------------------------------------------


def ore():
    F = GF(2)
    rng = random.Random(8)
    pairs = [(SkewOperator.tau(F), SkewOperator.d(F))]
    while len(pairs) < 21:
        a, b = random_operator(F, rng, 2), random_operator(F, rng, 2)
        if not a.is_zero() and not b.is_zero():
            pairs.append((a, b))
    bad, nus = [], []
    for k, (a, b) in enumerate(pairs):
        w = ore_witness(a, b, "left")
        nus.append(w.nu)
        if w.u.is_zero() or w.v.is_zero() or w.u * a != w.v * b:
            bad.append(k)
    return not bad, f"(tau, d) plus 20 random pairs, witness degrees {nus}, failing {bad}"


def test_criterion_8_ore():
    criterion(8, "left Ore witnesses", 120, ore)


# -- 9 -------------------------------------------------------------------------


def golden():
    drift = []
    for name, argv in sorted(CASES.items()):
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            run(resolve(argv), buf, io.StringIO())
            outs.append(buf.getvalue())
        frozen = (GOLDEN_DIR / f"{name}.out").read_text()
        if not (outs[0] == outs[1] == frozen):
            drift.append(name)
    return not drift, f"{len(CASES)} worked examples byte-identical to golden files, drifting {drift}"


def test_criterion_9_cli_golden():
    criterion(9, "CLI determinism", 60, golden)

