import io

import pytest

from fqlinear.cli import run
from fqlinear.coeff_field import GF, PerfLaurent
from fqlinear.skew_ring import SkewOperator
from fqlinear.textio import parse_operator, parse_series

from .golden_cases import CASES, GOLDEN_DIR, resolve


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def report_rows(text, section):
    """key -> value rows of one TSV section."""
    lines = text.splitlines()
    start = lines.index(f"# {section}") + 2
    rows = {}
    for ln in lines[start:]:
        if ln.startswith("#"):
            break
        k, _, v = ln.partition("\t")
        rows[k] = v
    return rows


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_is_byte_stable(name):
    argv = resolve(CASES[name])
    code, first, _ = call(argv)
    assert code == 0
    _, second, _ = call(argv)
    assert first == second
    assert first == (GOLDEN_DIR / f"{name}.out").read_text()


def test_exponential_example():
    _, out, _ = call(CASES["solve_regular_exp"])
    u = parse_series(out)
    F = u.field
    assert u.n_prec == 17 and all(c == PerfLaurent.one(F) for c in u.coeffs)
    assert report_rows(out, "job")["residual"] == "zero"


def test_hypergeometric_example():
    _, out, _ = call(CASES["solve_hypergeometric_111"])
    job = report_rows(out, "job")
    assert job["residual"] == "zero" and job["shift"] == "1"
    assert report_rows(out, "indices")["0"].startswith("free")


def test_model_example():
    _, out, _ = call(CASES["solve_model_x1"])
    u = parse_series(out)
    F = u.field
    assert list(u.coeffs) == [PerfLaurent.monomial(F, 1, -(2**n)) for n in range(13)]
    phi = report_rows(out, "phi")
    assert all(phi[str(n)] == str(2**n) for n in range(13))


def test_operator_examples():
    F = GF(2)
    T, D = SkewOperator.tau(F), SkewOperator.d(F)
    _, out, _ = call(CASES["op_commutator_d_tau"])
    got = parse_operator(F, report_rows(out, "job")["result"])
    assert got == D * T - T * D
    _, out, _ = call(CASES["op_center_x"])
    assert report_rows(out, "job")["result"] == "not central; witness tau"
    _, out, _ = call(CASES["op_ore_tau_d"])
    job = report_rows(out, "job")
    u, v = parse_operator(F, job["u"]), parse_operator(F, job["v"])
    assert not u.is_zero() and not v.is_zero()
    assert u * T == v * D
    assert job["residual"] == "zero"


def test_verify_examples():
    for name in ("verify_identities_q3", "verify_lemma_q2", "verify_radius_model"):
        _, out, _ = call(resolve(CASES[name]))
        assert report_rows(out, "verdict")["status"] == "pass"


def test_output_flag_and_stdin(tmp_path, monkeypatch):
    path = tmp_path / "exp.series"
    code, out, _ = call(CASES["solve_regular_exp"] + ["--output", str(path)])
    assert code == 0 and out.startswith("# fqlinear-report v1")
    monkeypatch.setattr("sys.stdin", io.StringIO(path.read_text()))
    code, out, _ = call(["verify", "radius", "--input", "-"])
    assert code == 0


def test_free_value_is_used():
    code, out, _ = call(["solve", "hypergeometric", "--a", "1", "--b", "2", "--c", "1", "--nmax", "6", "--free", "0=x"])
    assert code == 0
    u = parse_series(out)
    assert u.coeffs[0] == PerfLaurent.x(u.field)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["solve", "regular", "--q", "6", "--p0", "1"], 2),
        (["op", "mul", "tau", "x^("], 2),
        (["verify", "growth"], 2),
        (["solve", "model", "--q", "2", "--coeffs", "0,1", "--f", "ones", "--nmax", "4"], 3),
        (["bogus"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert call(argv)[0] == code


def test_verification_failure_exit(tmp_path):
    # val u_n = -n q^n drifts without bound
    lines = ["fq-linear q=2 s=1 nprec=6"] + [f"{n}: x^({-n * 2**n})" for n in range(6)]
    path = tmp_path / "bad.series"
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = call(["verify", "radius", "--input", str(path)])
    assert code == 1
    assert report_rows(out, "verdict")["status"] == "fail"
