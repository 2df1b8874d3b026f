from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import GF as SymGF, Poly, symbols

from fqlinear.coeff_field import (
    GF,
    FFElem,
    FieldDesc,
    PerfLaurent,
    RatFunRing,
    ff_arith,
    ff_frobenius_q,
    field_for_q,
    level_cap,
    pl_arith,
    pl_frobenius_q,
    pl_invert,
    pl_valuation,
    rf_kernel,
    rf_matvec,
)
from fqlinear.coeff_field.ffield import _finite_field
from fqlinear.errors import (
    DivisionByZero,
    IrreducibilityError,
    LevelExhausted,
    NotInvertible,
    ValuationOfZero,
)
from fqlinear.textio import format_laurent

from .conftest import elements, fields, laurents, nonzero_laurents
from .oracle import neg_geometric_inverse

# -- finite fields ----------------------------------------------------------


def test_char_two_addition():
    F = GF(2)
    assert ff_arith(FFElem(F, 1), FFElem(F, 1), "add").value == 0


def test_f4_products_match_polynomial_reduction():
    # oracle: sympy reduction mod t^2 + t + 1 over GF(2)
    t = symbols("t")
    m = Poly(t**2 + t + 1, t, domain=SymGF(2))
    sq = Poly(t * t, t, domain=SymGF(2)).rem(m)
    assert sq == Poly(t + 1, t, domain=SymGF(2))
    F = field_for_q(4)
    assert F.desc.modulus_q == (1, 1, 1)
    g = FFElem(F, F.generator())
    assert g * g == g + 1
    assert ff_arith(g, None, "inv") == g + 1
    assert (g * (g + 1)).value == 1


def test_frobenius_on_f4_over_f2():
    F = GF(2, 1, 2)
    g = FFElem(F, F.generator())
    assert ff_frobenius_q(g, 1) == g + 1
    assert ff_frobenius_q(ff_frobenius_q(g, 1), -1) == g


def test_inverse_of_zero():
    F = GF(3)
    with pytest.raises(DivisionByZero):
        FFElem(F, 0).inverse()


def test_reducible_modulus_rejected():
    with pytest.raises(IrreducibilityError):
        FieldDesc(2, 2, 1, (1, 0, 1)).resolved()  # t^2 + 1 = (t + 1)^2


def test_explicit_modulus_accepted():
    F = _finite_field(FieldDesc(3, 2, 1, (1, 0, 1)).resolved())  # t^2 + 1 over F_3
    g = FFElem(F, F.generator())
    assert g * g == FFElem(F, 2)


@given(fields, st.data())
def test_field_axioms(F, data):
    a, b, c = (FFElem(F, data.draw(elements(F))) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a.value:
        assert (a * a.inverse()).value == 1


@given(fields, st.data())
def test_frobenius_fixes_base_and_cycles(F, data):
    a = FFElem(F, data.draw(elements(F)))
    assert ff_frobenius_q(a, F.s) == a
    k = data.draw(st.integers(-3, 3))
    assert ff_frobenius_q(ff_frobenius_q(a, k), -k) == a
    if F.s == 1:
        assert ff_frobenius_q(a, 1) == a


# -- perfect Laurent series ----------------------------------------------------


def test_spec_laurent_examples():
    F = GF(2)
    x = PerfLaurent.x(F)
    assert pl_arith(x, x, "mul") == PerfLaurent.monomial(F, 1, 2)
    b1 = PerfLaurent.monomial(F, 1, 2) - x
    assert pl_arith(b1, x, "add") == PerfLaurent.monomial(F, 1, 2)
    h = PerfLaurent.from_exponents(F, [(Fraction(1, 2), 1), (1, 1)])
    assert h * h == PerfLaurent.from_exponents(F, [(1, 1), (2, 1)])
    assert pl_valuation(h) == Fraction(1, 2)
    assert pl_valuation(PerfLaurent.monomial(F, 1, -3)) == -3


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_invert_bracket_one_matches_geometric_series(q):
    F = GF(q)
    b1 = PerfLaurent.from_exponents(F, [(q, 1), (1, -1)])
    inv = pl_invert(b1, rel_prec=12)
    want = {e: c for e, c in neg_geometric_inverse(q, 40).items() if e < -1 + 12}
    assert dict(inv.items()) == want
    assert inv.prec == -1 + 12
    assert pl_valuation(inv) == -1


def test_invert_one_minus_x():
    F = GF(3)
    inv = pl_invert(PerfLaurent.one(F) - PerfLaurent.x(F), rel_prec=6)
    assert dict(inv.items()) == {Fraction(k): 1 for k in range(6)}


def test_invert_zero():
    F = GF(2)
    with pytest.raises(NotInvertible):
        pl_invert(PerfLaurent.zero(F))
    with pytest.raises(NotInvertible):
        pl_invert(PerfLaurent.big_o(F, 3))


def test_valuation_of_zero():
    with pytest.raises(ValuationOfZero):
        pl_valuation(PerfLaurent.zero(GF(2)))


def test_frobenius_examples():
    F = GF(3)
    x = PerfLaurent.x(F)
    assert pl_frobenius_q(x, -1) == PerfLaurent.monomial(F, 1, Fraction(1, 3))
    b1 = PerfLaurent.from_exponents(F, [(3, 1), (1, -1)])
    assert format_laurent(pl_frobenius_q(b1, -1)) == "2*x^(1/3) + x"
    assert pl_frobenius_q(PerfLaurent.monomial(F, 1, Fraction(1, 3)), 1) == x


def test_precision_rules():
    F = GF(2)
    f = PerfLaurent.x(F) + PerfLaurent.big_o(F, 5)
    g = PerfLaurent.monomial(F, 1, 2) + PerfLaurent.big_o(F, 4)
    assert (f + g).prec == 4
    # min(5 + 2, 4 + 1)
    assert (f * g).prec == 5
    assert f.frobenius(1).prec == 10
    assert f.frobenius(-1).prec == Fraction(5, 2)


def test_level_cap():
    F = GF(2)
    with level_cap(3):
        PerfLaurent.x(F).frobenius(-3)
        with pytest.raises(LevelExhausted):
            PerfLaurent.x(F).frobenius(-4)


@given(fields, st.data())
def test_ring_laws_at_propagated_precision(F, data):
    f, g, h = (data.draw(laurents(F)) for _ in range(3))
    assert (f + g) + h == f + (g + h)
    lhs, rhs = f * (g + h), f * g + f * h
    # equal on the common known range
    p = min(x for x in (lhs.prec, rhs.prec, Fraction(10**9)) if x is not None)
    assert lhs.truncate(p) == rhs.truncate(p)


@given(fields, st.data())
def test_frobenius_is_multiplicative(F, data):
    f, g = data.draw(laurents(F, exact=True)), data.draw(laurents(F, exact=True))
    k = data.draw(st.integers(-2, 2))
    assert (f * g).frobenius(k) == f.frobenius(k) * g.frobenius(k)


@given(fields, st.data())
def test_frobenius_round_trip(F, data):
    f = data.draw(laurents(F, exact=True))
    assert f.frobenius(1).frobenius(-1) == f
    assert f.frobenius(-1).frobenius(1) == f


@given(fields, st.data())
def test_valuation_is_additive_and_ultrametric(F, data):
    f = data.draw(nonzero_laurents(F))
    g = data.draw(nonzero_laurents(F))
    assert pl_valuation(f * g) == pl_valuation(f) + pl_valuation(g)
    s = f + g
    if not s.is_zero():
        assert pl_valuation(s) >= min(pl_valuation(f), pl_valuation(g))
    if pl_valuation(f) != pl_valuation(g):
        assert pl_valuation(s) == min(pl_valuation(f), pl_valuation(g))


@given(fields, st.data())
def test_inverse_property(F, data):
    f = data.draw(nonzero_laurents(F))
    inv = pl_invert(f, rel_prec=10)
    assert pl_valuation(inv) == -pl_valuation(f)
    prod = f * inv
    assert (prod - PerfLaurent.one(F)).is_zero()
    # monomials invert exactly
    assert prod.prec == (None if len(f.terms) == 1 else 10)


# -- rational functions and kernels --------------------------------------------


def test_ratfun_round_trip():
    F = GF(2, 1, 2)
    R = RatFunRing(F, 2)
    f = PerfLaurent.from_exponents(F, [(Fraction(-1, 4), FFElem(F, 3)), (2, 1)])
    assert R.from_laurent(f).to_laurent() == f


def test_ratfun_series_expansion():
    F = GF(3)
    R = RatFunRing(F, 0)
    one, x = R.one(), R.from_laurent(PerfLaurent.x(F))
    s = (one / (one - x)).to_series(5)
    assert dict(s.items()) == {Fraction(k): 1 for k in range(5)}


def _rf(R, *exps):
    return R.from_laurent(PerfLaurent.from_exponents(R.field, [(e, 1) for e in exps]))


def test_kernel_identity_is_empty():
    R = RatFunRing(GF(2), 0)
    I = [[R.one(), R.zero()], [R.zero(), R.one()]]
    assert rf_kernel(R, I, 2) == []


def test_kernel_of_row():
    R = RatFunRing(GF(3), 0)
    y, y2 = _rf(R, 1), _rf(R, 2)
    (k,) = rf_kernel(R, [[y, y2]], 2)
    # proportional to (y, -1)
    assert k[0] / k[1] == -y
    assert all(z.is_zero() for z in rf_matvec(R, [[y, y2]], k))


def test_kernel_char_two():
    R = RatFunRing(GF(2), 0)
    (k,) = rf_kernel(R, [[R.one(), R.one()], [R.one(), R.one()]], 2)
    assert k[0] == k[1]


@given(st.sampled_from([2, 3, 4]), st.data())
def test_kernel_vectors_annihilate(q, data):
    F = field_for_q(q)
    R = RatFunRing(F, 1)
    rows = data.draw(st.integers(1, 3))
    cols = data.draw(st.integers(1, 4))
    M = [
        [R.from_laurent(data.draw(laurents(F, exact=True, max_terms=2, min_num=-2, max_num=3, max_level=1))) for _ in range(cols)]
        for _ in range(rows)
    ]
    basis = rf_kernel(R, M, cols)
    for k in basis:
        assert all(z.is_zero() for z in rf_matvec(R, M, k))
    assert len(basis) >= cols - rows
