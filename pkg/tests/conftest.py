import random
import sys
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

from fqlinear.coeff_field.ffield import FFElem, field_for_q
from fqlinear.coeff_field.laurent import PerfLaurent
from fqlinear.skew_ring import SkewOperator

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIELD_PARAMS = [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2)]


def field_of(qs):
    return field_for_q(*qs)


fields = st.sampled_from(FIELD_PARAMS).map(field_of)


@st.composite
def elements(draw, F, nonzero=False):
    lo = 1 if nonzero else 0
    return draw(st.integers(lo, F.order - 1))


@st.composite
def laurents(draw, F, exact=None, max_terms=5, min_num=-4, max_num=10, max_level=2):
    n = draw(st.integers(0, max_terms))
    items = []
    for _ in range(n):
        lvl = draw(st.integers(0, max_level))
        num = draw(st.integers(min_num, max_num))
        items.append((Fraction(num, F.q**lvl), FFElem(F, draw(elements(F, nonzero=True)))))
    if exact is None:
        exact = draw(st.booleans())
    prec = None
    if not exact:
        prec = Fraction(draw(st.integers(max_num - 2, max_num + 6)))
    return PerfLaurent.from_exponents(F, items, prec)


@st.composite
def nonzero_laurents(draw, F, exact=True, **kw):
    f = draw(laurents(F, exact=exact, **kw))
    if f.is_zero():
        f = f + PerfLaurent.monomial(F, FFElem(F, draw(elements(F, nonzero=True))), draw(st.integers(-2, 3)))
    return f


@st.composite
def operators(draw, F, degree=2, max_terms=None):
    terms = {}
    for t in range(degree + 1):
        for i in range(t + 1):
            if draw(st.booleans()):
                c = draw(laurents(F, exact=True, max_terms=2, min_num=-1, max_num=3, max_level=1))
                if not c.is_exact_zero():
                    terms[(i, t - i)] = c
    return SkewOperator(F, terms)


@pytest.fixture
def rng():
    return random.Random(20261014)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
