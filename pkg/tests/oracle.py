"""Independent reference computations for prime q, built on sympy polynomials over GF(p).

Elements are polynomials in y = x^(1/p^L); nothing here touches the package
arithmetic, so agreement with it is a genuine cross-check.
"""
from fractions import Fraction

from sympy import GF, Poly, symbols

y = symbols("y")


def poly(p, terms):
    """terms: {integer exponent of y: coefficient}."""
    dom = GF(p)
    if not terms:
        return Poly(0, y, domain=dom)
    return Poly(sum(c * y**e for e, c in terms.items()), y, domain=dom)


def bracket(p, i, L):
    """[i] = x^(p^i) - x as a polynomial in y = x^(1/p^L)."""
    assert i + L >= 0
    return poly(p, {p ** (i + L): 1, p**L: -1})


def factorial(p, n, L=0):
    """D_n = [n] [n-1]^p ... [1]^(p^(n-1)), the product form."""
    out = poly(p, {0: 1})
    for i in range(1, n + 1):
        out *= bracket(p, i, L) ** (p ** (n - i))
    return out


def shift_product(p, n, k, L=0):
    """[n+1]^(p^(k-1)) ... [n+k]."""
    out = poly(p, {0: 1})
    for r in range(1, k + 1):
        out *= bracket(p, n + r, L) ** (p ** (k - r))
    return out


def as_dict(P, p, L):
    """{Fraction exponent of x: coefficient mod p}."""
    out = {}
    for (e,), c in P.terms():
        c = int(c) % p
        if c:
            out[Fraction(e, p**L)] = c
    return out


def laurent_dict(f):
    """Same shape from a PerfLaurent over a prime field."""
    return {e: c for e, c in f.items()}


def neg_geometric_inverse(p, n_terms):
    """1/(x^p - x) = -x^(-1) (1 + x^(p-1) + x^(2(p-1)) + ...)."""
    return {Fraction(k * (p - 1) - 1): (-1) % p for k in range(n_terms)}
