"""Constant field F_(q^s), the perfect Laurent field and rational functions."""
from .ffield import FFElem, FieldDesc, FiniteField, GF, ff_arith, ff_frobenius_q, field_for_q
from .laurent import (
    DEFAULT_REL_PREC,
    Exponent,
    PerfLaurent,
    level_cap,
    pl_arith,
    pl_frobenius_q,
    pl_invert,
    pl_valuation,
)
from .linalg import rf_kernel, rf_matvec
from .ratfun import RatFun, RatFunRing

__all__ = [
    "DEFAULT_REL_PREC",
    "Exponent",
    "FFElem",
    "FieldDesc",
    "FiniteField",
    "GF",
    "PerfLaurent",
    "RatFun",
    "RatFunRing",
    "ff_arith",
    "ff_frobenius_q",
    "field_for_q",
    "level_cap",
    "pl_arith",
    "pl_frobenius_q",
    "pl_invert",
    "pl_valuation",
    "rf_kernel",
    "rf_matvec",
]
