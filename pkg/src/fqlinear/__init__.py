"""Exact calculus of F_q-linear functions over F_q((x)).

Carlitz brackets and factorials, series sum u_n t^(q^n)/D_n with the
operators tau and d, solvers for regular and singular equations, and the
skew ring of operators sum lambda_ij tau^i d^j.
"""
from .carlitz import (
    CarlitzCache,
    FqLinearSeries,
    RadiusEstimate,
    apply_d,
    apply_tau,
    apply_tau_series,
    bracket,
    carlitz_factorial,
    evaluate,
    radius_log_lower_estimate,
    shift_product,
)
from .coeff_field import GF, FFElem, FieldDesc, FiniteField, PerfLaurent, RatFun, field_for_q
from .errors import FqArithmeticError, FqInputError, FqLinearError
from .skew_ring import (
    OreWitness,
    SkewOperator,
    center_membership,
    op_apply,
    op_commutator,
    op_is_zero,
    op_mul,
    ore_witness,
)
from .solvers import (
    RegularSystem,
    SingularEquation,
    lemma_partition_check,
    model_phi,
    normalize_singular,
    reduce_order_to_system,
    solve_model,
    solve_regular,
    solve_singular,
    thakur_2f1_equation,
)
from .textio import format_laurent, format_operator, format_series, parse_laurent, parse_operator, parse_series

__version__ = "0.1.0"

__all__ = [
    "CarlitzCache",
    "FqLinearSeries",
    "RadiusEstimate",
    "apply_d",
    "apply_tau",
    "apply_tau_series",
    "bracket",
    "carlitz_factorial",
    "evaluate",
    "radius_log_lower_estimate",
    "shift_product",
    "GF",
    "FFElem",
    "FieldDesc",
    "FiniteField",
    "PerfLaurent",
    "RatFun",
    "field_for_q",
    "FqArithmeticError",
    "FqInputError",
    "FqLinearError",
    "OreWitness",
    "SkewOperator",
    "center_membership",
    "op_apply",
    "op_commutator",
    "op_is_zero",
    "op_mul",
    "ore_witness",
    "RegularSystem",
    "SingularEquation",
    "lemma_partition_check",
    "model_phi",
    "normalize_singular",
    "reduce_order_to_system",
    "solve_model",
    "solve_regular",
    "solve_singular",
    "thakur_2f1_equation",
    "format_laurent",
    "format_operator",
    "format_series",
    "parse_laurent",
    "parse_operator",
    "parse_series",
]
