"""Radius statistics of model-equation solutions as the prefix grows.

Prints a TSV row per (coefficients, n_max): the minimum of
(val u_n - val D_n)/q^n, the minimum of the "+" form
(val u_n + val D_n)/q^n, and the drift verdict.

    python scripts/radius_sweep.py --q 2 --nmax 8 16 24
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from fqlinear import FqLinearSeries, field_for_q, solve_model
from fqlinear.solvers import radius_sequence_plus
from fqlinear.textio import format_laurent, parse_laurent


@dataclass(frozen=True)
class SweepConfig:
    q: int = 2
    n_max: tuple[int, ...] = (8, 16, 24)
    coeffs: tuple[str, ...] = ("x,1", "1,1", "1,x,1", "x^(-1),1")


def sweep(cfg: SweepConfig):
    F = field_for_q(cfg.q)
    yield "coeffs\tnmax\tr_log\tplus_min\tbounded_below"
    for spec in cfg.coeffs:
        a = [parse_laurent(F, c) for c in spec.split(",")]
        for n in cfg.n_max:
            sol = solve_model(F, a, FqLinearSeries.ones(F, n + 1), n)
            est = sol.report.radius
            plus = min(r for _, r in radius_sequence_plus(sol.u))
            yield f"{','.join(format_laurent(c) for c in a)}\t{n}\t{est.r_log}\t{plus}\t{est.bounded_below}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--nmax", type=int, nargs="+", default=[8, 16, 24])
    ap.add_argument("--coeffs", nargs="+", default=list(SweepConfig.coeffs))
    ns = ap.parse_args()
    for row in sweep(SweepConfig(ns.q, tuple(ns.nmax), tuple(ns.coeffs))):
        print(row)


if __name__ == "__main__":
    main()
