"""Kernel solutions of the Thakur 2F1 equation over a parameter grid.

For each (q, a, b, c): normalization shift, indices where the diagonal
coefficient vanishes, residual status and the radius statistic.
"""
from __future__ import annotations

import argparse
import itertools
import time
from dataclasses import dataclass

from fqlinear import PerfLaurent, field_for_q, solve_singular, thakur_2f1_equation
from fqlinear.errors import Inconsistent


@dataclass(frozen=True)
class GridConfig:
    qs: tuple[int, ...] = (2, 3, 4)
    params: tuple[int, ...] = (1, 2, 3)
    n_max: int = 24


def run_grid(cfg: GridConfig):
    yield "q\ta\tb\tc\tshift\tfree\tresidual\tr_log\tbounded_below\tseconds"
    for q in cfg.qs:
        F = field_for_q(q)
        for a, b, c in itertools.product(cfg.params, repeat=3):
            eq = thakur_2f1_equation(F, a, b, c)
            t0 = time.perf_counter()
            try:
                sol = solve_singular(eq, cfg.n_max, {0: PerfLaurent.one(F)})
            except Inconsistent as e:
                yield f"{q}\t{a}\t{b}\t{c}\t{eq.shift}\t-\tinconsistent at {e.index}\t-\t-\t-"
                continue
            rep = sol.report
            free = ",".join(str(i) for i in sorted(rep.free)) or "-"
            dt = time.perf_counter() - t0
            yield (
                f"{q}\t{a}\t{b}\t{c}\t{eq.shift}\t{free}\t"
                f"{'zero' if rep.residual_zero else 'nonzero'}\t{rep.radius.r_log}\t{rep.radius.bounded_below}\t{dt:.3f}"
            )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--params", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--nmax", type=int, default=24)
    ns = ap.parse_args()
    for row in run_grid(GridConfig(tuple(ns.q), tuple(ns.params), ns.nmax)):
        print(row)


if __name__ == "__main__":
    main()
