"""Wall time and witness degree of Ore searches on random operator pairs."""
from __future__ import annotations

import argparse
import random
import statistics
import time
from dataclasses import dataclass

from fqlinear import field_for_q, ore_witness
from fqlinear.skew_ring import random_operator


@dataclass(frozen=True)
class TimingConfig:
    q: int = 2
    degree: int = 2
    pairs: int = 20
    side: str = "left"
    seed: int = 0


def time_pairs(cfg: TimingConfig):
    F = field_for_q(cfg.q)
    rng = random.Random(cfg.seed)
    rows = []
    while len(rows) < cfg.pairs:
        a, b = random_operator(F, rng, cfg.degree), random_operator(F, rng, cfg.degree)
        if a.is_zero() or b.is_zero():
            continue
        t0 = time.perf_counter()
        w = ore_witness(a, b, cfg.side)
        rows.append((a.degree(), b.degree(), w.nu, w.verified, time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--degree", type=int, default=2)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--side", choices=["left", "right"], default="left")
    ap.add_argument("--seed", type=int, default=0)
    cfg = TimingConfig(**vars(ap.parse_args()))
    rows = time_pairs(cfg)
    print("deg_a\tdeg_b\tnu\tverified\tseconds")
    for r in rows:
        print(f"{r[0]}\t{r[1]}\t{r[2]}\t{r[3]}\t{r[4]:.3f}")
    times = [r[4] for r in rows]
    print(f"# median {statistics.median(times):.3f}s, max {max(times):.3f}s, total {sum(times):.2f}s")


if __name__ == "__main__":
    main()
