"""Kernels of matrices over F_{q^s}(y)."""
from __future__ import annotations

from .ratfun import RatFun, RatFunRing


def rf_kernel(ring: RatFunRing, rows: list[list[RatFun]], ncols: int) -> list[list[RatFun]]:
    """Basis of {k : M k = 0} by reduction to reduced row echelon form.

    Among the candidate pivots of a column the entry of least degree is
    chosen, which keeps the intermediate rational functions small.
    """
    M = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        best = None
        for r in range(rank, len(M)):
            e = M[r][c]
            if not e.is_zero() and (best is None or e.degree() < M[best][c].degree()):
                best = r
        if best is None:
            continue
        M[rank], M[best] = M[best], M[rank]
        prow = M[rank]
        inv = ring.one() / prow[c]
        for j in range(c, ncols):
            if not prow[j].is_zero():
                prow[j] = prow[j] * inv
        for r in range(len(M)):
            if r == rank:
                continue
            f = M[r][c]
            if f.is_zero():
                continue
            row = M[r]
            for j in range(c, ncols):
                if not prow[j].is_zero():
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        rank += 1
        if rank == len(M):
            break
    zero = ring.zero()
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        k = [zero] * ncols
        k[fc] = ring.one()
        for r, pc in enumerate(pivots):
            if not M[r][fc].is_zero():
                k[pc] = -M[r][fc]
        basis.append(k)
    return basis


def rf_matvec(ring: RatFunRing, rows: list[list[RatFun]], k: list[RatFun]) -> list[RatFun]:
    out = []
    for row in rows:
        acc = ring.zero()
        for a, b in zip(row, k):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out
