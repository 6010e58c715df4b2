"""Pure-Python integer row echelon with transformation tracking.

Mirrors ``_elim.pyx`` step for step (same pivot rule, truncating division) so
both backends return identical matrices.
"""
from __future__ import annotations


def _tdiv(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a < 0) == (b < 0) else -q


def echelon(W: list[list[int]], ncols: int) -> int:
    """Row-reduce ``W`` in place over its first ``ncols`` columns.

    Only unimodular row operations are used, so the trailing columns of ``W``
    (typically an identity block) record the transformation.  Pivots are made
    positive.  Returns the rank.
    """
    m = len(W)
    rank = 0
    for col in range(ncols):
        if rank == m:
            break
        while True:
            piv = -1
            best = 0
            for r in range(rank, m):
                v = W[r][col]
                if v and (piv < 0 or abs(v) < best):
                    piv, best = r, abs(v)
            if piv < 0:
                break
            if piv != rank:
                W[piv], W[rank] = W[rank], W[piv]
            prow = W[rank]
            p = prow[col]
            clean = True
            for r in range(rank + 1, m):
                v = W[r][col]
                if v:
                    q = _tdiv(v, p)
                    row = W[r]
                    W[r] = [x - q * y if y else x for x, y in zip(row, prow)]
                    if W[r][col]:
                        clean = False
            if clean:
                break
        if rank < m and W[rank][col]:
            if W[rank][col] < 0:
                W[rank] = [-x for x in W[rank]]
            rank += 1
    return rank


def reduce_above(W: list[list[int]], ncols: int, rank: int) -> None:
    """Bring entries above each pivot into ``[0, pivot)`` (rows of an echelon form)."""
    for i in range(rank):
        prow = W[i]
        c = next(j for j in range(ncols) if prow[j])
        p = prow[c]
        for r in range(i):
            q = W[r][c] // p
            if q:
                W[r] = [x - q * y if y else x for x, y in zip(W[r], prow)]
