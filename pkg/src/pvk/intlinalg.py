"""Exact integer linear algebra: echelon, Hermite and Smith forms, solving over Z.

Matrices are lists of rows of Python ints.  The inner elimination loop runs in
the compiled ``_elim`` kernel when it is available (int64 with overflow
detection) and in ``_elim_py`` otherwise; both follow the same pivot rule, so
results do not depend on the backend.  Set ``PVK_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import _elim_py

Matrix = list[list[int]]

_ext = None
if os.environ.get("PVK_PURE_PYTHON") != "1":
    try:
        from . import _elim as _ext  # type: ignore[no-redef]
    except ImportError:
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def set_backend(name: str) -> None:
    """Switch between ``"cython"`` and ``"python"`` (used by tests and benchmarks)."""
    global BACKEND
    if name == "cython" and _ext is None:
        raise RuntimeError("compiled kernel not available")
    if name not in ("cython", "python"):
        raise ValueError(name)
    BACKEND = name


# ---------------------------------------------------------------------------
# basic helpers


def shape(M: Matrix) -> tuple[int, int]:
    return (len(M), len(M[0]) if M else 0)


def _check(M: Matrix, ncols: int | None = None) -> Matrix:
    M = [list(map(int, r)) for r in M]
    widths = {len(r) for r in M}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    if ncols is not None and M and len(M[0]) != ncols:
        raise ValueError("dimension mismatch")
    return M


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(M: Matrix, ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise ValueError("dimension mismatch")
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for x, brow in zip(row, B):
            if x:
                acc = [p + x * q for p, q in zip(acc, brow)]
        out.append(acc)
    return out


def matvec(A: Matrix, x: Sequence[int]) -> list[int]:
    if A and len(A[0]) != len(x):
        raise ValueError("dimension mismatch")
    return [sum(a * b for a, b in zip(row, x) if a) for row in A]


def det(M: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    A = _check(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("square matrix required")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_unimodular(U: Matrix) -> bool:
    return abs(det(U)) == 1


# ---------------------------------------------------------------------------
# echelon kernel dispatch

_INT64 = 2**62  # leave headroom so the first row operations cannot overflow silently


def _run_echelon(W: Matrix, ncols: int, reduce: bool = False) -> tuple[Matrix, int]:
    m = len(W)
    if m == 0:
        return W, 0
    n = len(W[0])
    if BACKEND == "cython" and all(-_INT64 < x < _INT64 for row in W for x in row):
        buf = array("q", [x for row in W for x in row])
        try:
            rank = _ext.echelon(buf, m, n, ncols)
            if reduce:
                _ext.reduce_above(buf, m, n, ncols, rank)
        except OverflowError:
            pass
        else:
            flat = buf.tolist()
            return [flat[i * n:(i + 1) * n] for i in range(m)], rank
    W = [list(r) for r in W]
    rank = _elim_py.echelon(W, ncols)
    if reduce:
        _elim_py.reduce_above(W, ncols, rank)
    return W, rank


def echelon(M: Matrix, _reduce: bool = False) -> tuple[Matrix, Matrix, int]:
    """Row echelon form ``E = U M`` with ``U`` unimodular.  Returns ``(E, U, rank)``."""
    M = _check(M)
    m, n = shape(M)
    W = [M[i] + [int(i == j) for j in range(m)] for i in range(m)]
    W, rank = _run_echelon(W, n, _reduce)
    return [r[:n] for r in W], [r[n:] for r in W], rank


def hnf(M: Matrix) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form: ``H = U M``, pivots positive, entries above
    each pivot reduced into ``[0, pivot)``, zero rows last."""
    E, U, _ = echelon(M, _reduce=True)
    return E, U


def rank(M: Matrix) -> int:
    return echelon(M)[2] if M else 0


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(shape(self.S)))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def verify(self, M: Matrix) -> bool:
        m, n = shape(self.S)
        if M and matmul(matmul(self.U, M), self.V) != self.S:
            return False
        for i in range(m):
            for j in range(n):
                if i != j and self.S[i][j]:
                    return False
        d = [x for x in self.diagonal if x]
        if any(x < 0 for x in d) or any(b % a for a, b in zip(d, d[1:])):
            return False
        if self.rank < len(self.diagonal) and any(self.diagonal[self.rank:]):
            return False
        return is_unimodular(self.U) and is_unimodular(self.V)


def _offdiag_zero(A: Matrix) -> bool:
    return all(x == 0 for i, row in enumerate(A) for j, x in enumerate(row) if i != j)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def snf(M: Matrix) -> SnfResult:
    """Smith normal form with transformations: ``U M V = S``."""
    M = _check(M)
    m, n = shape(M)
    A = [list(r) for r in M]
    U, V = identity(m), identity(n)
    if m == 0 or n == 0:
        return SnfResult(U, A, V)
    while True:
        A, U1, _ = echelon(A)
        U = matmul(U1, U)
        if _offdiag_zero(A):
            break
        At, V1, _ = echelon(transpose(A))
        A = transpose(At)
        V = matmul(V, transpose(V1))
        if _offdiag_zero(A):
            break
    r = sum(1 for i in range(min(m, n)) if A[i][i])
    # divisibility chain via 2x2 gcd/lcm moves on (i, j)
    for i in range(r):
        for j in range(i + 1, r):
            x, y = A[i][i], A[j][j]
            if y % x == 0:
                continue
            g, s, t = _xgcd(x, y)
            xg, yg = x // g, y // g
            U[i], U[j] = (
                [s * p + t * q for p, q in zip(U[i], U[j])],
                [-yg * p + xg * q for p, q in zip(U[i], U[j])],
            )
            for row in V:
                ci, cj = row[i], row[j]
                row[i], row[j] = ci + cj, -t * yg * ci + s * xg * cj
            A[i][i], A[j][j] = g, x * yg
    return SnfResult(U, A, V)


def invariant_factors(M: Matrix) -> list[int]:
    return [d for d in snf(M).diagonal if d]


def cokernel_structure(M: Matrix) -> tuple[list[int], int]:
    """``Z^m / M Z^n`` as (torsion factors > 1, free rank)."""
    m = len(M)
    d = invariant_factors(M) if M and M[0] else []
    return [x for x in d if x > 1], m - len(d)


# ---------------------------------------------------------------------------
# solving, kernels, lattices


@dataclass(frozen=True)
class Solvability:
    """Either a solution ``x`` of ``M x = b`` or a refusal certificate.

    The certificate is a row vector ``u`` and modulus ``d`` such that every
    entry of ``u M`` is divisible by ``d`` (zero when ``d == 0``) while ``u b``
    is not.  Both forms are checked by :meth:`verify`.
    """

    x: list[int] | None
    u: list[int] | None = None
    d: int | None = None

    @property
    def solvable(self) -> bool:
        return self.x is not None

    def verify(self, M: Matrix, b: Sequence[int]) -> bool:
        if self.x is not None:
            return matvec(M, self.x) == list(b)
        uM = [sum(u * row[j] for u, row in zip(self.u, M)) for j in range(len(M[0]) if M else 0)]
        ub = sum(u * v for u, v in zip(self.u, b))
        if self.d == 0:
            return all(v == 0 for v in uM) and ub != 0
        return all(v % self.d == 0 for v in uM) and ub % self.d != 0


def solvability(M: Matrix, b: Sequence[int], _snf: SnfResult | None = None) -> Solvability:
    M = _check(M)
    b = [int(x) for x in b]
    if len(b) != len(M):
        raise ValueError("dimension mismatch")
    n = len(M[0]) if M else 0
    res = _snf or (snf(M) if n else SnfResult(identity(len(M)), M, []))
    c = matvec(res.U, b) if M else []
    y = [0] * n
    for i, ci in enumerate(c):
        d = res.S[i][i] if i < n else 0
        if d == 0:
            if ci != 0:
                return Solvability(None, res.U[i], 0)
        elif ci % d:
            return Solvability(None, res.U[i], d)
        else:
            y[i] = ci // d
    x = matvec(res.V, y) if n else []
    return Solvability(x)


def solve(M: Matrix, b: Sequence[int]) -> list[int] | None:
    """An integer ``x`` with ``M x = b``, or None if no integer solution exists."""
    return solvability(M, b).x


def solve_many(M: Matrix, bs: Sequence[Sequence[int]]) -> list[list[int] | None]:
    """``solve`` for several right-hand sides sharing one Smith form."""
    M = _check(M)
    res = snf(M) if M and M[0] else None
    return [solvability(M, b, res).x for b in bs]


def kernel_basis(M: Matrix, ncols: int | None = None) -> list[list[int]]:
    """A Z-basis of ``{x : M x = 0}`` in Hermite form (rows of the result)."""
    M = _check(M, ncols)
    n = len(M[0]) if M else (ncols or 0)
    if not M:
        return identity(n)
    E, U, r = echelon(transpose(M))
    K = U[r:]
    if not K:
        return []
    H, _ = hnf(K)
    return [row for row in H if any(row)]


def row_basis(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hermite basis of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    H, _ = hnf([list(v) for v in vectors])
    return [row for row in H if any(row)]


def column_space_basis(A: Matrix) -> list[list[int]]:
    return row_basis(transpose(A)) if A and A[0] else []


def lattice_intersect(A: Matrix, B: Matrix) -> list[list[int]]:
    """Basis (as vectors) of ``colspan(A) ∩ colspan(B)``."""
    A, B = _check(A), _check(B)
    if len(A) != len(B):
        raise ValueError("dimension mismatch")
    na = len(A[0]) if A else 0
    nb = len(B[0]) if B else 0
    if na == 0 or nb == 0:
        return []
    stacked = [ra + [-x for x in rb] for ra, rb in zip(A, B)]
    gens = [matvec(A, k[:na]) for k in kernel_basis(stacked)]
    return row_basis([g for g in gens if any(g)])


def lattice_contains(basis_rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if not basis_rows:
        return not any(v)
    return solve(transpose([list(r) for r in basis_rows]), v) is not None


def lattices_equal(P: Sequence[Sequence[int]], Q: Sequence[Sequence[int]]) -> bool:
    return row_basis(P) == row_basis(Q)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
