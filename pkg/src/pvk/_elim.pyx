# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 integer row echelon and Hermite reduction with overflow detection.

Same algorithms as ``_elim_py`` (pivot rule, truncating quotient), on a
flat row-major ``array('q')`` buffer.  Raises OverflowError instead of
wrapping; the caller then falls back to Python integers.
"""

cdef extern from *:
    bint __builtin_smulll_overflow(long long a, long long b, long long *res) nogil
    bint __builtin_ssubll_overflow(long long a, long long b, long long *res) nogil


cdef inline long long _abs(long long x) nogil:
    return -x if x < 0 else x


from libc.stdlib cimport malloc, free


cdef int _row_sub(long long[::1] W, Py_ssize_t n, Py_ssize_t r, Py_ssize_t p,
                  long long q, Py_ssize_t* nz, Py_ssize_t nnz) except -1 nogil:
    # row r -= q * row p, touching only the nonzero columns nz[:nnz] of row p
    cdef Py_ssize_t k, j
    cdef long long t, s
    cdef Py_ssize_t ro = r * n, po = p * n
    for k in range(nnz):
        j = nz[k]
        if __builtin_smulll_overflow(q, W[po + j], &t) or \
                __builtin_ssubll_overflow(W[ro + j], t, &s):
            with gil:
                raise OverflowError("int64 overflow in row operation")
        W[ro + j] = s
    return 0


cdef void _swap(long long[::1] W, Py_ssize_t n, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t j
    cdef long long t
    for j in range(n):
        t = W[a * n + j]
        W[a * n + j] = W[b * n + j]
        W[b * n + j] = t


def echelon(long long[::1] W, Py_ssize_t m, Py_ssize_t n, Py_ssize_t ncols):
    """Row-reduce the m x n buffer ``W`` in place over its first ``ncols`` columns."""
    cdef Py_ssize_t rank = 0, col, r, piv, j, nnz
    cdef long long v, best, p, q
    cdef bint clean
    cdef Py_ssize_t* nz
    if W.shape[0] != m * n:
        raise ValueError("buffer size does not match dimensions")
    nz = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    if nz == NULL:
        raise MemoryError()
    try:
        rank = _echelon(W, m, n, ncols, nz)
    finally:
        free(nz)
    return rank


cdef Py_ssize_t _echelon(long long[::1] W, Py_ssize_t m, Py_ssize_t n, Py_ssize_t ncols,
                         Py_ssize_t* nz) except -1:
    cdef Py_ssize_t rank = 0, col, r, piv, j, nnz
    cdef long long v, best, p, q
    cdef bint clean
    for col in range(ncols):
        if rank == m:
            break
        while True:
            piv = -1
            best = 0
            for r in range(rank, m):
                v = W[r * n + col]
                if v != 0 and (piv < 0 or _abs(v) < best):
                    piv = r
                    best = _abs(v)
            if piv < 0:
                break
            if piv != rank:
                _swap(W, n, piv, rank)
            p = W[rank * n + col]
            nnz = 0
            for j in range(col, n):
                if W[rank * n + j] != 0:
                    nz[nnz] = j
                    nnz += 1
            clean = True
            for r in range(rank + 1, m):
                v = W[r * n + col]
                if v != 0:
                    q = v / p
                    _row_sub(W, n, r, rank, q, nz, nnz)
                    if W[r * n + col] != 0:
                        clean = False
            if clean:
                break
        if rank < m and W[rank * n + col] != 0:
            if W[rank * n + col] < 0:
                for j in range(n):
                    if W[rank * n + j] == (-9223372036854775807 - 1):
                        raise OverflowError("int64 overflow in negation")
                    W[rank * n + j] = -W[rank * n + j]
            rank += 1
    return rank


def reduce_above(long long[::1] W, Py_ssize_t m, Py_ssize_t n, Py_ssize_t ncols, Py_ssize_t rank):
    """Bring entries above each pivot into ``[0, pivot)``; floor quotients."""
    cdef Py_ssize_t* nz
    if W.shape[0] != m * n:
        raise ValueError("buffer size does not match dimensions")
    nz = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    if nz == NULL:
        raise MemoryError()
    try:
        _reduce_above(W, n, ncols, rank, nz)
    finally:
        free(nz)


cdef int _reduce_above(long long[::1] W, Py_ssize_t n, Py_ssize_t ncols, Py_ssize_t rank,
                       Py_ssize_t* nz) except -1:
    cdef Py_ssize_t i, r, c, j, nnz
    cdef long long p, a, q
    for i in range(rank):
        c = 0
        while c < ncols and W[i * n + c] == 0:
            c += 1
        p = W[i * n + c]
        nnz = 0
        for j in range(c, n):
            if W[i * n + j] != 0:
                nz[nnz] = j
                nnz += 1
        for r in range(i):
            a = W[r * n + c]
            q = a / p
            if a % p != 0 and a < 0:
                q -= 1
            if q != 0:
                _row_sub(W, n, r, i, q, nz, nnz)
    return 0
