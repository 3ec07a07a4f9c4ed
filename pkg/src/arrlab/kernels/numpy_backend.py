"""Pure-numpy int64 row reduction: the no-numba fallback path.

Identical algorithm and overflow guard as the numba backend, with row
operations vectorized by numpy; used when numba is unavailable or when
ARRLAB_BACKEND=numpy.
"""

from __future__ import annotations

import numpy as np

OK = 0
INCONSISTENT = 1
OVERFLOW = 2

_LIMIT = (2**62) // 2


def _row_primitive(M, i):
    g = int(np.gcd.reduce(np.abs(M[i])))
    if g > 1:
        M[i] //= g


def _rref_inplace(M):
    m, width = M.shape
    r = 0
    for c in range(width - 1):
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            M[[r, sel]] = M[[sel, r]]
        if M[r, c] < 0:
            M[r] = -M[r]
        _row_primitive(M, r)
        pv = int(M[r, c])
        pmax = int(np.abs(M[r]).max())
        for i in range(m):
            a = int(M[i, c])
            if i == r or a == 0:
                continue
            rmax = int(np.abs(M[i]).max())
            if (rmax and pv > _LIMIT // rmax) or (pmax and abs(a) > _LIMIT // pmax):
                return OVERFLOW, r
            M[i] = M[i] * pv - M[r] * a
            _row_primitive(M, i)
        r += 1
        if r == m:
            break
    if np.any(M[r:, width - 1]):
        return INCONSISTENT, r
    return OK, r


def rref(rows, width: int):
    M = np.array([list(r) for r in rows], dtype=np.int64).reshape(len(rows), width)
    status, rank = _rref_inplace(M)
    if status != OK:
        return status, ()
    out = [tuple(int(v) for v in M[i]) for i in range(rank)]
    out.sort(key=_pivot_col)
    return OK, tuple(out)


def _pivot_col(row):
    for j, v in enumerate(row):
        if v:
            return j
    return len(row)


def residue(matrix, row, width: int):
    vec = np.array(list(row), dtype=np.int64)
    for mrow in matrix:
        p = _pivot_col(mrow)
        a = int(vec[p])
        if a == 0:
            continue
        arr = np.array(mrow, dtype=np.int64)
        pv = int(mrow[p])
        rmax = int(np.abs(vec).max())
        pmax = int(np.abs(arr).max())
        if (rmax and pv > _LIMIT // rmax) or (pmax and abs(a) > _LIMIT // pmax):
            return OVERFLOW, ()
        vec = vec * pv - arr * a
        g = int(np.gcd.reduce(np.abs(vec)))
        if g > 1:
            vec //= g
    return OK, tuple(int(v) for v in vec)
