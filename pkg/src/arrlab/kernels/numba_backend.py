"""numba int64 row-reduction kernels.

Same canonical form as :mod:`arrlab.kernels.exact`.  Every row combination
is preceded by a magnitude guard: if ``|pv|*max|row| + |a|*max|piv|`` could
exceed 2^62 the kernel reports OVERFLOW and the dispatcher reruns the call
on the exact backend, so results are exact or absent, never wrong.
"""

from __future__ import annotations

import numpy as np
from numba import njit

OK = 0
INCONSISTENT = 1
OVERFLOW = 2

_LIMIT = np.int64(2) ** 62


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _row_primitive(M, i, width):
    g = np.int64(0)
    for j in range(width):
        g = _gcd(g, M[i, j])
        if g == 1:
            return
    if g > 1:
        for j in range(width):
            M[i, j] //= g


@njit(cache=True)
def _row_absmax(M, i, width):
    m = np.int64(0)
    for j in range(width):
        v = M[i, j]
        if v < 0:
            v = -v
        if v > m:
            m = v
    return m


@njit(cache=True)
def _rref_inplace(M):
    m, width = M.shape
    r = 0
    for c in range(width - 1):
        sel = -1
        for i in range(r, m):
            if M[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(width):
                t = M[r, j]
                M[r, j] = M[sel, j]
                M[sel, j] = t
        if M[r, c] < 0:
            for j in range(width):
                M[r, j] = -M[r, j]
        _row_primitive(M, r, width)
        pv = M[r, c]
        pmax = _row_absmax(M, r, width)
        for i in range(m):
            if i == r:
                continue
            a = M[i, c]
            if a == 0:
                continue
            if a < 0:
                aa = -a
            else:
                aa = a
            rmax = _row_absmax(M, i, width)
            # guard: |pv|*rmax + aa*pmax < 2^62 checked without overflowing
            if rmax != 0 and pv > (_LIMIT // 2) // rmax:
                return OVERFLOW, r
            if pmax != 0 and aa > (_LIMIT // 2) // pmax:
                return OVERFLOW, r
            for j in range(width):
                M[i, j] = M[i, j] * pv - M[r, j] * a
            _row_primitive(M, i, width)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i, width - 1] != 0:
            return INCONSISTENT, r
    return OK, r


@njit(cache=True)
def _residue_inplace(M, row):
    nrows, width = M.shape
    for r in range(nrows):
        p = -1
        for j in range(width):
            if M[r, j] != 0:
                p = j
                break
        if p < 0:
            continue
        a = row[p]
        if a == 0:
            continue
        if a < 0:
            aa = -a
        else:
            aa = a
        pv = M[r, p]
        rmax = np.int64(0)
        for j in range(width):
            v = row[j]
            if v < 0:
                v = -v
            if v > rmax:
                rmax = v
        pmax = _row_absmax(M, r, width)
        if rmax != 0 and pv > (_LIMIT // 2) // rmax:
            return OVERFLOW
        if pmax != 0 and aa > (_LIMIT // 2) // pmax:
            return OVERFLOW
        for j in range(width):
            row[j] = row[j] * pv - M[r, j] * a
        g = np.int64(0)
        for j in range(width):
            g = _gcd(g, row[j])
            if g == 1:
                break
        if g > 1:
            for j in range(width):
                row[j] //= g
    return OK


@njit(cache=True)
def _batch_extend(flat, rows, skip, out, status):
    """Intersect one flat (k x w canonical rows) with every row; status per
    row: 0 ok (rank k+1), 1 empty/degenerate, 2 overflow, 3 skipped."""
    n = rows.shape[0]
    k = flat.shape[0]
    w = flat.shape[1]
    for i in range(n):
        if skip[i]:
            status[i] = 3
            continue
        for a in range(k):
            for b in range(w):
                out[i, a, b] = flat[a, b]
        for b in range(w):
            out[i, k, b] = rows[i, b]
        st, rank = _rref_inplace(out[i])
        if st == 0 and rank == k + 1:
            status[i] = 0
        elif st == 2:
            status[i] = 2
        else:
            status[i] = 1


@njit(cache=True)
def _contains_mask(mat, rows, out):
    """out[i] = 1 if rows[i] is in the rowspace of mat, 2 on overflow."""
    n = rows.shape[0]
    w = rows.shape[1]
    scratch = np.empty(w, dtype=np.int64)
    for i in range(n):
        for b in range(w):
            scratch[b] = rows[i, b]
        st = _residue_inplace(mat, scratch)
        if st == 2:
            out[i] = 2
            continue
        z = 1
        for b in range(w):
            if scratch[b] != 0:
                z = 0
                break
        out[i] = z


def batch_extend(flat_arr, rows_arr, skip_mask):
    n = rows_arr.shape[0]
    k = flat_arr.shape[0]
    w = flat_arr.shape[1]
    out = np.empty((n, k + 1, w), dtype=np.int64)
    status = np.empty(n, dtype=np.int64)
    _batch_extend(flat_arr, rows_arr, skip_mask, out, status)
    return status, out


def contains_mask(mat_arr, rows_arr):
    out = np.empty(rows_arr.shape[0], dtype=np.int64)
    _contains_mask(mat_arr, rows_arr, out)
    return out


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
    M = np.array([list(r) for r in matrix], dtype=np.int64).reshape(len(matrix), width)
    vec = np.array(list(row), dtype=np.int64)
    status = _residue_inplace(M, vec)
    if status != OK:
        return status, ()
    return OK, tuple(int(v) for v in vec)
