"""Exact integer row-reduction, the reference backend.

All rows are integer vectors whose last column is the affine offset
(equation ``a.x = c`` stored as ``(a_1, ..., a_n, c)``).  The reduced form
produced here is the unique primitive-integer scaling of the rational RREF:
pivot entries positive, every row divided by its gcd, entries above and
below pivots cleared, rows ordered by pivot column.  Python ints never
overflow, so this backend is always safe; the fast backends defer to it
when their dynamic overflow guard trips.
"""

from __future__ import annotations

from math import gcd

OK = 0
INCONSISTENT = 1
OVERFLOW = 2


def _reduce_primitive(row: list[int]) -> None:
    g = 0
    for v in row:
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for i, v in enumerate(row):
            row[i] = v // g


def rref(rows, width: int):
    """Reduce ``rows`` (iterables of ``width`` ints, last column = offset).

    Returns ``(status, canonical_rows)`` where status is OK or INCONSISTENT
    (a row reduced to ``(0, ..., 0, c)`` with ``c != 0``).  The offset column
    is never chosen as a pivot.
    """
    mat = [list(r) for r in rows]
    m = len(mat)
    r = 0
    for c in range(width - 1):
        sel = -1
        for i in range(r, m):
            if mat[i][c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            mat[r], mat[sel] = mat[sel], mat[r]
        piv = mat[r]
        if piv[c] < 0:
            for j in range(width):
                piv[j] = -piv[j]
        _reduce_primitive(piv)
        pv = piv[c]
        for i in range(m):
            if i == r:
                continue
            a = mat[i][c]
            if a == 0:
                continue
            row = mat[i]
            for j in range(width):
                row[j] = row[j] * pv - piv[j] * a
            _reduce_primitive(row)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if mat[i][width - 1] != 0:
            return INCONSISTENT, ()
    out = [tuple(mat[i]) for i in range(r)]
    out.sort(key=_pivot_col)
    return OK, tuple(out)


def _pivot_col(row):
    for j, v in enumerate(row):
        if v:
            return j
    return len(row)


def residue(matrix, row, width: int):
    """Reduce ``row`` against canonical ``matrix`` rows; all-zero residue
    means the row lies in the rowspace (its hyperplane contains the flat)."""
    cur = list(row)
    for mrow in matrix:
        p = _pivot_col(mrow)
        a = cur[p]
        if a == 0:
            continue
        pv = mrow[p]
        for j in range(width):
            cur[j] = cur[j] * pv - mrow[j] * a
        _reduce_primitive(cur)
    return tuple(cur)
