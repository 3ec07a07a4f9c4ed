"""Backend dispatch for the exact linear-algebra kernels.

The active backend is chosen by the ARRLAB_BACKEND environment variable:

* ``auto`` (default) -- numba if importable, else numpy
* ``numba`` / ``numpy`` -- force a fast int64 backend
* ``exact`` -- pure Python ints

The fast backends guard against int64 overflow and this dispatcher retries
any overflowing call on the exact backend, so every public function returns
exact canonical integer data regardless of backend.
"""

from __future__ import annotations

import os

from . import exact as _exact

OK = _exact.OK
INCONSISTENT = _exact.INCONSISTENT
OVERFLOW = _exact.OVERFLOW

_BACKEND_NAME = "exact"
_fast = None


def _load(name: str):
    global _BACKEND_NAME, _fast
    if name == "numba":
        from . import numba_backend as fast

        _fast, _BACKEND_NAME = fast, "numba"
    elif name == "numpy":
        from . import numpy_backend as fast

        _fast, _BACKEND_NAME = fast, "numpy"
    elif name == "exact":
        _fast, _BACKEND_NAME = None, "exact"
    else:
        raise ValueError(f"unknown ARRLAB_BACKEND {name!r}")


def _init() -> None:
    want = os.environ.get("ARRLAB_BACKEND", "auto").lower()
    if want == "auto":
        try:
            _load("numba")
        except Exception:
            _load("numpy")
    else:
        _load(want)


_init()


def backend_name() -> str:
    return _BACKEND_NAME


def set_backend(name: str) -> None:
    """Switch backend at runtime (used by tests and the benchmark)."""
    if name == "auto":
        _init()
    else:
        _load(name)


def rref(rows, width: int):
    """Canonical primitive-integer RREF of affine rows (last col = offset).

    Returns ``(consistent, rows)``; ``consistent`` is False when the system
    has no solution, in which case ``rows`` is ``()``.
    """
    if _fast is not None:
        status, out = _fast.rref(rows, width)
        if status != OVERFLOW:
            return status == OK, out
    status, out = _exact.rref(rows, width)
    return status == OK, out


def residue(matrix, row, width: int):
    """Residue of ``row`` modulo the canonical rows ``matrix``."""
    if _fast is not None:
        res = _fast.residue(matrix, row, width)
        status, out = res
        if status != OVERFLOW:
            return out
    return _exact.residue(matrix, row, width)


def row_in_span(matrix, row, width: int) -> bool:
    """True if ``row`` lies in the rowspace of ``matrix`` (hyperplane
    contains the flat)."""
    return not any(residue(matrix, row, width))


_INT64_MAX = 2**63 - 1


def _fits_i64(mat) -> bool:
    return all(-_INT64_MAX <= v <= _INT64_MAX for row in mat for v in row)


class Extender:
    """Batch flat-by-hyperplane intersection for poset construction.

    ``extend`` yields ``(i, key)`` per hyperplane whose intersection with
    the flat is nonempty of one higher rank; keys are canonical and
    hashable (int64 bytes on the numba path, tuple matrices otherwise;
    exact-fallback results are re-encoded to bytes whenever they fit int64,
    so equal flats always get equal keys).
    """

    def __init__(self, rows, width: int):
        import numpy as _np

        self.rows = [tuple(r) for r in rows]
        self.width = width
        self.n = len(self.rows)
        self._np = _np
        self._batch = (
            _BACKEND_NAME == "numba"
            and hasattr(_fast, "batch_extend")
            and _fits_i64(self.rows)
        )
        if self._batch:
            self._rows_arr = _np.array(self.rows, dtype=_np.int64).reshape(self.n, width)

    def _encode(self, mat):
        if self._batch and _fits_i64(mat):
            return self._np.array(mat, dtype=self._np.int64).tobytes()
        return tuple(tuple(r) for r in mat)

    def matrix_of(self, key):
        if isinstance(key, bytes):
            arr = self._np.frombuffer(key, dtype=self._np.int64).reshape(-1, self.width)
            return tuple(tuple(int(v) for v in row) for row in arr)
        return key

    def extend(self, flat_matrix, skip):
        k = len(flat_matrix)
        w = self.width
        if self._batch:
            np = self._np
            flat_arr = (
                np.array(flat_matrix, dtype=np.int64).reshape(k, w)
                if k
                else np.empty((0, w), dtype=np.int64)
            )
            mask = np.zeros(self.n, dtype=np.bool_)
            for i in skip:
                mask[i] = True
            status, out = _fast.batch_extend(flat_arr, self._rows_arr, mask)
            for i in range(self.n):
                st = status[i]
                if st == 0:
                    yield i, out[i].tobytes()
                elif st == 2:
                    ok, mat = _exact.rref(tuple(flat_matrix) + (self.rows[i],), w)
                    if ok == _exact.OK and len(mat) == k + 1:
                        yield i, self._encode(mat)
        else:
            for i in range(self.n):
                if i in skip:
                    continue
                ok, mat = rref(tuple(flat_matrix) + (self.rows[i],), w)
                if ok and len(mat) == k + 1:
                    yield i, self._encode(mat)

    def generators_of(self, matrix) -> tuple[int, ...]:
        w = self.width
        if self._batch and _fits_i64(matrix) and matrix:
            np = self._np
            mat_arr = np.array(matrix, dtype=np.int64).reshape(len(matrix), w)
            mask = _fast.contains_mask(mat_arr, self._rows_arr)
            out = []
            for i in range(self.n):
                if mask[i] == 1:
                    out.append(i)
                elif mask[i] == 2 and row_in_span(matrix, self.rows[i], w):
                    out.append(i)
            return tuple(out)
        return tuple(i for i in range(self.n) if row_in_span(matrix, self.rows[i], w))
