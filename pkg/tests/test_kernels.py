"""Backend agreement and overflow-fallback behavior of the row kernels."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrlab import kernels
from arrlab.kernels import exact as exact_backend

BACKENDS = ["exact", "numpy", "numba"]


@pytest.fixture(autouse=True)
def restore_backend():
    yield
    kernels.set_backend("auto")


rows_strategy = st.lists(
    st.lists(st.integers(-30, 30), min_size=3, max_size=6),
    min_size=1,
    max_size=6,
).filter(lambda rows: len({len(r) for r in rows}) == 1)


@settings(max_examples=150, deadline=None)
@given(rows_strategy)
def test_backends_agree_on_rref(rows):
    width = len(rows[0])
    results = {}
    for name in BACKENDS:
        kernels.set_backend(name)
        results[name] = kernels.rref([tuple(r) for r in rows], width)
    assert results["exact"] == results["numpy"] == results["numba"]


@settings(max_examples=100, deadline=None)
@given(rows_strategy)
def test_rref_idempotent_and_primitive(rows):
    width = len(rows[0])
    kernels.set_backend("exact")
    ok, mat = kernels.rref([tuple(r) for r in rows], width)
    if not ok:
        return
    ok2, mat2 = kernels.rref(mat, width)
    assert ok2 and mat2 == mat
    from math import gcd

    for row in mat:
        g = 0
        for v in row:
            g = gcd(g, v)
        assert g in (0, 1)
        lead = next((v for v in row if v), 0)
        assert lead >= 0


def test_overflow_falls_back_to_exact():
    kernels.set_backend("numba")
    big = 2**45
    rows = [(big, 3, 1, 0), (7, big, 0, 1), (big // 3, big // 5, 1, 1)]
    got = kernels.rref(rows, 4)
    want = exact_backend.rref(rows, 4)
    assert got == (want[0] == exact_backend.OK, want[1])


def test_residue_matches_membership(rng):
    kernels.set_backend("numba")
    for _ in range(50):
        width = rng.randint(3, 6)
        rows = [tuple(rng.randint(-5, 5) for _ in range(width)) for _ in range(rng.randint(1, 4))]
        ok, mat = kernels.rref(rows, width)
        if not ok or not mat:
            continue
        inside = tuple(sum(r[j] for r in mat) for j in range(width))
        assert kernels.row_in_span(mat, inside, width)
        probe = tuple(rng.randint(-5, 5) for _ in range(width))
        ok2, bigger = kernels.rref(mat + (probe,), width)
        expect = ok2 and len(bigger) == len(mat)
        assert kernels.row_in_span(mat, probe, width) == expect


def test_extender_matches_scalar_path(rng):
    from arrlab.lattice import build_poset
    from tests.conftest import random_arrangement

    for seed in range(5):
        local = random.Random(900 + seed)
        arr = random_arrangement(local, 3, 8)
        results = []
        for name in BACKENDS:
            kernels.set_backend(name)
            p = build_poset(arr)
            results.append([(f.matrix, f.generators) for lv in p.levels for f in lv])
        assert results[0] == results[1] == results[2]
