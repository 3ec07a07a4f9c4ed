#!/usr/bin/env python3
"""Benchmark the kernel backends on the workloads that dominate runtime:
raw row reduction and full intersection-poset construction.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

The numba backend JIT-compiles on first use (cached on disk afterwards);
the first-run column shows that cost separately.
"""

from __future__ import annotations

import argparse
import random
import time

from arrlab import kernels, lattice
from arrlab.core import arrangement, cone


def catalan_a3(m=2):
    roots = [(1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1),
             (0, 1, -1, 0), (0, 1, 0, -1), (0, 0, 1, -1)]
    return cone(arrangement(4, [(r, c) for r in roots for c in range(-m, m + 1)]))


def nish_cone():
    hyps = [((1, -1, 0, 0), 0), ((1, 0, -1, 0), 0), ((1, 0, 0, -1), 0),
            ((0, 1, -1, 0), 0), ((0, 1, 0, -1), 0), ((0, 0, 1, -1), 0)]
    sets = [tuple(range(-3, 4)), (-3, -2, -1, 0, 1), (-1, 0, 1), (0,)]
    for i, s in enumerate(sets):
        for c in s:
            normal = [0, 0, 0, 0]
            normal[i] = 1
            hyps.append((tuple(normal), c))
    return cone(arrangement(4, hyps))


def bench_rref(backend, repeat):
    rng = random.Random(99)
    cases = []
    for _ in range(400):
        m, w = rng.randint(2, 6), rng.randint(3, 7)
        cases.append(([tuple(rng.randint(-9, 9) for _ in range(w)) for _ in range(m)], w))
    kernels.set_backend(backend)
    kernels.rref(*cases[0])  # warm any jit
    t0 = time.perf_counter()
    for _ in range(repeat):
        for rows, w in cases:
            kernels.rref(rows, w)
    return (time.perf_counter() - t0) / repeat


def bench_poset(backend, arr, repeat):
    kernels.set_backend(backend)
    lattice.clear_memos()
    lattice.build_poset(arr)  # warm
    t0 = time.perf_counter()
    for _ in range(repeat):
        lattice.build_poset(arr)
    return (time.perf_counter() - t0) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    workloads = [
        ("catalan cone (31 hyperplanes, rank 4)", catalan_a3()),
        ("nested cone (23 hyperplanes, rank 5)", nish_cone()),
    ]
    backends = ["numba", "numpy", "exact"]
    print(f"{'workload':<42}" + "".join(f"{b:>12}" for b in backends))
    row = f"{'400 small rref calls':<42}"
    for b in backends:
        row += f"{bench_rref(b, args.repeat) * 1000:>10.1f}ms"
    print(row)
    for name, arr in workloads:
        row = f"{name:<42}"
        for b in backends:
            row += f"{bench_poset(b, arr, args.repeat) * 1000:>10.1f}ms"
        print(row)
    kernels.set_backend("auto")
    results = {}
    for b in backends:
        kernels.set_backend(b)
        lattice.clear_memos()
        p = lattice.build_poset(workloads[0][1])
        results[b] = [(f.matrix, f.generators) for lv in p.levels for f in lv]
    assert results["numba"] == results["numpy"] == results["exact"]
    print("\nall backends produced identical posets (exactness cross-check passed)")


if __name__ == "__main__":
    main()
