import random

import pytest

from arrlab import core
from arrlab.core import Arrangement, arrangement


def boolean_arrangement(n: int) -> Arrangement:
    rows = []
    for i in range(n):
        r = [0] * n
        r[i] = 1
        rows.append((tuple(r), 0))
    return arrangement(n, rows)


def braid(n: int) -> Arrangement:
    """Braid arrangement x_i = x_j in R^n."""
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            r = [0] * n
            r[i] = 1
            r[j] = -1
            rows.append((tuple(r), 0))
    return arrangement(n, rows)


def random_arrangement(rng: random.Random, dim: int, max_hyperplanes: int, span: int = 2,
                       central: bool = False) -> Arrangement:
    seen = set()
    hyps = []
    target = rng.randint(1, max_hyperplanes)
    attempts = 0
    while len(hyps) < target and attempts < 200:
        attempts += 1
        normal = tuple(rng.randint(-span, span) for _ in range(dim))
        if not any(normal):
            continue
        offset = 0 if central else rng.randint(-span, span)
        h = core.normalize(normal, offset)
        if h in seen:
            continue
        seen.add(h)
        hyps.append(h)
    return Arrangement(dim, tuple(hyps))


@pytest.fixture
def rng():
    return random.Random(20240817)


def graphs_up_to_iso(n):
    """All isomorphism classes of simple graphs on n vertices, via orbit
    enumeration over edge-set bitmasks."""
    from itertools import combinations, permutations

    from arrlab import graphs

    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    perms = []
    for perm in permutations(range(n)):
        perms.append([index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs])
    seen = set()
    reps = []
    for mask in range(1 << len(pairs)):
        if mask in seen:
            continue
        orbit = set()
        for pmap in perms:
            m2 = 0
            rest = mask
            while rest:
                low = rest & -rest
                m2 |= 1 << pmap[low.bit_length() - 1]
                rest ^= low
            orbit.add(m2)
        seen.update(orbit)
        reps.append(mask)
    return [graphs.graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            for mask in reps]
