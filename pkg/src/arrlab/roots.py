"""Root systems, heights, order ideals, ideal subarrangements and the
symbolic intermediate-arrangement calculus.

Realizations follow the Bourbaki planches; the F4/E6/E7/E8 coordinates are
uniformly scaled by 2 to stay integral (same kernels, same poset).  Heights
and the root-poset order come from the unique expansion of each positive
root in the simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .core import Arrangement, arrangement
from .errors import InputError

TYPES = ("A", "B", "C", "D", "G2", "F4", "E6", "E7", "E8")

_EXPECTED_COUNT = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
                   "D": lambda n: n * (n - 1), "G2": lambda n: 6, "F4": lambda n: 24,
                   "E6": lambda n: 36, "E7": lambda n: 63, "E8": lambda n: 120}


@dataclass(frozen=True)
class RootSystem:
    label: str
    rank: int
    ambient: int
    simple_roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    coefficients: tuple[tuple[int, ...], ...]  # expansion in simple roots
    heights: tuple[int, ...]
    coxeter_number: int

    def height(self, i: int) -> int:
        return self.heights[i]

    def leq(self, i: int, j: int) -> bool:
        """Root-poset order: coefficientwise comparison of expansions."""
        return all(a <= b for a, b in zip(self.coefficients[i], self.coefficients[j]))

    def simple_indices(self) -> tuple[int, ...]:
        return tuple(i for i, h in enumerate(self.heights) if h == 1)


def _unit(n, i, scale=1):
    v = [0] * n
    v[i] = scale
    return tuple(v)


def _pm(n, i, j, si, sj):
    v = [0] * n
    v[i] = si
    v[j] = sj
    return tuple(v)


def _classical_data(label: str, n: int):
    if label == "A":
        amb = n + 1
        simples = [_pm(amb, i, i + 1, 1, -1) for i in range(n)]
        pos = [_pm(amb, i, j, 1, -1) for i in range(amb) for j in range(i + 1, amb)]
    elif label == "B":
        amb = n
        simples = [_pm(amb, i, i + 1, 1, -1) for i in range(n - 1)] + [_unit(amb, n - 1)]
        pos = (
            [_pm(amb, i, j, 1, -1) for i in range(n) for j in range(i + 1, n)]
            + [_pm(amb, i, j, 1, 1) for i in range(n) for j in range(i + 1, n)]
            + [_unit(amb, i) for i in range(n)]
        )
    elif label == "C":
        amb = n
        simples = [_pm(amb, i, i + 1, 1, -1) for i in range(n - 1)] + [_unit(amb, n - 1, 2)]
        pos = (
            [_pm(amb, i, j, 1, -1) for i in range(n) for j in range(i + 1, n)]
            + [_pm(amb, i, j, 1, 1) for i in range(n) for j in range(i + 1, n)]
            + [_unit(amb, i, 2) for i in range(n)]
        )
    elif label == "D":
        if n < 2:
            raise InputError("type D needs rank >= 2")
        amb = n
        simples = [_pm(amb, i, i + 1, 1, -1) for i in range(n - 1)] + [_pm(amb, n - 2, n - 1, 1, 1)]
        pos = [_pm(amb, i, j, 1, -1) for i in range(n) for j in range(i + 1, n)] + [
            _pm(amb, i, j, 1, 1) for i in range(n) for j in range(i + 1, n)
        ]
    else:
        raise InputError(f"unknown classical type {label}")
    return amb, simples, pos


def _g2_data():
    simples = [(1, -1, 0), (-2, 1, 1)]
    a1, a2 = simples
    pos = [
        a1,
        a2,
        tuple(x + y for x, y in zip(a1, a2)),
        tuple(2 * x + y for x, y in zip(a1, a2)),
        tuple(3 * x + y for x, y in zip(a1, a2)),
        tuple(3 * x + 2 * y for x, y in zip(a1, a2)),
    ]
    return 3, simples, pos


def _f4_data():
    # scaled by 2
    simples = [(0, 2, -2, 0), (0, 0, 2, -2), (0, 0, 0, 2), (1, -1, -1, -1)]
    pos = []
    pos += [_unit(4, i, 2) for i in range(4)]
    pos += [_pm(4, i, j, 2, -2) for i in range(4) for j in range(i + 1, 4)]
    pos += [_pm(4, i, j, 2, 2) for i in range(4) for j in range(i + 1, 4)]
    for signs in iproduct((1, -1), repeat=3):
        pos.append((1,) + signs)
    return 4, simples, pos


def _e8_data():
    simples = [
        (1, -1, -1, -1, -1, -1, -1, 1),
        (2, 2, 0, 0, 0, 0, 0, 0),
        (-2, 2, 0, 0, 0, 0, 0, 0),
        (0, -2, 2, 0, 0, 0, 0, 0),
        (0, 0, -2, 2, 0, 0, 0, 0),
        (0, 0, 0, -2, 2, 0, 0, 0),
        (0, 0, 0, 0, -2, 2, 0, 0),
        (0, 0, 0, 0, 0, -2, 2, 0),
    ]
    pos = []
    for j in range(8):
        for i in range(j):
            pos.append(_pm(8, i, j, 2, 2))
            pos.append(_pm(8, i, j, -2, 2))
    for signs in iproduct((1, -1), repeat=7):
        if sum(1 for s in signs if s < 0) % 2 == 0:
            pos.append(signs + (1,))
    return 8, simples, pos


def _e7_data():
    amb, e8_simples, _ = _e8_data()
    simples = e8_simples[:7]
    pos = []
    for j in range(6):
        for i in range(j):
            pos.append(_pm(8, i, j, 2, 2))
            pos.append(_pm(8, i, j, -2, 2))
    pos.append((0, 0, 0, 0, 0, 0, -2, 2))
    for signs in iproduct((1, -1), repeat=6):
        if sum(1 for s in signs if s < 0) % 2 == 1:
            pos.append(signs + (-1, 1))
    return 8, simples, pos


def _e6_data():
    amb, e8_simples, _ = _e8_data()
    simples = e8_simples[:6]
    pos = []
    for j in range(5):
        for i in range(j):
            pos.append(_pm(8, i, j, 2, 2))
            pos.append(_pm(8, i, j, -2, 2))
    for signs in iproduct((1, -1), repeat=5):
        if sum(1 for s in signs if s < 0) % 2 == 0:
            pos.append(signs + (-1, -1, 1))
    return 8, simples, pos


def _solve_coefficients(simples, beta):
    """Unique expansion of beta in the simple roots (exact, Fractions)."""
    k = len(simples)
    amb = len(beta)
    rows = [[Fraction(simples[i][j]) for i in range(k)] + [Fraction(beta[j])] for j in range(amb)]
    coeffs = [None] * k
    r = 0
    piv = []
    for c in range(k):
        sel = next((i for i in range(r, amb) if rows[i][c] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(amb):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    for i in range(r, amb):
        if rows[i][k] != 0:
            raise InputError("root is not in the span of the simple roots")
    for row, c in zip(rows, piv):
        coeffs[c] = row[k]
    out = []
    for c in coeffs:
        if c is None or c.denominator != 1 or c < 0:
            raise InputError("root expansion is not a nonnegative integer combination")
        out.append(int(c))
    return tuple(out)


def build_root_system(label: str, n: int | None = None) -> RootSystem:
    """Construct a root system from its type label ('A3', 'B2', 'G2', ...,
    or separate label and rank)."""
    label = label.upper()
    if n is None:
        if len(label) < 2:
            raise InputError(f"rank missing in root system label {label!r}")
        head, tail = label[0], label[1:]
        if label in ("G2", "F4", "E6", "E7", "E8"):
            head, tail = label, label[1:]
        try:
            n = int(tail)
        except ValueError as exc:
            raise InputError(f"bad root system label {label!r}") from exc
        label = head if head in ("G2", "F4", "E6", "E7", "E8") else head
    if label in ("G2", "F4", "E6", "E7", "E8"):
        builder = {"G2": _g2_data, "F4": _f4_data, "E6": _e6_data, "E7": _e7_data, "E8": _e8_data}
        amb, simples, pos = builder[label]()
        rank = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}[label]
    elif label in ("A", "B", "C", "D"):
        if n is None or n < 1:
            raise InputError(f"bad rank for type {label}")
        amb, simples, pos = _classical_data(label, n)
        rank = n
        label = f"{label}{n}"
    else:
        raise InputError(f"unknown root system label {label!r}")
    expected = _EXPECTED_COUNT[label if label in ("G2", "F4", "E6", "E7", "E8") else label[0]](rank)
    if len(pos) != expected or len(set(pos)) != expected:
        raise InputError(f"internal: positive root count for {label} is off")
    coeffs = tuple(_solve_coefficients(simples, b) for b in pos)
    heights = tuple(sum(c) for c in coeffs)
    h = max(heights) + 1
    order = sorted(range(len(pos)), key=lambda i: (heights[i], pos[i]))
    pos = tuple(pos[i] for i in order)
    coeffs = tuple(coeffs[i] for i in order)
    heights = tuple(heights[i] for i in order)
    return RootSystem(label, rank, amb, tuple(simples), pos, coeffs, heights, h)


@lru_cache(maxsize=None)
def cached_root_system(label: str) -> RootSystem:
    return build_root_system(label)


@dataclass(frozen=True)
class OrderIdeal:
    """Lower order ideal of the positive-root poset, by root indices."""

    roots: frozenset[int]

    def __len__(self) -> int:
        return len(self.roots)


def is_ideal(phi: RootSystem, subset) -> bool:
    subset = frozenset(subset)
    for i in subset:
        for j in range(len(phi.positive_roots)):
            if j not in subset and phi.leq(j, i):
                return False
    return True


def enumerate_ideals(phi: RootSystem):
    """Stream every lower order ideal exactly once (linear-extension
    recursion: a root may join only when everything below it already has)."""
    n = len(phi.positive_roots)
    below = [frozenset(j for j in range(n) if j != i and phi.leq(j, i)) for i in range(n)]
    included: set[int] = set()

    def rec(pos: int):
        if pos == n:
            yield OrderIdeal(frozenset(included))
            return
        yield from rec(pos + 1)
        if below[pos] <= included:
            included.add(pos)
            yield from rec(pos + 1)
            included.remove(pos)

    yield from rec(0)


def ideal_arrangement(phi: RootSystem, ideal: OrderIdeal):
    """Arrangement {ker(beta) : beta in ideal} plus the root-height
    partition as ordered index blocks into it."""
    if not is_ideal(phi, ideal.roots):
        raise InputError("subset is not a lower order ideal")
    members = sorted(ideal.roots)
    arr = arrangement(phi.ambient, [(phi.positive_roots[i], 0) for i in members])
    if len(arr) != len(members):
        raise InputError("internal: proportional roots inside one ideal")
    blocks: list[list[int]] = []
    if members:
        maxh = max(phi.heights[i] for i in members)
        for h in range(1, maxh + 1):
            block = [pos for pos, i in enumerate(members) if phi.heights[i] == h]
            blocks.append(block)
        if any(not b for b in blocks):
            # heights of an ideal are consecutive from 1; defensive anyway
            blocks = [b for b in blocks if b]
    return arr, tuple(tuple(b) for b in blocks)


def weyl_arrangement(phi: RootSystem) -> Arrangement:
    return arrangement(phi.ambient, [(b, 0) for b in phi.positive_roots])


def root_poset_dot(phi: RootSystem) -> str:
    """DOT rendering of the root poset (covers only)."""
    n = len(phi.positive_roots)
    lines = ["digraph rootposet {", "  rankdir=BT;"]
    for i, b in enumerate(phi.positive_roots):
        lines.append(f'  r{i} [label="{b} h={phi.heights[i]}"];')
    for i in range(n):
        for j in range(n):
            if i != j and phi.leq(i, j) and phi.heights[j] == phi.heights[i] + 1:
                lines.append(f"  r{i} -> r{j};")
    lines.append("}")
    return "\n".join(lines)


# -- intermediate arrangements: symbolic calculus -------------------------------


@dataclass(frozen=True)
class IntermediateType:
    """Parameters (k, l, r) of the monomial-group interpolation family."""

    k: int
    l: int
    r: int

    def __post_init__(self):
        if self.l < 2 or self.r < 2 or not (0 <= self.k <= self.l):
            raise InputError("intermediate type needs l, r >= 2 and 0 <= k <= l")


def intermediate_expected_exponents(t: IntermediateType) -> tuple[int, ...]:
    """(1, r+1, ..., (l-2)r+1, (l-1)r - l + k + 1), sorted."""
    exps = [1] + [i * r_ + 1 for i, r_ in ((i, t.r) for i in range(1, t.l - 1))]
    exps.append((t.l - 1) * t.r - t.l + t.k + 1)
    return tuple(sorted(exps))


def _restriction_types(k: int, l: int):
    """Possible (k', l-1) restriction parameters, from the type table."""
    if k == 0:
        return [1]
    if k == l:
        return [l - 1]
    out = []
    if k >= 2:
        out.append(k - 1)
    out.append(k)
    if l - k >= 2:
        out.append(k + 1)
    out.append(l - 1)
    return sorted(set(kk for kk in out if 0 <= kk <= l - 1))


@lru_cache(maxsize=None)
def intermediate_flag_accurate(k: int, l: int, r: int) -> bool:
    """Symbolic flag-accuracy of the (k, l, r) intermediate arrangement via
    the restriction-type recursion: some restriction type must realize the
    exponents minus the largest and be flag-accurate itself."""
    t = IntermediateType(k, l, r)
    if l == 2:
        return True
    exps = list(intermediate_expected_exponents(t))
    want = tuple(sorted(exps[:-1]))
    for k2 in _restriction_types(k, l):
        sub = IntermediateType(k2, l - 1, r)
        if intermediate_expected_exponents(sub) != want:
            continue
        if intermediate_flag_accurate(k2, l - 1, r):
            return True
    return False


def intermediate_arrangement_r2(t: IntermediateType) -> Arrangement:
    """Real form at r = 2: coordinate hyperplanes x_1..x_k plus all
    x_i +- x_j; used to cross-validate the symbolic calculus by full
    lattice computation."""
    if t.r != 2:
        raise InputError("real construction only exists for r = 2")
    hyps = []
    for a in range(t.k):
        hyps.append((_unit(t.l, a), 0))
    for i in range(t.l):
        for j in range(i + 1, t.l):
            hyps.append((_pm(t.l, i, j, 1, -1), 0))
            hyps.append((_pm(t.l, i, j, 1, 1), 0))
    return arrangement(t.l, hyps)
