"""Hyperplanes, arrangements, flats, and the basic exact constructions.

A hyperplane is ``{x : normal . x = offset}`` with a canonical primitive
integer form; a flat is the canonical RREF of the affine system cutting it
out.  Everything is immutable and every operation is a pure function, so
values can be shared freely across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import kernels
from .errors import InputError, NotAFlat

SCHEMA = "arrlab/1"


@dataclass(frozen=True)
class Hyperplane:
    """Canonical affine hyperplane: gcd(normal, offset) = 1, first nonzero
    normal entry positive."""

    normal: tuple[int, ...]
    offset: int

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def row(self) -> tuple[int, ...]:
        return self.normal + (self.offset,)

    def is_linear(self) -> bool:
        return self.offset == 0

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.normal):
            if a == 0:
                continue
            mag = "" if abs(a) == 1 else f"{abs(a)}*"
            term = f"{mag}x{i + 1}"
            terms.append(("-" if a < 0 else ("+" if terms else "")) + term)
        return f"{' '.join(terms) or '0'} = {self.offset}"


def normalize(raw_normal, raw_offset=0) -> Hyperplane:
    """Canonical form of a rational affine equation; scaling-invariant.

    Raises InputError on a zero normal vector.
    """
    normal = [Fraction(v) for v in raw_normal]
    offset = Fraction(raw_offset)
    if not any(normal):
        raise InputError("hyperplane normal vector is zero")
    denom = 1
    for v in list(normal) + [offset]:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in normal]
    off = int(offset * denom)
    g = 0
    for v in ints + [off]:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    off = off // g
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
        off = -off
    return Hyperplane(tuple(ints), off)


@dataclass(frozen=True)
class Arrangement:
    """Finite duplicate-free ordered set of hyperplanes in a fixed dimension."""

    dim: int
    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self):
        for h in self.hyperplanes:
            if h.dim != self.dim:
                raise InputError(f"hyperplane {h} has dimension {h.dim}, expected {self.dim}")
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            seen = {}
            for i, h in enumerate(self.hyperplanes):
                if h in seen:
                    raise InputError(f"duplicate hyperplane at indices {seen[h]} and {i}: {h}")
                seen[h] = i

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    @property
    def is_central(self) -> bool:
        return all(h.offset == 0 for h in self.hyperplanes)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(h.row for h in self.hyperplanes)

    def rank(self) -> int:
        """Rank of the intersection semilattice (= rank of the normal matrix;
        a greedily chosen independent subsystem is always consistent)."""
        if not self.hyperplanes:
            return 0
        ok, mat = kernels.rref([h.normal + (0,) for h in self.hyperplanes], self.dim + 1)
        return len(mat)

    def canonical_key(self):
        return (self.dim, tuple(sorted(h.row for h in self.hyperplanes)))

    def delete(self, index: int) -> "Arrangement":
        hs = self.hyperplanes
        return Arrangement(self.dim, hs[:index] + hs[index + 1 :])

    def index_of(self, h: Hyperplane) -> int:
        try:
            return self.hyperplanes.index(h)
        except ValueError:
            raise InputError(f"hyperplane {h} not in arrangement") from None


def arrangement(dim: int, raw_hyperplanes) -> Arrangement:
    """Build an arrangement from raw (normal, offset) pairs, canonicalizing
    and silently merging duplicates (order of first occurrence kept)."""
    out = []
    seen = set()
    for normal, offset in raw_hyperplanes:
        h = normalize(normal, offset)
        if h not in seen:
            seen.add(h)
            out.append(h)
    return Arrangement(dim, tuple(out))


@dataclass(frozen=True)
class Flat:
    """Canonical affine subspace of an arrangement's ambient space.

    ``matrix`` is the canonical integer RREF of the defining system
    (last column = offsets); ``generators`` are the indices of all parent
    hyperplanes containing the flat.
    """

    matrix: tuple[tuple[int, ...], ...]
    dim: int
    generators: tuple[int, ...] = field(default=())

    @property
    def codim(self) -> int:
        return len(self.matrix)


def flat_from_rows(arr: Arrangement, rows) -> Flat:
    """Flat cut out by the given affine rows, with generator closure over
    ``arr``.  Raises NotAFlat when the system is inconsistent."""
    width = arr.dim + 1
    ok, mat = kernels.rref(list(rows), width)
    if not ok:
        raise NotAFlat("defining system is inconsistent (empty intersection)")
    gens = tuple(i for i, h in enumerate(arr.hyperplanes) if kernels.row_in_span(mat, h.row, width))
    return Flat(mat, arr.dim - len(mat), gens)


def flat_of(arr: Arrangement, indices) -> Flat:
    """Flat spanned by the hyperplanes at the given indices."""
    return flat_from_rows(arr, [arr.hyperplanes[i].row for i in indices])


def ambient_flat(arr: Arrangement) -> Flat:
    return Flat((), arr.dim, ())


def is_flat_of(arr: Arrangement, x: Flat) -> bool:
    """Membership in L(arr): the closure of x's generators must cut out x."""
    if x.matrix == ():
        return True
    width = arr.dim + 1
    gens = [i for i, h in enumerate(arr.hyperplanes) if kernels.row_in_span(x.matrix, h.row, width)]
    if not gens:
        return False
    ok, mat = kernels.rref([arr.hyperplanes[i].row for i in gens], width)
    return ok and mat == x.matrix


def _require_flat(arr: Arrangement, x: Flat) -> None:
    if not is_flat_of(arr, x):
        raise NotAFlat("subspace is not a flat of the arrangement")


def cone(arr: Arrangement) -> Arrangement:
    """Homogenize into dimension dim+1 (new coordinate z appended last) and
    add the hyperplane at infinity z = 0 as the last hyperplane."""
    hs = []
    for h in arr.hyperplanes:
        hs.append(Hyperplane(h.normal + (-h.offset,), 0))
    hs.append(Hyperplane((0,) * arr.dim + (1,), 0))
    return Arrangement(arr.dim + 1, tuple(hs))


def localize(arr: Arrangement, x: Flat) -> Arrangement:
    """Sub-arrangement of hyperplanes containing x, same ambient space."""
    _require_flat(arr, x)
    width = arr.dim + 1
    keep = [h for h in arr.hyperplanes if kernels.row_in_span(x.matrix, h.row, width)]
    return Arrangement(arr.dim, tuple(keep))


def _parametrization(x: Flat, dim: int):
    """Affine parametrization of x using its free (non-pivot) coordinates.

    Returns (free_cols, point, dirs): point is a rational point of x with
    all free coordinates 0, dirs[f] the direction with free coordinate f
    set to 1.
    """
    pivots = []
    for row in x.matrix:
        p = next(j for j in range(dim) if row[j])
        pivots.append(p)
    free = [j for j in range(dim) if j not in pivots]
    point = [Fraction(0)] * dim
    for row, p in zip(x.matrix, pivots):
        point[p] = Fraction(row[dim], row[p])
    dirs = {}
    for f in free:
        d = [Fraction(0)] * dim
        d[f] = Fraction(1)
        for row, p in zip(x.matrix, pivots):
            d[p] = Fraction(-row[f], row[p])
        dirs[f] = d
    return free, point, dirs


def restrict_traced(arr: Arrangement, x: Flat):
    """Like restrict(), also returning, per restricted hyperplane, the tuple
    of indices of the original hyperplanes whose trace it is."""
    _require_flat(arr, x)
    if x.matrix == ():
        return arr, tuple((i,) for i in range(len(arr)))
    dim = arr.dim
    width = dim + 1
    free, point, dirs = _parametrization(x, dim)
    out = []
    origins: list[list[int]] = []
    seen: dict[Hyperplane, int] = {}
    for idx, h in enumerate(arr.hyperplanes):
        if kernels.row_in_span(x.matrix, h.row, width):
            continue
        coeffs = []
        for f in free:
            d = dirs[f]
            coeffs.append(sum(Fraction(a) * d[j] for j, a in enumerate(h.normal)))
        rhs = Fraction(h.offset) - sum(Fraction(a) * point[j] for j, a in enumerate(h.normal))
        if not any(coeffs):
            continue  # parallel to x: empty trace
        hh = normalize(coeffs, rhs)
        pos = seen.get(hh)
        if pos is None:
            seen[hh] = len(out)
            out.append(hh)
            origins.append([idx])
        else:
            origins[pos].append(idx)
    return Arrangement(len(free), tuple(out)), tuple(tuple(o) for o in origins)


def restrict(arr: Arrangement, x: Flat) -> Arrangement:
    """Arrangement induced on x, in the coordinates of x's free columns.

    The parametrization uses the non-pivot columns of the canonical RREF as
    parameters, so the result is deterministic; duplicates merge and
    hyperplanes missing x entirely (parallel) are dropped.
    """
    return restrict_traced(arr, x)[0]


def essential_coords(arr: Arrangement) -> tuple[int, ...]:
    """Pivot columns of the normal matrix: the coordinates retained by
    essentialize()."""
    if not arr.hyperplanes:
        return ()
    ok, mat = kernels.rref([h.normal + (0,) for h in arr.hyperplanes], arr.dim + 1)
    return tuple(next(j for j in range(arr.dim) if row[j]) for row in mat)


def essentialize(arr: Arrangement) -> Arrangement:
    """Full-rank arrangement in dimension rank(arr), obtained by evaluating
    every form on the coordinate section through the normal matrix's pivot
    columns.  This is an exact section of the quotient by the lineality
    space, so the intersection semilattice is preserved (and distinct
    hyperplanes stay distinct)."""
    coords = essential_coords(arr)
    hs = []
    for h in arr.hyperplanes:
        hs.append(normalize(tuple(h.normal[j] for j in coords), h.offset))
    return Arrangement(len(coords), tuple(hs))


def lift_row(arr: Arrangement, row) -> tuple[int, ...]:
    """Lift an affine row over essentialize(arr)'s coordinates back to a
    canonical row in the ambient space of ``arr``."""
    coords = essential_coords(arr)
    ok, basis = kernels.rref([h.normal + (0,) for h in arr.hyperplanes], arr.dim + 1)
    lifted = [Fraction(0)] * arr.dim
    for brow in basis:
        p = next(j for j in range(arr.dim) if brow[j])
        pos = coords.index(p)
        lam = Fraction(row[pos], brow[p])
        for j in range(arr.dim):
            lifted[j] += lam * brow[j]
    h = normalize(lifted, Fraction(row[len(coords)]))
    return h.row


def product(a: Arrangement, b: Arrangement) -> Arrangement:
    """Block-diagonal union in dimension a.dim + b.dim."""
    hs = []
    zb = (0,) * b.dim
    za = (0,) * a.dim
    for h in a.hyperplanes:
        hs.append(Hyperplane(h.normal + zb, h.offset))
    for h in b.hyperplanes:
        hs.append(Hyperplane(za + h.normal, h.offset))
    return Arrangement(a.dim + b.dim, tuple(hs))


# -- JSON wire format ---------------------------------------------------------


def to_json(arr: Arrangement) -> dict:
    return {
        "schema": SCHEMA,
        "dim": arr.dim,
        "hyperplanes": [{"normal": list(h.normal), "offset": h.offset} for h in arr.hyperplanes],
    }


def from_json(data) -> Arrangement:
    """Load an arrangement, enforcing canonical form and rejecting
    duplicates with the indices of both offenders."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        dim = int(data["dim"])
        raw = data["hyperplanes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed arrangement JSON: {exc}") from exc
    hs = []
    seen = {}
    for i, item in enumerate(raw):
        try:
            h = normalize([int(v) for v in item["normal"]], int(item.get("offset", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed hyperplane at index {i}: {exc}") from exc
        if h.dim != dim:
            raise InputError(f"hyperplane at index {i} has dimension {h.dim}, expected {dim}")
        if h in seen:
            raise InputError(f"duplicate hyperplane: index {i} repeats index {seen[h]} ({h})")
        seen[h] = i
        hs.append(h)
    return Arrangement(dim, tuple(hs))
