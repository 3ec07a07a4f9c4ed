"""Intersection posets, Mobius functions, characteristic polynomials,
modular coatoms and supersolvability.

Posets are built level by level (by codimension): each codim-k flat is
intersected with every hyperplane not already containing it, candidates are
canonicalized by their RREF matrix and deduplicated.  This also yields the
full cover relation, since every codim-(k+1) flat below a codim-k flat
arises as such an intersection.  Mobius values follow by the top-down
recursion over strict-ancestor sets, which propagate level by level.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from . import polynomials as poly
from .core import Arrangement, Flat, localize
from .errors import BudgetExceeded, InputError

DEFAULT_MAX_FLATS = 5_000_000

_CHI_MEMO: dict = {}


@dataclass(frozen=True)
class CharPoly:
    """Exact characteristic polynomial; coeffs ascending by power,
    degree = ambient dimension, leading coefficient 1."""

    coeffs: tuple[int, ...]
    dim: int
    roots_over_Z: tuple[int, ...] | None

    def __str__(self) -> str:
        s = poly.to_string(self.coeffs)
        if self.roots_over_Z is not None:
            s += "  =  " + self.factored()
        return s

    def factored(self) -> str:
        if self.roots_over_Z is None:
            return "(does not split over Z)"
        parts = []
        for r in sorted(set(self.roots_over_Z)):
            m = self.roots_over_Z.count(r)
            base = "t" if r == 0 else (f"(t - {r})" if r > 0 else f"(t + {-r})")
            parts.append(base + (f"^{m}" if m > 1 else ""))
        return "".join(parts) or "1"

    def splits(self) -> bool:
        return self.roots_over_Z is not None


@dataclass
class IntersectionPoset:
    """Flats grouped by codimension with Mobius values and covers.

    ``covers[k][i]`` lists positions (in level k+1) of the flats directly
    below flat i of level k; levels are canonically sorted by matrix.
    """

    arrangement: Arrangement
    levels: tuple[tuple[Flat, ...], ...]
    mobius: tuple[tuple[int, ...], ...]
    covers: tuple[tuple[tuple[int, ...], ...], ...]

    def n_flats(self) -> int:
        return sum(len(lv) for lv in self.levels)

    def all_flats(self):
        for lv in self.levels:
            yield from lv

    def flats_of_dim(self, d: int):
        c = self.arrangement.dim - d
        if 0 <= c < len(self.levels):
            return self.levels[c]
        return ()

    def find(self, matrix) -> tuple[int, int] | None:
        c = len(matrix)
        if c >= len(self.levels):
            return None
        lv = self.levels[c]
        lo, hi = 0, len(lv)
        while lo < hi:
            mid = (lo + hi) // 2
            if lv[mid].matrix < matrix:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(lv) and lv[lo].matrix == matrix:
            return (c, lo)
        return None


def build_poset(
    arr: Arrangement,
    max_codim: int | None = None,
    max_flats: int | None = None,
) -> IntersectionPoset:
    """All nonempty intersections up to ``max_codim``, with Mobius data.

    Raises BudgetExceeded (reporting the level and flat count) when more
    than ``max_flats`` flats are produced.
    """
    if max_flats is None:
        max_flats = DEFAULT_MAX_FLATS
    dim = arr.dim
    width = dim + 1
    rows = arr.rows
    top = Flat((), dim, ())
    levels = [(top,)]
    mob = [(1,)]
    anc_prev = [frozenset()]
    ids_prev = [0]
    mob_by_id = {0: 1}
    covers_out = []
    total = 1
    next_id = 1
    k = 0
    ext = kernels.Extender(rows, width)
    while max_codim is None or k < max_codim:
        cand: dict = {}
        level_k = levels[k]
        for pos, x in enumerate(level_k):
            for i, key in ext.extend(x.matrix, x.generators):
                entry = cand.get(key)
                if entry is None:
                    cand[key] = {pos}
                else:
                    entry.add(pos)
        if not cand:
            break
        total += len(cand)
        if total > max_flats:
            raise BudgetExceeded(
                f"flat budget exceeded at codimension {k + 1} "
                f"({total} flats, budget {max_flats})",
                level=k + 1,
                flats=total,
            )
        mats = sorted(((ext.matrix_of(key), key) for key in cand), key=lambda t: t[0])
        new_flats = []
        new_mob = []
        new_anc = []
        new_ids = []
        covers_k = [[] for _ in level_k]
        for mat, key in mats:
            new_flats.append(Flat(mat, dim - len(mat), ext.generators_of(mat)))
            parents = cand[key]
            anc = set()
            for p in parents:
                anc |= anc_prev[p]
                anc.add(ids_prev[p])
            mu = 0
            for a in anc:
                mu -= mob_by_id[a]
            new_anc.append(frozenset(anc))
            new_ids.append(next_id)
            mob_by_id[next_id] = mu
            next_id += 1
            new_mob.append(mu)
            mypos = len(new_flats) - 1
            for p in parents:
                covers_k[p].append(mypos)
        covers_out.append(tuple(tuple(c) for c in covers_k))
        levels.append(tuple(new_flats))
        mob.append(tuple(new_mob))
        anc_prev = new_anc
        ids_prev = new_ids
        k += 1
    covers_out.append(tuple(() for _ in levels[-1]))
    return IntersectionPoset(arr, tuple(levels), tuple(mob), tuple(covers_out))


def char_poly(arr: Arrangement, max_flats: int | None = None) -> CharPoly:
    """chi(arr, t) = sum over flats of mu(X) t^dim(X), memoized on the
    arrangement's canonical form."""
    key = arr.canonical_key()
    hit = _CHI_MEMO.get(key)
    if hit is not None:
        return hit
    poset = build_poset(arr, max_flats=max_flats)
    coeffs = [0] * (arr.dim + 1)
    for lv, ms in zip(poset.levels, poset.mobius):
        for x, mu in zip(lv, ms):
            coeffs[x.dim] += mu
    cp = CharPoly(tuple(coeffs), arr.dim, poly.integer_roots(tuple(coeffs)))
    _CHI_MEMO[key] = cp
    return cp


def char_poly_of_poset(poset: IntersectionPoset) -> CharPoly:
    coeffs = [0] * (poset.arrangement.dim + 1)
    for lv, ms in zip(poset.levels, poset.mobius):
        for x, mu in zip(lv, ms):
            coeffs[x.dim] += mu
    return CharPoly(tuple(coeffs), poset.arrangement.dim, poly.integer_roots(tuple(coeffs)))


def char_poly_via_cone(arr: Arrangement, max_flats: int | None = None) -> CharPoly:
    """chi computed as chi(cone(arr), t) / (t - 1): the cross-check path."""
    from .core import cone as _cone

    cp = char_poly(_cone(arr), max_flats=max_flats)
    quot, rem = poly.divmod_exact(cp.coeffs, (-1, 1))
    if rem != (0,):
        raise InputError("cone characteristic polynomial not divisible by (t - 1)")
    full = quot + (0,) * (arr.dim + 1 - len(quot))
    return CharPoly(tuple(full), arr.dim, poly.integer_roots(quot))


def pair_closure_table(arr: Arrangement) -> dict[tuple[int, int], frozenset[int]]:
    """For each pair i < j of hyperplane indices, the set of indices k with
    H_k containing H_i intersect H_j (empty intersection maps to all)."""
    width = arr.dim + 1
    rows = arr.rows
    n = len(rows)
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            ok, mat = kernels.rref((rows[i], rows[j]), width)
            if not ok:
                table[(i, j)] = frozenset(range(n))
                continue
            table[(i, j)] = frozenset(
                k for k in range(n) if kernels.row_in_span(mat, rows[k], width)
            )
    return table


def modular_coatoms(
    arr: Arrangement,
    poset: IntersectionPoset | None = None,
    pair_table=None,
) -> list[Flat]:
    """All modular coatoms of a central arrangement: coatoms X such that
    any two hyperplanes outside A_X meet inside some member of A_X."""
    if not arr.is_central:
        raise InputError("modular coatoms require a central arrangement")
    r = arr.rank()
    if r == 0:
        return []
    if poset is None:
        poset = build_poset(arr, max_codim=r - 1)
    if len(poset.levels) <= r - 1:
        return []
    if pair_table is None:
        pair_table = pair_closure_table(arr)
    out = []
    n = len(arr)
    for x in poset.levels[r - 1]:
        gens = frozenset(x.generators)
        outside = [i for i in range(n) if i not in gens]
        good = True
        for a in range(len(outside)):
            i = outside[a]
            for b in range(a + 1, len(outside)):
                j = outside[b]
                if not (pair_table[(i, j)] & gens):
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(x)
    return out


@dataclass(frozen=True)
class MChain:
    """Chain of modular-coatom localizations, recorded by hyperplane index
    sets of the input arrangement, smallest first (empty set omitted)."""

    localizations: tuple[tuple[int, ...], ...]
    exponents: tuple[int, ...]


_SS_MEMO: dict = {}  # canonical key -> tuple of row-tuples per chain step | None


def _ss_rows_chain(arr: Arrangement):
    """M-chain as row sets (order-independent, safe to memoize across
    arrangements sharing a canonical form), smallest localization first."""
    key = arr.canonical_key()
    hit = _SS_MEMO.get(key, "miss")
    if hit != "miss":
        return hit
    r = arr.rank()
    all_rows = tuple(sorted(h.row for h in arr.hyperplanes))
    if r <= 1:
        result = (all_rows,) if len(arr) else ()
        _SS_MEMO[key] = result
        return result
    coatoms = modular_coatoms(arr)
    coatoms.sort(key=lambda x: (-len(x.generators), x.matrix))
    result = None
    for x in coatoms:
        sub = localize(arr, x)
        inner = _ss_rows_chain(sub)
        if inner is None:
            continue
        result = inner + (all_rows,)
        break
    _SS_MEMO[key] = result
    return result


def supersolvable(arr: Arrangement) -> MChain | None:
    """M-chain search: find a modular coatom, recurse into its localization.

    Returns the chain and exponents (0-padded to the ambient dimension,
    step sizes |A_{X_i} \\ A_{X_{i-1}}|), or None.
    """
    if not arr.is_central:
        raise InputError("supersolvability requires a central arrangement")
    rows_chain = _ss_rows_chain(arr)
    if rows_chain is None:
        return None
    r = arr.rank()
    index_of = {h.row: i for i, h in enumerate(arr.hyperplanes)}
    chain = tuple(tuple(sorted(index_of[row] for row in step)) for step in rows_chain)
    sizes = [len(chain[0])] + [len(chain[i]) - len(chain[i - 1]) for i in range(1, len(chain))] if chain else []
    exps = (0,) * (arr.dim - r) + tuple(sizes)
    return MChain(chain, exps)


def clear_memos() -> None:
    _CHI_MEMO.clear()
    _SS_MEMO.clear()
