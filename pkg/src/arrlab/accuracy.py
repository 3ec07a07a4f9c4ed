"""Accuracy notions: almost/plain/k-/co-/flag-/ind-flag-accuracy witnesses,
decided against the freeness oracles and replayable via check_witness.

All searches run on the essentialization (the notions are invariant under
it and flats of every dimension then exist); coaccuracy is the grading
stable under that move and k-accuracy is reported against the input's
ambient dimension.  A verdict is only negative when the relevant frontier
was enumerated exhaustively with definite failures; freeness-oracle
exhaustion surfaces as "undecided", never as a negative.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from . import polynomials as poly
from .core import (
    Arrangement,
    Flat,
    essential_coords,
    essentialize,
    flat_of,
    is_flat_of,
    lift_row,
    normalize,
    restrict,
    restrict_traced,
)
from .errors import BudgetExceeded, InputError
from .freeness import (
    FREE,
    NOT_FREE,
    UNKNOWN,
    FreenessVerdict,
    free_verdict,
    inductively_free,
    sorted_exponents,
    supersolvable_verdict,
    verify_certificate,
)
from .lattice import build_poset, char_poly

IND_KINDS = ("supersolvable", "inductive")  # supersolvable arrangements are
# inductively free, so both certificate kinds witness inductive freeness

_FV_MEMO: dict = {}
_IND_MEMO: dict = {}


def cached_free_verdict(arr: Arrangement, node_budget: int = 50_000) -> FreenessVerdict:
    key = arr.canonical_key()
    hit = _FV_MEMO.get(key)
    if hit is not None and hit.status != UNKNOWN:
        return hit
    v = free_verdict(arr, "auto", node_budget)
    _FV_MEMO[key] = v
    return v


def cached_ind_verdict(arr: Arrangement, node_budget: int = 50_000) -> FreenessVerdict:
    """Certificate of inductive freeness specifically (supersolvable counts)."""
    key = arr.canonical_key()
    hit = _IND_MEMO.get(key)
    if hit is not None and hit.status != UNKNOWN:
        return hit
    v = supersolvable_verdict(arr)
    if v.status != FREE:
        v = inductively_free(arr, node_budget)
    _IND_MEMO[key] = v
    return v


@dataclass(frozen=True)
class AccuracyWitness:
    """Per-level flats (essential coordinates, dimensions 1..r ascending,
    the last one the full space) with their certified exponents and
    freeness certificates; chain_prefix is the verified nested prefix."""

    kind: str  # almost | accurate | flag | ind_flag
    dim: int
    flats: tuple
    exponents_per_level: tuple
    certificates: tuple
    essential_coords: tuple[int, ...]
    chain_prefix: int

    def to_json(self, arr: Arrangement | None = None) -> dict:
        flats = []
        for d, mat in enumerate(self.flats, start=1):
            entry = {"dim": d, "equations": [list(r) for r in mat]}
            if arr is not None and len(self.essential_coords) != arr.dim:
                entry["equations_ambient"] = [list(lift_row(arr, r)) for r in mat]
            flats.append(entry)
        return {
            "schema": "arrlab/1",
            "kind": self.kind,
            "chain_prefix": self.chain_prefix,
            "essential_coords": list(self.essential_coords),
            "flats": flats,
            "exponents_per_level": [list(e) for e in self.exponents_per_level],
            "certificates": [c for c in self.certificates],
        }


@dataclass
class AccuracyReport:
    exponents: tuple[int, ...]
    provenance: str
    almost_accurate: bool | None
    accurate: bool | None
    k_accuracy: int | None
    coaccuracy: int | None
    flag_accurate: bool | None
    ind_flag_accurate: bool | None
    witness: AccuracyWitness | None
    level_status: dict
    failures: dict
    undecided: list
    note: str = ""


def _prefix_poly(exps, d):
    return poly.from_roots(sorted_exponents(exps[:d]))


def _pad_poly(coeffs, dim):
    return tuple(coeffs) + (0,) * (dim + 1 - len(coeffs))


def _flat_le(deep: Flat, shallow: Flat) -> bool:
    """deep subseteq shallow: the shallow flat's rows lie in the deep
    flat's rowspace."""
    if not shallow.matrix:
        return True
    if not deep.matrix:
        return False
    return all(kernels.row_in_span(deep.matrix, row, len(row)) for row in shallow.matrix)


def _is_submultiset(small, big):
    pool = list(big)
    for v in small:
        if v in pool:
            pool.remove(v)
        else:
            return False
    return True


def _resolve_exponents(arr, asserted_exponents, node_budget):
    if asserted_exponents is not None:
        exps = sorted_exponents(asserted_exponents)
        if len(exps) != arr.dim:
            raise InputError("asserted exponent multiset must have ambient length")
        cp = char_poly(arr)
        if cp.coeffs != _pad_poly(poly.from_roots(exps), arr.dim):
            raise InputError("asserted exponents contradict the characteristic polynomial")
        return exps, "asserted"
    v = cached_free_verdict(arr, node_budget)
    if v.status == NOT_FREE:
        raise InputError(f"arrangement is not free: {v.reason}")
    if v.status == UNKNOWN:
        raise InputError(
            "freeness could not be certified; pass asserted_exponents for "
            f"externally known exponents ({v.reason})"
        )
    return v.certificate.exponents, v.certificate.kind


def accuracy_profile(
    arr: Arrangement,
    asserted_exponents=None,
    node_budget: int = 50_000,
    max_flats: int | None = None,
) -> AccuracyReport:
    """Full decision report: almost/accurate/k-accuracy/coaccuracy/flag/
    ind-flag, with a witness for each positive verdict and per-level
    exhaustion data for negatives."""
    if not arr.is_central:
        raise InputError("accuracy notions are defined for central arrangements")
    exps, provenance = _resolve_exponents(arr, asserted_exponents, node_budget)
    ess = essentialize(arr)
    r = ess.dim
    ecoords = essential_coords(arr)
    ess_exps = exps[arr.dim - r :]
    if r <= 1:
        exps_levels = tuple(tuple(ess_exps[:d]) for d in range(1, r + 1))
        w = AccuracyWitness(
            "ind_flag", r, ((),) * r, exps_levels, (None,) * r, ecoords, max(r - 1, 0)
        )
        return AccuracyReport(
            exps, provenance, True, True, arr.dim - (1 if r else 0), 1 if r else 0,
            True, True, w, {}, {}, [], "rank <= 1: trivial witness",
        )
    try:
        poset = build_poset(ess, max_flats=max_flats)
    except BudgetExceeded as exc:
        return AccuracyReport(
            exps, provenance, None, None, None, None, None, None, None,
            {}, {}, ["almost_accurate", "accurate", "k_accuracy", "coaccuracy",
                     "flag_accurate", "ind_flag_accurate"],
            f"lattice budget exceeded: {exc}",
        )

    level_status: dict = {}
    failures: dict = {}
    good: dict[int, list] = {}
    good_ind: dict[int, list] = {}
    almost_ok: dict[int, bool | None] = {}
    cert_of: dict = {}
    ind_cert_of: dict = {}

    has_unknown: dict[int, bool] = {}
    has_ind_unknown: dict[int, bool] = {}
    for d in range(1, r):
        flats = sorted(poset.flats_of_dim(d), key=lambda f: f.generators)
        want = _pad_poly(_prefix_poly(ess_exps, d), d)
        goods, goods_ind, fails = [], [], []
        saw_unknown = False
        saw_ind_unknown = False
        almost_unknown = False
        almost_found = False
        for x in flats:
            sub = restrict(ess, x)
            cp = char_poly(sub)
            if cp.coeffs != want:
                if not almost_found and cp.roots_over_Z is not None and _is_submultiset(
                    cp.roots_over_Z, ess_exps
                ):
                    st = cached_free_verdict(sub, node_budget).status
                    if st == FREE:
                        almost_found = True
                    elif st == UNKNOWN:
                        almost_unknown = True
                fails.append((x.matrix, "restriction chi differs from the exponent prefix"))
                continue
            v = cached_free_verdict(sub, node_budget)
            if v.status == FREE:
                goods.append(x)
                cert_of[x.matrix] = v.certificate
                almost_found = True
                vi = v if v.certificate.kind in IND_KINDS else cached_ind_verdict(sub, node_budget)
                if vi.status == FREE and vi.certificate.kind in IND_KINDS:
                    goods_ind.append(x)
                    ind_cert_of[x.matrix] = vi.certificate
                elif vi.status == UNKNOWN and "budget" in vi.reason:
                    saw_ind_unknown = True
            elif v.status == UNKNOWN:
                saw_unknown = True
                fails.append((x.matrix, f"freeness undecided: {v.reason}"))
            else:
                fails.append((x.matrix, f"not free: {v.reason}"))
        good[d] = goods
        good_ind[d] = goods_ind
        has_unknown[d] = saw_unknown
        has_ind_unknown[d] = saw_ind_unknown
        almost_ok[d] = True if almost_found else (None if (saw_unknown or almost_unknown) else False)
        if goods:
            level_status[d] = "good"
        elif saw_unknown:
            level_status[d] = "undecided"
            failures[d] = fails
        else:
            level_status[d] = "empty"
            failures[d] = fails

    if any(level_status[d] == "empty" for d in range(1, r)):
        accurate: bool | None = False
    elif any(level_status[d] == "undecided" for d in range(1, r)):
        accurate = None
    else:
        accurate = True
    vals = [almost_ok[d] for d in range(1, r)]
    almost = True if all(v is True for v in vals) else (False if any(v is False for v in vals) else None)

    chain, jmax = _chain_dp(good, r)
    chain_ind, jmax_ind = _chain_dp(good_ind, r)

    top_v = cached_free_verdict(ess, node_budget)
    top_ind_v = (
        top_v
        if top_v.status == FREE and top_v.certificate.kind in IND_KINDS
        else cached_ind_verdict(ess, node_budget)
    )
    top_ind = top_ind_v.status == FREE and top_ind_v.certificate.kind in IND_KINDS

    # a chain through an oracle-undecided flat could be longer than jmax, so
    # a maximal-k claim is only exact when either the full flag was reached
    # or no undecided flats exist at all
    chain_exact = jmax >= r - 1 or not any(has_unknown.values())
    note = ""
    if accurate and chain_exact:
        coacc: int | None = r - jmax
    elif accurate:
        coacc = None
        note = (
            f"coaccuracy undecided: certified chain gives k <= {r - jmax} but "
            "oracle-undecided flats could extend it"
        )
    else:
        coacc = None
    kacc = (arr.dim - coacc) if coacc is not None else None
    if accurate is None:
        flag: bool | None = None
    elif accurate is False:
        flag = False
    else:
        flag = jmax >= r - 1 or (None if not chain_exact else False)
    if flag:
        if top_ind and jmax_ind >= r - 1:
            ind_flag: bool | None = True
        elif (
            (top_ind_v.status == UNKNOWN and "budget" in top_ind_v.reason)
            or any(has_unknown.values())
            or any(has_ind_unknown.values())
        ):
            ind_flag = None
        else:
            ind_flag = False
    else:
        ind_flag = flag
    if flag and ind_flag is False:
        note = "flag-accurate, but some level only certifies non-inductively (downgraded from ind-flag)"
    undecided = []
    if accurate is None:
        undecided += ["accurate", "k_accuracy", "coaccuracy", "flag_accurate", "ind_flag_accurate"]
    else:
        if coacc is None and accurate:
            undecided += ["k_accuracy", "coaccuracy"]
        if flag is None:
            undecided.append("flag_accurate")
        if ind_flag is None:
            undecided.append("ind_flag_accurate")
    if almost is None:
        undecided.append("almost_accurate")

    witness = None
    if accurate:
        use_ind = bool(ind_flag)
        kind = "ind_flag" if use_ind else ("flag" if flag else "accurate")
        jprefix = jmax_ind if use_ind else jmax
        use_chain = chain_ind if use_ind else chain
        use_good = good_ind if use_ind else good
        chosen: dict[int, Flat] = {}
        if jprefix >= 1:
            x = use_chain[jprefix][0]
            chosen[jprefix] = x
            for d in range(jprefix - 1, 0, -1):
                x = next(y for y in use_chain[d] if _flat_le(y, x))
                chosen[d] = x
        for d in range(jprefix + 1, r):
            pool = use_good[d] or good[d]
            chosen[d] = pool[0]
        mats = tuple(chosen[d].matrix for d in range(1, r)) + ((),)
        certs = []
        store = ind_cert_of if use_ind else cert_of
        for d in range(1, r):
            c = store.get(chosen[d].matrix) or cert_of.get(chosen[d].matrix)
            certs.append(c.to_json() if c else None)
        top_cert = (top_ind_v if use_ind else top_v).certificate
        certs.append(top_cert.to_json() if top_cert else None)
        exps_levels = tuple(tuple(sorted(ess_exps[:d])) for d in range(1, r + 1))
        witness = AccuracyWitness(kind, r, mats, exps_levels, tuple(certs), ecoords, jprefix)

    return AccuracyReport(
        exps, provenance, almost, accurate, kacc, coacc, flag, ind_flag,
        witness, level_status, failures, undecided, note,
    )


def _chain_dp(good: dict, r: int):
    """Longest consecutive nested chain through per-level good flats,
    anchored at dimension 1."""
    chain: dict[int, list] = {}
    prev: list = []
    jmax = 0
    for d in range(1, r):
        if d == 1:
            cur = list(good.get(1, ()))
        else:
            cur = [x for x in good.get(d, ()) if any(_flat_le(y, x) for y in prev)]
        chain[d] = cur
        if cur and jmax == d - 1:
            jmax = d
        prev = cur
    return chain, jmax


# -- dedicated flag-accuracy search (restriction recursion) -------------------------

_FLAG_MEMO: dict = {}  # (canonical key, ind) -> chosen hyperplane row | None


def _flag_choice(ess: Arrangement, ind: bool):
    key = (ess.canonical_key(), ind)
    if key in _FLAG_MEMO:
        return _FLAG_MEMO[key]
    found = None
    roots = char_poly(ess).roots_over_Z
    if roots is not None:
        exps = sorted_exponents(roots)
        want = _pad_poly(poly.from_roots(exps[: ess.dim - 1]), ess.dim - 1)
        for i, h in enumerate(ess.hyperplanes):
            sub = restrict(ess, flat_of(ess, [i]))
            if char_poly(sub).coeffs != want:
                continue
            v = cached_ind_verdict(sub) if ind else cached_free_verdict(sub)
            if v.status != FREE or (ind and v.certificate.kind not in IND_KINDS):
                continue
            if ess.dim - 1 <= 1 or _flag_choice(sub, ind) is not None:
                found = h.row
                break
    _FLAG_MEMO[key] = found
    return found


def flag_accuracy(
    arr: Arrangement,
    asserted_exponents=None,
    ind: bool = False,
    node_budget: int = 50_000,
) -> AccuracyWitness | None:
    """Top-down flag witness search: pick a hyperplane whose restriction
    realizes the exponents minus the largest, recurse into the restriction;
    base case rank <= 2."""
    if not arr.is_central:
        raise InputError("flag-accuracy is defined for central arrangements")
    _resolve_exponents(arr, asserted_exponents, node_budget)
    if ind:
        v = cached_ind_verdict(arr, node_budget)
        if v.status != FREE or v.certificate.kind not in IND_KINDS:
            return None
    ess = essentialize(arr)
    sets = _flag_sets(ess, ind)
    if sets is None:
        return None
    return witness_from_index_sets(arr, sets, "ind_flag" if ind else "flag")


def _flag_sets(ess: Arrangement, ind: bool):
    """Cumulative ess-hyperplane index sets for the flag (shallowest first,
    one per dimension r-1 .. 1), or None."""
    r = ess.dim
    if r <= 1:
        return []
    sets = []
    acc: list[int] = []
    current = ess
    to_root = list(range(len(ess)))
    while current.dim > 1:
        row = _flag_choice(current, ind)
        if row is None:
            return None
        i = [h.row for h in current.hyperplanes].index(row)
        acc.append(to_root[i])
        sets.append(tuple(sorted(set(acc))))
        rest, origins = restrict_traced(current, flat_of(current, [i]))
        to_root = [to_root[o[0]] for o in origins]
        current = rest
    return sets


def witness_from_index_sets(arr: Arrangement, sets, kind: str) -> AccuracyWitness:
    """Materialize a chain witness from cumulative ess-index sets
    (shallowest first), certifying each level."""
    ess = essentialize(arr)
    r = ess.dim
    mats = []
    for depth, idx in enumerate(sets, start=1):
        x = flat_of(ess, idx)
        if x.dim != r - depth:
            raise InputError(f"chain level {depth} has dimension {x.dim}, expected {r - depth}")
        mats.append(x.matrix)
    return _witness_from_ess_mats(arr, mats, kind)


def witness_from_chain_rows(arr: Arrangement, rows, kind: str) -> AccuracyWitness:
    """Build a chain witness from explicit ambient affine rows (first row =
    first restriction).  Each prefix intersection must be a flat of the
    arrangement of one lower dimension (the rows themselves may be traces
    rather than original hyperplanes)."""
    ess = essentialize(arr)
    coords = essential_coords(arr)
    r = ess.dim
    ess_rows = []
    for row in rows:
        row = tuple(row)
        h_amb = normalize(row[:-1], row[-1])
        ess_rows.append(normalize(tuple(h_amb.normal[c] for c in coords), h_amb.offset).row)
    if len(ess_rows) != r - 1:
        raise InputError(f"chain needs {r - 1} rows, got {len(ess_rows)}")
    mats = []
    for s in range(1, r):
        ok, mat = kernels.rref(ess_rows[:s], r + 1)
        if not ok or len(mat) != s:
            raise InputError(f"chain level {s} does not drop dimension by exactly one")
        x = Flat(mat, r - s, ())
        if not is_flat_of(ess, x):
            raise InputError(f"chain level {s} is not a flat of the arrangement")
        mats.append(mat)
    return _witness_from_ess_mats(arr, mats, kind)


def _witness_from_ess_mats(arr: Arrangement, mats_shallow_first, kind: str) -> AccuracyWitness:
    ess = essentialize(arr)
    r = ess.dim
    exps = sorted_exponents(char_poly(ess).roots_over_Z)
    ind = kind == "ind_flag"
    certs = []
    for depth, mat in enumerate(mats_shallow_first, start=1):
        sub = restrict(ess, Flat(mat, r - depth, ()))
        v = cached_ind_verdict(sub) if ind else cached_free_verdict(sub)
        if v.status != FREE:
            raise InputError(f"chain level {depth}: restriction not certified free")
        certs.append(v.certificate.to_json())
    top_v = cached_ind_verdict(ess) if ind else cached_free_verdict(ess)
    top_cert = top_v.certificate.to_json() if top_v.certificate else None
    mats_full = tuple(reversed(list(mats_shallow_first))) + ((),)
    certs_full = tuple(reversed(certs)) + (top_cert,)
    exps_levels = tuple(tuple(sorted(exps[:d])) for d in range(1, r + 1))
    return AccuracyWitness(
        kind, r, mats_full, exps_levels, certs_full, essential_coords(arr), r - 1
    )


def complete_flag_from_prefix(arr: Arrangement, prefix_rows, ind: bool = True):
    """Extend an explicit chain prefix (ambient rows, first restriction
    first) to a full flag witness by searching inside the deepest
    restriction; returns None when no completion exists."""
    ess = essentialize(arr)
    coords = essential_coords(arr)
    r = ess.dim
    ess_rows = []
    for row in prefix_rows:
        h_amb = normalize(tuple(row)[:-1], tuple(row)[-1])
        ess_rows.append(normalize(tuple(h_amb.normal[c] for c in coords), h_amb.offset).row)
    mats = []
    for s in range(1, len(ess_rows) + 1):
        ok, mat = kernels.rref(ess_rows[:s], r + 1)
        if not ok or len(mat) != s:
            raise InputError(f"prefix level {s} does not drop dimension by exactly one")
        x = Flat(mat, r - s, ())
        if not is_flat_of(ess, x):
            raise InputError(f"prefix level {s} is not a flat of the arrangement")
        mats.append(mat)
        # each prefix level must already realize the exponent prefix
        sub = restrict(ess, x)
        exps = sorted_exponents(char_poly(ess).roots_over_Z)
        if char_poly(sub).coeffs != _pad_poly(poly.from_roots(exps[: r - s]), r - s):
            return None
    if not mats:
        return flag_accuracy(arr, ind=ind)
    deep = Flat(mats[-1], r - len(mats), ())
    sub = restrict(ess, deep)
    inner_sets = _flag_sets(sub, ind)
    if inner_sets is None:
        return None
    # lift the continuation chain back through the restriction: a restricted
    # equation over the flat's free coordinates pulls back coordinatewise
    pivots = [next(j for j in range(r) if row[j]) for row in deep.matrix]
    free = [j for j in range(r) if j not in pivots]
    for idx in inner_sets:
        inner = flat_of(sub, idx)
        lifted = list(deep.matrix)
        for row in inner.matrix:
            amb = [0] * (r + 1)
            for pos, f in enumerate(free):
                amb[f] = row[pos]
            amb[r] = row[len(free)]
            lifted.append(tuple(amb))
        ok, mat = kernels.rref(lifted, r + 1)
        if not ok:
            return None
        mats.append(mat)
    if len(mats) != r - 1:
        return None
    return _witness_from_ess_mats(arr, mats, "ind_flag" if ind else "flag")


# -- witness replay -----------------------------------------------------------------


def check_witness(arr: Arrangement, witness) -> tuple[bool, str]:
    """Replay every claim of a witness: flats belong to the lattice with the
    right dimensions, restrictions realize the claimed exponents, freeness
    certificates replay, and flag witnesses are simultaneously divisional
    flags with nested levels."""
    try:
        return _check_witness(arr, witness)
    except (InputError, KeyError, TypeError, ValueError, IndexError) as exc:
        return False, f"malformed witness: {exc}"


def _check_witness(arr: Arrangement, witness) -> tuple[bool, str]:
    data = witness.to_json() if isinstance(witness, AccuracyWitness) else witness
    kind = data.get("kind")
    if kind not in ("almost", "accurate", "flag", "ind_flag"):
        return False, f"unknown witness kind {kind!r}"
    ess = essentialize(arr)
    r = ess.dim
    if tuple(data.get("essential_coords", ())) != essential_coords(arr):
        return False, "essential coordinate section mismatch"
    flats = data.get("flats", [])
    if len(flats) != r:
        return False, f"witness has {len(flats)} levels, expected {r}"
    roots = char_poly(ess).roots_over_Z
    if roots is None and len(ess):
        return False, "characteristic polynomial does not split"
    exps = sorted_exponents(roots or ())
    exps_levels = [tuple(e) for e in data.get("exponents_per_level", [])]
    certs = data.get("certificates", [None] * r)
    mats = []
    for level, entry in enumerate(flats, start=1):
        mat = tuple(tuple(int(v) for v in row) for row in entry["equations"])
        if entry.get("dim") != level:
            return False, f"level {level} labeled with dimension {entry.get('dim')}"
        x_dimension = ess.dim - len(mat)
        if x_dimension != level:
            return False, f"level {level} flat has dimension {x_dimension}"
        x = Flat(mat, x_dimension, ())
        if not is_flat_of(ess, x):
            return False, f"level {level} subspace is not a flat of the arrangement"
        mats.append(x)
    for level, x in enumerate(mats, start=1):
        sub = restrict(ess, x) if x.matrix else ess
        cp = char_poly(sub)
        if level > len(exps_levels):
            return False, f"level {level} missing exponent claim"
        claimed = sorted_exponents(exps_levels[level - 1])
        if kind == "almost":
            if cp.roots_over_Z is None or sorted_exponents(cp.roots_over_Z) != claimed:
                return False, f"level {level} exponents do not match the claim"
            if not _is_submultiset(claimed, exps):
                return False, f"level {level} exponents are not a sub-multiset"
        else:
            if claimed != tuple(sorted(exps[:level])):
                return False, f"level {level} claim is not the exponent prefix"
            if cp.coeffs != _pad_poly(poly.from_roots(claimed), level):
                return False, f"level {level} restriction chi differs from the prefix"
        cert = certs[level - 1] if level <= len(certs) else None
        if cert is not None:
            ok, msg = verify_certificate(sub, cert)
            if not ok:
                return False, f"level {level} certificate fails replay: {msg}"
            if sorted_exponents(cert.get("exponents", ())) != claimed:
                return False, f"level {level} certificate exponents differ from claim"
            if kind == "ind_flag" and cert.get("kind") not in IND_KINDS:
                return False, f"level {level} certificate is not inductive"
        elif level < r or len(ess):
            v = cached_ind_verdict(sub) if kind == "ind_flag" else cached_free_verdict(sub)
            if v.status != FREE:
                return False, f"level {level} freeness not re-certifiable"
            if kind == "ind_flag" and v.certificate.kind not in IND_KINDS:
                return False, f"level {level} not certified inductively free"
    if kind in ("flag", "ind_flag"):
        for d in range(len(mats) - 1):
            if not _flat_le(mats[d], mats[d + 1]):
                return False, f"levels {d + 1} and {d + 2} are not nested"
        # a flag witness is simultaneously a divisional flag: replay divisions
        prev_chi = None
        for level, x in enumerate(mats, start=1):
            sub = restrict(ess, x) if x.matrix else ess
            chi = char_poly(sub).coeffs
            if prev_chi is not None and not poly.divides(prev_chi, chi):
                return False, f"divisional replay fails between levels {level - 1} and {level}"
            prev_chi = chi
    return True, ""


# -- simple-root witnesses -----------------------------------------------------------


def simple_root_witness(arr: Arrangement, simple_roots, ind: bool = True):
    """Search for a flag witness whose flats are intersections of coned
    root-level hyperplanes alpha = j z over the given simple system.

    The input must look like the cone of a deformed Weyl arrangement: it is
    central, contains the hyperplane at infinity as its last coordinate,
    and every simple root occurs at some level.
    """
    if not arr.is_central:
        raise InputError("expected the cone of a deformed Weyl arrangement")
    n = arr.dim - 1
    inf = (0,) * n + (1, 0)
    if inf not in {h.row for h in arr.hyperplanes}:
        raise InputError("hyperplane at infinity missing: not a coned arrangement")
    candidates = []  # (simple index, level, row)
    for s, alpha in enumerate(simple_roots):
        alpha = tuple(alpha)
        if len(alpha) != n:
            raise InputError("simple roots must live in the base coordinates")
        found_any = False
        for h in arr.hyperplanes:
            lev = _root_level(h, alpha)
            if lev is not None:
                candidates.append((s, lev, h.row))
                found_any = True
        if not found_any:
            raise InputError(
                f"no level hyperplane for simple root {alpha}: not a deformed Weyl cone"
            )
    _resolve_exponents(arr, None, 50_000)
    ess = essentialize(arr)
    r = ess.dim
    coords = essential_coords(arr)
    ess_exps = sorted_exponents(char_poly(ess).roots_over_Z)
    index_of = {h.row: i for i, h in enumerate(ess.hyperplanes)}

    def to_ess(row):
        h = normalize(row[:-1], row[-1])
        return normalize(tuple(h.normal[c] for c in coords), h.offset).row

    def dfs(used, idx_acc, depth):
        if depth == r - 1:
            return []
        want = _pad_poly(poly.from_roots(ess_exps[: r - depth - 1]), r - depth - 1)
        for (s, lev, row) in candidates:
            if s in used:
                continue
            i = index_of[to_ess(row)]
            idx = tuple(sorted(set(idx_acc) | {i}))
            x = flat_of(ess, idx)
            if x.dim != r - depth - 1:
                continue
            sub = restrict(ess, x)
            if char_poly(sub).coeffs != want:
                continue
            v = cached_ind_verdict(sub) if ind else cached_free_verdict(sub)
            if v.status != FREE or (ind and v.certificate.kind not in IND_KINDS):
                continue
            rest = dfs(used | {s}, idx, depth + 1)
            if rest is not None:
                return [idx] + rest
        return None

    sets = dfs(frozenset(), (), 0)
    if sets is None:
        return None
    return witness_from_index_sets(arr, sets, "ind_flag" if ind else "flag")


def _root_level(h, alpha):
    """If h is the coned root-level hyperplane alpha = j z, return j."""
    n = len(alpha)
    base, z = h.normal[:n], h.normal[n]
    if h.offset != 0:
        return None
    from math import gcd

    g = 0
    for v in alpha:
        g = gcd(g, v)
    prim = tuple(v // g for v in alpha)
    lead = next((v for v in prim if v), 0)
    if lead < 0:
        prim = tuple(-v for v in prim)
    if base == prim:
        return -z
    if base == tuple(-v for v in prim):
        return z
    return None


def clear_memos() -> None:
    _FV_MEMO.clear()
    _IND_MEMO.clear()
    _FLAG_MEMO.clear()
