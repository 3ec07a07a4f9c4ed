"""Deformed Weyl families: extended Shi / Catalan / ideal-Shi arrangements
and the coordinate-display families (type-B/C/D Catalan variants, their
interval generalizations, and the Shi/Catalan origin families).

Constructors emit the affine arrangements exactly as displayed, in ambient
coordinates, un-essentialized; expected cone exponents carry a provenance
tag and conjectured values are never used as freeness certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Arrangement, arrangement, cone, normalize
from .errors import InputError
from .roots import OrderIdeal, RootSystem, cached_root_system

WEYL_EXPONENTS = {
    "A": lambda n: tuple(range(1, n + 1)),
    "B": lambda n: tuple(range(1, 2 * n, 2)),
    "C": lambda n: tuple(range(1, 2 * n, 2)),
    "D": lambda n: tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1])),
    "G2": lambda n: (1, 5),
    "F4": lambda n: (1, 5, 7, 11),
    "E6": lambda n: (1, 4, 5, 7, 8, 11),
    "E7": lambda n: (1, 5, 7, 9, 11, 13, 17),
    "E8": lambda n: (1, 7, 11, 13, 17, 19, 23, 29),
}

FAMILIES = (
    "ext_shi",
    "ext_cat",
    "ideal_shi",
    "shi_minus_simples",
    "bfam",
    "cfam",
    "ctilde",
    "dfam",
    "ffam",
    "hfam",
    "efam",
)


@dataclass(frozen=True)
class DeformationSpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown deformation family {self.family!r}")

    def get(self, key, default=None):
        return self.params.get(key, default)


def weyl_classical_exponents(phi: RootSystem) -> tuple[int, ...]:
    head = phi.label if phi.label in ("G2", "F4", "E6", "E7", "E8") else phi.label[0]
    return WEYL_EXPONENTS[head](phi.rank)


def deformed_weyl(phi: RootSystem, lo: int, hi: int) -> Arrangement:
    """All hyperplanes alpha = j for positive roots alpha and j in [lo, hi]."""
    if lo > hi:
        return Arrangement(phi.ambient, ())
    hyps = []
    for beta in phi.positive_roots:
        for j in range(lo, hi + 1):
            hyps.append((beta, j))
    return arrangement(phi.ambient, hyps)


def _phi_of(spec: DeformationSpec) -> RootSystem:
    base = spec.get("base")
    if base is None:
        raise InputError(f"family {spec.family} needs a root-system base")
    return base if isinstance(base, RootSystem) else cached_root_system(str(base))


def _interval_rows(l, pairs_with_offsets):
    out = []
    for normal, offsets in pairs_with_offsets:
        for c in offsets:
            out.append((tuple(normal), c))
    return out


def _e(l, i, v=1):
    row = [0] * l
    row[i] = v
    return row


def _pm_rows(l, i, j, lo, hi, minus_only=False):
    rows = []
    for c in range(lo, hi + 1):
        d = _e(l, i)
        d[j] = -1
        rows.append((tuple(d), c))
        if not minus_only:
            s = _e(l, i)
            s[j] = 1
            rows.append((tuple(s), c))
    return rows


def build(spec: DeformationSpec) -> Arrangement:
    """Affine arrangement of the family display; duplicate forms are merged
    silently (build_stats reports whether any merging occurred)."""
    return arrangement(*_display_rows(spec))


def build_stats(spec: DeformationSpec) -> dict:
    """Counts of displayed versus distinct hyperplanes; families with
    overlapping intervals at small parameters can collide, and this records
    whether the duplicate-free loader had to merge."""
    dim, rows = _display_rows(spec)
    arr = arrangement(dim, rows)
    canon = [normalize(n, c) for n, c in rows]
    return {
        "displayed": len(rows),
        "distinct": len(arr),
        "dedup_occurred": len(set(canon)) != len(canon),
    }


def _display_rows(spec: DeformationSpec):
    """(dimension, raw (normal, offset) list) exactly as displayed."""
    f = spec.family
    if f == "ext_shi":
        m = int(spec.get("m", 1))
        if m < 1:
            raise InputError("extended Shi needs m >= 1")
        phi = _phi_of(spec)
        return phi.ambient, [(b, j) for b in phi.positive_roots for j in range(1 - m, m + 1)]
    if f == "ext_cat":
        m = int(spec.get("m", 1))
        if m < 0:
            raise InputError("extended Catalan needs m >= 0")
        phi = _phi_of(spec)
        return phi.ambient, [(b, j) for b in phi.positive_roots for j in range(-m, m + 1)]
    if f == "ideal_shi":
        m = int(spec.get("m", 1))
        phi = _phi_of(spec)
        ideal = spec.get("ideal")
        if not isinstance(ideal, OrderIdeal):
            ideal = OrderIdeal(frozenset(int(i) for i in ideal))
        rows = [(b, j) for b in phi.positive_roots for j in range(1 - m, m + 1)]
        rows += [(phi.positive_roots[i], -m) for i in sorted(ideal.roots)]
        return phi.ambient, rows
    if f == "shi_minus_simples":
        m = int(spec.get("m", 1))
        phi = _phi_of(spec)
        sigma = {int(i) for i in spec.get("simples", ())}
        simple_idx = phi.simple_indices()
        for i in sigma:
            if i not in simple_idx:
                raise InputError("shi_minus_simples removes level-m hyperplanes of simple roots only")
        drop = {normalize(phi.positive_roots[i], m) for i in sigma}
        shi = deformed_weyl(phi, 1 - m, m)
        return phi.ambient, [(h.normal, h.offset) for h in shi if h not in drop]

    l = int(spec.get("l", 0))
    if l < 1:
        raise InputError("coordinate families need l >= 1")
    rows = []
    if f in ("bfam", "cfam"):
        p, m, a = int(spec.get("p", 0)), int(spec.get("m", 0)), int(spec.get("a", 0))
        if not (0 <= p <= l) or m < 0 or a < 0:
            raise InputError("need 0 <= p <= l and m, a >= 0")
        scale = 1 if f == "bfam" else 2
        for i in range(l):
            for j in range(i + 1, l):
                rows += _pm_rows(l, i, j, -a, a)
        for i in range(l):
            lo = (1 - m) if i < p else -m
            rows += [(tuple(_e(l, i, scale)), c) for c in range(lo, m + 1)]
        return l, rows
    if f == "ctilde":
        m, a, n = int(spec.get("m", 0)), int(spec.get("a", 0)), int(spec.get("n", 0))
        if m < 0 or a < 0 or n < 0:
            raise InputError("need m, a, n >= 0")
        levels = set(range(-m, m + 1))
        for s in range(1, n * a + 1):
            levels |= {m + 2 * s, -(m + 2 * s)}
        for i in range(l):
            for j in range(i + 1, l):
                rows += _pm_rows(l, i, j, -a, a)
        for i in range(l):
            rows += [(tuple(_e(l, i, 2)), c) for c in sorted(levels)]
        return l, rows
    if f == "dfam":
        r, a = int(spec.get("r", 0)), int(spec.get("a", 0))
        if not (0 <= r <= l) or a < 0:
            raise InputError("need 0 <= r <= l and a >= 0")
        for i in range(r):
            rows += [(tuple(_e(l, i, 2)), c) for c in range(-2 * a, 1)]
        for i in range(r):
            for j in range(i + 1, r):
                s = _e(l, i)
                s[j] = 1
                rows += [(tuple(s), c) for c in range(-3 * a, a + 1)]
                d = _e(l, i)
                d[j] = -1
                rows += [(tuple(d), c) for c in range(-2 * a, 2 * a + 1)]
        for i in range(r):
            for j in range(r, l):
                rows += _pm_rows(l, i, j, -2 * a, a)
        for i in range(r, l):
            for j in range(i + 1, l):
                rows += _pm_rows(l, i, j, -a, a)
        return l, rows
    if f == "ffam":
        a, n = int(spec.get("a", 0)), int(spec.get("n", 0))
        if a < 0 or n < 0:
            raise InputError("need a, n >= 0")
        rows += [(tuple(_e(l, 0, 2)), c) for c in range(-(4 * n + 3) * a, a + 1)]
        for i in range(1, l):
            rows += [(tuple(_e(l, i, 2)), c) for c in range(-a, a + 1)]
        for i in range(1, l):
            for j in range(i + 1, l):
                rows += _pm_rows(l, i, j, -2 * a, 2 * a)
        for i in range(1, l):
            rows += _pm_rows(l, 0, i, -(2 * n + 3) * a, 2 * a)
        return l, rows
    if f == "hfam":
        p, m, a, n = (int(spec.get(k, 0)) for k in ("p", "m", "a", "n"))
        if not (0 <= p <= l) or m < 0 or a < 1 or n < 1:
            raise InputError("need 0 <= p <= l, m >= 0, a >= 1, n >= 1")
        for i in range(l):
            for j in range(i + 1, l):
                d = _e(l, i)
                d[j] = -1
                rows += [(tuple(d), c) for c in range(1 - a, a + 1)]
        for i in range(l):
            lo = -m if i < p else -m - 1
            rows += [(tuple(_e(l, i)), c) for c in range(lo, n * a)]
        return l, rows
    if f == "efam":
        p, n, a, m = (int(spec.get(k, 0)) for k in ("p", "n", "a", "m"))
        if not (0 <= p <= l) or m < 0 or a < 0 or n < 1:
            raise InputError("need 0 <= p <= l, m >= 0, a >= 0, n >= 1")
        for i in range(l):
            for j in range(i + 1, l):
                d = _e(l, i)
                d[j] = -1
                rows += [(tuple(d), c) for c in range(-a, a + 1)]
        for i in range(l):
            hi = m if i < p else m + 1
            rows += [(tuple(_e(l, i)), c) for c in range(-n * a, hi + 1)]
        return l, rows
    raise InputError(f"unhandled family {f}")


def _sorted(vals):
    return tuple(sorted(vals))


def expected_exponents(spec: DeformationSpec):
    """Closed-form cone exponents (ambient-padded) with provenance
    'theorem' or 'conjecture'; None when no closed form is on record."""
    f = spec.family
    if f in ("ext_shi", "ext_cat", "shi_minus_simples"):
        phi = _phi_of(spec)
        m = int(spec.get("m", 1))
        h = phi.coxeter_number
        pad = (0,) * (phi.ambient - phi.rank)
        if f == "ext_shi":
            return _sorted(pad + (1,) + (m * h,) * phi.rank), "theorem"
        if f == "ext_cat":
            e = weyl_classical_exponents(phi)
            return _sorted(pad + (1,) + tuple(m * h + ei for ei in e)), "theorem"
        k = len(tuple(spec.get("simples", ())))
        return (
            _sorted(pad + (1,) + (m * h - 1,) * k + (m * h,) * (phi.rank - k)),
            "theorem",
        )
    if f == "ideal_shi":
        return None
    l = int(spec.get("l", 0))
    if f in ("bfam", "cfam"):
        p, m, a = int(spec.get("p", 0)), int(spec.get("m", 0)), int(spec.get("a", 0))
        base = [1, 2 * l - p - 1] + list(range(1, 2 * l - 2, 2))
        shift = 2 * m + 2 * a * l - 2 * a
        return _sorted([base[0]] + [b + shift for b in base[1:]]), "theorem"
    if f == "ctilde":
        m, a, n = int(spec.get("m", 0)), int(spec.get("a", 0)), int(spec.get("n", 0))
        return (
            _sorted([1] + [2 * m + 2 * a * (l + n - 1) + 2 * i - 1 for i in range(1, l + 1)]),
            "theorem",
        )
    if f == "dfam":
        r, a = int(spec.get("r", 0)), int(spec.get("a", 0))
        base = [1, l + r - 1] + list(range(1, 2 * l - 2, 2))
        shift = 2 * a * l + 2 * a * r - 2 * a
        return _sorted([base[0]] + [b + shift for b in base[1:]]), "conjecture"
    if f == "ffam":
        a, n = int(spec.get("a", 0)), int(spec.get("n", 0))
        return (
            _sorted([1] + [4 * a * (l + n) + 2 * i - 1 for i in range(1, l + 1)]),
            "conjecture",
        )
    if f == "hfam":
        p, m, a, n = (int(spec.get(k, 0)) for k in ("p", "m", "a", "n"))
        big = m + a * (l + n - 1)
        return _sorted((1,) + (big,) * p + (big + 1,) * (l - p)), "theorem"
    if f == "efam":
        p, n, a, m = (int(spec.get(k, 0)) for k in ("p", "n", "a", "m"))
        big = m + a * (l + n - 1)
        base = [1, l - p + 1] + list(range(2, l + 1))
        return _sorted([base[0]] + [b + big for b in base[1:]]), "theorem"
    return None


# -- named affine-equivalence moves ------------------------------------------------


def shift_coordinates(arr: Arrangement, shifts) -> Arrangement:
    """Substitute x_i -> x_i + s_i (exact rationals); offsets shift by the
    normal pairing, canonical forms are recomputed."""
    shifts = [Fraction(s) for s in shifts]
    if len(shifts) != arr.dim:
        raise InputError("one shift per coordinate required")
    out = []
    for h in arr.hyperplanes:
        off = Fraction(h.offset) - sum(Fraction(a) * s for a, s in zip(h.normal, shifts))
        out.append((h.normal, off))
    return arrangement(arr.dim, out)


def relabel_coordinates(arr: Arrangement, perm) -> Arrangement:
    """Permute coordinates: new x_i = old x_perm[i]."""
    perm = list(perm)
    out = []
    for h in arr.hyperplanes:
        normal = tuple(h.normal[perm[i]] for i in range(arr.dim))
        out.append((normal, h.offset))
    return arrangement(arr.dim, out)


def negate_coordinates(arr: Arrangement, which) -> Arrangement:
    out = []
    for h in arr.hyperplanes:
        normal = tuple(-v if i in which else v for i, v in enumerate(h.normal))
        out.append((normal, h.offset))
    return arrangement(arr.dim, out)


def same_arrangement(a: Arrangement, b: Arrangement) -> bool:
    return a.canonical_key() == b.canonical_key()


# -- explicit flag witnesses --------------------------------------------------------


def bc_witness_rows(spec: DeformationSpec):
    """Chain hyperplanes (deepest-first flat = all of them) for the cones of
    the type-B/C interval families at p = 0: x_l = -m z (2x_l for type C)
    and x_i - x_{i+1} = -a z."""
    if spec.family not in ("bfam", "cfam") or int(spec.get("p", 0)) != 0:
        raise InputError("witness rows exist for bfam/cfam at p = 0")
    l, m, a = int(spec.get("l", 0)), int(spec.get("m", 0)), int(spec.get("a", 0))
    scale = 1 if spec.family == "bfam" else 2
    width_dim = l + 1  # cone ambient
    rows = []
    last = [0] * width_dim
    last[l - 1] = scale
    last[l] = m
    rows.append(tuple(last) + (0,))
    for i in range(l - 2, -1, -1):
        r = [0] * width_dim
        r[i] = 1
        r[i + 1] = -1
        r[l] = a
        rows.append(tuple(r) + (0,))
    # rows[0] is x_l = -mz; the flag flats are suffix intersections
    return rows


def shi_simple_root_rows(spec: DeformationSpec):
    """Level-m simple-root hyperplanes of the coned extended Shi
    arrangement; suffix intersections form a full simple-root witness."""
    if spec.family != "ext_shi":
        raise InputError("simple-root rows are for ext_shi")
    phi = _phi_of(spec)
    m = int(spec.get("m", 1))
    rows = []
    for i in phi.simple_indices():
        beta = phi.positive_roots[i]
        rows.append(beta + (-m, 0))
    return rows


def hfam_witness_rows(l: int, p: int, m: int, a: int, n: int):
    """Chain hyperplanes (first chosen first) realizing the flag-accuracy
    of the coned interval-Shi origin family, by the restriction recursion
    x_{p+1} = -(m+1) z  ->  (l-1, p, m+a, a, n)."""
    if not (0 <= p <= l) or m < 0 or a < 1 or n < 1:
        raise InputError("need 0 <= p <= l, m >= 0, a >= 1, n >= 1")
    amb = l + 1
    coords = list(range(l))
    rows = []
    while coords:
        cur = len(coords)
        if cur == 1:
            c = coords[0]
            r = [0] * amb
            r[c] = 1
            r[amb - 1] = m + 1 if p == 0 else m
            rows.append(tuple(r) + (0,))
            break
        if p == cur:
            if m > 0:
                p, m = 0, m - 1
                continue
            c = coords[-1]
            r = [0] * amb
            r[c] = 1
            r[amb - 1] = -(n * a - 1)
            rows.append(tuple(r) + (0,))
            coords.pop()
            p, m, n = cur - 1, 0, n + 1
            continue
        c = coords[p]
        r = [0] * amb
        r[c] = 1
        r[amb - 1] = m + 1
        rows.append(tuple(r) + (0,))
        coords.pop(p)
        m = m + a
    return rows


def efam_witness_rows(l: int, p: int, n: int, a: int, m: int):
    """Chain hyperplanes realizing the flag-accuracy of the coned Catalan
    origin family, via x_1 = -n a z  ->  (l-1, p-1, n+1, a, m)."""
    if not (0 <= p <= l) or m < 0 or a < 0 or n < 1:
        raise InputError("need 0 <= p <= l, m >= 0, a >= 0, n >= 1")
    amb = l + 1
    coords = list(range(l))
    rows = []
    while coords:
        if p == 0:
            p, m = len(coords), m + 1
            continue
        c = coords[0]
        r = [0] * amb
        r[c] = 1
        r[amb - 1] = n * a
        rows.append(tuple(r) + (0,))
        coords.pop(0)
        if len(coords) == 0:
            break
        p, n = p - 1, n + 1
    return rows


def cone_of(spec: DeformationSpec) -> Arrangement:
    return cone(build(spec))


def validate(spec: DeformationSpec, node_budget: int = 50_000, max_flats=None, check_accuracy: bool = True) -> dict:
    """Build, cone, and compare chi roots against the closed form; then run
    the freeness oracle and, where a witness construction is known, an
    explicit flag-accuracy check.  Conjectured formulas report
    confirmed/refuted at this size and never feed a certificate."""
    from .accuracy import check_witness, flag_accuracy, simple_root_witness, witness_from_chain_rows
    from .freeness import free_verdict
    from .lattice import char_poly

    arr = build(spec)
    ca = cone(arr)
    stats = build_stats(spec)
    report: dict = {
        "family": spec.family,
        "params": {k: (v if isinstance(v, (int, str)) else str(v)) for k, v in spec.params.items()
                   if k != "base" or isinstance(v, str)},
        "hyperplanes": len(arr),
        "displayed_hyperplanes": stats["displayed"],
        "dedup_occurred": stats["dedup_occurred"],
    }
    cp = char_poly(ca, max_flats=max_flats)
    roots = tuple(sorted(cp.roots_over_Z)) if cp.roots_over_Z is not None else None
    report["cone_chi_roots"] = list(roots) if roots else None
    expected = expected_exponents(spec)
    if expected is not None:
        exps, provenance = expected
        report["expected_exponents"] = list(exps)
        report["provenance"] = provenance
        report["exponents_match"] = roots == exps
        if provenance == "conjecture":
            report["conjecture_status"] = "confirmed" if roots == exps else "refuted"
    v = free_verdict(ca, "auto", node_budget)
    report["freeness"] = v.status
    if v.certificate:
        report["freeness_certificate"] = v.certificate.kind
    if not check_accuracy:
        return report
    witness = None
    how = None
    try:
        if spec.family in ("bfam", "cfam") and int(spec.get("p", 0)) == 0:
            witness = witness_from_chain_rows(ca, bc_witness_rows(spec), "flag")
            how = "explicit rows"
        elif spec.family == "ext_shi":
            rows = shi_simple_root_rows(spec)
            witness = witness_from_chain_rows(ca, rows[::-1], "ind_flag")
            how = "simple-root rows"
        elif spec.family == "hfam":
            p, m, a, n = (int(spec.get(k, 0)) for k in ("p", "m", "a", "n"))
            witness = witness_from_chain_rows(
                ca, hfam_witness_rows(int(spec.get("l")), p, m, a, n), "ind_flag"
            )
            how = "explicit rows"
        elif spec.family == "efam":
            p, n, a, m = (int(spec.get(k, 0)) for k in ("p", "n", "a", "m"))
            witness = witness_from_chain_rows(
                ca, efam_witness_rows(int(spec.get("l")), p, n, a, m), "ind_flag"
            )
            how = "explicit rows"
        elif spec.family == "ext_cat":
            phi = _phi_of(spec)
            witness = simple_root_witness(ca, phi.simple_roots, ind=False)
            how = "simple-root search"
    except InputError as exc:
        report["witness_error"] = str(exc)
    if witness is None and v.status == "free":
        witness = flag_accuracy(ca, node_budget=node_budget)
        how = "generic search"
    if witness is not None:
        ok, msg = check_witness(ca, witness)
        report["flag_accurate"] = ok
        report["witness_via"] = how
        if not ok:
            report["witness_error"] = msg
    else:
        report["flag_accurate"] = None
    return report
