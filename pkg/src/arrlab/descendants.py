"""Shi and Catalan descendant sequences and matrices: closed-form
constructors, the mutation replay that reproduces them, expected exponents,
and the explicit witness constructions.

Vertex order is fixed 0..l-1 (the defining digraphs are the transitive
tournament and the complete / pointed-complete digraphs on an initial
segment); mutation at step k targets vertex l-k inside the induced initial
segment, keeping the isolated tail unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .accuracy import (
    check_witness,
    complete_flag_from_prefix,
    flag_accuracy,
    witness_from_chain_rows,
)
from .core import Arrangement, arrangement, cone
from .deformations import efam_witness_rows, hfam_witness_rows
from .errors import InputError
from .graphs import WeightedDigraph, digraph, digraphic_arrangement, mutate_sink, mutate_source


@dataclass(frozen=True)
class DescendantSpec:
    genealogy: str  # shi | catalan
    l: int
    p: int
    k: int
    m: int = 0
    d: int = 0  # shi only
    c: int = 1  # catalan only
    hat: bool = False  # catalan intermediate stage

    def __post_init__(self):
        if self.genealogy not in ("shi", "catalan"):
            raise InputError("genealogy must be 'shi' or 'catalan'")
        top = self.l - 1 if self.hat else self.l
        if not (1 <= self.k <= top):
            raise InputError(f"need 1 <= k <= {top}")
        if not (0 <= self.p <= self.l):
            raise InputError("need 0 <= p <= l")
        if self.genealogy == "shi":
            if self.m < 0 or self.d < 0:
                raise InputError("shi descendants need m, d >= 0")
        else:
            if self.m < 0 or self.c < 1:
                raise InputError("catalan descendants need m >= 0 and c >= 1")


def descendant_digraph(spec: DescendantSpec) -> WeightedDigraph:
    """The defining vertex-weighted digraph (0-based closed forms)."""
    l, p, k = spec.l, spec.p, spec.k
    head = l - k + 1  # vertices 0..head-1 carry the arcs
    if spec.genealogy == "shi":
        arcs = [(i, j) for i in range(head) for j in range(i + 1, head)]
        weights = []
        for i in range(l):
            m1 = min(l - i, k)
            lo = (1 - m1 - spec.m) if i < p else (-m1 - spec.m)
            weights.append((lo, spec.d))
        return digraph(l, arcs, weights)
    if not spec.hat:
        arcs = [(i, j) for i in range(head) for j in range(head) if i != j]
        weights = []
        for i in range(l):
            m1 = min(l - i, k)
            d_i = spec.m if i < p else spec.m + 1
            weights.append((1 - m1 - spec.c, d_i + m1 - 1))
        return digraph(l, arcs, weights)
    body = l - k  # complete part 0..body-1, pointer vertex body
    arcs = [(i, j) for i in range(body) for j in range(body) if i != j]
    arcs += [(body, i) for i in range(body)]
    weights = []
    for i in range(l):
        d_i = spec.m if i < p else spec.m + 1
        if i < body:
            weights.append((-spec.c - k, d_i + k - 1))
        else:
            back = l - i  # tail offset measured from the last vertex
            weights.append((-spec.c - (back - 1), d_i + back - 1))
    return digraph(l, arcs, weights)


def build_descendant(spec: DescendantSpec) -> Arrangement:
    """Affine arrangement of the descendant, from the closed-form digraph."""
    return digraphic_arrangement(descendant_digraph(spec))


def mutation_replay(spec: DescendantSpec) -> WeightedDigraph:
    """Rebuild the (p, k) cell by mutating the (p, 1) origin step by step:
    sink mutations for the Shi genealogy, alternating sink/source for the
    Catalan genealogy, always at the top of the current induced segment."""
    base = DescendantSpec(spec.genealogy, spec.l, spec.p, 1, spec.m, spec.d, spec.c, False)
    d = descendant_digraph(base)
    l = spec.l
    steps = spec.k - 1
    for s in range(steps):
        v = l - 1 - s  # 0-based vertex l-k inside segment [0..v]
        within = range(v + 1)
        d = mutate_sink(d, v, within)
        if spec.genealogy == "catalan":
            d = mutate_source(d, v, within)
    if spec.genealogy == "catalan" and spec.hat:
        v = l - 1 - steps
        d = mutate_sink(d, v, range(v + 1))
    return d


def descendant_expected_exponents(spec: DescendantSpec) -> tuple[int, ...]:
    """Cone exponents, constant along each row of the descendant matrix."""
    l, p = spec.l, spec.p
    if spec.genealogy == "shi":
        big = l + spec.m + spec.d
        return tuple(sorted((1,) + (big,) * p + (big + 1,) * (l - p)))
    big = spec.m + l + spec.c - 1
    base = [1, l - p + 1] + list(range(2, l + 1))
    return tuple(sorted([base[0]] + [b + big for b in base[1:]]))


def shi_ish(l: int, k: int) -> Arrangement:
    """The interpolation between the braid-translation arrangement (k = 1)
    and its pointed form (k = l): x_i - x_j = 0, x_1 - x_j = i for i < k,
    and x_i - x_j = 1 for k <= i < j (1-based displays, 0-based here)."""
    if not (1 <= k <= l):
        raise InputError("need 1 <= k <= l")
    hyps = []
    for i in range(l):
        for j in range(i + 1, l):
            row = [0] * l
            row[i] = 1
            row[j] = -1
            hyps.append((tuple(row), 0))
    for j in range(1, l):
        for i in range(1, min(j, k - 1) + 1):
            row = [0] * l
            row[0] = 1
            row[j] = -1
            hyps.append((tuple(row), i))
    for i in range(l):
        for j in range(i + 1, l):
            if i + 1 >= k:
                row = [0] * l
                row[i] = 1
                row[j] = -1
                hyps.append((tuple(row), 1))
    return arrangement(l, hyps)


def shi_ish_expected_exponents(l: int) -> tuple[int, ...]:
    return tuple(sorted((0, 1) + (l,) * (l - 1)))


# -- witnesses -----------------------------------------------------------------------


def hfam_witness(l: int, p: int, m: int, a: int, n: int):
    """Cone of the interval-Shi origin family plus a validated ind-flag
    witness built from the restriction recursion."""
    from .deformations import DeformationSpec, cone_of

    ca = cone_of(DeformationSpec("hfam", {"l": l, "p": p, "m": m, "a": a, "n": n}))
    w = witness_from_chain_rows(ca, hfam_witness_rows(l, p, m, a, n), "ind_flag")
    ok, msg = check_witness(ca, w)
    if not ok:
        raise InputError(f"hfam witness failed validation: {msg}")
    return ca, w


def cat_witness(l: int, p: int, n: int, a: int, m: int):
    """Cone of the Catalan origin family plus a validated ind-flag witness."""
    from .deformations import DeformationSpec, cone_of

    ca = cone_of(DeformationSpec("efam", {"l": l, "p": p, "n": n, "a": a, "m": m}))
    w = witness_from_chain_rows(ca, efam_witness_rows(l, p, n, a, m), "ind_flag")
    ok, msg = check_witness(ca, w)
    if not ok:
        raise InputError(f"efam witness failed validation: {msg}")
    return ca, w


def descendant_witness(spec: DescendantSpec):
    """Validated ind-flag witness for the cone of a descendant cell.

    Shi cells and Catalan origins use the closed-form chains; deeper
    Catalan cells use the explicit prefix x_1 = (1-c-k) z,
    x_{j-1} - x_j = z completed by search, with a full search fallback."""
    arr = cone(build_descendant(spec))
    l, p, k = spec.l, spec.p, spec.k
    if spec.genealogy == "shi":
        if k == 1:
            rows = hfam_witness_rows(l, p, spec.m, 1, spec.d + 1)
            w = witness_from_chain_rows(arr, rows, "ind_flag")
        else:
            w = flag_accuracy(arr, ind=True)
    elif k == 1 and not spec.hat:
        rows = efam_witness_rows(l, p, spec.c, 1, spec.m)
        w = witness_from_chain_rows(arr, rows, "ind_flag")
    else:
        amb = l + 1
        prefix = []
        r0 = [0] * (amb + 1)
        r0[0] = 1
        r0[l] = -(1 - spec.c - k)
        prefix.append(tuple(r0))
        for j in range(1, l - k):
            row = [0] * (amb + 1)
            row[j - 1] = 1
            row[j] = -1
            row[l] = -1
            prefix.append(tuple(row))
        try:
            w = complete_flag_from_prefix(arr, prefix, ind=True)
        except InputError:
            w = None
        if w is None:
            w = flag_accuracy(arr, ind=True)
    if w is None:
        return arr, None
    ok, msg = check_witness(arr, w)
    if not ok:
        raise InputError(f"descendant witness failed validation: {msg}")
    return arr, w
