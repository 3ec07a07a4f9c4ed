"""Combinatorial freeness certification: supersolvable, inductive,
recursive, divisional, and MAT certificates, with replayable derivations.

Verdicts are deliberately three-valued.  "not free" is only ever emitted
from a sound necessary condition (characteristic polynomial fails to split
over Z, or a caller-supplied non-chordal graph); search exhaustion yields
"unknown", never a freeness claim either way.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from . import polynomials as poly
from .core import (
    Arrangement,
    arrangement,
    essentialize,
    flat_of,
    restrict,
    restrict_traced,
)
from .errors import InputError
from .lattice import char_poly, modular_coatoms, supersolvable

FREE = "free"
NOT_FREE = "not_free"
UNKNOWN = "unknown"

DEFAULT_NODE_BUDGET = 200_000


def sorted_exponents(values) -> tuple[int, ...]:
    return tuple(sorted(values))


@dataclass(frozen=True)
class FreenessCertificate:
    kind: str  # supersolvable | inductive | recursive | divisional | mat
    exponents: tuple[int, ...]
    derivation: dict

    def to_json(self) -> dict:
        return {
            "schema": "arrlab/1",
            "kind": self.kind,
            "exponents": list(self.exponents),
            "derivation": self.derivation,
        }


@dataclass(frozen=True)
class FreenessVerdict:
    status: str  # free | not_free | unknown
    certificate: FreenessCertificate | None = None
    reason: str = ""

    @property
    def is_free(self) -> bool:
        return self.status == FREE

    def exponents(self) -> tuple[int, ...] | None:
        return self.certificate.exponents if self.certificate else None


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n: int):
        self.left = n

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0


def _require_central(arr: Arrangement) -> None:
    if not arr.is_central:
        raise InputError("freeness certification requires a central arrangement")


def _roots_of(arr: Arrangement):
    cp = char_poly(arr)
    return None if cp.roots_over_Z is None else sorted_exponents(cp.roots_over_Z)


def _pad(coeffs, dim):
    return tuple(coeffs) + (0,) * (dim + 1 - len(coeffs))


def _multiset_minus(big, small):
    """big minus small as multisets, or None if small is not contained."""
    out = list(big)
    for v in small:
        try:
            out.remove(v)
        except ValueError:
            return None
    return tuple(out)


# -- supersolvable --------------------------------------------------------------


def supersolvable_verdict(arr: Arrangement) -> FreenessVerdict:
    _require_central(arr)
    chain = supersolvable(arr)
    if chain is None:
        return FreenessVerdict(UNKNOWN, reason="no M-chain of modular coatoms found")
    cert = FreenessCertificate(
        "supersolvable",
        sorted_exponents(chain.exponents),
        {
            "localizations": [
                sorted(list(arr.hyperplanes[i].row) for i in step)
                for step in chain.localizations
            ]
        },
    )
    return FreenessVerdict(FREE, cert)


# -- inductive freeness ----------------------------------------------------------

# memo/derivation stores are global so certificates assembled later still
# close over every referenced subderivation (keys are canonical forms of
# essentialized arrangements, stable across calls)
_IF_MEMO: dict = {}
_IF_NODES: dict = {}


def inductively_free(arr: Arrangement, node_budget: int = DEFAULT_NODE_BUDGET) -> FreenessVerdict:
    """Memoized addition-deletion search for the inductively free class.

    Deletion candidates are tried smallest-restriction first, and the exact
    exponent bookkeeping of the addition-deletion triple is verified on
    characteristic polynomials before recursing.
    """
    _require_central(arr)
    budget = _Budget(node_budget)
    status = _if_search(arr, budget)
    if status is True:
        roots = _roots_of(arr)
        cert = FreenessCertificate("inductive", roots, _if_cert_derivation(arr))
        return FreenessVerdict(FREE, cert)
    if status is False:
        if _roots_of(arr) is None:
            return FreenessVerdict(
                NOT_FREE, reason="characteristic polynomial does not split over Z"
            )
        return FreenessVerdict(UNKNOWN, reason="exhausted: not inductively free")
    return FreenessVerdict(UNKNOWN, reason="node budget exhausted")


def _if_search(arr: Arrangement, budget: _Budget):
    """True / False (definite) / None (budget ran out).  Works on the
    essentialization; inductive freeness is invariant under it."""
    ess = essentialize(arr)
    key = ess.canonical_key()
    if key in _IF_MEMO:
        return _IF_MEMO[key]
    if not budget.spend():
        return None
    if len(ess) == 0:
        _IF_MEMO[key] = True
        _IF_NODES[key] = {"dim": ess.dim, "rows": [], "exponents": []}
        return True
    roots = _roots_of(ess)
    if roots is None:
        _IF_MEMO[key] = False
        return False
    order = []
    for i in range(len(ess)):
        rest, _ = restrict_traced(ess, flat_of(ess, [i]))
        order.append((len(rest), i, rest))
    order.sort(key=lambda t: (t[0], t[1]))
    exhausted = False
    for _, i, rest in order:
        rr = _roots_of(rest)
        if rr is None:
            continue
        # rest lives in dimension ess.dim - 1; its chi roots already carry
        # any corank zeros, so compare multisets directly
        diff = _multiset_minus(roots, rr)
        if diff is None or len(diff) != 1:
            continue
        e = diff[0]
        if e < 1:
            continue
        deleted = ess.delete(i)
        del_roots = sorted_exponents(rr + (e - 1,))
        if char_poly(deleted).coeffs != _pad(poly.from_roots(del_roots), ess.dim):
            continue
        s1 = _if_search(rest, budget)
        if s1 is None:
            exhausted = True
            continue
        if s1 is False:
            continue
        s2 = _if_search(deleted, budget)
        if s2 is None:
            exhausted = True
            continue
        if s2 is False:
            continue
        _IF_MEMO[key] = True
        _IF_NODES[key] = {
            "dim": ess.dim,
            "rows": [list(h.row) for h in ess.hyperplanes],
            "exponents": list(roots),
            "hyperplane": list(ess.hyperplanes[i].row),
            "restriction": essentialize(rest).canonical_key(),
            "deletion": essentialize(deleted).canonical_key(),
        }
        return True
    if exhausted:
        return None
    _IF_MEMO[key] = False
    return False


def _if_cert_derivation(arr: Arrangement) -> dict:
    """Flatten the reachable derivation DAG into a standalone JSON dict."""
    root = essentialize(arr).canonical_key()
    ids = {}
    order = []

    def visit(key):
        if key in ids:
            return ids[key]
        ids[key] = f"n{len(ids)}"
        node = _IF_NODES[key]
        order.append(key)
        if node["rows"]:
            visit(node["restriction"])
            visit(node["deletion"])
        return ids[key]

    visit(root)
    nodes = {}
    for key in order:
        node = dict(_IF_NODES[key])
        if node["rows"]:
            node["restriction"] = ids[node["restriction"]]
            node["deletion"] = ids[node["deletion"]]
        nodes[ids[key]] = node
    return {"root": ids[root], "nodes": nodes}


# -- recursive freeness ----------------------------------------------------------


def recursively_free(
    arr: Arrangement,
    pool: tuple | list = (),
    node_budget: int = 20_000,
) -> FreenessVerdict:
    """Bounded bidirectional search for the recursively free class.

    Deletion moves mirror the inductive search; addition moves draw from
    ``pool`` (hyperplanes or rows), since unrestricted addition is an
    infinite search.  Best effort: in-progress states count as failures for
    their callers, so a negative answer here is only "not found", and the
    verdict for a split characteristic polynomial stays Unknown.
    """
    _require_central(arr)
    from .core import normalize

    pool_hs = []
    for p in pool:
        h = p if hasattr(p, "row") else normalize(p[:-1], p[-1])
        if h.dim != arr.dim:
            raise InputError("pool hyperplane dimension mismatch")
        if h not in pool_hs:
            pool_hs.append(h)
    budget = _Budget(node_budget)
    seen: dict = {}
    trace: list = []

    def search(a: Arrangement) -> bool | None:
        key = essentialize(a).canonical_key()
        if key in seen:
            return seen[key]
        if not budget.spend():
            return None
        if len(a) == 0:
            seen[key] = True
            return True
        roots = _roots_of(a)
        if roots is None:
            seen[key] = False
            return False
        seen[key] = False  # in-progress guard; flipped on success
        for i in range(len(a)):
            rest, _ = restrict_traced(a, flat_of(a, [i]))
            rr = _roots_of(rest)
            if rr is None:
                continue
            diff = _multiset_minus(roots, rr)
            if diff is None or len(diff) != 1 or diff[0] < 1:
                continue
            deleted = a.delete(i)
            del_roots = sorted_exponents(rr + (diff[0] - 1,))
            if char_poly(deleted).coeffs != _pad(poly.from_roots(del_roots), a.dim):
                continue
            if search(deleted) and search(rest):
                seen[key] = True
                trace.append(
                    {"via": "deletion", "hyperplane": list(a.hyperplanes[i].row)}
                )
                return True
        for h in pool_hs:
            if h in a.hyperplanes:
                continue
            b = Arrangement(a.dim, a.hyperplanes + (h,))
            rb = _roots_of(b)
            if rb is None:
                continue
            rest, _ = restrict_traced(b, flat_of(b, [len(b) - 1]))
            rr = _roots_of(rest)
            if rr is None:
                continue
            diff = _multiset_minus(rb, rr)
            if diff is None or len(diff) != 1:
                continue
            if _multiset_minus(roots, rr) is None:
                continue  # clause (iii) needs exp(A'') inside exp(A)
            if search(b) and search(rest):
                seen[key] = True
                trace.append({"via": "addition", "hyperplane": list(h.row)})
                return True
        return False if budget.left >= 0 else None

    res = search(arr)
    if res:
        cert = FreenessCertificate("recursive", _roots_of(arr), {"trace": trace[::-1]})
        return FreenessVerdict(FREE, cert)
    if _roots_of(arr) is None:
        return FreenessVerdict(NOT_FREE, reason="characteristic polynomial does not split over Z")
    if res is None or budget.left < 0:
        return FreenessVerdict(UNKNOWN, reason="node budget exhausted")
    return FreenessVerdict(UNKNOWN, reason="not found within the supplied addition pool")


# -- divisional freeness ---------------------------------------------------------

_DIV_MEMO: dict = {}  # canonical key -> chosen hyperplane row | None


def divisionally_free(arr: Arrangement) -> FreenessVerdict:
    """DFS for a divisional flag: a full dimension-graded flag of flats
    along which restriction characteristic polynomials divide exactly."""
    _require_central(arr)
    ess = essentialize(arr)
    flag = _div_flag_sets(ess)
    if flag is None:
        if _roots_of(arr) is None:
            return FreenessVerdict(
                NOT_FREE, reason="characteristic polynomial does not split over Z"
            )
        return FreenessVerdict(UNKNOWN, reason="exhausted: no divisional flag")
    roots = _roots_of(arr)
    chis = [list(char_poly(restrict(ess, flat_of(ess, s))).coeffs) for s in flag]
    cert = FreenessCertificate(
        "divisional",
        roots,
        {
            "essential_flag": [
                sorted(list(ess.hyperplanes[i].row) for i in s) for s in flag
            ],
            "restriction_chis": chis,
            "chi": list(char_poly(ess).coeffs),
        },
    )
    return FreenessVerdict(FREE, cert)


def _div_choice(ess: Arrangement):
    """First hyperplane row (memoized) opening a divisional chain, or None."""
    key = ess.canonical_key()
    if key in _DIV_MEMO:
        return _DIV_MEMO[key]
    found = None
    if char_poly(ess).roots_over_Z is not None:
        cp = char_poly(ess)
        for i, h in enumerate(ess.hyperplanes):
            rest, _ = restrict_traced(ess, flat_of(ess, [i]))
            if not poly.divides(char_poly(rest).coeffs, cp.coeffs):
                continue
            if rest.dim == 0 or _div_choice(rest) is not None:
                found = h.row
                break
    _DIV_MEMO[key] = found
    return found


def _div_flag_sets(ess: Arrangement):
    """Cumulative hyperplane-index sets (into ess) of a divisional flag,
    shallowest first (dimension ess.dim - 1 down to 0), or None."""
    if ess.dim == 0:
        return []
    sets = []
    acc: list[int] = []
    current = ess
    to_root = list(range(len(ess)))
    while current.dim > 0:
        row = _div_choice(current)
        if row is None:
            return None
        i = [h.row for h in current.hyperplanes].index(row)
        acc.append(to_root[i])
        sets.append(tuple(sorted(set(acc))))
        rest, origins = restrict_traced(current, flat_of(current, [i]))
        to_root = [to_root[o[0]] for o in origins]
        current = rest
    return sets


# -- MAT --------------------------------------------------------------------------


def verify_mat_partition(arr: Arrangement, pi) -> tuple[bool, tuple[int, ...] | None, str]:
    """Check the three MAT-step conditions for an ordered partition of the
    hyperplane indices; on success return the dual-partition exponents
    e_i = #{k : |pi_k| >= dim - i + 1}."""
    _require_central(arr)
    n = len(arr)
    covered = [i for block in pi for i in block]
    if sorted(covered) != list(range(n)):
        raise InputError("ordered partition must cover each hyperplane index exactly once")
    width = arr.dim + 1
    rows = arr.rows
    acc: list[int] = []
    for k, block in enumerate(pi):
        block = list(block)
        if not block:
            return False, None, f"block {k + 1} is empty"
        ok, lin = kernels.rref([rows[i] for i in block], width)
        if len(lin) != len(block):
            return False, None, f"block {k + 1} is linearly dependent"
        xmat = lin
        for j in acc:
            if kernels.row_in_span(xmat, rows[j], width):
                return False, None, f"block {k + 1} intersection lies inside hyperplane {j}"
        for i in block:
            traces = set()
            for j in acc:
                _, tmat = kernels.rref((rows[i], rows[j]), width)
                traces.add(tmat)
            if len(acc) - len(traces) != k:
                return False, None, (
                    f"restriction count fails for hyperplane {i} in block {k + 1}: "
                    f"got {len(acc) - len(traces)}, need {k}"
                )
        acc.extend(block)
    sizes = [len(b) for b in pi]
    ell = arr.dim
    exps = tuple(sum(1 for s in sizes if s >= ell - i + 1) for i in range(1, ell + 1))
    return True, sorted_exponents(exps), ""


@dataclass(frozen=True)
class MatSearchResult:
    status: str  # found | none | unknown
    partition: tuple[tuple[int, ...], ...] | None = None
    reason: str = ""


class _BudgetStop(Exception):
    pass


def mat_free_search(
    arr: Arrangement,
    node_budget: int = DEFAULT_NODE_BUDGET,
    graph=None,
) -> MatSearchResult:
    """Search for an MAT-partition.

    The block-size multiset of any MAT-partition is forced: it is the
    conjugate of the exponent multiset (necessarily the chi roots), sorted
    descending with a strictly larger first block.  Blocks are chosen among
    hyperplanes passing the per-hyperplane restriction-count condition with
    incremental rank pruning and failure memoization.

    For graphic inputs pass ``graph``: non-strong-chordality settles the
    negative without search.
    """
    _require_central(arr)
    if graph is not None:
        from .graphs import is_strongly_chordal

        if not is_strongly_chordal(graph):
            return MatSearchResult("none", reason="graph is not strongly chordal")
    if len(arr) == 0:
        return MatSearchResult("found", ())
    roots = _roots_of(arr)
    if roots is None:
        return MatSearchResult("none", reason="characteristic polynomial does not split over Z")
    if roots[0] < 0:
        return MatSearchResult("none", reason="negative chi root: not free")
    emax = roots[-1]
    sizes = [sum(1 for e in roots if e >= k) for k in range(1, emax + 1)]
    if len(sizes) >= 2 and sizes[0] == sizes[1]:
        return MatSearchResult(
            "none", reason="conjugate exponent partition lacks a strictly largest first block"
        )
    width = arr.dim + 1
    rows = arr.rows
    n = len(rows)
    pair_mat = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                _, m = kernels.rref((rows[i], rows[j]), width)
                pair_mat[(i, j)] = m
    budget = _Budget(node_budget)
    failed: set = set()

    def dfs(k: int, inside: frozenset):
        if len(inside) == n:
            return []
        if inside in failed:
            return None
        if not budget.spend():
            raise _BudgetStop
        size = sizes[k]
        cands = [
            i
            for i in range(n)
            if i not in inside
            and len(inside) - len({pair_mat[(i, j)] for j in inside}) == k
        ]
        if len(cands) >= size:
            for combo in _independent_subsets(cands, size, rows, width):
                _, xmat = kernels.rref([rows[i] for i in combo], width)
                if any(kernels.row_in_span(xmat, rows[j], width) for j in inside):
                    continue
                res = dfs(k + 1, inside | frozenset(combo))
                if res is not None:
                    return [tuple(combo)] + res
        failed.add(inside)
        return None

    try:
        result = dfs(0, frozenset())
    except _BudgetStop:
        return MatSearchResult("unknown", reason="node budget exhausted")
    if result is None:
        return MatSearchResult("none", reason="exhaustive search found no MAT-partition")
    return MatSearchResult("found", tuple(result))


def _independent_subsets(cands, size, rows, width):
    """Size-subsets of cands with linearly independent normals, in
    lexicographic order, pruned by prefix rank."""

    def grow(prefix, start, mat):
        if len(prefix) == size:
            yield tuple(prefix)
            return
        if len(cands) - start < size - len(prefix):
            return
        for pos in range(start, len(cands)):
            i = cands[pos]
            if kernels.row_in_span(mat, rows[i], width):
                continue
            _, newmat = kernels.rref(mat + (rows[i],), width)
            prefix.append(i)
            yield from grow(prefix, pos + 1, newmat)
            prefix.pop()

    yield from grow([], 0, ())


# -- aggregation -------------------------------------------------------------------


@dataclass(frozen=True)
class ExponentsReport:
    exponents: tuple[int, ...]
    provenance: str  # certificate kind or "uncertified-chi-roots"
    certificate: FreenessCertificate | None


def exponents(
    arr: Arrangement,
    node_budget: int = DEFAULT_NODE_BUDGET,
    graph=None,
) -> ExponentsReport | None:
    """Exponents from the strongest available certificate; chi roots flagged
    uncertified when no certificate exists; None when certainly not free."""
    verdict = free_verdict(arr, method="auto", node_budget=node_budget, graph=graph)
    if verdict.status == FREE:
        return ExponentsReport(
            verdict.certificate.exponents, verdict.certificate.kind, verdict.certificate
        )
    if verdict.status == NOT_FREE:
        return None
    roots = _roots_of(arr)
    if roots is not None:
        return ExponentsReport(roots, "uncertified-chi-roots", None)
    return None


def free_verdict(
    arr: Arrangement,
    method: str = "auto",
    node_budget: int = DEFAULT_NODE_BUDGET,
    graph=None,
) -> FreenessVerdict:
    """Certification front end; method is one of supersolvable | inductive |
    divisional | mat | recursive | auto."""
    _require_central(arr)
    if graph is not None:
        from .graphs import is_chordal

        if is_chordal(graph) is None:
            return FreenessVerdict(NOT_FREE, reason="graphic arrangement of a non-chordal graph")
    if method == "supersolvable":
        return supersolvable_verdict(arr)
    if method == "inductive":
        return inductively_free(arr, node_budget)
    if method == "divisional":
        return divisionally_free(arr)
    if method == "recursive":
        return recursively_free(arr, node_budget=node_budget)
    if method == "mat":
        return _mat_verdict(arr, node_budget, graph)
    if method != "auto":
        raise InputError(f"unknown freeness method {method!r}")
    if _roots_of(arr) is None:
        return FreenessVerdict(NOT_FREE, reason="characteristic polynomial does not split over Z")
    v = supersolvable_verdict(arr)
    if v.status == FREE:
        return v
    v = divisionally_free(arr)
    if v.status != UNKNOWN:
        return v
    v = inductively_free(arr, node_budget)
    if v.status != UNKNOWN:
        return v
    return _mat_verdict(arr, node_budget, graph)


def _mat_verdict(arr, node_budget, graph):
    res = mat_free_search(arr, node_budget, graph=graph)
    if res.status == "found":
        ok, exps, msg = verify_mat_partition(arr, res.partition)
        if not ok:
            raise InputError(f"internal: MAT search returned invalid partition ({msg})")
        cert = FreenessCertificate(
            "mat",
            exps,
            {"partition": [[list(arr.hyperplanes[i].row) for i in b] for b in res.partition]},
        )
        return FreenessVerdict(FREE, cert)
    return FreenessVerdict(UNKNOWN, reason=res.reason)


# -- certificate replay -------------------------------------------------------------


def verify_certificate(arr: Arrangement, cert) -> tuple[bool, str]:
    """Replay a certificate with fresh computations; True only when every
    claimed exponent multiset and chi division checks out."""
    data = cert.to_json() if isinstance(cert, FreenessCertificate) else cert
    try:
        kind = data.get("kind")
        exps = sorted_exponents(data.get("exponents", ()))
        if kind == "supersolvable":
            return _verify_ss(arr, data, exps)
        if kind == "inductive":
            return _verify_inductive(arr, data, exps)
        if kind == "divisional":
            return _verify_divisional(arr, data, exps)
        if kind == "mat":
            index_of = {h.row: i for i, h in enumerate(arr.hyperplanes)}
            blocks = []
            for b in data["derivation"]["partition"]:
                try:
                    blocks.append(tuple(index_of[tuple(r)] for r in b))
                except KeyError:
                    return False, "MAT partition names a hyperplane not in the arrangement"
            ok, got, msg = verify_mat_partition(arr, blocks)
            if not ok:
                return False, f"MAT conditions fail: {msg}"
            if got != exps:
                return False, f"MAT exponents {got} != claimed {exps}"
            return True, ""
        if kind == "recursive":
            roots = _roots_of(arr)
            if roots is None or roots != exps:
                return False, "chi roots do not match claimed exponents"
            return True, "recursive certificates replay chi roots only"
    except (InputError, KeyError, TypeError, ValueError, IndexError) as exc:
        return False, f"malformed certificate: {exc}"
    return False, f"unknown certificate kind {kind!r}"


def _verify_ss(arr, data, exps):
    index_of = {h.row: i for i, h in enumerate(arr.hyperplanes)}
    chain = []
    for step in data["derivation"]["localizations"]:
        try:
            chain.append(tuple(sorted(index_of[tuple(r)] for r in step)))
        except KeyError:
            return False, "M-chain names a hyperplane not in the arrangement"
    if len(arr) == 0:
        if chain:
            return False, "nonempty chain for an empty arrangement"
        return (exps == (0,) * arr.dim, "empty arrangement exponents mismatch")
    if not chain or chain[-1] != tuple(range(len(arr))):
        return False, "M-chain does not end at the full arrangement"
    for idx in range(len(chain) - 1, 0, -1):
        big = Arrangement(arr.dim, tuple(arr.hyperplanes[i] for i in chain[idx]))
        small = set(chain[idx - 1])
        if not small.issubset(set(chain[idx])):
            return False, "M-chain steps are not nested"
        found = False
        for x in modular_coatoms(big):
            if {chain[idx][g] for g in x.generators} == small:
                found = True
                break
        if not found:
            return False, f"chain step {idx - 1} is not a modular coatom localization"
    head = Arrangement(arr.dim, tuple(arr.hyperplanes[i] for i in chain[0]))
    if head.rank() != 1:
        return False, "M-chain does not start at a rank-1 localization"
    sizes = [len(chain[0])] + [len(chain[i]) - len(chain[i - 1]) for i in range(1, len(chain))]
    r = arr.rank()
    if len(chain) != r:
        return False, f"M-chain length {len(chain)} != rank {r}"
    want = sorted_exponents((0,) * (arr.dim - r) + tuple(sizes))
    if want != exps:
        return False, f"M-chain exponents {want} != claimed {exps}"
    if char_poly(arr).coeffs != _pad(poly.from_roots(exps), arr.dim):
        return False, "Terao factorization fails for claimed exponents"
    return True, ""


def _verify_inductive(arr, data, exps):
    nodes = data["derivation"]["nodes"]
    root = data["derivation"]["root"]
    ess = essentialize(arr)
    root_node = nodes[root]
    if sorted(tuple(r) for r in root_node["rows"]) != sorted(h.row for h in ess.hyperplanes):
        return False, "root node does not match the essentialized arrangement"
    zeros = (0,) * (arr.dim - ess.dim)
    if sorted_exponents(tuple(root_node["exponents"]) + zeros) != exps:
        return False, "root exponents plus corank zeros do not match the claim"

    checked: dict[str, tuple[int, ...]] = {}

    def check(nid) -> tuple[int, ...]:
        if nid in checked:
            return checked[nid]
        node = nodes[nid]
        rows = [tuple(r) for r in node["rows"]]
        a = (
            arrangement(node["dim"], [(r[:-1], r[-1]) for r in rows])
            if rows
            else Arrangement(node["dim"], ())
        )
        got = sorted_exponents(node["exponents"])
        roots = _roots_of(a)
        if rows and (roots is None or roots != got):
            raise InputError(f"node {nid}: chi roots do not match recorded exponents")
        if not rows:
            if got != (0,) * node["dim"] and got != ():
                raise InputError(f"node {nid}: empty arrangement exponents wrong")
            checked[nid] = (0,) * node["dim"]
            return checked[nid]
        hrow = tuple(node["hyperplane"])
        i = [h.row for h in a.hyperplanes].index(hrow)
        rest, _ = restrict_traced(a, flat_of(a, [i]))
        rnode = nodes[node["restriction"]]
        if essentialize(rest).canonical_key() != (
            rnode["dim"],
            tuple(sorted(tuple(r) for r in rnode["rows"])),
        ):
            raise InputError(f"node {nid}: recorded restriction mismatch")
        dnode = nodes[node["deletion"]]
        deleted = essentialize(a.delete(i))
        if deleted.canonical_key() != (
            dnode["dim"],
            tuple(sorted(tuple(r) for r in dnode["rows"])),
        ):
            raise InputError(f"node {nid}: recorded deletion mismatch")
        rexp = check(node["restriction"]) + (0,) * (node["dim"] - 1 - rnode["dim"])
        dexp = check(node["deletion"]) + (0,) * (node["dim"] - dnode["dim"])
        rexp = sorted_exponents(rexp)
        dexp = sorted_exponents(dexp)
        diff = _multiset_minus(got, rexp)
        if diff is None or len(diff) != 1:
            raise InputError(f"node {nid}: restriction exponents not a valid sub-multiset")
        if sorted_exponents(rexp + (diff[0] - 1,)) != dexp:
            raise InputError(f"node {nid}: addition-deletion bookkeeping fails")
        checked[nid] = got
        return got

    check(root)
    return True, ""


def _verify_divisional(arr, data, exps):
    ess = essentialize(arr)
    index_of = {h.row: i for i, h in enumerate(ess.hyperplanes)}
    flag = []
    for step in data["derivation"]["essential_flag"]:
        try:
            flag.append(tuple(sorted(index_of[tuple(r)] for r in step)))
        except KeyError:
            return False, "divisional flag names a hyperplane not in the arrangement"
    if len(flag) != ess.dim:
        return False, f"flag has {len(flag)} levels, expected {ess.dim}"
    prev_chi = char_poly(ess).coeffs
    prev: set = set()
    for depth, idx_set in enumerate(flag, start=1):
        if not prev.issubset(set(idx_set)):
            return False, "divisional flag index sets are not nested"
        x = flat_of(ess, idx_set)
        if x.dim != ess.dim - depth:
            return False, f"flag level {depth} has dimension {x.dim}, expected {ess.dim - depth}"
        chi = char_poly(restrict(ess, x)).coeffs
        if not poly.divides(chi, prev_chi):
            return False, f"chi division fails at flag level {depth}"
        prev_chi = chi
        prev = set(idx_set)
    roots = _roots_of(arr)
    if roots is None or roots != exps:
        return False, "chi roots do not match claimed exponents"
    return True, ""


def clear_memos() -> None:
    _IF_MEMO.clear()
    _IF_NODES.clear()
    _DIV_MEMO.clear()
