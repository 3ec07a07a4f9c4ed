"""Graphs and digraphs behind graphic / digraphic arrangements, plus the
graph-native fast paths for freeness, exponents, and accuracy.

Flats of a graphic arrangement are vertex partitions with connected blocks
and restriction is edge contraction, so all accuracy searches here work on
contracted graphs keyed by exact partitions; nothing needs the (often
enormous) intersection lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Arrangement, Flat, arrangement, cone, flat_from_rows
from .errors import BudgetExceeded, InputError


@dataclass(frozen=True)
class SimpleGraph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for (i, j) in self.edges:
            if not (0 <= i < j < self.n):
                raise InputError(f"bad edge ({i}, {j}) for {self.n} vertices")

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        stack.append(u)
            out.append(sorted(comp))
        return out

    def rank(self) -> int:
        return self.n - len(self.components())


def graph(n: int, edges) -> SimpleGraph:
    return SimpleGraph(n, frozenset((min(i, j), max(i, j)) for i, j in edges))


def graph_to_json(g: SimpleGraph) -> dict:
    return {"schema": "arrlab/1", "n": g.n, "edges": sorted(list(e) for e in g.edges)}


def graph_from_json(data) -> SimpleGraph:
    try:
        return graph(int(data["n"]), [(int(i), int(j)) for i, j in data["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc


def graphic_arrangement(g: SimpleGraph) -> Arrangement:
    """One hyperplane x_i = x_j per edge, in R^n."""
    hyps = []
    for i, j in sorted(g.edges):
        normal = [0] * g.n
        normal[i] = 1
        normal[j] = -1
        hyps.append((tuple(normal), 0))
    return arrangement(g.n, hyps)


# -- chordality ------------------------------------------------------------------


def lex_bfs(g: SimpleGraph) -> list[int]:
    """Lexicographic BFS visit order (classic partition-refinement form)."""
    sequence = []
    blocks = [list(range(g.n))]
    adj = g.adjacency()
    while blocks:
        head = blocks[0]
        v = head.pop(0)
        if not head:
            blocks.pop(0)
        sequence.append(v)
        new_blocks = []
        for block in blocks:
            inside = [u for u in block if u in adj[v]]
            outside = [u for u in block if u not in adj[v]]
            if inside:
                new_blocks.append(inside)
            if outside:
                new_blocks.append(outside)
        blocks = new_blocks
    return sequence


def is_chordal(g: SimpleGraph):
    """A perfect elimination ordering (first vertex eliminated first), or
    None.  LexBFS order reversed is a PEO exactly for chordal graphs; the
    PEO property is verified independently."""
    order = lex_bfs(g)[::-1]
    if _verify_peo(g, order):
        return order
    return None


def _verify_peo(g: SimpleGraph, order) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    adj = g.adjacency()
    for idx, v in enumerate(order):
        later = [u for u in adj[v] if pos[u] > idx]
        if not later:
            continue
        u = min(later, key=lambda x: pos[x])
        for w in later:
            if w != u and w not in adj[u]:
                return False
    return True


def find_induced_cycle(g: SimpleGraph):
    """An induced cycle of length > 3 (certificate of non-chordality), or
    None.  For a non-adjacent pair u, w with a common neighbor v, a shortest
    u-w path avoiding N[v] closes to a chordless cycle through v."""
    adj = g.adjacency()
    for v in range(g.n):
        nb = sorted(adj[v])
        for ai in range(len(nb)):
            for bi in range(ai + 1, len(nb)):
                u, w = nb[ai], nb[bi]
                if w in adj[u]:
                    continue
                blocked = (adj[v] | {v}) - {u, w}
                path = _shortest_path_avoiding(g, u, w, blocked)
                if path is not None:
                    return [v] + path
    return None


def _shortest_path_avoiding(g: SimpleGraph, s: int, t: int, blocked) -> list | None:
    from collections import deque

    adj = g.adjacency()
    prev = {s: None}
    q = deque([s])
    while q:
        v = q.popleft()
        if v == t:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for u in adj[v]:
            if u in blocked or u in prev:
                continue
            prev[u] = v
            q.append(u)
    return None


def is_strongly_chordal(g: SimpleGraph) -> bool:
    """Simple-vertex elimination: a vertex is simple when the closed
    neighborhoods of its closed neighborhood form an inclusion chain;
    strongly chordal graphs are exactly those that eliminate completely."""
    return simple_elimination_ordering(g) is not None


def simple_elimination_ordering(g: SimpleGraph):
    alive = set(range(g.n))
    adj = g.adjacency()
    order = []
    while alive:
        v = _find_simple_vertex(alive, adj)
        if v is None:
            return None
        order.append(v)
        alive.discard(v)
        for u in adj[v]:
            adj[u].discard(v)
        adj[v] = set()
    return order


def _find_simple_vertex(alive, adj):
    for v in sorted(alive):
        closed = sorted(adj[v] | {v})
        hoods = [frozenset(adj[u] | {u}) for u in closed]
        hoods.sort(key=len)
        ok = True
        for a in range(len(hoods) - 1):
            if not hoods[a] <= hoods[a + 1]:
                ok = False
                break
        if ok:
            return v
    return None


# -- builders --------------------------------------------------------------------


@dataclass(frozen=True)
class QSpec:
    """Inner complete graph on l vertices with m_{ij} outer triangles per
    inner edge; weights indexed lexicographically by (i, j), i < j."""

    l: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if self.l < 2:
            raise InputError("Q-family needs an inner complete graph on >= 2 vertices")
        if len(self.weights) != self.l * (self.l - 1) // 2:
            raise InputError(f"Q-family on {self.l} vertices needs {self.l * (self.l - 1) // 2} weights")
        if any(w < 0 for w in self.weights):
            raise InputError("Q-family weights must be nonnegative")

    def weight(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        pos = 0
        for a in range(self.l):
            for b in range(a + 1, self.l):
                if (a, b) == (i, j):
                    return self.weights[pos]
                pos += 1
        raise InputError(f"no inner edge ({i}, {j})")


def build_q_family(spec: QSpec) -> SimpleGraph:
    edges = []
    n = spec.l
    pos = 0
    for i in range(spec.l):
        for j in range(i + 1, spec.l):
            edges.append((i, j))
            for _ in range(spec.weights[pos]):
                v = n
                n += 1
                edges.append((i, v))
                edges.append((j, v))
            pos += 1
    return graph(n, edges)


def build_sun(n: int) -> SimpleGraph:
    """n-sun: inner complete graph on 0..n-1 plus outer vertex v_i adjacent
    to i and i+1 (mod n)."""
    if n < 3:
        raise InputError("suns need n >= 3")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i in range(n):
        edges.append((i, n + i))
        edges.append(((i + 1) % n, n + i))
    return graph(2 * n, edges)


def build_q4_ext(k: int) -> SimpleGraph:
    """Q_4 with every inner weight k, extended by k vertices completing
    4-cliques over the inner triangle {0, 1, 2}."""
    if k < 1:
        raise InputError("extension count must be >= 1")
    spec = QSpec(4, (k,) * 6)
    base = build_q_family(spec)
    edges = set(base.edges)
    n = base.n
    for _ in range(k):
        v = n
        n += 1
        edges |= {(0, v), (1, v), (2, v)}
    return graph(n, edges)


def contract(g: SimpleGraph, e) -> SimpleGraph:
    """Contract edge e (merge the larger endpoint into the smaller one) and
    relabel; duplicate edges merge."""
    i, j = min(e), max(e)
    if (i, j) not in g.edges:
        raise InputError(f"({i}, {j}) is not an edge")

    def relabel(v):
        if v == j:
            v = i
        return v if v < j else v - 1

    edges = set()
    for a, b in g.edges:
        x, y = relabel(a), relabel(b)
        if x != y:
            edges.add((min(x, y), max(x, y)))
    return SimpleGraph(g.n - 1, frozenset(edges))


def add_dominating_vertex(g: SimpleGraph) -> SimpleGraph:
    edges = set(g.edges) | {(v, g.n) for v in range(g.n)}
    return graph(g.n + 1, edges)


def disjoint_union(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    edges = set(g.edges) | {(i + g.n, j + g.n) for i, j in h.edges}
    return graph(g.n + h.n, edges)


def identify_vertex(g: SimpleGraph, gv: int, h: SimpleGraph, hv: int) -> SimpleGraph:
    """One-point union: glue vertex hv of h onto vertex gv of g."""

    def map_h(v):
        if v == hv:
            return gv
        return g.n + (v if v < hv else v - 1)

    edges = set(g.edges) | {tuple(sorted((map_h(i), map_h(j)))) for i, j in h.edges}
    return graph(g.n + h.n - 1, edges)


# -- class built from one-vertex graphs by unions, vertex identifications and
# -- dominating vertices (contains all trivially perfect graphs) ------------------


def in_class_g(g: SimpleGraph, _memo=None):
    """Build derivation over {K1, disjoint union, vertex identification,
    dominating vertex}, or None.  Memoized on labeled graphs; intended for
    small n."""
    if _memo is None:
        _memo = {}
    key = (g.n, g.edges)
    if key in _memo:
        return _memo[key]
    _memo[key] = None  # cycle guard
    if g.n == 1:
        _memo[key] = ("K1",)
        return _memo[key]
    comps = g.components()
    if len(comps) > 1:
        subs = []
        for comp in comps:
            sub = _induced(g, comp)
            d = in_class_g(sub, _memo)
            if d is None:
                _memo[key] = None
                return None
            subs.append(d)
        _memo[key] = ("disjoint-union", tuple(subs))
        return _memo[key]
    adj = g.adjacency()
    for v in range(g.n):
        if len(adj[v]) == g.n - 1:
            rest = _induced(g, [u for u in range(g.n) if u != v])
            d = in_class_g(rest, _memo)
            if d is not None:
                _memo[key] = ("dominating-vertex", v, d)
                return _memo[key]
    for v in range(g.n):
        rest = [u for u in range(g.n) if u != v]
        sub = _induced(g, rest)
        comps = sub.components()
        if len(comps) < 2:
            continue
        part1 = [rest[u] for u in comps[0]]
        part2 = [rest[u] for c in comps[1:] for u in c]
        g1 = _induced(g, sorted(part1 + [v]))
        g2 = _induced(g, sorted(part2 + [v]))
        d1 = in_class_g(g1, _memo)
        d2 = d1 and in_class_g(g2, _memo)
        if d1 is not None and d2 is not None:
            _memo[key] = ("vertex-identification", v, d1, d2)
            return _memo[key]
    _memo[key] = None
    return None


def _induced(g: SimpleGraph, vertices) -> SimpleGraph:
    idx = {v: i for i, v in enumerate(vertices)}
    edges = [(idx[i], idx[j]) for i, j in g.edges if i in idx and j in idx]
    return graph(len(vertices), edges)


def is_trivially_perfect(g: SimpleGraph) -> bool:
    """Built from K1 by disjoint unions and dominating vertices alone."""
    if g.n == 1:
        return True
    comps = g.components()
    if len(comps) > 1:
        return all(is_trivially_perfect(_induced(g, c)) for c in comps)
    adj = g.adjacency()
    for v in range(g.n):
        if len(adj[v]) == g.n - 1:
            return is_trivially_perfect(_induced(g, [u for u in range(g.n) if u != v]))
    return False


# -- exponents ---------------------------------------------------------------------


def graphic_exponents(g: SimpleGraph) -> tuple[int, ...]:
    """Exponent multiset of a chordal graph's arrangement: later-neighbor
    counts along a perfect elimination ordering (ambient length n)."""
    peo = is_chordal(g)
    if peo is None:
        raise InputError("graph is not chordal; arrangement not free")
    pos = {v: i for i, v in enumerate(peo)}
    adj = g.adjacency()
    counts = [sum(1 for u in adj[v] if pos[u] > pos[v]) for v in peo]
    return tuple(sorted(counts))


# -- digraphs ----------------------------------------------------------------------


@dataclass(frozen=True)
class WeightedDigraph:
    """Loopless digraph on 0..n-1 with finite integer weight sets."""

    n: int
    arcs: frozenset[tuple[int, int]]
    weights: tuple[frozenset[int], ...]

    def __post_init__(self):
        for (i, j) in self.arcs:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise InputError(f"bad arc ({i}, {j})")
        if len(self.weights) != self.n:
            raise InputError("need one weight set per vertex")

    def interval(self, v: int) -> tuple[int, int]:
        w = sorted(self.weights[v])
        if not w or w != list(range(w[0], w[-1] + 1)):
            raise InputError(f"weight of vertex {v} is not a nonempty interval")
        return w[0], w[-1]


def digraph(n: int, arcs, weights) -> WeightedDigraph:
    ws = []
    for v in range(n):
        w = weights[v] if not isinstance(weights, dict) else weights.get(v, ())
        if isinstance(w, tuple) and len(w) == 2 and not isinstance(w[0], (tuple, frozenset)):
            lo, hi = w
            ws.append(frozenset(range(lo, hi + 1)))
        else:
            ws.append(frozenset(w))
    return WeightedDigraph(n, frozenset((int(i), int(j)) for i, j in arcs), tuple(ws))


def digraph_to_json(d: WeightedDigraph) -> dict:
    return {
        "schema": "arrlab/1",
        "n": d.n,
        "arcs": sorted(list(a) for a in d.arcs),
        "weights": {str(v): sorted(d.weights[v]) for v in range(d.n)},
    }


def digraph_from_json(data) -> WeightedDigraph:
    """Weights: a bare 2-list is an interval [lo, hi]; other list lengths
    are explicit sets; {"interval": [lo, hi]} / {"set": [...]} also work."""
    try:
        n = int(data["n"])
        arcs = [(int(i), int(j)) for i, j in data.get("arcs", [])]
        weights = []
        raw = data.get("weights", {})
        for v in range(n):
            w = raw.get(str(v), raw.get(v, []))
            if isinstance(w, dict):
                if "interval" in w:
                    lo, hi = w["interval"]
                    weights.append(tuple(range(int(lo), int(hi) + 1)))
                else:
                    weights.append(tuple(int(x) for x in w["set"]))
            elif isinstance(w, list) and len(w) == 2:
                weights.append(tuple(range(int(w[0]), int(w[1]) + 1)))
            else:
                weights.append(tuple(int(x) for x in w))
        return digraph(n, arcs, weights)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed digraph JSON: {exc}") from exc


def digraphic_arrangement(d: WeightedDigraph) -> Arrangement:
    """Braid part x_i = x_j (i < j), arc part x_i - x_j = 1, and coordinate
    hyperplanes x_i = c for c in the vertex weights."""
    hyps = []
    for i in range(d.n):
        for j in range(i + 1, d.n):
            normal = [0] * d.n
            normal[i] = 1
            normal[j] = -1
            hyps.append((tuple(normal), 0))
    for (i, j) in sorted(d.arcs):
        normal = [0] * d.n
        normal[i] = 1
        normal[j] = -1
        hyps.append((tuple(normal), 1))
    for v in range(d.n):
        for c in sorted(d.weights[v]):
            normal = [0] * d.n
            normal[v] = 1
            hyps.append((tuple(normal), c))
    return arrangement(d.n, hyps)


def mutate_sink(d: WeightedDigraph, v: int, within=None) -> WeightedDigraph:
    """Remove all arcs into a sink v (inside ``within``) and extend every
    other interval one step left.

    The hyperplane count is always preserved (each removed arc hyperplane
    trades against one new coordinate level).  The cone characteristic
    polynomial is preserved along the descendant-matrix rows, where the
    weight nestedness keeps the tail vertices simplicial; it is NOT an
    invariant of arbitrary sink mutations.
    """
    U = set(range(d.n)) if within is None else set(within)
    if v not in U:
        raise InputError("vertex not inside the mutation scope")
    for u in U - {v}:
        if (u, v) not in d.arcs:
            raise InputError(f"vertex {v} is not a sink: missing arc ({u}, {v})")
    arcs = frozenset(a for a in d.arcs if not (a[1] == v and a[0] in U))
    ws = []
    for i in range(d.n):
        if i in U and i != v:
            lo, hi = d.interval(i)
            ws.append(frozenset(range(lo - 1, hi + 1)))
        else:
            ws.append(d.weights[i])
    return WeightedDigraph(d.n, arcs, tuple(ws))


def mutate_source(d: WeightedDigraph, v: int, within=None) -> WeightedDigraph:
    """Remove all arcs out of a source v (inside ``within``) and extend
    every other interval one step right."""
    U = set(range(d.n)) if within is None else set(within)
    if v not in U:
        raise InputError("vertex not inside the mutation scope")
    for u in U - {v}:
        if (v, u) not in d.arcs:
            raise InputError(f"vertex {v} is not a source: missing arc ({v}, {u})")
    arcs = frozenset(a for a in d.arcs if not (a[0] == v and a[1] in U))
    ws = []
    for i in range(d.n):
        if i in U and i != v:
            lo, hi = d.interval(i)
            ws.append(frozenset(range(lo, hi + 2)))
        else:
            ws.append(d.weights[i])
    return WeightedDigraph(d.n, arcs, tuple(ws))


def simplicial_vertex_flat(d: WeightedDigraph, v: int) -> Flat:
    """The flat of cone(A(G, psi)) cut out by everything away from v: z = 0,
    the braid and arc forms among the other vertices, and their coordinate
    hyperplanes.  v is simplicial exactly when this is a modular coatom."""
    ca = cone(digraphic_arrangement(d))
    w = d.n + 2
    rows = [(0,) * d.n + (1, 0)]
    for i in range(d.n):
        for j in range(i + 1, d.n):
            if v in (i, j):
                continue
            r = [0] * (d.n + 1)
            r[i] = 1
            r[j] = -1
            rows.append(tuple(r) + (0,))
    for (i, j) in sorted(d.arcs):
        if v in (i, j):
            continue
        r = [0] * (d.n + 1)
        r[i] = 1
        r[j] = -1
        r[d.n] = -1
        rows.append(tuple(r) + (0,))
    for i in range(d.n):
        if i == v:
            continue
        for c in sorted(d.weights[i]):
            r = [0] * (d.n + 1)
            r[i] = 1
            r[d.n] = -c
            rows.append(tuple(r) + (0,))
    return flat_from_rows(ca, rows)


def is_simplicial_vertex(d: WeightedDigraph, v: int) -> bool:
    from .lattice import modular_coatoms

    ca = cone(digraphic_arrangement(d))
    x = simplicial_vertex_flat(d, v)
    return any(m.matrix == x.matrix for m in modular_coatoms(ca))


# -- N-Ish ------------------------------------------------------------------------


def nishi_arrangement(N) -> Arrangement:
    """Braid arrangement plus x_i = N_i: the digraphic arrangement of the
    edgeless digraph with weights N (always general sets, never the
    two-entry interval shorthand)."""
    d = WeightedDigraph(len(N), frozenset(), tuple(frozenset(s) for s in N))
    return digraphic_arrangement(d)


def nishi_nested(N):
    """Permutation w with N_w(1) >= N_w(2) >= ... by inclusion, or None;
    also reports whether the inclusions are all strict."""
    idx = sorted(range(len(N)), key=lambda i: (-len(N[i]), sorted(N[i])))
    sets = [frozenset(N[i]) for i in idx]
    strict = True
    for a in range(len(sets) - 1):
        if not sets[a + 1] <= sets[a]:
            return None
        if sets[a + 1] == sets[a]:
            strict = False
    return tuple(idx), strict


# -- graphic accuracy engine --------------------------------------------------------


@dataclass
class GraphicAccuracyReport:
    graph: SimpleGraph
    free: bool
    exponents: tuple[int, ...] | None
    accurate: bool | None
    almost_accurate: bool | None
    coaccuracy: int | None  # minimal k with a witness chain at dims 1..rank-k
    k_accuracy: int | None  # ambient-n counterpart: n - coaccuracy
    flag_accurate: bool | None
    ind_flag_accurate: bool | None
    witness_chain: tuple | None  # partitions, codim ascending (chain top first)
    failing_level: int | None = None  # codim with no accurate flat, if any
    note: str = ""


class _PartitionSpace:
    """Connected-partition flats of a graphic arrangement, keyed by exact
    block partitions; single contractions are the cover moves."""

    def __init__(self, g: SimpleGraph):
        self.g = g
        self.base = tuple(frozenset([v]) for v in range(g.n))
        self._graphs = {}

    def contracted_graph(self, part) -> SimpleGraph:
        hit = self._graphs.get(part)
        if hit is not None:
            return hit
        blocks = sorted(part, key=lambda b: min(b))
        idx = {}
        for bi, b in enumerate(blocks):
            for v in b:
                idx[v] = bi
        edges = set()
        for i, j in self.g.edges:
            a, b = idx[i], idx[j]
            if a != b:
                edges.add((min(a, b), max(a, b)))
        h = SimpleGraph(len(blocks), frozenset(edges))
        self._graphs[part] = h
        return h

    def children(self, part):
        """Partitions obtained by merging two blocks joined by an edge."""
        blocks = sorted(part, key=lambda b: min(b))
        h = self.contracted_graph(part)
        for (a, b) in sorted(h.edges):
            merged = blocks[a] | blocks[b]
            child = frozenset(x for k, x in enumerate(blocks) if k not in (a, b)) | {merged}
            yield child

    def root(self):
        return frozenset(self.base)


def graphic_accuracy_profile(
    g: SimpleGraph,
    max_level_partitions: int = 500_000,
) -> GraphicAccuracyReport:
    """Decide accuracy notions for a graphic arrangement on the graph side.

    Good flats at codimension c are connected partitions whose contracted
    graph is chordal with exponents equal to the first n - c exponents of
    the input.  The witness-chain search enumerates shallow chain tops and
    descends through all-good single contractions; level sweeps are
    exhaustive, so negatives are certificates.
    """
    peo = is_chordal(g)
    if peo is None:
        return GraphicAccuracyReport(
            g, False, None, None, None, None, None, None, None, None,
            note="not free: graph is not chordal",
        )
    exps = graphic_exponents(g)
    n = g.n
    r = g.rank()
    space = _PartitionSpace(g)

    def good(part, codim) -> bool:
        h = space.contracted_graph(part)
        sub = is_chordal(h)
        if sub is None:
            return False
        return graphic_exponents(h) == exps[: n - codim]

    def almost_good(part) -> bool:
        h = space.contracted_graph(part)
        if is_chordal(h) is None:
            return False
        sub = list(graphic_exponents(h))
        pool = list(exps)
        for e in sub:
            if e in pool:
                pool.remove(e)
            else:
                return False
        return True

    if r <= 1:
        return GraphicAccuracyReport(
            g, True, exps, True, True, 1 if r else 0, n - 1 if r else n,
            True, True, (), None, "rank <= 1: trivial witness",
        )

    descent_memo: dict = {}

    def good_descent(part, codim) -> bool:
        """All-good chain from this partition down to codimension r - 1."""
        if codim == r - 1:
            return True
        hit = descent_memo.get(part)
        if hit is not None:
            return hit
        out = False
        for child in space.children(part):
            if good(child, codim + 1) and good_descent(child, codim + 1):
                out = True
                break
        descent_memo[part] = out
        return out

    # sweep codimensions from the top; the first witness chain found covers
    # every deeper level, so the sweep stops there (the shallow levels are
    # enumerated exhaustively, making negative verdicts certificates)
    level = {space.root()}
    good_at: dict[int, bool] = {}
    almost_at: dict[int, bool] = {}
    coacc = None
    chain_top = None
    swept = 0
    for c in range(1, r):
        nxt = set()
        for part in level:
            nxt.update(space.children(part))
        if len(nxt) > max_level_partitions:
            raise BudgetExceeded(
                f"partition budget exceeded at codimension {c}", level=c, flats=len(nxt)
            )
        level = nxt
        swept = c
        goods = [p for p in sorted(level, key=_part_key) if good(p, c)]
        good_at[c] = bool(goods)
        almost_at[c] = True if goods else any(almost_good(p) for p in level)
        for p in goods:
            if good_descent(p, c):
                coacc = c
                chain_top = p
                break
        if coacc is not None:
            break
        if not good_at[c] and not almost_at[c]:
            break  # both notions already settled negative at this level
    if coacc is not None:
        accurate = all(good_at[c] for c in range(1, coacc + 1))
        almost = all(almost_at[c] for c in range(1, coacc + 1))
    else:
        accurate = False
        almost = swept == r - 1 and all(almost_at.get(c, False) for c in range(1, r))
    failing = next((c for c in range(1, swept + 1) if not good_at.get(c, False)), None)
    if not accurate:
        coacc = None
        chain_top = None
    chain = None
    if coacc is not None and chain_top is not None:
        chain = [chain_top]
        part, codim = chain_top, coacc
        while codim < r - 1:
            for child in space.children(part):
                if good(child, codim + 1) and good_descent(child, codim + 1):
                    chain.append(child)
                    part = child
                    codim += 1
                    break
            else:
                break
        chain = tuple(chain)
    flag = bool(accurate and coacc == 1)
    return GraphicAccuracyReport(
        graph=g,
        free=True,
        exponents=exps,
        accurate=accurate,
        almost_accurate=almost,
        coaccuracy=coacc,
        k_accuracy=(n - coacc) if coacc is not None else None,
        flag_accurate=flag,
        ind_flag_accurate=flag,  # chordal contractions are supersolvable, so
        # every flag witness is automatically inductive
        witness_chain=chain,
        failing_level=failing,
        note="",
    )


def partition_flat(g: SimpleGraph, part) -> Flat:
    """Lift a connected partition to the flat of the graphic arrangement it
    describes (x_i = x_j inside each block)."""
    arr = graphic_arrangement(g)
    rows = []
    for block in part:
        verts = sorted(block)
        for a, b in zip(verts, verts[1:]):
            row = [0] * g.n
            row[a] = 1
            row[b] = -1
            rows.append(tuple(row) + (0,))
    return flat_from_rows(arr, rows) if rows else Flat((), g.n, ())


def _part_key(part):
    return tuple(sorted(tuple(sorted(b)) for b in part))
