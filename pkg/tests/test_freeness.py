"""Freeness certification oracles and certificate replay."""

import pytest

from arrlab import freeness, lattice
from arrlab.core import Arrangement, arrangement, cone, essentialize
from arrlab.errors import InputError
from tests.conftest import boolean_arrangement, braid, random_arrangement


def c4_graphic():
    return arrangement(4, [((1, -1, 0, 0), 0), ((0, 1, -1, 0), 0),
                           ((0, 0, 1, -1), 0), ((1, 0, 0, -1), 0)])


def cat1_a2_cone():
    cat = arrangement(3, [((1, -1, 0), c) for c in (-1, 0, 1)]
                      + [((1, 0, -1), c) for c in (-1, 0, 1)]
                      + [((0, 1, -1), c) for c in (-1, 0, 1)])
    return essentialize(cone(cat))


def test_empty_is_inductively_free():
    v = freeness.inductively_free(Arrangement(3, ()))
    assert v.is_free and v.exponents() == (0, 0, 0)
    assert freeness.verify_certificate(Arrangement(3, ()), v.certificate)[0]


def test_cone_catalan_a2_inductively_free():
    cc = cat1_a2_cone()
    v = freeness.inductively_free(cc)
    assert v.is_free and v.exponents() == (1, 4, 5)
    ok, msg = freeness.verify_certificate(cc, v.certificate)
    assert ok, msg


def test_c4_not_free():
    v = freeness.inductively_free(c4_graphic())
    assert v.status == freeness.NOT_FREE
    assert "split" in v.reason


def test_inductive_certificate_tamper_rejected():
    cc = cat1_a2_cone()
    v = freeness.inductively_free(cc)
    data = v.certificate.to_json()
    data["exponents"] = [1, 3, 6]
    ok, msg = freeness.verify_certificate(cc, data)
    assert not ok


def test_divisional_boolean_and_rank2():
    v = freeness.divisionally_free(boolean_arrangement(3))
    assert v.is_free and v.exponents() == (1, 1, 1)
    rank2 = arrangement(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 0), ((1, -1), 0)])
    v2 = freeness.divisionally_free(rank2)
    assert v2.is_free and v2.exponents() == (1, 3)
    assert freeness.verify_certificate(rank2, v2.certificate)[0]


def test_divisional_cone_shi_a2():
    shi = arrangement(3, [((1, -1, 0), c) for c in (0, 1)]
                      + [((1, 0, -1), c) for c in (0, 1)]
                      + [((0, 1, -1), c) for c in (0, 1)])
    cs = cone(shi)
    v = freeness.divisionally_free(cs)
    assert v.is_free and v.exponents() == (0, 1, 3, 3)
    ok, msg = freeness.verify_certificate(cs, v.certificate)
    assert ok, msg


def test_divisional_flag_tamper_rejected():
    v = freeness.divisionally_free(boolean_arrangement(3))
    data = v.certificate.to_json()
    data["derivation"]["essential_flag"] = data["derivation"]["essential_flag"][::-1]
    assert not freeness.verify_certificate(boolean_arrangement(3), data)[0]


def test_mat_partition_weyl_a2_and_b2():
    k3 = braid(3)
    ok, exps, msg = freeness.verify_mat_partition(k3, [(0, 1), (2,)])
    assert ok and exps == (0, 1, 2) and tuple(e for e in exps if e) == (1, 2)
    b2 = arrangement(2, [((1, -1), 0), ((0, 1), 0), ((1, 0), 0), ((1, 1), 0)])
    # heights: x1-x2, x2 at height 1; x1 at height 2; x1+x2 at height 3
    ok, exps, msg = freeness.verify_mat_partition(b2, [(0, 1), (2,), (3,)])
    assert ok and exps == (1, 3), msg


def test_mat_partition_rejections():
    b2 = boolean_arrangement(2)
    ok, exps, msg = freeness.verify_mat_partition(b2, [(0,), (1,)])
    assert not ok
    with pytest.raises(InputError):
        freeness.verify_mat_partition(b2, [(0,)])


def test_mat_search_weyl_a3_and_sun_negative():
    from arrlab.graphs import build_sun, graphic_arrangement

    a3 = braid(4)
    res = freeness.mat_free_search(a3)
    assert res.status == "found"
    ok, exps, _ = freeness.verify_mat_partition(a3, res.partition)
    assert ok and exps == (0, 1, 2, 3)
    s3 = graphic_arrangement(build_sun(3))
    res = freeness.mat_free_search(s3, graph=build_sun(3))
    assert res.status == "none"
    # generic search agrees without the graph hint
    res2 = freeness.mat_free_search(s3)
    assert res2.status == "none"
    assert freeness.mat_free_search(Arrangement(2, ())).status == "found"


def test_exponents_aggregator():
    rep = freeness.exponents(braid(4))
    assert rep.exponents == (0, 1, 2, 3) and rep.provenance == "supersolvable"
    assert freeness.exponents(c4_graphic()) is None
    from arrlab.deformations import DeformationSpec, cone_of

    cb = cone_of(DeformationSpec("bfam", {"p": 0, "l": 2, "m": 1, "a": 1}))
    rep = freeness.exponents(cb)
    assert rep.exponents == (1, 5, 7)


def test_supersolvable_implies_inductive_agreement(rng):
    # run both oracles on supersolvable instances and require agreement
    for _ in range(6):
        arr = random_arrangement(rng, 3, 6, central=True)
        chain = lattice.supersolvable(arr)
        if chain is None:
            continue
        v = freeness.inductively_free(arr)
        assert v.is_free
        assert v.exponents() == tuple(sorted(chain.exponents))


def test_recursive_freeness_deletion_only_path():
    v = freeness.recursively_free(boolean_arrangement(3))
    assert v.is_free
    v2 = freeness.recursively_free(c4_graphic())
    assert v2.status == freeness.NOT_FREE


def test_recursive_freeness_with_pool():
    # removing one hyperplane from a braid is provable by re-adding it
    k4 = braid(4)
    sub = k4.delete(0)
    pool = [k4.hyperplanes[0]]
    v = freeness.recursively_free(sub, pool=pool)
    assert v.is_free


def test_free_verdict_graph_shortcut():
    from arrlab.graphs import graph

    g = graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    v = freeness.free_verdict(c4_graphic(), graph=g)
    assert v.status == freeness.NOT_FREE and "chordal" in v.reason


def test_addition_deletion_bookkeeping_on_certificates():
    # every inductive certificate node satisfies the triple bookkeeping;
    # verify_certificate enforces it, so a valid cert replays end to end
    cc = cat1_a2_cone()
    v = freeness.inductively_free(cc)
    nodes = v.certificate.derivation["nodes"]
    root = v.certificate.derivation["root"]
    seen = set()

    def walk(nid):
        if nid in seen:
            return
        seen.add(nid)
        node = nodes[nid]
        if node["rows"]:
            walk(node["restriction"])
            walk(node["deletion"])

    walk(root)
    assert len(seen) >= 3


def test_cross_oracle_consistency_random(rng):
    # every certifying method agrees on exponents, every certificate
    # replays, and Terao factorization holds; nothing certifies when chi
    # does not split
    from arrlab import polynomials as poly
    from arrlab.core import Arrangement, normalize
    from arrlab.lattice import char_poly

    for _ in range(60):
        dim = rng.randint(2, 4)
        hyps, seen = [], set()
        for _ in range(rng.randint(2, 8)):
            normal = tuple(rng.randint(-2, 2) for _ in range(dim))
            if not any(normal):
                continue
            h = normalize(normal, 0)
            if h not in seen:
                seen.add(h)
                hyps.append(h)
        arr = Arrangement(dim, tuple(hyps))
        if not len(arr):
            continue
        exps_seen = set()
        for method in ("supersolvable", "divisional", "inductive", "mat"):
            v = freeness.free_verdict(arr, method, node_budget=3000)
            if v.status != freeness.FREE:
                continue
            ok, msg = freeness.verify_certificate(arr, v.certificate)
            assert ok, (method, msg)
            exps_seen.add(v.certificate.exponents)
            want = tuple(poly.from_roots(v.certificate.exponents))
            assert char_poly(arr).coeffs == want + (0,) * (arr.dim + 1 - len(want))
        assert len(exps_seen) <= 1
        if char_poly(arr).roots_over_Z is None:
            assert not exps_seen
