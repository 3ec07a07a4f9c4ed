"""Descendant matrices: closed forms, mutation replay, row invariance,
the braid-translation bridge, and witnesses."""

import pytest

from arrlab import lattice
from arrlab.core import Arrangement, cone, product
from arrlab.descendants import (
    DescendantSpec,
    build_descendant,
    descendant_digraph,
    descendant_expected_exponents,
    descendant_witness,
    mutation_replay,
    shi_ish,
    shi_ish_expected_exponents,
)
from arrlab.errors import InputError


def test_fig_panel_closed_forms():
    for m, d in [(0, 0), (1, 0), (2, 1)]:
        dg = descendant_digraph(DescendantSpec("shi", 3, 0, 2, m, d))
        assert sorted(dg.arcs) == [(0, 1)]
        assert [dg.interval(i) for i in range(3)] == [(-m - 2, d), (-m - 2, d), (-m - 1, d)]
    dg = descendant_digraph(DescendantSpec("shi", 3, 3, 3, 0, 0))
    assert not dg.arcs
    assert [dg.interval(i) for i in range(3)] == [(-2, 0), (-1, 0), (0, 0)]


def test_last_column_is_nested_nish():
    from arrlab.graphs import nishi_nested

    for p in range(4):
        dg = descendant_digraph(DescendantSpec("shi", 3, p, 3, 1, 0))
        assert not dg.arcs
        assert nishi_nested([tuple(w) for w in dg.weights]) is not None


def test_mutation_replay_equals_closed_form():
    for p in range(4):
        for k in range(1, 4):
            spec = DescendantSpec("shi", 3, p, k, 1, 0)
            assert mutation_replay(spec) == descendant_digraph(spec)
    for p in range(3):
        for k in range(1, 3):
            spec = DescendantSpec("catalan", 2, p, k, 0, 0, 1)
            assert mutation_replay(spec) == descendant_digraph(spec)
        spec = DescendantSpec("catalan", 2, p, 1, 0, 0, 1, True)
        assert mutation_replay(spec) == descendant_digraph(spec)


def test_shi_matrix_exponent_rows():
    for p in range(4):
        want = descendant_expected_exponents(DescendantSpec("shi", 3, p, 1, 0, 0))
        assert want == tuple(sorted((1,) + (3,) * p + (4,) * (3 - p)))
        for k in range(1, 4):
            ca = cone(build_descendant(DescendantSpec("shi", 3, p, k, 0, 0)))
            assert tuple(sorted(lattice.char_poly(ca).roots_over_Z)) == want


def test_catalan_matrix_exponent_rows():
    for p in range(3):
        spec0 = DescendantSpec("catalan", 2, p, 1, 0, 0, 1)
        want = descendant_expected_exponents(spec0)
        assert want == tuple(sorted([1, (2 - p + 1) + 2, 2 + 2]))
        cells = [DescendantSpec("catalan", 2, p, k, 0, 0, 1) for k in (1, 2)]
        cells.append(DescendantSpec("catalan", 2, p, 1, 0, 0, 1, True))
        for spec in cells:
            ca = cone(build_descendant(spec))
            assert tuple(sorted(lattice.char_poly(ca).roots_over_Z)) == want


def test_shi_ish_bridge():
    for l, k in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        s = shi_ish(l + 1, k + 1)
        a = build_descendant(DescendantSpec("shi", l, l, k, 1, 0))
        prod = product(a, Arrangement(1, ()))
        assert len(s) == len(prod)
        assert lattice.char_poly(cone(s)).coeffs == lattice.char_poly(cone(prod)).coeffs
        got = tuple(sorted(lattice.char_poly(cone(s)).roots_over_Z))
        assert got == shi_ish_expected_exponents(l + 1)


def test_shi_ish_only_end_supersolvable():
    # for l >= 3 only the k = l member has a supersolvable cone
    l = 3
    verdicts = [lattice.supersolvable(cone(shi_ish(l, k))) is not None for k in range(1, l + 1)]
    assert verdicts == [False, False, True]


def test_descendant_witnesses_l2():
    for p in range(3):
        for k in range(1, 3):
            arr, w = descendant_witness(DescendantSpec("shi", 2, p, k, 0, 0))
            assert w is not None and w.kind == "ind_flag"
            arr, w = descendant_witness(DescendantSpec("catalan", 2, p, k, 0, 0, 1))
            assert w is not None and w.kind == "ind_flag"


def test_descendant_witness_l3_completion_path():
    arr, w = descendant_witness(DescendantSpec("catalan", 3, 1, 2, 0, 0, 1))
    assert w is not None and w.kind == "ind_flag"


def test_spec_validation():
    with pytest.raises(InputError):
        DescendantSpec("shi", 3, 0, 4)
    with pytest.raises(InputError):
        DescendantSpec("catalan", 3, 0, 3, hat=True)
    with pytest.raises(InputError):
        DescendantSpec("other", 3, 0, 1)


def test_hfam_and_cat_witness_helpers():
    from arrlab.descendants import cat_witness, hfam_witness

    ca, w = hfam_witness(3, 1, 0, 1, 1)
    assert w.kind == "ind_flag" and w.chain_prefix == ca.rank() - 1
    ca, w = cat_witness(2, 1, 1, 1, 0)
    assert w.kind == "ind_flag"
