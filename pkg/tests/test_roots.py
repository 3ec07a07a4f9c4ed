"""Root systems, order ideals, ideal arrangements, and the symbolic
intermediate-arrangement calculus."""

import pytest

from arrlab import freeness, lattice, roots
from arrlab.errors import InputError
from arrlab.roots import IntermediateType, OrderIdeal


@pytest.mark.parametrize(
    "label,count,h",
    [("A2", 3, 3), ("A3", 6, 4), ("B2", 4, 4), ("B3", 9, 6), ("C3", 9, 6),
     ("D4", 12, 6), ("G2", 6, 6), ("F4", 24, 12), ("E6", 36, 12), ("E7", 63, 18),
     ("E8", 120, 30)],
)
def test_root_counts_and_coxeter_numbers(label, count, h):
    phi = roots.build_root_system(label)
    assert len(phi.positive_roots) == count
    assert phi.coxeter_number == h
    assert all(hh >= 1 for hh in phi.heights)
    assert sorted(phi.heights)[: phi.rank] == [1] * phi.rank  # the simples


def test_heights_a2_and_b2():
    a2 = roots.build_root_system("A2")
    assert sorted(a2.heights) == [1, 1, 2]
    b2 = roots.build_root_system("B2")
    assert sorted(b2.heights) == [1, 1, 2, 3]
    g2 = roots.build_root_system("G2")
    assert sorted(g2.heights) == [1, 1, 2, 3, 4, 5]


def brute_force_ideal_count(phi):
    n = len(phi.positive_roots)
    count = 0
    for mask in range(1 << n):
        subset = {i for i in range(n) if mask >> i & 1}
        if roots.is_ideal(phi, subset):
            count += 1
    return count


@pytest.mark.parametrize("label,expected", [("A2", 5), ("B2", 6), ("A3", 14), ("G2", 8)])
def test_ideal_enumeration_matches_brute_force(label, expected):
    phi = roots.build_root_system(label)
    ideals = list(roots.enumerate_ideals(phi))
    assert len(ideals) == expected == brute_force_ideal_count(phi)
    assert len({i.roots for i in ideals}) == len(ideals)
    assert frozenset() in {i.roots for i in ideals}
    for i in ideals:
        assert roots.is_ideal(phi, i.roots)


def test_ideal_arrangement_rejects_non_ideal():
    phi = roots.build_root_system("A2")
    high = next(i for i, h in enumerate(phi.heights) if h == 2)
    with pytest.raises(InputError):
        roots.ideal_arrangement(phi, OrderIdeal(frozenset({high})))


def test_ideal_arrangement_simple_roots_boolean_like():
    phi = roots.build_root_system("A3")
    simples = OrderIdeal(frozenset(phi.simple_indices()))
    arr, pi = roots.ideal_arrangement(phi, simples)
    assert len(arr) == 3 and arr.rank() == 3
    ok, exps, _ = freeness.verify_mat_partition(arr, pi)
    assert ok and tuple(e for e in exps if e) == (1, 1, 1)


@pytest.mark.parametrize(
    "label,classical",
    [("A2", (1, 2)), ("A3", (1, 2, 3)), ("A4", (1, 2, 3, 4)),
     ("B2", (1, 3)), ("B3", (1, 3, 5)), ("B4", (1, 3, 5, 7)),
     ("C3", (1, 3, 5)), ("D4", (1, 3, 3, 5)), ("G2", (1, 5)), ("F4", (1, 5, 7, 11))],
)
def test_dual_partition_exponents_are_weyl_exponents(label, classical):
    phi = roots.build_root_system(label)
    full = OrderIdeal(frozenset(range(len(phi.positive_roots))))
    arr, pi = roots.ideal_arrangement(phi, full)
    ok, exps, msg = freeness.verify_mat_partition(arr, pi)
    assert ok, msg
    assert tuple(e for e in exps if e) == classical
    sizes = [len(b) for b in pi]
    assert sizes[0] > sizes[1]
    assert all(sizes[i] >= sizes[i + 1] for i in range(1, len(sizes) - 1))


def test_root_height_partition_monotonicity_over_all_b3_ideals():
    phi = roots.build_root_system("B3")
    for ideal in roots.enumerate_ideals(phi):
        if len(ideal.roots) < 2:
            continue
        arr, pi = roots.ideal_arrangement(phi, ideal)
        sizes = [len(b) for b in pi]
        if len(sizes) >= 2:
            assert sizes[0] > sizes[1] or sizes[1] == 0 or len(sizes) == 1
            assert all(sizes[i] >= sizes[i + 1] for i in range(1, len(sizes) - 1))


def test_intermediate_expected_exponents():
    assert roots.intermediate_expected_exponents(IntermediateType(1, 3, 3)) == (1, 4, 5)
    # k = l: top value (l-1)r + 1
    assert roots.intermediate_expected_exponents(IntermediateType(3, 3, 4)) == (1, 5, 9)
    # (0, 3, 2) realizes the D3 Weyl exponents
    assert roots.intermediate_expected_exponents(IntermediateType(0, 3, 2)) == (1, 2, 3)


def test_intermediate_flag_accuracy_closed_form():
    assert roots.intermediate_flag_accurate(1, 4, 3) is True  # 3 + 1 >= 4
    assert roots.intermediate_flag_accurate(1, 5, 3) is False  # 3 + 1 < 5
    for r in (3, 4, 5):
        for l in range(2, 7):
            for k in range(1, l):
                assert roots.intermediate_flag_accurate(k, l, r) == (r + k >= l)
    for l in range(2, 7):
        for k in range(0, l + 1):
            assert roots.intermediate_flag_accurate(k, l, 2) is True


def test_intermediate_r2_cross_validation_full_lattice():
    # the symbolic verdict must match the honest lattice search at r = 2
    from arrlab.accuracy import flag_accuracy

    for l, k in [(2, 1), (3, 0), (3, 1), (3, 2), (3, 3)]:
        arr = roots.intermediate_arrangement_r2(IntermediateType(k, l, 2))
        cp = lattice.char_poly(arr)
        assert tuple(sorted(cp.roots_over_Z)) == roots.intermediate_expected_exponents(
            IntermediateType(k, l, 2)
        )
        w = flag_accuracy(arr)
        assert (w is not None) == roots.intermediate_flag_accurate(k, l, 2)


def test_root_poset_dot_smoke():
    dot = roots.root_poset_dot(roots.build_root_system("A2"))
    assert dot.startswith("digraph") and "h=2" in dot


def test_rank4_ideal_spot_checks_flag_accurate():
    # rank <= 4 slice: the full positive systems of A4 and B4 profile as
    # flag-accurate, plus one proper rank-4 ideal each
    from arrlab.accuracy import accuracy_profile
    from arrlab.roots import ideal_arrangement

    for label in ("A4", "B4"):
        phi = roots.build_root_system(label)
        full = OrderIdeal(frozenset(range(len(phi.positive_roots))))
        arr, pi = ideal_arrangement(phi, full)
        ok, exps, msg = freeness.verify_mat_partition(arr, pi)
        assert ok, msg
        rep = accuracy_profile(arr)
        assert rep.flag_accurate, label
        proper = OrderIdeal(frozenset(i for i in range(len(phi.positive_roots))
                                      if phi.heights[i] <= 2))
        arr2, pi2 = ideal_arrangement(phi, proper)
        ok2, _, msg2 = freeness.verify_mat_partition(arr2, pi2)
        assert ok2, msg2
        rep2 = accuracy_profile(arr2)
        assert rep2.flag_accurate, label


def test_intermediate_endpoints_match_classification():
    # k = 0 (full monomial-group kernel family): flag-accurate iff r = 2 or
    # l = 2; k = l (full wreath family): always
    for r in (3, 4, 5):
        for l in (2, 3, 4, 5):
            assert roots.intermediate_flag_accurate(0, l, r) == (r == 2 or l == 2)
    for r in (3, 4):
        for l in (2, 3, 4):
            assert roots.intermediate_flag_accurate(l, l, r) is True


def test_intermediate_r2_cross_validation_l4():
    from arrlab.accuracy import flag_accuracy

    for k in (0, 1, 4):
        arr = roots.intermediate_arrangement_r2(IntermediateType(k, 4, 2))
        w = flag_accuracy(arr)
        assert (w is not None) == roots.intermediate_flag_accurate(k, 4, 2)


def test_intermediate_restriction_table_coordinate_row():
    # restricting the r = 2 intermediate arrangement to a coordinate
    # hyperplane gives the full wreath member one rank down (table row x_i)
    from arrlab.core import flat_of, restrict

    arr = roots.intermediate_arrangement_r2(IntermediateType(1, 3, 2))
    i = [h.row for h in arr.hyperplanes].index((1, 0, 0, 0))
    sub = restrict(arr, flat_of(arr, [i]))
    target = roots.intermediate_arrangement_r2(IntermediateType(2, 2, 2))
    assert len(sub) == len(target)
    assert lattice.char_poly(sub).coeffs == lattice.char_poly(target).coeffs


def test_ideal_arrangement_empty_ideal():
    phi = roots.build_root_system("A2")
    arr, pi = roots.ideal_arrangement(phi, OrderIdeal(frozenset()))
    assert len(arr) == 0 and pi == ()
