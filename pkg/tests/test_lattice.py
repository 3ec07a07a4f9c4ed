"""Intersection posets, Mobius data, characteristic polynomials,
modular coatoms and supersolvability."""

import pytest

from arrlab import core, lattice
from arrlab import polynomials as poly
from arrlab.core import Arrangement, arrangement, cone, essentialize
from arrlab.errors import BudgetExceeded, InputError
from tests.conftest import boolean_arrangement, braid, random_arrangement


def test_boolean_2_poset():
    p = lattice.build_poset(boolean_arrangement(2))
    assert [len(lv) for lv in p.levels] == [1, 2, 1]
    assert p.mobius == ((1,), (-1, -1), (1,))


def test_braid_k3_poset_brute_force_oracle():
    k3 = braid(3)
    p = lattice.build_poset(k3)
    assert [len(lv) for lv in p.levels] == [1, 3, 1]
    assert p.mobius[2] == (2,)
    # independent oracle: enumerate all subsets, collect distinct flats
    from itertools import combinations

    from arrlab import kernels

    seen = set()
    for k in range(0, 4):
        for sub in combinations(range(3), k):
            ok, mat = kernels.rref([k3.hyperplanes[i].row for i in sub], 4)
            if ok:
                seen.add(mat)
    assert len(seen) == p.n_flats()


def test_affine_points_semilattice():
    aff = arrangement(1, [((1,), 0), ((1,), 1)])
    p = lattice.build_poset(aff)
    assert [len(lv) for lv in p.levels] == [1, 2]


def test_char_poly_empty_and_braid():
    assert lattice.char_poly(Arrangement(3, ())).coeffs == (0, 0, 0, 1)
    cp = lattice.char_poly(braid(3))
    assert cp.coeffs == poly.mul((0, 1), poly.mul((-1, 1), (-2, 1)))
    assert cp.roots_over_Z == (0, 1, 2)


def test_char_poly_cone_shi_a2():
    shi = arrangement(3, [((1, -1, 0), c) for c in (0, 1)]
                      + [((1, 0, -1), c) for c in (0, 1)]
                      + [((0, 1, -1), c) for c in (0, 1)])
    ess = essentialize(cone(shi))
    cp = lattice.char_poly(ess)
    assert cp.roots_over_Z == (1, 3, 3)


def test_both_chi_paths_agree_on_random_inputs(rng):
    for _ in range(200):
        dim = rng.randint(1, 4)
        arr = random_arrangement(rng, dim, 10)
        direct = lattice.char_poly(arr)
        via_cone = lattice.char_poly_via_cone(arr)
        assert direct.coeffs == via_cone.coeffs


def test_mobius_alternating_signs(rng):
    for _ in range(15):
        arr = random_arrangement(rng, 3, 8)
        p = lattice.build_poset(arr)
        for codim, ms in enumerate(p.mobius):
            for mu in ms:
                assert mu != 0
                assert (mu > 0) == (codim % 2 == 0)


def test_budget_exceeded_reports_level():
    with pytest.raises(BudgetExceeded) as err:
        lattice.build_poset(braid(4), max_flats=3)
    assert err.value.info.get("level") == 1


def test_modular_coatoms_boolean_and_braid():
    b3 = boolean_arrangement(3)
    coatoms = lattice.modular_coatoms(b3)
    assert len(coatoms) == 3  # every coordinate line
    k3e = essentialize(braid(3))
    assert len(lattice.modular_coatoms(k3e)) == 3


def test_modular_coatoms_generic_none():
    gen = arrangement(3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((1, 1, 1), 0)])
    assert lattice.modular_coatoms(gen) == []


def test_modular_coatom_chi_consequence(rng):
    # t * chi(A) = (t - |A \ A_X|) * chi(A_X) for every reported coatom
    for _ in range(8):
        arr = random_arrangement(rng, 3, 7, central=True)
        if arr.rank() < 2:
            continue
        for x in lattice.modular_coatoms(arr):
            sub = core.localize(arr, x)
            lhs = poly.mul((0, 1), lattice.char_poly(arr).coeffs)
            rhs = poly.mul((-(len(arr) - len(sub)), 1), lattice.char_poly(sub).coeffs)
            assert lhs == rhs


def test_modular_coatoms_requires_central():
    aff = arrangement(1, [((1,), 1)])
    with pytest.raises(InputError):
        lattice.modular_coatoms(aff)


def test_supersolvable_braid_and_exponents_match_roots():
    chain = lattice.supersolvable(braid(4))
    assert chain is not None
    assert tuple(sorted(chain.exponents)) == (0, 1, 2, 3)
    assert lattice.char_poly(braid(4)).roots_over_Z == (0, 1, 2, 3)


def test_supersolvable_cone_shi_negative():
    shi = arrangement(3, [((1, -1, 0), c) for c in (0, 1)]
                      + [((1, 0, -1), c) for c in (0, 1)]
                      + [((0, 1, -1), c) for c in (0, 1)])
    assert lattice.supersolvable(cone(shi)) is None


def test_supersolvable_nested_nish():
    from arrlab.graphs import nishi_arrangement

    ca = cone(nishi_arrangement([(-1, 0, 1), (0, 1), (0,)]))
    chain = lattice.supersolvable(ca)
    assert chain is not None
    # exponents (1, |N_w(i)| + i - 1) = (1, 3, 3, 3)
    assert tuple(sorted(chain.exponents)) == (1, 3, 3, 3)


def test_chi_cli_style_factored_string():
    cp = lattice.char_poly(braid(3))
    assert "t(t - 1)(t - 2)" in str(cp)
