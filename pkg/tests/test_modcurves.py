import pytest

from ellimage.gl2 import CartanSpec, MatrixGroup, build_cartan, full_gl2, unit_group_generators
from ellimage.modarith import PrimePowerModulus
from ellimage.modcurves import (GenusProfile, MapDegreeSpec, genus_X0,
                                genus_X1, genus_XG, map_degree,
                                map_degree_tower)


def test_genus_tables():
    assert {n: genus_X1(n) for n in (9, 25, 49, 121, 169)} == \
        {9: 0, 25: 12, 49: 69, 121: 526, 169: 1070}
    assert {n: genus_X0(n) for n in (9, 25, 49, 121, 169)} == \
        {9: 0, 25: 0, 49: 1, 121: 6, 169: 8}
    assert genus_X1(1) == 0
    assert genus_X0(1) == 0


def test_genus_small_and_known_values():
    assert [genus_X1(n) for n in (2, 3, 4, 5, 7, 11, 13, 17, 37)] == \
        [0, 0, 0, 0, 0, 1, 2, 5, 40]
    assert [genus_X0(n) for n in (2, 7, 11, 13, 17, 32, 37, 64)] == \
        [0, 0, 1, 0, 1, 1, 2, 3]


def test_map_degree_examples():
    assert map_degree(MapDegreeSpec("gamma1", 1, 37)) == 684
    assert map_degree(MapDegreeSpec("gamma1", 7, 7)) == 49
    assert map_degree(MapDegreeSpec("gamma0", 1, 49)) == 56
    assert map_degree(MapDegreeSpec("gamma1", 2, 2)) == 2
    with pytest.raises(ValueError):
        MapDegreeSpec("gamma1", 0, 5)


def test_map_degree_c_factor():
    # 1/2 exactly when a <= 2 and ab > 2
    assert MapDegreeSpec("gamma1", 1, 2).c_f == 1
    assert MapDegreeSpec("gamma1", 2, 2).c_f == 0.5
    assert MapDegreeSpec("gamma1", 1, 3).c_f == 0.5
    assert MapDegreeSpec("gamma1", 3, 9).c_f == 1
    assert MapDegreeSpec("gamma0", 1, 3).c_f == 1


def test_map_degree_multiplicative_in_towers():
    for ell in (2, 3, 5, 7):
        for fam in ("gamma1", "gamma0"):
            for a in range(0, 3):
                for b in range(a, 4):
                    for c in range(b, 4):
                        assert map_degree_tower(fam, ell, a, c) == \
                            map_degree_tower(fam, ell, a, b) * map_degree_tower(fam, ell, b, c)


def gamma1_shape(mod):
    gens = [(1, 1, 0, 1), (mod.modulus - 1, 0, 0, mod.modulus - 1)]
    gens += [(1, 0, 0, u) for u in unit_group_generators(mod)]
    return MatrixGroup(mod, gens)


def test_genus_oracle_level_two():
    mod2 = PrimePowerModulus(2, 1)
    assert genus_XG(build_cartan(CartanSpec("borel", mod2))).genus == genus_X0(2)
    assert genus_XG(full_gl2(mod2)).genus == 0


@pytest.mark.parametrize("ell,e", [(7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (7, 2)])
def test_genus_oracle_equivalence(ell, e):
    mod = PrimePowerModulus(ell, e)
    N = mod.modulus
    borel = build_cartan(CartanSpec("borel", mod))
    assert genus_XG(borel).genus == genus_X0(N)
    assert genus_XG(gamma1_shape(mod)).genus == genus_X1(N)


def test_genus_full_group_and_level_one():
    assert genus_XG(full_gl2(PrimePowerModulus(7, 1))).genus == 0
    marker = full_gl2(PrimePowerModulus(7, 2)).reduce_to(0)
    assert genus_XG(marker) == GenusProfile(1, 1, 1, 1, 0)


def test_genus_image49(image49):
    prof = genus_XG(image49)
    assert prof.genus == 9
    assert prof.mu == 196


def test_genus_conjugation_invariant(image49):
    conj = image49.conjugated_by((1, 3, 5, 2))
    assert genus_XG(conj) == genus_XG(image49)


def test_semidirect_bound_beats_genus_table():
    # the lower bound ell(ell^2-1)/2 for the minimal orbit degree exceeds the
    # genus of X1(ell^2) exactly where the elimination needs it
    for ell in (3, 5, 7, 11, 13):
        assert ell * (ell * ell - 1) // 2 > genus_X1(ell * ell)


def test_profile_consistency():
    # 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2 is an exact integer by construction;
    # spot-check the arithmetic on a few named groups
    for kind in ("borel", "split-normalizer", "nonsplit-normalizer"):
        p = genus_XG(build_cartan(CartanSpec(kind, PrimePowerModulus(7, 1))))
        assert (12 + p.mu - 3 * p.nu2 - 4 * p.nu3 - 6 * p.nu_inf) % 12 == 0
        assert p.genus == 1 + (p.mu - 3 * p.nu2 - 4 * p.nu3 - 6 * p.nu_inf) // 12
