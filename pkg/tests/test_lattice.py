import pytest

from ellimage.errors import SearchBudgetError
from ellimage.gl2 import (CartanSpec, build_cartan, full_gl2,
                          is_conjugate, mulclose)
from ellimage.lattice import (KernelModule, all_subgroups, preimage_rigidity,
                              proper_detsurjective_subgroups,
                              split_cartan_membership, verify_counterexample,
                              _det_surjective_set)
from ellimage.modarith import PrimePowerModulus, mreduce

M3 = PrimePowerModulus(3, 1)
M7 = PrimePowerModulus(7, 1)
M49 = PrimePowerModulus(7, 2)


def test_all_subgroups_gl2_f3():
    subs = all_subgroups(full_gl2(M3))
    assert len(subs) == 55
    # every returned set really is a subgroup
    for s in sorted(subs, key=len)[:10]:
        assert mulclose(sorted(s), 3) == set(s)


def _oracle_subgroups_by_triples(group):
    "Independent enumeration: closures of all generator triples."
    els = group.elements()
    m = group.mod.modulus
    seen = {frozenset([group.identity_tuple()])}
    for a in els:
        ca = frozenset(mulclose([a], m))
        seen.add(ca)
        for b in els:
            if b <= a:
                continue
            cab = frozenset(mulclose([a, b], m))
            seen.add(cab)
    # triples built from the pair closures and one more element
    frontier = list(seen)
    for S in frontier:
        for c in els:
            if c in S:
                continue
            seen.add(frozenset(mulclose(sorted(S | {c}), m)))
    return seen


def test_subgroup_search_matches_brute_force_oracle():
    g3 = full_gl2(M3)
    oracle = _oracle_subgroups_by_triples(g3)
    assert oracle == all_subgroups(g3)
    # the classified det-surjective classes agree with a direct filter
    classes = proper_detsurjective_subgroups(g3, 8, fix_mod_ell_reduction=False)
    parent = frozenset(g3.elements())
    direct = [s for s in oracle
              if s != parent and 48 // len(s) <= 8 and 48 % len(s) == 0
              and _det_surjective_set(s, M3)]
    # count conjugacy classes of the direct list
    total = sum(c.class_size for c in classes)
    assert total == len(direct)
    for c in classes:
        assert frozenset(c.representative.elements()) in oracle


def test_unique_index49_class(image49, printed_index49):
    classes = proper_detsurjective_subgroups(image49, 49)
    assert len(classes) == 1
    cls = classes[0]
    assert cls.index_in_parent == 49
    assert cls.det_surjective
    rep = cls.representative
    assert rep.order() == 504
    # representative really is a subgroup of the parent
    assert set(rep.elements()) <= set(image49.elements())
    ok, _ = is_conjugate(rep, printed_index49)
    assert ok


def test_gl2_f7_has_no_constrained_classes():
    assert proper_detsurjective_subgroups(full_gl2(M7), 49) == []


def test_unconstrained_variant_differs(image49):
    # without pinning the mod-7 image there are more det-surjective classes
    # (e.g. the full kernel over the index-2 subgroup of the reduction), so
    # the uniqueness claim holds for the constrained variant
    classes = proper_detsurjective_subgroups(image49, 49)
    assert [c.index_in_parent for c in classes] == [49]


def test_split_cartan_membership(image49, printed_index49):
    split49 = build_cartan(CartanSpec("split", M49))
    ok, idx, _ = split_cartan_membership(split49)
    assert ok and idx == 2
    ok, idx, _ = split_cartan_membership(printed_index49)
    assert ok and idx == 7
    nonsplit49 = build_cartan(CartanSpec("nonsplit", M49))
    ok, idx, _ = split_cartan_membership(nonsplit49)
    assert not ok


def test_rigidity_full_gl2():
    res = preimage_rigidity(full_gl2(M7))
    assert res.rigid
    assert res.counterexample is None


def test_rigidity_nonsplit_normalizer():
    g = build_cartan(CartanSpec("nonsplit-normalizer", M7))
    res = preimage_rigidity(g)
    assert not res.rigid
    assert verify_counterexample(g, res.counterexample)
    # the level-49 nonsplit-Cartan normalizer is also a valid witness
    cns49 = build_cartan(CartanSpec("nonsplit-normalizer", M49))
    assert verify_counterexample(g, cns49)


def test_rigidity_image49(image49):
    res = preimage_rigidity(image49)
    assert res.rigid
    assert res.checked_subspaces == 1


def test_rigidity_gl2_mod2_not_rigid():
    # the symmetric-group copy of GL2(Z/2) inside GL2(Z/4) (integer matrices
    # of order dividing 3 and the swap) is a proper det-surjective lift
    g2 = full_gl2(PrimePowerModulus(2, 1))
    res = preimage_rigidity(g2)
    assert not res.rigid
    assert verify_counterexample(g2, res.counterexample)


def test_rigidity_nonsplit_normalizer_mod3():
    g = build_cartan(CartanSpec("nonsplit-normalizer", PrimePowerModulus(3, 1)))
    res = preimage_rigidity(g)
    assert not res.rigid
    assert verify_counterexample(g, res.counterexample)
    big = build_cartan(CartanSpec("nonsplit-normalizer", PrimePowerModulus(3, 2)))
    assert verify_counterexample(g, big)


def test_rigidity_conjugation_invariant():
    g = build_cartan(CartanSpec("nonsplit-normalizer", M7))
    conj = g.conjugated_by((1, 2, 3, 0))
    assert preimage_rigidity(g).rigid == preimage_rigidity(conj).rigid


def test_stable_subspace_count_conjugation_invariant(image49):
    gens_bar = tuple(mreduce(t, 7) for t in image49.gens)
    km = KernelModule(7, gens_bar)
    n1 = len(km.stable_subspaces())
    conj = image49.conjugated_by((3, 1, 2, 1))
    km2 = KernelModule(7, tuple(mreduce(t, 7) for t in conj.gens))
    assert len(km2.stable_subspaces()) == n1


def test_counterexample_reduction_and_properness():
    g = build_cartan(CartanSpec("nonsplit-normalizer", M7))
    res = preimage_rigidity(g)
    h = res.counterexample
    assert set(h.reduce_to(1).elements()) == set(g.elements())
    assert h.det_image()[1]
    assert h.order() < g.order() * 7 ** 4


def test_brute_limit_is_hard_error(image49):
    with pytest.raises(SearchBudgetError):
        proper_detsurjective_subgroups(image49, 49, fix_mod_ell_reduction=False)
