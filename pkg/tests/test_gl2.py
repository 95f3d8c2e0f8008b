import random

import pytest

from ellimage.errors import NotInvertibleError
from ellimage.gl2 import (CartanSpec, MatrixGroup, ambient_order, build_cartan,
                          conjugate_into, full_gl2, is_conjugate,
                          unit_group_generators)
from ellimage.modarith import PrimePowerModulus, mdet, minv, mmul

M7 = PrimePowerModulus(7, 1)
M49 = PrimePowerModulus(7, 2)


def test_ambient_orders():
    assert ambient_order(M7) == 2016
    assert ambient_order(M49) == 4840416
    assert ambient_order(M49, "SL2") == 115248
    with pytest.raises(ValueError):
        ambient_order(PrimePowerModulus(7, 0))


def test_enumerate_trivial_and_cartan():
    trivial = MatrixGroup(M7, [(1, 0, 0, 1)])
    assert trivial.elements() == ((1, 0, 0, 1),)
    cns = build_cartan(CartanSpec("nonsplit", M7, epsilon=3))
    assert cns.order() == 48


def test_enumerate_image49(image49):
    assert len(image49.elements()) == 24696
    assert image49.index_in_ambient() == 196


def test_generators_must_be_invertible():
    with pytest.raises(NotInvertibleError):
        MatrixGroup(M7, [(7 % 7, 1, 0, 1)])


def test_index_examples(image49):
    assert full_gl2(M7).index_in_ambient() == 1
    cnsn = build_cartan(CartanSpec("nonsplit-normalizer", M7))
    assert cnsn.index_in_ambient() == 21


def test_level_examples(image49):
    assert full_gl2(M49).level().exponent == 0
    assert image49.level() == M49
    pre = build_cartan(CartanSpec("nonsplit-normalizer", M7)).full_preimage(M49)
    assert pre.level() == M7


def test_level_of_preimage_round_trips():
    for kind in ("borel", "split-normalizer", "nonsplit-normalizer"):
        g = build_cartan(CartanSpec(kind, M7))
        assert g.full_preimage(M49).level() == g.level()


def test_det_image(image49):
    trivial = MatrixGroup(M7, [(1, 0, 0, 1)])
    dets, surj = trivial.det_image()
    assert dets == (1,) and not surj
    assert image49.det_image()[1]
    sl2ish = MatrixGroup(M7, [(1, 1, 0, 1), (1, 0, 1, 1)])
    assert sl2ish.det_image() == ((1,), False)


def test_adjoin_minus_identity():
    trivial = MatrixGroup(M7, [(1, 0, 0, 1)])
    pm = trivial.adjoin_minus_identity()
    assert pm.order() == 2
    assert pm.adjoin_minus_identity().elements() == pm.elements()
    for kind in ("borel", "nonsplit", "split-normalizer"):
        g = build_cartan(CartanSpec(kind, M7))
        assert g.adjoin_minus_identity().order() in (g.order(), 2 * g.order())


def test_reduce_group(image49):
    cns = build_cartan(CartanSpec("nonsplit", M7))
    assert cns.reduce_to(1).elements() == cns.elements()
    # the mod-7 image of the exceptional group is the full normalizer of a
    # split Cartan (order 72; it cannot fit in the order-96 nonsplit one)
    red = image49.reduce_to(1)
    assert red.order() == 72
    ok, _ = is_conjugate(red, build_cartan(CartanSpec("split-normalizer", M7)))
    assert ok
    marker = image49.reduce_to(0)
    assert marker.mod.exponent == 0 and marker.order() == 1


def test_full_preimage(image49):
    cns = build_cartan(CartanSpec("nonsplit", M7))
    assert cns.full_preimage(M7).elements() == cns.elements()
    trivial = MatrixGroup(M7, [(1, 0, 0, 1)])
    kernel = trivial.full_preimage(M49)
    assert kernel.order() == 7 ** 4
    for kind in ("borel", "split"):
        g = build_cartan(CartanSpec(kind, M7))
        assert g.full_preimage(M49).order() == g.order() * 7 ** 4
    assert image49.full_preimage(PrimePowerModulus(7, 3)).order() \
        == image49.order() * 7 ** 4


def test_preimage_of_level_one_marker():
    marker = full_gl2(M49).reduce_to(0)
    assert marker.full_preimage(M7).order() == 2016


def test_enumeration_generator_order_independent():
    rng = random.Random(3)
    g = build_cartan(CartanSpec("split-normalizer", M49))
    gens = list(g.gens)
    for _ in range(3):
        rng.shuffle(gens)
        assert MatrixGroup(M49, gens).elements() == g.elements()


def test_is_conjugate_examples():
    split = build_cartan(CartanSpec("split", M7))
    nonsplit = build_cartan(CartanSpec("nonsplit", M7))
    ok, wit = is_conjugate(split, split)
    assert ok and wit is not None
    assert is_conjugate(split, nonsplit) == (False, None)
    a = build_cartan(CartanSpec("nonsplit", M7, epsilon=3))
    b = build_cartan(CartanSpec("nonsplit", M7, epsilon=5))
    ok, wit = is_conjugate(a, b)
    assert ok
    # the witness conjugates elementwise
    c = wit.entries
    ci = minv(c, 7, 7)
    assert {mmul(mmul(c, x, 7), ci, 7) for x in a.elements()} == set(b.elements())


def test_is_conjugate_is_equivalence_on_sample():
    groups = [build_cartan(CartanSpec("nonsplit", M7, epsilon=e)) for e in (3, 5, 6)]
    conj = build_cartan(CartanSpec("nonsplit", M7, epsilon=3)).conjugated_by((1, 2, 3, 0))
    groups.append(conj)
    for a in groups:
        assert is_conjugate(a, a)[0]
        for b in groups:
            ok_ab = is_conjugate(a, b)[0]
            assert ok_ab == is_conjugate(b, a)[0]
            assert ok_ab


def test_conjugate_into_examples(printed_index49):
    split = build_cartan(CartanSpec("split", M7))
    norm = build_cartan(CartanSpec("split-normalizer", M7))
    ok, wit, idx = conjugate_into(split, norm)
    assert ok and idx == 2
    csn49 = build_cartan(CartanSpec("split-normalizer", M49))
    ok, wit, idx = conjugate_into(printed_index49, csn49)
    assert ok and idx == 7
    nonsplit = build_cartan(CartanSpec("nonsplit", M7))
    borel = build_cartan(CartanSpec("borel", M7))
    assert conjugate_into(nonsplit, borel) == (False, None, None)


def test_cartan_orders_match_formula():
    for ell in (3, 5, 7, 11, 13):
        for d in (1, 2):
            mod = PrimePowerModulus(ell, d)
            got = build_cartan(CartanSpec("nonsplit", mod)).order()
            assert got == ell ** (2 * d - 2) * (ell * ell - 1)
    assert build_cartan(CartanSpec("nonsplit-normalizer", M49)).order() == 4704


def test_section4_semidirect_order():
    for ell in (3, 5, 7):
        mod = PrimePowerModulus(ell, 2)
        g = build_cartan(CartanSpec("section4-semidirect", mod))
        assert g.order() == 2 * (ell * ell - 1) * ell ** 3
    with pytest.raises(ValueError):
        CartanSpec("section4-semidirect", M7)


def test_cartan_spec_validation():
    with pytest.raises(ValueError):
        CartanSpec("nonsplit", M7, epsilon=2)  # 2 is a square mod 7
    with pytest.raises(ValueError):
        CartanSpec("weird", M7)


def test_unit_group_generators():
    for ell, e in ((7, 2), (3, 2), (5, 1), (2, 2), (2, 3), (2, 4)):
        mod = PrimePowerModulus(ell, e)
        gens = unit_group_generators(mod)
        m = mod.modulus
        closure = {1}
        frontier = [1]
        while frontier:
            new = []
            for x in frontier:
                for u in gens:
                    y = x * u % m
                    if y not in closure:
                        closure.add(y)
                        new.append(y)
            frontier = new
        assert len(closure) == mod.unit_count()


def test_det_image_matches_enumeration():
    for kind in ("borel", "split-normalizer", "nonsplit"):
        g = build_cartan(CartanSpec(kind, M49))
        dets = {mdet(x, 49) for x in g.elements()}
        assert set(g.det_image()[0]) == dets


def test_small_generating_set():
    g = build_cartan(CartanSpec("split-normalizer", M49))
    small = g.small_generating_set()
    assert len(small) <= len(g.gens)
    assert MatrixGroup(M49, list(small)).elements() == g.elements()


def test_nullspace_solver_against_brute_force():
    # oracle: enumerate all of (Z/m)^4 for tiny m and compare solution sets
    from ellimage.gl2 import _nullspace_span
    from itertools import product
    rng = random.Random(5)
    for m in (4, 9, 8):
        for _ in range(8):
            rows = [tuple(rng.randrange(-6, 7) for _ in range(4))
                    for _ in range(rng.randrange(1, 5))]
            span = _nullspace_span(rows, m)
            for v in span:
                for r in rows:
                    assert sum(a * b for a, b in zip(r, v)) % m == 0
            brute = {x for x in product(range(m), repeat=4)
                     if all(sum(a * b for a, b in zip(r, x)) % m == 0 for r in rows)}
            spanned = {(0, 0, 0, 0)}
            frontier = [(0, 0, 0, 0)]
            while frontier:
                new = []
                for x in frontier:
                    for v in span:
                        y = tuple((a + b) % m for a, b in zip(x, v))
                        if y not in spanned:
                            spanned.add(y)
                            new.append(y)
                frontier = new
            assert spanned == brute


def test_layered_order_matches_enumeration():
    # the kernel-layer order computation and the BFS enumeration are
    # independent routes; they must agree on every named construction
    for kind in ("borel", "split", "split-normalizer", "nonsplit",
                 "nonsplit-normalizer"):
        g = build_cartan(CartanSpec(kind, M49))
        h = MatrixGroup(M49, list(g.gens))
        layered = h.order()           # computed before any enumeration
        assert layered == len(g.elements())


def test_is_conjugate_random_conjugates():
    rng = random.Random(17)
    for mod in (PrimePowerModulus(3, 2), PrimePowerModulus(5, 2), M49):
        m = mod.modulus
        base = build_cartan(CartanSpec("borel", mod))
        while True:
            c = tuple(rng.randrange(m) for _ in range(4))
            if (c[0] * c[3] - c[1] * c[2]) % mod.ell:
                break
        ok, wit = is_conjugate(base, base.conjugated_by(c))
        assert ok and wit is not None
