import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catverify import fibrations as fib
from catverify.fincat import CategoryError, FinCat, FunctorData, isomorphism_check

from strategies import posets


def to_point(A):
    return FunctorData(A, fib.point(), {x: "*" for x in A.objects}, [0] * A.n_mor)


def constant(base, X):
    return fib.cat_functor(base, {c: X for c in base.objects},
                           [{x: x for x in X.objects}] * base.n_mor)


@given(posets(3), posets(2))
@settings(max_examples=30, deadline=None)
def test_constant_functor_gives_a_product_projection(C, X):
    if not C.objects:
        return
    data = fib.grothendieck(constant(C, X))
    tot = data.functor.source
    prod = C.product(X)
    assert len(tot.objects) == len(prod.objects) and tot.n_mor == prod.n_mor
    comparison = FunctorData(tot, prod, {x: x for x in tot.objects},
                             [prod.hom(tot.src[m], tot.dst[m])[0] for m in range(tot.n_mor)])
    assert isomorphism_check(comparison.check())
    assert data.check().ok


@given(st.randoms(use_true_random=False))
@settings(max_examples=15, deadline=None)
def test_grothendieck_hom_counts(rnd):
    rng = random.Random(rnd.random())
    F = fib.random_cat_functor(rng, 3, 2)
    data = fib.grothendieck(F)
    tot = data.functor.source
    assert data.check().ok
    for x in tot.objects:
        for y in tot.objects:
            assert len(tot.hom(x, y)) == fib.grothendieck_hom_count(F, x, y)


def test_chain_over_a_point_fails_every_criterion():
    A = fib.chain(1)
    rep = fib.check_bifibration(fib.OverProduct(A, to_point(A), to_point(A)))
    assert rep.counts["hypotheses"]
    assert rep.counts["criteria"] == [False] * 4
    assert not rep.ok


@pytest.mark.parametrize("I", [fib.chain(1), fib.chain(2), fib.discrete(2)], ids=["[1]", "[2]", "2pt"])
def test_arrow_category_passes_every_criterion(I):
    rep = fib.check_bifibration(fib.arrow_bifibration(I))
    assert rep.ok and rep.counts["criteria"] == [True] * 4


def test_groupoid_over_a_point_is_a_bifibration():
    G = fib.cyclic_group(2)
    assert fib.check_bifibration(fib.OverProduct(G, to_point(G), to_point(G))).ok


def test_set_over_a_point_is_self_dual():
    S = fib.discrete(2)
    bif = fib.OverProduct(S, to_point(S), to_point(S))
    L, _ = fib.left_dual(bif)
    assert fib.iso_over_base(bif, fib.OverProduct(L.total, fib.retarget(L.first, fib.point()),
                                                  L.second)) is not None


def test_dualization_roundtrips_on_generated_instances():
    for name, bif in fib.generated_bifibrations(9, random.Random(1)):
        assert fib.dualization_report(bif, name).ok, name


def test_left_and_right_fibrations_are_detected():
    I = fib.chain(1)
    tw, s, d = fib.tw_legs(I)
    pair = fib.pair_functor(s, d)
    assert fib.is_right_fib(pair)
    assert not fib.is_left_fib(pair)
    assert not fib.is_right_fib(to_point(fib.chain(1)))
    assert fib.is_right_fib(to_point(fib.cyclic_group(2)))


def test_twisted_arrows_over_the_one_simplex_have_three_objects():
    tw, _, _ = fib.tw_legs(fib.chain(1))
    assert len(tw.objects) == 3


def test_two_step_twisted_arrows_of_the_one_simplex():
    T, *_ = fib.tw2(fib.chain(1))
    assert len(T.objects) == 4
    assert fib.tw2_report(fib.chain(1)).ok


def test_free_bifibration_on_empty_and_arrow_data():
    I = fib.chain(1)
    E = FinCat([], [], [], {}, {}, [])
    empty = fib.OverProduct(E, FunctorData(E, I, {}, []), FunctorData(E, I, {}, []))
    assert fib.free_bifibration_check(I, empty).ok
    assert fib.free_bifibration_check(I, fib.arrow_bifibration(I)).ok
    with pytest.raises(CategoryError, match="bound too large"):
        fib.free_bifibration_check(fib.chain(3), fib.arrow_bifibration(fib.chain(3)))


def test_poset_enumeration_counts():
    assert len(fib.posets_up_to_iso(4)) == 1 + 1 + 2 + 5 + 16
    assert len(fib.posets_up_to_iso(5)) == 25 + 63


def test_twisted_arrow_right_fibrations_small():
    assert fib.twr_right_fibration_report(3).ok


def test_sections_via_twisted_arrows():
    rng = random.Random(2)
    for _, E in fib.generated_bifibrations(3, rng):
        C = fib.chain(1)
        for al in fib.enumerate_functors(C, E.first.target)[:2]:
            for be in fib.enumerate_functors(C, E.second.target)[:2]:
                assert fib.sections_via_tw(E, C, al, be).ok


def test_functor_fibrations():
    for inst in fib.generated_fun_instances(4, random.Random(5)):
        assert fib.fun_fibration_check(*inst).ok


def test_fibration_with_connected_fibres_is_cofinal():
    data = fib.grothendieck(constant(fib.chain(1), fib.chain(1)), "covariant")
    rep = fib.cofinal_fibration_report(fib.as_op(data.functor))
    assert rep.ok


def test_fibration_data_serializes():
    data = fib.grothendieck(constant(fib.chain(1), fib.point()))
    out = data.to_json()
    assert out["kind"] and "marked" in out
