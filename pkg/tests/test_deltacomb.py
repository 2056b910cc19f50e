from hypothesis import given
from hypothesis import strategies as st

from catverify.deltacomb import (SimplexMap, build_marked_nerve, completeness_check,
                                 constant_simplicial, delete_simplex, delooping, discrete_nerve,
                                 inert_active_factorize, monoid_check, rezk_nerve, segal_check,
                                 simplex_category)
from catverify.fincat import CategoryError, FinCat, check_category

import pytest

from strategies import posets


@st.composite
def simplex_maps(draw, max_n=4):
    n, m = draw(st.integers(0, max_n)), draw(st.integers(0, max_n))
    return draw(st.sampled_from(SimplexMap.all_maps(n, m)))


@given(simplex_maps())
def test_inert_active_factorization(phi):
    active, inert = inert_active_factorize(phi)
    assert active.is_active() and inert.is_inert()
    assert active.then(inert) == phi


def test_truncated_simplex_category_is_a_category():
    D = simplex_category(3)
    check_category(D)
    assert len(D.hom(1, 2)) == 6


@given(posets(4))
def test_nerves_of_posets_are_complete_segal(P):
    X = rezk_nerve(P, bound=3)
    assert segal_check(X)[0]
    assert completeness_check(X)


def z2():
    return delooping([0, 1], lambda a, b: (a + b) % 2, bound=3)


def test_delooping_is_segal_and_a_monoid_but_not_complete():
    X = z2()
    assert segal_check(X)[0]
    assert monoid_check(X)[0]
    assert not completeness_check(X)


def test_deleting_a_two_simplex_breaks_segal():
    C = FinCat.from_poset(range(3), lambda x, y: x <= y)
    X = discrete_nerve(C, bound=3)
    assert segal_check(X)[0]
    simplex = ((0, 1, 2), (C.mor((0, 1)), C.mor((1, 2))))
    ok, witness = segal_check(delete_simplex(X, 2, simplex))
    assert not ok and witness == (2,)


def test_constant_data_is_complete_segal():
    X = constant_simplicial(FinCat.discrete(["a", "b"]))
    assert segal_check(X)[0]
    assert completeness_check(X)


def test_insufficient_truncation_is_refused():
    with pytest.raises(CategoryError, match="insufficient truncation"):
        segal_check(z2().__class__(1, 1, lambda i: FinCat.discrete([0]), None))


def test_marked_nerve_counts_and_rejects_foreign_marks():
    C = FinCat.from_poset(range(3), lambda x, y: x <= y)
    N = build_marked_nerve(C, [(0, 1)], 2)
    assert N.counts() == {"0": 3, "1": 3, "2": 1}
    with pytest.raises(CategoryError):
        build_marked_nerve(C, [(1, 0)], 2)
