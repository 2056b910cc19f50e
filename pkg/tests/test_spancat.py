import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catverify.fincat import CategoryError, FinCat
from catverify.spancat import (Span, associator, duality_data, interchange_report,
                               poset_segal_report, pullback_certificate, section_functoriality,
                               segal_report, span_cospan_coefficients_equiv, span_isomorphism,
                               subset_coefficients, terminal_coefficients, unitors)


@st.composite
def spans(draw, left=None, right=None, max_apex=3):
    left = draw(st.integers(1, 3)) if left is None else left
    right = draw(st.integers(1, 3)) if right is None else right
    apex = draw(st.integers(0, max_apex))
    f = draw(st.lists(st.integers(0, left - 1), min_size=apex, max_size=apex))
    g = draw(st.lists(st.integers(0, right - 1), min_size=apex, max_size=apex))
    return Span(left, right, f, g).check()


@st.composite
def composable(draw, k):
    feet = draw(st.lists(st.integers(1, 3), min_size=k + 1, max_size=k + 1))
    return [draw(spans(feet[i], feet[i + 1])) for i in range(k)]


@given(composable(3))
@settings(max_examples=60)
def test_associator_exists(chain):
    s, t, u = chain
    _, ok = associator(s, t, u)
    assert ok


@given(spans())
def test_unitors_exist(s):
    assert unitors(s)[2]


@given(composable(2))
def test_composite_apex_is_a_pullback(chain):
    s, t = chain
    st_ = s.then(t)
    elems = s.apex_elements(t)
    assert st_.apex == len(elems)
    assert pullback_certificate([i for i, _ in elems], [j for _, j in elems], s.g, t.f)


@given(spans(), st.randoms())
def test_isomorphism_detects_relabelled_apex(s, rnd):
    perm = list(range(s.apex))
    rnd.shuffle(perm)
    t = Span(s.left, s.right, [s.f[p] for p in perm], [s.g[p] for p in perm])
    assert span_isomorphism(s, t) is not None
    if s.apex:
        bigger = Span(s.left, s.right, s.f + (0,), s.g + (0,))
        assert span_isomorphism(s, bigger) is None


@given(composable(2), composable(2))
@settings(max_examples=40)
def test_tensor_interchanges_with_composition(a, b):
    (s, t), (s2, t2) = a, b
    lhs = s.tensor(s2).then(t.tensor(t2))
    rhs = s.then(t).tensor(s2.then(t2))
    assert span_isomorphism(lhs, rhs) is not None


def test_foot_mismatch_is_refused():
    with pytest.raises(CategoryError, match="foot mismatch"):
        Span.identity(2).then(Span.identity(3))


def test_pullback_certificate_rejects_a_non_pullback():
    f, g = (0, 0), (0,)
    assert pullback_certificate([0, 1], [0, 0], f, g)
    assert not pullback_certificate([0], [0], f, g)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_every_object_is_self_dual(n):
    assert duality_data(n)["ok"]


def test_segal_at_small_size_and_corruption():
    assert segal_report(2).ok
    bad = segal_report(2, corrupt=lambda k, h, kk: (h[:-1], kk[:-1]) if len(h) else (h, kk))
    assert not bad.ok and bad.witness["reason"] == "certificate square is not a pullback"


def test_interchange_samples():
    assert interchange_report(2, samples=30).ok


def test_spans_in_a_lattice():
    square = FinCat.from_poset(range(4), lambda x, y: (x & y) == x)
    assert poset_segal_report(square).ok


@pytest.mark.parametrize("coeff", [terminal_coefficients, subset_coefficients])
def test_coefficients_agree_with_cospans(coeff):
    assert span_cospan_coefficients_equiv(coeff(), (1,), 1).ok


def test_sections_must_be_functorial():
    coeff = subset_coefficients()
    assert section_functoriality(coeff, lambda c: (), 2).ok
    assert not section_functoriality(coeff, lambda c: tuple(range(c)), 2).ok


def test_random_spans_compose_associatively_by_count():
    rng = random.Random(3)
    for _ in range(20):
        feet = [rng.randint(1, 3) for _ in range(4)]
        s, t, u = (Span(feet[i], feet[i + 1],
                        *zip(*[(rng.randrange(feet[i]), rng.randrange(feet[i + 1]))
                               for _ in range(rng.randint(1, 3))]))
                   for i in range(3))
        assert s.then(t).then(u).apex == s.then(t.then(u)).apex
