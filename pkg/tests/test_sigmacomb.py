import json
from math import comb
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catverify.deltacomb import SimplexMap
from catverify.fincat import CategoryError, FinCat, FunctorData, check_category
from catverify.sigmacomb import (alpha, beta, expected_counts, filtration_certificate, gamma,
                                 gamma_beta_check, is_left_fibration, is_right_fibration,
                                 lambda_elements, localization_report, monotone_tuples,
                                 sext_leq, sigma_elements, sigma_functor, sigma_poset, t_leq,
                                 tw_r_projection, tw_slice_iso, verify_tuple_isomorphisms)

from strategies import posets

GOLDEN = Path(__file__).parent / "golden"


@given(st.integers(0, 6))
def test_interval_counts(n):
    assert len(sigma_elements(n)) == comb(n + 2, 2)
    assert len(lambda_elements(n)) == 2 * n + 1
    check_category(sigma_poset(min(n, 3)))


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_sigma_is_functorial(n, m, data):
    phi = data.draw(st.sampled_from(SimplexMap.all_maps(n, m)))
    sigma_functor(phi).check()


@given(st.integers(0, 4), st.data())
def test_alpha_and_beta_are_monotone(n, data):
    sext = monotone_tuples(6, n)
    s, s2 = data.draw(st.sampled_from(sext)), data.draw(st.sampled_from(sext))
    if sext_leq(s, s2):
        assert t_leq(alpha(s), alpha(s2))
    p = data.draw(st.sampled_from(sigma_elements(n)))
    assert gamma(beta(p)) == p


@given(st.integers(0, 6))
def test_gamma_beta_identity(n):
    ok, counts = gamma_beta_check(n)
    assert ok and counts["objects"] == comb(n + 2, 2)


@pytest.mark.parametrize("n", [1, 2])
def test_tuple_models_match_fibre_products(n):
    rep = verify_tuple_isomorphisms(n)
    assert rep.ok, rep.failures
    for key, value in expected_counts(n).items():
        assert rep.counts[key] == value


@given(posets(3))
def test_twisted_arrows_are_right_fibred(P):
    _, proj = tw_r_projection(P)
    assert is_right_fibration(proj)
    assert is_left_fibration(proj.op()) or not P.objects


@given(posets(3), st.data())
def test_twisted_arrows_of_a_slice(P, data):
    if not P.objects:
        return
    assert tw_slice_iso(P, data.draw(st.sampled_from(P.objects)))


def test_non_fibrations_are_rejected():
    C = FinCat.from_poset(range(2), lambda x, y: x <= y)
    _, proj = tw_r_projection(C)
    assert not is_left_fibration(proj)
    point = FinCat.from_poset([0], lambda x, y: True)
    collapse = FunctorData.of_monotone(C, point, lambda x: 0)
    assert not is_right_fibration(collapse)


def test_filtration_pairing_holds_but_literal_face_identity_fails():
    for arities in ((1,), (1, 1)):
        cert = filtration_certificate(arities, 4)
        assert cert.ok_for_filtration
        assert set(cert.violation_counts()) == {"face_next"}


def test_filtration_certificate_matches_golden():
    cert = filtration_certificate((1,), 3).to_json()
    golden = json.loads((GOLDEN / "filtration_1_dim3.json").read_text())
    assert cert == golden


def test_filtration_bounds_are_enforced():
    with pytest.raises(CategoryError, match="bound too large"):
        filtration_certificate((3,), 2)


def test_localization_has_five_classes():
    rep = localization_report(1)
    assert rep["free_on_hasse"] and rep["equivalent_to_t"]
    assert (rep["objects"], rep["skeleton"], rep["t_objects"]) == (7, 5, 5)
