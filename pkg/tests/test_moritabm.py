import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catverify.moritabm import (AlgebraFunctor, BMOperad, Bimodule, bimodule_associator,
                                bimodule_isomorphism, compose_bimodules, compose_in_opposite,
                                composition_closure, extend_lambda_datum, monad_agreement,
                                monoidal_report, objects_report, one_cells_report,
                                sampled_report, two_cells_report, _mutants)


@st.composite
def bimodules(draw, left=None, right=None):
    left = draw(st.integers(0, 2)) if left is None else left
    right = draw(st.integers(0, 2)) if right is None else right
    size = draw(st.integers(1 if left or right else 0, 3))
    if size == 0:
        return Bimodule(0, 0, 0, (), ())
    f = draw(st.lists(st.integers(0, size - 1), min_size=left, max_size=left))
    g = draw(st.lists(st.integers(0, size - 1), min_size=right, max_size=right))
    return Bimodule(left, right, size, f, g)


@st.composite
def composable(draw, k):
    feet = draw(st.lists(st.integers(0, 2), min_size=k + 1, max_size=k + 1))
    return [draw(bimodules(feet[i], feet[i + 1])) for i in range(k)]


@given(composable(3))
@settings(max_examples=60)
def test_bimodule_composition_is_associative(chain):
    _, ok = bimodule_associator(*chain)
    assert ok


@given(bimodules())
def test_units_are_neutral(m):
    assert bimodule_isomorphism(compose_bimodules(Bimodule.unit(m.left), m), m) is not None
    assert bimodule_isomorphism(compose_bimodules(m, Bimodule.unit(m.right)), m) is not None


@given(composable(2))
@settings(max_examples=30, deadline=None)
def test_composite_is_the_limit_in_the_opposite_category(chain):
    m1, m2 = chain
    direct = compose_bimodules(m1, m2)
    if direct.size > 3:
        return
    found = compose_in_opposite(m1, m2, max_size=3)
    assert found is not None and bimodule_isomorphism(found, direct) is not None


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("star", [False, True])
def test_operads_are_closed_under_substitution(n, star):
    ok, checked = composition_closure(BMOperad(n, star=star))[:2]
    assert ok and checked > 0


def test_operad_hom_sets_are_points_or_empty():
    op = BMOperad(2)
    assert op.multihom([(0, 1), (1, 2)], (0, 2))
    assert not op.multihom([(1, 2), (0, 1)], (0, 2))


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_monads_agree_for_n2(sizes):
    sup = [(0, 1), (0, 2), (1, 2)]
    phi = {c: [f"{c}{k}" for k in range(s)] for c, s in zip(sup, sizes)}
    assert monad_agreement(2, phi).ok


def test_reports_at_size_two():
    assert objects_report(2).ok
    rep = one_cells_report(2)
    assert rep.ok and rep.counts["bimodule_classes"] == rep.counts["cospan_classes"]
    assert two_cells_report(2).ok
    assert monoidal_report(2, samples=20).ok
    assert sampled_report((1, 1), 2, samples=5).ok


def test_corrupted_two_cell_is_reported():
    rep = two_cells_report(2, corrupt=lambda k, d: (_mutants(d) or [d])[0] if k == 100 else d)
    assert not rep.ok
    assert rep.witness["reason"] == "extended cell is not composite"


def test_extension_from_lambda_part_is_composite():
    diagram = extend_lambda_datum(2, [1, 2, 1], [(2, (0,), (0, 1)), (2, (0, 1), (1,))])
    cell = AlgebraFunctor(2, diagram)
    assert cell.pushout_ok and cell.kan_ok
