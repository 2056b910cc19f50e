from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catverify.fincat import (CategoryError, FinCat, FunctorData, SetDiagram, check_category,
                              check_pointwise_kan, cofinality_check, connected_components,
                              constant_functor, core, equivalence_check, finset_category,
                              finset_colimit, finset_limit, isomorphism_check, pullback, pushout,
                              validate_category)

from strategies import functions, posets


def chain(n):
    return FinCat.from_poset(range(n + 1), lambda x, y: x <= y)


@given(posets())
def test_poset_satisfies_category_laws(P):
    check_category(P)
    assert P.is_thin()
    assert P.n_mor == sum(1 for x in P.objects for y in P.objects if P.leq(x, y))


@given(posets())
def test_op_is_an_involution(P):
    Q = P.op().op()
    assert (Q.objects, Q.src, Q.dst, Q.comp) == (P.objects, P.src, P.dst, P.comp)
    check_category(P.op())


@given(posets(3), posets(3))
@settings(max_examples=30)
def test_product_counts_and_projections(P, Q):
    R = P.product(Q)
    check_category(R)
    assert len(R.objects) == len(P.objects) * len(Q.objects)
    assert R.n_mor == P.n_mor * Q.n_mor
    for k, factor in enumerate((P, Q)):
        FunctorData(R, factor, {x: x[k] for x in R.objects},
                    [factor.mor(lab[k]) for lab in R.labels]).check()


@given(functions(), st.data())
def test_pullback_counts_fibres(f_data, data):
    f, cod = f_data
    g = tuple(data.draw(st.lists(st.integers(0, cod - 1), max_size=4)))
    pb = pullback(f, g)
    assert all(f[a] == g[b] for a, b in pb)
    cf, cg = Counter(f), Counter(g)
    assert len(pb) == sum(cf[c] * cg[c] for c in range(cod))


@given(st.integers(0, 3), st.data())
def test_pushout_commutes_and_is_jointly_surjective(a, data):
    nb, nc = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    f = tuple(data.draw(st.lists(st.integers(0, nb - 1), min_size=a, max_size=a)))
    g = tuple(data.draw(st.lists(st.integers(0, nc - 1), min_size=a, max_size=a)))
    size, ib, ic = pushout(f, g, nb, nc)
    assert all(ib[f[x]] == ic[g[x]] for x in range(a))
    assert set(ib) | set(ic) == set(range(size))
    # size equals the number of components of the bipartite graph B ⊔ C with edges from A
    parent = list(range(nb + nc))

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v
    for x in range(a):
        parent[find(f[x])] = find(nb + g[x])
    assert size == len({find(v) for v in range(nb + nc)})


def cospan_shape():
    return FinCat.from_poset(["a", "b", "c"], lambda x, y: x == y or y == "c")


@given(functions(3, 3), st.data())
def test_limit_of_cospan_is_pullback(f_data, data):
    f, cod = f_data
    g = tuple(data.draw(st.lists(st.integers(0, cod - 1), max_size=3)))
    S = cospan_shape()
    maps = []
    for m in range(S.n_mor):
        s, t = S.src[m], S.dst[m]
        size = {"a": len(f), "b": len(g), "c": cod}[s]
        maps.append(tuple(range(size)) if s == t else (f if s == "a" else g))
    D = SetDiagram(S, {"a": len(f), "b": len(g), "c": cod}, maps).check()
    elements, _ = finset_limit(D)
    assert len(elements) == len(pullback(f, g))


def test_colimit_of_discrete_diagram_is_disjoint_union():
    S = FinCat.discrete(["x", "y"])
    D = SetDiagram(S, {"x": 2, "y": 3}, [(0, 1), (0, 1, 2)]).check()
    classes, _ = finset_colimit(D)
    assert len(classes) == 5


def test_set_diagram_rejects_broken_composite():
    S = chain(2)
    tables = {(0, 0): (0,), (1, 1): (0, 1), (2, 2): (0, 1), (0, 1): (0,), (1, 2): (1, 0), (0, 2): (1,)}
    sizes = {0: 1, 1: 2, 2: 2}
    SetDiagram(S, sizes, [tables[lab] for lab in S.labels]).check()
    tables[(0, 2)] = (0,)
    with pytest.raises(CategoryError):
        SetDiagram(S, sizes, [tables[lab] for lab in S.labels]).check()


def test_validate_category_synthesizes_identities():
    cat = validate_category({"objects": ["x", "y"],
                             "morphisms": [{"id": "f", "src": "x", "dst": "y"}]})
    assert len(cat.objects) == 2 and cat.n_mor == 3


def test_validate_category_rejects_non_associative_table():
    raw = {"objects": ["x"],
           "morphisms": [{"id": "e", "src": "x", "dst": "x"}, {"id": "a", "src": "x", "dst": "x"}],
           "identities": {"x": "e"},
           "compose": [["a", "a", "e"]]}
    validate_category(raw)
    raw["compose"] = [["a", "a", "a"]]
    validate_category(raw)
    bad = {"objects": ["x", "y"],
           "morphisms": [{"id": "f", "src": "x", "dst": "y"}],
           "compose": [["f", "f", "f"]]}
    with pytest.raises(CategoryError):
        validate_category(bad)


def test_validate_category_rejects_duplicate_objects():
    with pytest.raises(CategoryError):
        validate_category({"objects": ["x", "x"], "morphisms": []})


@given(posets())
def test_identity_is_an_equivalence_and_core_is_discrete(P):
    ident = FunctorData.identity(P)
    assert equivalence_check(ident) and isomorphism_check(ident)
    assert core(P).n_mor == len(P.objects)


def test_finset_category_counts():
    F = finset_category(2)
    assert len(F.objects) == 3
    assert F.n_mor == sum(b ** a for a in range(3) for b in range(3))


@given(st.integers(0, 4))
def test_top_element_is_final_not_initial(n):
    C = chain(n)
    pt = FinCat.from_poset([0], lambda x, y: True)
    top = FunctorData.of_monotone(pt, C, lambda _: n)
    assert cofinality_check(top, "final")
    assert cofinality_check(top, "initial") == (n == 0)


@given(st.integers(1, 4))
def test_pointwise_kan_on_chains(n):
    C = chain(n)
    const = constant_functor(C, C, 0)
    assert check_pointwise_kan(const, [n], "right")[0]
    ok, witness = check_pointwise_kan(FunctorData.identity(C), [n], "right")
    assert not ok and witness is not None


@given(posets())
def test_components_partition_objects(P):
    comps = connected_components(P)
    assert sorted(x for c in comps for x in c) == sorted(P.objects)
