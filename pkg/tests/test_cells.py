from itertools import combinations_with_replacement, permutations

from hypothesis import given
from hypothesis import strategies as st

from catverify.cells import CospanKind, SpanKind, compose_perm, inverse, one_cell_classes


@st.composite
def perm_pairs(draw):
    n = draw(st.integers(0, 5))
    return tuple(draw(st.permutations(range(n)))), tuple(draw(st.permutations(range(n))))


@given(perm_pairs())
def test_permutation_group_laws(pq):
    p, q = pq
    ident = tuple(range(len(p)))
    assert compose_perm(p, inverse(p)) == ident == compose_perm(inverse(p), p)
    assert inverse(compose_perm(p, q)) == compose_perm(inverse(q), inverse(p))


def brute_span_classes(max_size):
    """Spans with feet and apex of size ≤ max_size, up to relabelling all three sets."""
    total = 0
    for p in range(max_size + 1):
        for q in range(max_size + 1):
            pairs = [(a, b) for a in range(p) for b in range(q)]
            seen = set()
            for k in range(max_size + 1):
                for ms in combinations_with_replacement(pairs, k):
                    canon = min(tuple(sorted((a[x], b[y]) for x, y in ms))
                                for a in permutations(range(p)) for b in permutations(range(q)))
                    seen.add(canon)
            total += len(seen)
    return total


def test_span_classes_match_brute_force():
    assert len(one_cell_classes(SpanKind(), 2)) == brute_span_classes(2)


def test_cospan_classes_match_bimodule_count():
    assert len(one_cell_classes(CospanKind(), 2)) == 30
