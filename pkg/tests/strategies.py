"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from catverify.fincat import FinCat


@st.composite
def posets(draw, max_size=4):
    n = draw(st.integers(0, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    rel = {(i, i) for i in range(n)} | set(chosen)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return FinCat.from_poset(range(n), lambda x, y: (x, y) in rel)


@st.composite
def functions(draw, max_dom=4, max_cod=3):
    cod = draw(st.integers(1, max_cod))
    dom = draw(st.integers(0, max_dom))
    return tuple(draw(st.lists(st.integers(0, cod - 1), min_size=dom, max_size=dom))), cod
