"""The BMₙ and BMₙ* colored operads, free algebras over them and over the
Δ^op-slice, algebras in cocartesian finite sets as functors on Σ^{n,op},
bimodule composition by pushout, and the comparison of composite algebra
cells with cocartesian cospan cells."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement, product

from .cells import (CospanKind, compose_perm, extend_classes, fibre_product_classes, inverse,
                    one_cell_classes, perms)
from .fincat import (CategoryError, FinCat, FunctorData, SetDiagram, UnionFind, colimit_in,
                     finset_category, pushout)
from .sigmacomb import lambda_multi, sigma_elements
from .spancat import CheckReport, kan_plan, lambda_set_diagram


# -- the operads ---------------------------------------------------------------

class BMOperad:
    """Colors are pairs (i, j) with 0 ≤ i ≤ j ≤ n; every multihom set is empty
    or a point."""

    def __init__(self, n, star=False):
        self.n = n
        self.star = star
        self.colors = sigma_elements(n)
        self._colors = set(self.colors)

    @property
    def name(self):
        return f"BM{self.n}" + ("*" if self.star else "")

    def multihom(self, inputs, output):
        for c in list(inputs) + [output]:
            if tuple(c) not in self._colors:
                raise CategoryError(f"invalid color {c}")
        s, t = output
        if not inputs:
            return int(s <= t) if self.star else int(s == t)
        if self.star:
            seq = [s]
            for i, j in inputs:
                seq += [i, j]
            seq.append(t)
            return int(all(a <= b for a, b in zip(seq, seq[1:])))
        if inputs[0][0] != s or inputs[-1][1] != t:
            return 0
        return int(all(inputs[r][1] == inputs[r + 1][0] for r in range(len(inputs) - 1)))

    def operations(self, max_arity):
        """All (inputs, output) with a nonempty multihom and arity ≤ max_arity."""
        out = []
        for k in range(max_arity + 1):
            for ins in product(self.colors, repeat=k):
                for z in self.colors:
                    if self.multihom(ins, z):
                        out.append((ins, z))
        return out


def composition_closure(operad, max_arity=3, max_inner=2):
    """Substitute operations of arity ≤ max_inner into every input of each
    operation of arity ≤ max_arity; the composite must again be admissible.
    Returns (ok, number of composites checked, first failure)."""
    ops = operad.operations(max(max_arity, max_inner))
    by_output = {}
    for ins, z in ops:
        if len(ins) <= max_inner:
            by_output.setdefault(z, []).append(ins)
    checked = 0
    for ins, z in ops:
        if len(ins) > max_arity:
            continue
        for subs in product(*[by_output.get(c, []) for c in ins]):
            composite = tuple(c for sub in subs for c in sub)
            checked += 1
            if not operad.multihom(composite, z):
                return False, checked, {"outer": [ins, z], "inner": list(subs)}
    return True, checked, None


# -- free algebras ---------------------------------------------------------------

class FreeAlgebra:
    """Per color, the list of elements of the free algebra; each element is
    (sequence of colors, tuple of factor elements). ``approximate`` is set
    when the chain bound cut off a nonempty term."""

    def __init__(self, values, approximate, bound):
        self.values = values
        self.approximate = approximate
        self.bound = bound

    def sizes(self):
        return {c: len(v) for c, v in self.values.items()}


def _elements(phi, c):
    return list(phi.get(c, ()))


def _product_elements(phi, colors):
    return list(product(*[_elements(phi, c) for c in colors]))


def _union_elements(phi, colors):
    return [(r, x) for r, c in enumerate(colors) for x in _elements(phi, c)]


def free_algebra(kind, n, phi, ambient="product", bound=4):
    """The free algebra on the color assignment ``phi`` (color ↦ list of
    element names) by the chain formula.

    ``kind`` is "delta" (chains i = j₀ ≤ … ≤ j_k = i′), "bm" or "bm*" (color
    sequences admitted by the operad). In the product ambient chains with an
    empty factor vanish; ``bound`` caps the chain length only when that is
    needed, and the result is then flagged approximate.
    """
    colors = sigma_elements(n)
    combine = _product_elements if ambient == "product" else _union_elements
    has_unit = ambient == "product"
    diag_empty = all(not phi.get((i, i)) for i in range(n + 1))
    finite = ambient == "product" and diag_empty
    values, approximate = {}, False
    operad = None if kind == "delta" else BMOperad(n, star=(kind == "bm*"))
    for s, t in colors:
        elems = []
        max_len = (t - s) if finite else bound
        if kind == "bm*" and finite:
            max_len = n + 1
        if has_unit and (s == t if kind != "bm*" else s <= t):
            elems.append(((), ()))
        for k in range(1, max_len + 1):
            for seq in _sequences(kind, operad, s, t, k, n):
                for x in combine(phi, seq):
                    elems.append((seq, x))
        if not finite:
            for seq in _sequences(kind, operad, s, t, max_len + 1, n):
                if combine(phi, seq):
                    approximate = True
                    break
        values[(s, t)] = elems
    return FreeAlgebra(values, approximate, None if finite else bound)


def _sequences(kind, operad, s, t, k, n):
    if kind == "delta":
        for inner in combinations_with_replacement(range(s, t + 1), k - 1):
            chain = (s,) + inner + (t,)
            yield tuple(zip(chain, chain[1:]))
        return
    for seq in product(operad.colors, repeat=k):
        if operad.multihom(seq, (s, t)):
            yield seq


def add_delta(n, phi):
    """Φ ⊔ δ: a unit element added on each superdiagonal color."""
    out = {c: [("phi", x) for x in phi.get(c, ())] for c in sigma_elements(n)}
    for i in range(n):
        out[(i, i + 1)].append(("delta", 0))
    return out


def monad_agreement(n, phi):
    """T_{Δop/[n]}Φ against T_{BMₙ}Φ, and F_{BMₙ}(Φ ⊔ δ) against F_{BMₙ*}(Φ),
    colorwise, through explicit bijections."""
    rep = CheckReport(f"free algebra agreement n={n}")
    if any(phi.get((i, i)) for i in range(n + 1)):
        raise CategoryError("diagonal colors must be empty")
    t_delta = free_algebra("delta", n, phi)
    t_bm = free_algebra("bm", n, phi)
    f_bm = free_algebra("bm", n, add_delta(n, phi))
    f_star = free_algebra("bm*", n, phi)
    counts = {}
    for c in sigma_elements(n):
        image = sorted(_delta_to_bm(e) for e in t_delta.values[c])
        if image != sorted(t_bm.values[c]) or len(set(image)) != len(image):
            rep.fail({"color": list(c), "comparison": "delta vs BM", "delta": len(t_delta.values[c]),
                      "bm": len(t_bm.values[c])})
        image = sorted(_star_to_delta_filled(e, c) for e in f_star.values[c])
        if image != sorted(f_bm.values[c]) or len(set(image)) != len(image):
            rep.fail({"color": list(c), "comparison": "BM(Φ⊔δ) vs BM*", "bm_delta": len(f_bm.values[c]),
                      "bm_star": len(f_star.values[c])})
        counts[str(c)] = [len(t_delta.values[c]), len(f_star.values[c])]
    rep.counts = counts
    return rep


def _delta_to_bm(element):
    """A chain element is already a color sequence with its factors."""
    return element


def _star_to_delta_filled(element, color):
    """Fill every gap of a BM* sequence with unit steps from δ."""
    s, t = color
    seq, xs = element
    out_seq, out_x = [], []
    pos = s
    for (i, j), x in zip(seq, xs):
        for a in range(pos, i):
            out_seq.append((a, a + 1))
            out_x.append(("delta", 0))
        out_seq.append((i, j))
        out_x.append(("phi", x))
        pos = j
    for a in range(pos, t):
        out_seq.append((a, a + 1))
        out_x.append(("delta", 0))
    if not out_seq:
        return ((), ())
    return (tuple(out_seq), tuple(out_x))


# -- algebras in cocartesian finite sets ----------------------------------------

class AlgebraDatum:
    """A Δ^op_{/[n]}-algebra in (FinSet, ⊔): sets A(i,j) and multiplications
    μ_{ijk}: A(i,j) ⊔ A(j,k) → A(i,k), stored as the pair of tables."""

    def __init__(self, n, sizes, mult):
        self.n = n
        self.sizes = dict(sizes)
        self.mult = {k: (tuple(a), tuple(b)) for k, (a, b) in mult.items()}

    def check(self):
        n, A, mu = self.n, self.sizes, self.mult
        for i in range(n + 1):
            for j in range(i, n + 1):
                for k in range(j, n + 1):
                    left, right = mu[(i, j, k)]
                    if len(left) != A[(i, j)] or len(right) != A[(j, k)]:
                        return False, ("shape", (i, j, k))
                    if any(not 0 <= v < A[(i, k)] for v in left + right):
                        return False, ("range", (i, j, k))
                    if i == j and right != tuple(range(A[(i, k)])):
                        return False, ("unit", (i, j, k))
                    if j == k and left != tuple(range(A[(i, k)])):
                        return False, ("unit", (i, j, k))
        for i, j, k, l in _quadruples(n):
            # (ab)c = a(bc) on each of the three summands
            ab_l, ab_r = mu[(i, j, k)]
            abc_l, abc_r = mu[(i, k, l)]
            bc_l, bc_r = mu[(j, k, l)]
            a_l, a_r = mu[(i, j, l)]
            if tuple(abc_l[v] for v in ab_l) != a_l:
                return False, ("associativity", (i, j, k, l))
            if tuple(abc_l[v] for v in ab_r) != tuple(a_r[v] for v in bc_l):
                return False, ("associativity", (i, j, k, l))
            if abc_r != tuple(a_r[v] for v in bc_r):
                return False, ("associativity", (i, j, k, l))
        return True, None


def _quadruples(n):
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                for l in range(k, n + 1):
                    yield i, j, k, l


def sigma_op_shape(n):
    return kan_plan((n,), "left").shape


def datum_to_functor(datum):
    """The functor Σ^{n,op} → FinSet: (i′,j′) → (i,j) acts by the right
    multiplication into A(i,j′) followed by the left one into A(i,j)."""
    S = sigma_op_shape(datum.n)
    sizes = {x: datum.sizes[x[0]] for x in S.objects}
    maps = []
    for m in range(S.n_mor):
        (a,), (b,) = S.src[m], S.dst[m]
        i2, j2 = a
        i, j = b
        right = datum.mult[(i, i2, j2)][1]
        left = datum.mult[(i, j2, j)][0]
        maps.append(tuple(left[right[v]] for v in range(datum.sizes[a])))
    return SetDiagram(S, sizes, maps)


def functor_to_datum(diagram, n):
    S = diagram.shape
    sizes = {x[0]: diagram.sizes[x] for x in S.objects}
    mult = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                left = diagram.maps[S.mor((((i, k),), ((i, j),)))]
                right = diagram.maps[S.mor((((i, k),), ((j, k),)))]
                mult[(i, j, k)] = (left, right)
    return AlgebraDatum(n, sizes, mult)


def pushout_certificate(diagram, n):
    """For every i < k < j: the square A(k,k) → A(i,k), A(k,j) → A(i,j) is a
    pushout. Returns (ok, first failing (i, k, j))."""
    S = diagram.shape

    def table(a, b):
        return diagram.maps[S.mor(((b,), (a,)))]

    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            for k in range(i + 1, j):
                f = table((k, k), (i, k))
                g = table((k, k), (k, j))
                size, inj_b, inj_c = pushout(f, g, diagram.sizes[((i, k),)], diagram.sizes[((k, j),)])
                to_ij_b = table((i, k), (i, j))
                to_ij_c = table((k, j), (i, j))
                induced = {}
                ok = True
                for v, cls in enumerate(inj_b):
                    ok &= induced.setdefault(cls, to_ij_b[v]) == to_ij_b[v]
                for v, cls in enumerate(inj_c):
                    ok &= induced.setdefault(cls, to_ij_c[v]) == to_ij_c[v]
                if not ok or sorted(induced.values()) != list(range(diagram.sizes[((i, j),)])) \
                        or len(induced) != size:
                    return False, (i, k, j)
    return True, None


def composite_certificate(diagram, n):
    """The counit of the adjunction restricting to Λⁿ: is A the left Kan
    extension of its restriction (computed over comma categories)?"""
    return kan_plan((n,), "left").is_extension(diagram)


class AlgebraFunctor:
    """A functor Σ^{n,op} → FinSet together with both composite checks."""

    def __init__(self, n, diagram):
        self.n = n
        self.diagram = diagram
        self.pushout_ok, self.pushout_witness = pushout_certificate(diagram, n)
        self.kan_ok, self.kan_witness = composite_certificate(diagram, n)

    def to_json(self):
        return {"n": self.n, "functor": self.diagram.to_json(),
                "pushout_certificate": self.pushout_ok, "kan_certificate": self.kan_ok,
                "witness": None if self.pushout_ok else list(self.pushout_witness)}


def algebra_functor_dictionary(datum):
    """Datum ↦ functor ↦ datum, with both composite checks on the functor."""
    ok, why = datum.check()
    if not ok:
        raise CategoryError(f"not an algebra datum: {why}")
    diagram = datum_to_functor(datum).check()
    back = functor_to_datum(diagram, datum.n)
    roundtrip = back.sizes == datum.sizes and back.mult == datum.mult
    return AlgebraFunctor(datum.n, diagram), roundtrip


def extend_lambda_datum(n, sizes, legs):
    """The composite algebra functor determined by its Λⁿ part: foot sizes and
    per consecutive pair (middle size, left map, right map)."""
    plan = kan_plan((n,), "left")
    return plan.extend(lambda_set_diagram(plan, sizes, legs, covariant_apex=False))


# -- bimodules ---------------------------------------------------------------------

class Bimodule:
    """A cospan a → m ← b of finite sets."""

    __slots__ = ("left", "right", "size", "f", "g")

    def __init__(self, left, right, size, f, g):
        self.left, self.right, self.size = left, right, size
        self.f, self.g = tuple(f), tuple(g)

    @classmethod
    def unit(cls, n):
        return cls(n, n, n, range(n), range(n))

    def to_json(self):
        return {"left": self.left, "right": self.right, "size": self.size,
                "f": list(self.f), "g": list(self.g)}


def compose_bimodules(m1, m2):
    """Relative tensor product over the middle algebra: the pushout of
    m1 ← b → m2."""
    if m1.right != m2.left:
        raise CategoryError(f"middle mismatch: {m1.right} vs {m2.left}")
    size, inj1, inj2 = pushout(m1.g, m2.f, m1.size, m2.size)
    return Bimodule(m1.left, m2.right, size, [inj1[v] for v in m1.f], [inj2[v] for v in m2.g])


def bimodule_isomorphism(a, b):
    """A bijection of middles commuting with both legs, or None."""
    if (a.left, a.right, a.size) != (b.left, b.right, b.size):
        return None
    h = {}
    for x, y in list(zip(a.f, b.f)) + list(zip(a.g, b.g)):
        if h.setdefault(x, y) != y:
            return None
    free_a = [v for v in range(a.size) if v not in h]
    free_b = sorted(set(range(b.size)) - set(h.values()))
    if len(set(h.values())) != len(h) or len(free_a) != len(free_b):
        return None
    h.update(zip(free_a, free_b))
    return tuple(h[v] for v in range(a.size))


def bimodule_associator(m1, m2, m3):
    """The comparison (m1 m2) m3 ≅ m1 (m2 m3), built by tracking where each
    element of the three middles lands, then verified."""
    s12, i1, i2 = pushout(m1.g, m2.f, m1.size, m2.size)
    left = compose_bimodules(compose_bimodules(m1, m2), m3)
    sl, j12, j3 = pushout(tuple(i2[v] for v in m2.g), m3.f, s12, m3.size)
    s23, k2, k3 = pushout(m2.g, m3.f, m2.size, m3.size)
    sr, l1, l23 = pushout(m1.g, tuple(k2[v] for v in m2.f), m1.size, s23)
    right = compose_bimodules(m1, compose_bimodules(m2, m3))
    h = {}
    ok = True
    for v in range(m1.size):
        ok &= h.setdefault(j12[i1[v]], l1[v]) == l1[v]
    for v in range(m2.size):
        ok &= h.setdefault(j12[i2[v]], l23[k2[v]]) == l23[k2[v]]
    for v in range(m3.size):
        ok &= h.setdefault(j3[v], l23[k3[v]]) == l23[k3[v]]
    table = tuple(h.get(v, -1) for v in range(sl))
    ok = ok and sorted(table) == list(range(sr)) and sl == sr \
        and all(table[x] == y for x, y in zip(left.f, right.f)) \
        and all(table[x] == y for x, y in zip(left.g, right.g))
    return table, ok


def compose_in_opposite(m1, m2, max_size=3):
    """The same composite found as the limit of m1 ← b → m2 in FinSet^op,
    that is by brute-force search for a universal cocone in FinSet≤max_size."""
    C = finset_category(max_size)
    shape_objs = ["b", "m1", "m2"]
    J = FinCat.from_poset(shape_objs, lambda p, q: p == q or p == "b")
    obj = {"b": m1.right, "m1": m1.size, "m2": m2.size}
    mor = []
    for lab in J.labels:
        a, c = lab
        if a == c:
            mor.append(C.id(obj[a]))
        else:
            table = m1.g if c == "m1" else m2.f
            mor.append(C.mor((obj[a], obj[c], tuple(table))))
    found = colimit_in(C, FunctorData(J, C, obj, mor))
    if found is None:
        return None
    apex, legs = found
    leg1 = C.labels[legs["m1"]][2]
    leg2 = C.labels[legs["m2"]][2]
    return Bimodule(m1.left, m2.right, apex, [leg1[v] for v in m1.f], [leg2[v] for v in m2.g])


# -- Morita cells against cospan cells ---------------------------------------------

def _cospan_bimodule(p, q, cell):
    m, f, g = cell
    return Bimodule(p, q, m, f, g)


def objects_report(max_size):
    """In (FinSet, ⊔) every set carries exactly one algebra structure: count
    the unital multiplications A ⊔ A → A."""
    rep = CheckReport("morita objects")
    for a in range(max_size + 1):
        ident = tuple(range(a))
        # unitality against the unique unit ∅ → A pins both halves of μ
        unital = [t for t in product(range(a), repeat=2 * a) if t[:a] == ident and t[a:] == ident]
        # associativity: μ(μ ⊔ id) = μ(id ⊔ μ) on A ⊔ A ⊔ A
        structures = [t for t in unital if all(
            (t[t[v]], t[t[a + v]], t[a + v]) == (t[v], t[a + t[v]], t[a + t[a + v]]) for v in range(a))]
        if len(structures) != 1:
            rep.fail({"size": a, "structures": len(structures)})
    rep.counts = {"objects": max_size + 1}
    return rep


def one_cells_report(max_size):
    """Bimodule data (two algebras, a set, two action maps) up to isomorphism,
    by raw enumeration and union-find over relabellings, against cospan classes."""
    rep = CheckReport("morita one-cells")
    cospans = {c.key(): c.aut_count for c in one_cell_classes(CospanKind, max_size)}
    found = {}
    for p in range(max_size + 1):
        for q in range(max_size + 1):
            for m in range(max_size + 1):
                raw = [(f, g) for f in product(range(m), repeat=p) for g in product(range(m), repeat=q)]
                index = {r: k for k, r in enumerate(raw)}
                uf = UnionFind(len(raw))
                group = [(a, b, c) for a in perms(p) for b in perms(q) for c in perms(m)]
                for k, (f, g) in enumerate(raw):
                    for a, b, c in group:
                        uf.union(k, index[_act(f, g, a, b, c)])
                for members in uf.classes():
                    f, g = raw[members[0]]
                    datum = AlgebraDatum(1, {(0, 0): p, (1, 1): q, (0, 1): m},
                                         {(0, 0, 0): (range(p), range(p)), (1, 1, 1): (range(q), range(q)),
                                          (0, 0, 1): (f, range(m)), (0, 1, 1): (range(m), g)})
                    if not datum.check()[0]:
                        rep.fail({"invalid_datum": [p, q, m]})
                    autos = sum(1 for a, b, c in group if _act(f, g, a, b, c) == (f, g))
                    key = _cospan_key(p, q, m, f, g)
                    if key in found:
                        rep.fail({"two_bimodule_classes_for_one_cospan": str(key)})
                    found[key] = autos
    if found != cospans:
        missing = [str(k) for k in cospans if k not in found][:3]
        rep.fail({"bimodule_classes": len(found), "cospan_classes": len(cospans), "examples": missing})
    rep.counts = {"bimodule_classes": len(found), "cospan_classes": len(cospans)}
    return rep


def _act(f, g, a, b, c):
    nf = [0] * len(f)
    for x, v in enumerate(f):
        nf[a[x]] = c[v]
    ng = [0] * len(g)
    for x, v in enumerate(g):
        ng[b[x]] = c[v]
    return tuple(nf), tuple(ng)


def _cospan_key(p, q, m, f, g):
    best = min(CospanKind.relabel((m, f, g), a, b) for a in perms(p) for b in perms(q))
    return ((p, q), (CospanKind.normalize(*best),))


def two_cells_report(max_size, corrupt=None):
    """Composite algebra cells on Σ² against pairs of bimodules glued over the
    middle algebra, with the composite (Kan) and pushout certificates compared
    on every cell and on two mutants of it, and the composite face compared
    with compose_bimodules."""
    rep = CheckReport("morita two-cells")
    c1 = one_cell_classes(CospanKind, max_size)
    c2 = extend_classes(CospanKind, c1, max_size)
    fp = fibre_product_classes(CospanKind, c1)
    by_key = {c.key(): c for c in c1}
    fp_index = {(s.key(), t.key(), theta): count for s, t, theta, count in fp}
    hit = set()
    disagreements = 0
    mutants = 0
    for k, cls in enumerate(c2):
        p, q, r = cls.feet
        legs = [cls.cells[0], cls.cells[1]]
        diagram = extend_lambda_datum(2, [p, q, r], legs)
        if corrupt is not None:
            diagram = corrupt(k, diagram)
        cell = AlgebraFunctor(2, diagram)
        if cell.pushout_ok != cell.kan_ok:
            disagreements += 1
            rep.fail({"cell": k, "reason": "certificates disagree"})
        if not cell.kan_ok:
            rep.fail({"cell": k, "feet": list(cls.feet), "reason": "extended cell is not composite"})
            continue
        for mutant in _mutants(diagram):
            mutants += 1
            m_cell = AlgebraFunctor(2, mutant)
            if m_cell.pushout_ok != m_cell.kan_ok or m_cell.kan_ok:
                disagreements += 1
                rep.fail({"cell": k, "reason": "mutant not rejected by both certificates"})
        m1 = _cospan_bimodule(p, q, legs[0])
        m2 = _cospan_bimodule(q, r, legs[1])
        face = _face_02(diagram, p, r)
        if bimodule_isomorphism(face, compose_bimodules(m1, m2)) is None:
            rep.fail({"cell": k, "reason": "composite face differs from compose_bimodules"})
        s_cls = by_key[((p, q), (legs[0],))]
        best = None
        for alpha in perms(q):
            for c in perms(r):
                cand = CospanKind.relabel(legs[1], alpha, c)
                if best is None or cand < best[0]:
                    best = (cand, alpha)
        t_cls = by_key[((q, r), (best[0],))]
        hs = {a[1] for a, _ in s_cls.autos}
        ht = {b[0] for b, _ in t_cls.autos}
        theta = min(compose_perm(compose_perm(b, best[1]), inverse(a)) for a in hs for b in ht)
        key = (s_cls.key(), t_cls.key(), theta)
        if key not in fp_index or key in hit or fp_index[key] != cls.aut_count:
            rep.fail({"cell": k, "reason": "no one-to-one match with glued bimodule pairs"})
        hit.add(key)
    if len(hit) != len(fp_index):
        rep.fail({"reason": "glued bimodule pairs not hit", "missing": len(fp_index) - len(hit)})
    rep.counts = {"one_cells": len(c1), "composite_cells": len(c2), "glued_pairs": len(fp),
                  "mutants": mutants, "certificate_disagreements": disagreements}
    return rep


def _face_02(diagram, p, r):
    S = diagram.shape
    f = diagram.maps[S.mor((((0, 2),), ((0, 0),)))]
    g = diagram.maps[S.mor((((0, 2),), ((2, 2),)))]
    return Bimodule(p, r, diagram.sizes[((0, 2),)], f, g)


def _mutants(diagram):
    """Copies of a Σ² cell with the value at (0,2) enlarged by a stray element,
    and with two of its elements identified (when possible)."""
    S = diagram.shape
    top = ((0, 2),)
    n = diagram.sizes[top]
    out = []
    sizes = dict(diagram.sizes)
    sizes[top] = n + 1
    maps = [tuple(range(n + 1)) if S.src[m] == top and S.dst[m] == top else diagram.maps[m]
            for m in range(S.n_mor)]
    out.append(SetDiagram(S, sizes, maps))
    if n >= 2:
        merge = lambda v: 0 if v == 1 else (v if v == 0 else v - 1)
        sizes = dict(diagram.sizes)
        sizes[top] = n - 1
        maps = []
        for m in range(S.n_mor):
            if S.dst[m] == top and S.src[m] == top:
                maps.append(tuple(range(n - 1)))
            elif S.dst[m] == top:
                maps.append(tuple(merge(v) for v in diagram.maps[m]))
            else:
                maps.append(diagram.maps[m])
        out.append(SetDiagram(S, sizes, maps))
    return out


def monoidal_report(max_size=2, samples=100, seed=0):
    """Disjoint union of composite cells is composite and its (0,2) value is
    the disjoint union of the two."""
    rep = CheckReport("morita monoidal")
    c2 = extend_classes(CospanKind, one_cell_classes(CospanKind, max_size), max_size)
    rng = random.Random(seed)
    for _ in range(samples):
        a, b = rng.choice(c2), rng.choice(c2)
        feet = [x + y for x, y in zip(a.feet, b.feet)]
        legs = [_sum_cell(ca, cb, pa, pb, qa) for ca, cb, pa, pb, qa in
                zip(a.cells, b.cells, a.feet, b.feet, a.feet[1:])]
        union = extend_lambda_datum(2, feet, legs)
        da = extend_lambda_datum(2, list(a.feet), list(a.cells))
        db = extend_lambda_datum(2, list(b.feet), list(b.cells))
        if union.sizes[((0, 2),)] != da.sizes[((0, 2),)] + db.sizes[((0, 2),)] \
                or not AlgebraFunctor(2, union).kan_ok:
            rep.fail({"pair": [list(a.feet), list(b.feet)]})
    rep.counts = {"pairs": samples}
    return rep


def _sum_cell(ca, cb, pa, pb, qa):
    """Disjoint union of two cospan cells (m, f, g), left cell first."""
    ma, fa, ga = ca
    mb, fb, gb = cb
    return (ma + mb, tuple(fa) + tuple(ma + v for v in fb), tuple(ga) + tuple(ma + v for v in gb))


def random_lambda_diagram(arities, max_size, rng):
    """A random functor Λ^{I,op} → FinSet with sets of size ≤ max_size. Sizes
    are drawn so that a nonempty set never maps into an empty one; tables on
    Hasse edges are then found by randomized backtracking, checking every
    two-step square (these generate all commutativity in a product of zigzags)."""
    plan = kan_plan(arities, "left")
    sub = plan.sub
    edges = [(sub.src[m], sub.dst[m]) for m in range(sub.n_mor) if _is_hasse(sub, m)]
    sizes = {}
    for v in sorted(sub.objects, key=lambda v: sum(1 for u in sub.objects if sub.leq(u, v))):
        low = int(any(sizes[u] for u in sub.objects if u != v and sub.leq(u, v)))
        sizes[v] = rng.randint(low, max(low, max_size))
    squares = {}
    for k1, e1 in enumerate(edges):
        for k2, e2 in enumerate(edges):
            if e1[1] != e2[0]:
                continue
            for k3, e3 in enumerate(edges):
                for k4, e4 in enumerate(edges):
                    if e3[0] == e1[0] and e4[1] == e2[1] and e3[1] == e4[0] and e3[1] != e1[1]:
                        squares.setdefault(max(k1, k2, k3, k4), []).append((e1, e2, e3, e4))
    tables = {}

    def assign(k):
        if k == len(edges):
            return True
        x, y = edges[k]
        cands = list(product(range(sizes[y]), repeat=sizes[x]))
        rng.shuffle(cands)
        for t in cands:
            tables[(x, y)] = t
            if all(tuple(tables[e2][v] for v in tables[e1]) == tuple(tables[e4][v] for v in tables[e3])
                   for e1, e2, e3, e4 in squares.get(k, ())):
                if assign(k + 1):
                    return True
        del tables[(x, y)]
        return False

    if not assign(0):
        return plan, None
    maps = []
    for m in range(sub.n_mor):
        x, y = sub.src[m], sub.dst[m]
        table = tuple(range(sizes[x]))
        node = x
        while node != y:
            step = next(e for e in edges if e[0] == node and sub.leq(e[1], y))
            table = tuple(tables[step][v] for v in table)
            node = step[1]
        maps.append(table)
    return plan, SetDiagram(sub, sizes, maps).check()


def _is_hasse(cat, m):
    x, y = cat.src[m], cat.dst[m]
    if x == y:
        return False
    return not any(z not in (x, y) and cat.leq(x, z) and cat.leq(z, y) for z in cat.objects)


def directional_pushout_certificate(diagram, arities):
    """For multi-indices: in each direction r, every inner split of an interval
    gives a pushout square. Returns (ok, witness)."""
    S = diagram.shape
    for x in S.objects:
        for r, (i, j) in enumerate(x):
            for k in range(i + 1, j):
                def at(iv):
                    return x[:r] + (iv,) + x[r + 1:]
                a, b, c = at((i, k)), at((k, j)), at((k, k))
                f = diagram.maps[S.mor((a, c))]
                g = diagram.maps[S.mor((b, c))]
                size, inj_b, inj_c = pushout(f, g, diagram.sizes[a], diagram.sizes[b])
                induced = {}
                ok = True
                for v, cls in enumerate(inj_b):
                    w = diagram.maps[S.mor((x, a))][v]
                    ok &= induced.setdefault(cls, w) == w
                for v, cls in enumerate(inj_c):
                    w = diagram.maps[S.mor((x, b))][v]
                    ok &= induced.setdefault(cls, w) == w
                if not ok or len(induced) != size or sorted(induced.values()) != list(range(diagram.sizes[x])):
                    return False, (x, r, k)
    return True, None


def sampled_report(arities, max_size=2, samples=30, seed=0):
    """Seeded samples of multi-index cells: the left Kan extension of a random
    Λ-diagram passes both certificates; enlarging a non-Λ value fails both."""
    rep = CheckReport(f"morita sampled {list(arities)}")
    rng = random.Random(seed)
    made = 0
    lam = set(lambda_multi(arities))
    for _ in range(samples):
        plan, g = random_lambda_diagram(arities, max_size, rng)
        if g is None:
            continue
        made += 1
        cell = plan.extend(g)
        kan = plan.is_extension(cell)[0]
        po = directional_pushout_certificate(cell, arities)[0]
        if not (kan and po):
            rep.fail({"sample": made, "kan": kan, "pushout": po})
        S = cell.shape
        top = tuple((0, n) for n in arities)
        if top not in lam:
            sizes = dict(cell.sizes)
            sizes[top] += 1
            maps = [tuple(range(sizes[top])) if S.src[m] == top else cell.maps[m] for m in range(S.n_mor)]
            mutant = SetDiagram(S, sizes, maps).check()
            kan_m = plan.is_extension(mutant)[0]
            po_m = directional_pushout_certificate(mutant, arities)[0]
            if kan_m or po_m:
                rep.fail({"sample": made, "reason": "mutant accepted", "kan": kan_m, "pushout": po_m})
    rep.counts = {"samples": made}
    rep.notes.append(f"seeded sampling (seed {seed}) above full-enumeration bounds")
    return rep


def morita_cospan_equivalence(max_size=3, sampled=((1, 1), (2, 1), (1, 2), (2, 2)), sample_size=2,
                              samples=30, seed=0, corrupt=None):
    """All comparison reports between composite algebra cells and cospan cells."""
    if max_size > 3:
        raise CategoryError("bound too large")
    reports = [objects_report(max_size), one_cells_report(max_size),
               two_cells_report(max_size, corrupt), monoidal_report(min(max_size, 2), seed=seed)]
    for arities in sampled:
        reports.append(sampled_report(arities, sample_size, samples, seed))
    return reports
