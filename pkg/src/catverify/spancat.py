"""Spans of finite sets and of finite posets: composition by pullback,
cartesian cells, Segal and mapping-object checks, monoidal structure,
self-duality, and spans with coefficients in a category-valued functor."""

from __future__ import annotations

import random
from itertools import product

from .cells import (SpanKind, compose_perm, extend_classes, fibre_product_classes, inverse,
                    one_cell_classes, perms)
from .fincat import (CategoryError, CatFunctor, FinCat, FunctorData, KanPlan, SetDiagram, UnionFind,
                     check_pointwise_kan, double_slice, finset_category, is_cartesian, is_colimit_cocone,
                     lifts_from_poset, restrict_lift, total_category)
from .sigmacomb import (TupleModels, alpha, beta, gamma, lambda_multi, multi_poset, sext_cartesian,
                        sigma_multi, t_marked)

MAX_RAW_CANDIDATES = 10 ** 6


# -- spans of finite sets ---------------------------------------------------

class Span:
    """x ← c → y with x = {0..left-1}, y = {0..right-1}, legs as tables on c."""

    __slots__ = ("left", "right", "f", "g")

    def __init__(self, left, right, f, g):
        self.left, self.right = left, right
        self.f, self.g = tuple(f), tuple(g)

    @property
    def apex(self):
        return len(self.f)

    def check(self):
        if len(self.f) != len(self.g):
            raise CategoryError("legs have different domains")
        if any(not 0 <= v < self.left for v in self.f) or any(not 0 <= v < self.right for v in self.g):
            raise CategoryError("leg leaves its foot")
        return self

    @classmethod
    def identity(cls, n):
        return cls(n, n, range(n), range(n))

    @classmethod
    def from_pairs(cls, left, right, pairs):
        return cls(left, right, [a for a, _ in pairs], [b for _, b in pairs])

    def pairs(self):
        return tuple(sorted(zip(self.f, self.g)))

    def apex_elements(self, other):
        """The canonical pullback over the shared foot, in lexicographic order."""
        return [(i, j) for i in range(self.apex) for j in range(other.apex) if self.g[i] == other.f[j]]

    def then(self, other):
        """The composite ``other ∘ self`` (self first)."""
        if self.right != other.left:
            raise CategoryError(f"foot mismatch: {self.right} vs {other.left}")
        elems = self.apex_elements(other)
        return Span(self.left, other.right, [self.f[i] for i, _ in elems], [other.g[j] for _, j in elems])

    def tensor(self, other):
        """Objectwise product; the pair (a, b) is encoded as a·|second| + b."""
        idx = list(product(range(self.apex), range(other.apex)))
        return Span(self.left * other.left, self.right * other.right,
                    [self.f[i] * other.left + other.f[j] for i, j in idx],
                    [self.g[i] * other.right + other.g[j] for i, j in idx])

    def to_json(self):
        return {"left": self.left, "right": self.right, "apex": self.apex,
                "f": list(self.f), "g": list(self.g)}

    def __repr__(self):
        return f"Span({self.left} ← {self.apex} → {self.right}; {list(zip(self.f, self.g))})"


def compose_spans(s, t):
    """Compose s: x ← a → y with t: y ← b → z by pullback over y."""
    return s.then(t)


def is_span_map(s, t, h):
    return (len(h) == s.apex and all(t.f[h[i]] == s.f[i] and t.g[h[i]] == s.g[i]
                                     for i in range(s.apex)))


def is_bijection(h, n):
    return sorted(h) == list(range(n))


def span_isomorphism(s, t):
    """An apex bijection commuting with both legs, or None."""
    if (s.left, s.right, s.apex) != (t.left, t.right, t.apex):
        return None
    pool = {}
    for j in range(t.apex):
        pool.setdefault((t.f[j], t.g[j]), []).append(j)
    h = []
    for i in range(s.apex):
        bucket = pool.get((s.f[i], s.g[i]))
        if not bucket:
            return None
        h.append(bucket.pop(0))
    return tuple(h)


def associator(s, t, u):
    """The comparison (s;t);u ≅ s;(t;u), built from the triple coordinates of
    apex elements and then verified. Returns (map, ok)."""
    st, tu = s.then(t), t.then(u)
    st_elems, tu_elems = s.apex_elements(t), t.apex_elements(u)
    left, right = st.then(u), s.then(tu)
    right_index = {}
    for k, (i, m) in enumerate(s.apex_elements(tu)):
        j, l = tu_elems[m]
        right_index[(i, j, l)] = k
    h = []
    for m, l in st.apex_elements(u):
        i, j = st_elems[m]
        h.append(right_index.get((i, j, l), -1))
    h = tuple(h)
    return h, is_bijection(h, right.apex) and is_span_map(left, right, h)


def unitors(s):
    """The comparisons id;s ≅ s and s;id ≅ s. Returns (left map, right map, ok)."""
    a = Span.identity(s.left).then(s)
    b = s.then(Span.identity(s.right))
    ha = tuple(j for _, j in Span.identity(s.left).apex_elements(s))
    hb = tuple(i for i, _ in s.apex_elements(Span.identity(s.right)))
    ok = (is_bijection(ha, s.apex) and is_span_map(a, s, ha)
          and is_bijection(hb, s.apex) and is_span_map(b, s, hb))
    return ha, hb, ok


def pullback_certificate(h, k, f, g):
    """Is the square e →h a →f y, e →k b →g y a pullback of finite sets?"""
    if len(h) != len(k) or any(f[h[e]] != g[k[e]] for e in range(len(h))):
        return False
    comparison = list(zip(h, k))
    return sorted(comparison) == [(a, b) for a in range(len(f)) for b in range(len(g)) if f[a] == g[b]]


def span_of_cell(p, q, cell):
    return Span.from_pairs(p, q, cell)


# -- cartesian cells --------------------------------------------------------

class SpanCell:
    """A functor Σᴵ → C with its cartesian certificate.

    For finite sets the certificate lists the pullback squares checked
    (for one-dimensional I) or the objects where the pointwise Kan condition
    was verified (for multi-indices).
    """

    def __init__(self, arities, diagram, certificate, aut_count=None):
        self.arities = tuple(arities)
        self.diagram = diagram
        self.certificate = list(certificate)
        self.aut_count = aut_count

    def verify(self):
        d = self.diagram
        S = d.shape
        for sq in self.certificate:
            if sq[0] == "square":
                _, top, left, right, bottom = sq
                h = d.maps[S.mor((top, left))]
                k = d.maps[S.mor((top, right))]
                f = d.maps[S.mor((left, bottom))]
                g = d.maps[S.mor((right, bottom))]
                if not pullback_certificate(h, k, f, g):
                    return False, sq
            else:
                sub = lambda_multi(self.arities)
                if not check_pointwise_kan(d, sub, "right")[0]:
                    return False, sq
        return True, None

    def to_json(self):
        return {"index": list(self.arities), "functor": self.diagram.to_json(),
                "certificate": [[str(x) for x in sq] for sq in self.certificate],
                "automorphisms": self.aut_count}


def interval_squares(n):
    """The squares (i,j) → (i,j−1), (i+1,j) → (i+1,j−1) certifying a cartesian
    functor on Σⁿ."""
    return [("square", ((i, j),), ((i, j - 1),), ((i + 1, j),), ((i + 1, j - 1),))
            for i in range(n + 1) for j in range(i + 2, n + 1)]


_PLANS = {}


def kan_plan(arities, side="right"):
    key = (tuple(arities), side)
    if key not in _PLANS:
        shape = sigma_multi(arities)
        if side == "left":
            shape = shape.op()
        _PLANS[key] = KanPlan(shape, lambda_multi(arities), side)
    return _PLANS[key]


def lambda_set_diagram(plan, feet, legs, covariant_apex=True):
    """A Λⁿ diagram from foot sizes and, per consecutive pair, (apex size, left
    leg, right leg). Legs go apex → foot when ``covariant_apex`` (spans) and
    foot → apex otherwise (cospans)."""
    sub = plan.sub
    sizes = {((i, i),): feet[i] for i in range(len(feet))}
    tables = {}
    for i, (m, f, g) in enumerate(legs):
        a, b, c = ((i, i),), ((i, i + 1),), ((i + 1, i + 1),)
        sizes[b] = m
        if covariant_apex:
            tables[(b, a)], tables[(b, c)] = tuple(f), tuple(g)
        else:
            tables[(a, b)], tables[(c, b)] = tuple(f), tuple(g)
    maps = []
    for k in range(sub.n_mor):
        x, y = sub.src[k], sub.dst[k]
        maps.append(tuple(range(sizes[x])) if x == y else tables[(x, y)])
    return SetDiagram(sub, sizes, maps)


def span_chain_cell(cls):
    """The cartesian functor on Σⁿ determined by a chain of spans."""
    n = len(cls.cells)
    plan = kan_plan((n,))
    legs = [(len(c), [a for a, _ in c], [b for _, b in c]) for c in cls.cells]
    diagram = plan.extend(lambda_set_diagram(plan, cls.feet, legs))
    return SpanCell((n,), diagram, interval_squares(n), cls.aut_count)


def _estimate_raw(arities, max_size):
    objs = len(lambda_multi(arities))
    return (max_size + 1) ** objs * max(1, max_size) ** (objs * objs)


def enumerate_span_cells(ambient, arities, max_size=2):
    """Isomorphism classes of cartesian functors Σᴵ → C.

    ``ambient`` is the string "finset" (skeleton of sets of size ≤ max_size)
    or a finite poset with binary meets given as a FinCat.
    """
    arities = tuple(arities)
    if any(a > 2 for a in arities):
        raise CategoryError("bound too large")
    if isinstance(ambient, FinCat):
        return _poset_cells(ambient, arities)
    nonzero = [a for a in arities if a]
    if not nonzero:
        plan = kan_plan(arities)
        out = []
        for n in range(max_size + 1):
            d = SetDiagram(plan.shape, {plan.shape.objects[0]: n}, [tuple(range(n))])
            out.append(SpanCell(arities, d, [], aut_count=_factorial(n)))
        return out
    if len(nonzero) == 1 and len(arities) == 1:
        classes = one_cell_classes(SpanKind, max_size)
        for _ in range(arities[0] - 1):
            classes = extend_classes(SpanKind, classes, max_size)
        return [span_chain_cell(c) for c in classes]
    return _brute_force_cells(arities, max_size)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _poset_cells(P, arities):
    """Monotone maps Λᴵ → P extended by meets; each Λᴵ diagram must extend
    uniquely, which is checked against every monotone extension."""
    shape = sigma_multi(arities)
    lam = lambda_multi(arities)
    lam_set = set(lam)
    others = [x for x in shape.objects if x not in lam_set]
    out = []
    for values in product(P.objects, repeat=len(lam)):
        assign = dict(zip(lam, values))
        if not all(P.leq(assign[x], assign[y]) for x in lam for y in lam if shape.leq(x, y)):
            continue
        extensions = []
        for rest in product(P.objects, repeat=len(others)):
            full = dict(assign)
            full.update(zip(others, rest))
            if all(P.leq(full[x], full[y]) for x in shape.objects for y in shape.objects
                   if shape.leq(x, y)):
                functor = FunctorData.of_monotone(shape, P, full.__getitem__)
                if check_pointwise_kan(functor, lam, "right")[0]:
                    extensions.append(functor)
        if len(extensions) != 1:
            raise CategoryError(f"Λ-diagram {values} has {len(extensions)} cartesian extensions")
        out.append(extensions[0])
    return out


def _brute_force_cells(arities, max_size):
    """Cartesian functors for multi-indices by raw enumeration of Λᴵ diagrams
    and brute-force canonical forms; small bounds only."""
    if _estimate_raw(arities, max_size) > MAX_RAW_CANDIDATES:
        raise CategoryError("bound too large")
    plan = kan_plan(arities)
    sub = plan.sub
    objs = sub.objects
    gens = [m for m in range(sub.n_mor) if not sub.is_identity(m)
            and not any(sub.comp.get((g, f)) == m for g in range(sub.n_mor) for f in range(sub.n_mor)
                        if not sub.is_identity(g) and not sub.is_identity(f))]
    seen = {}
    for sizes_t in product(range(max_size + 1), repeat=len(objs)):
        sizes = dict(zip(objs, sizes_t))
        choices = [list(product(range(sizes[sub.dst[m]]), repeat=sizes[sub.src[m]])) for m in gens]
        for tables in product(*choices):
            maps = _close_maps(sub, sizes, dict(zip(gens, tables)))
            if maps is None:
                continue
            key = _canonical_diagram(sub, sizes, maps)
            if key not in seen:
                seen[key] = (sizes, maps, 0)
            s, m, c = seen[key]
            seen[key] = (s, m, c + 1)
    out = []
    for key in sorted(seen):
        sizes, maps, hits = seen[key]
        diagram = plan.extend(SetDiagram(sub, sizes, maps))
        group = 1
        for n in sizes.values():
            group *= _factorial(n)
        # orbit-stabilizer: |Aut| = |group| / |orbit|
        out.append(SpanCell(arities, diagram, [("kan",)], aut_count=group // hits))
    return out


def _close_maps(sub, sizes, gen_tables):
    """Fill in composite tables from generators; None if paths disagree."""
    maps = [None] * sub.n_mor
    for x in sub.objects:
        maps[sub.id(x)] = tuple(range(sizes[x]))
    for m, t in gen_tables.items():
        maps[m] = t
    changed = True
    while changed:
        changed = False
        for (g, f), h in sub.comp.items():
            if maps[g] is None or maps[f] is None:
                continue
            val = tuple(maps[g][v] for v in maps[f])
            if maps[h] is None:
                maps[h] = val
                changed = True
            elif maps[h] != val:
                return None
    return maps


def _canonical_diagram(sub, sizes, maps):
    objs = sub.objects
    best = None
    for ps in product(*[perms(sizes[x]) for x in objs]):
        pm = dict(zip(objs, ps))
        key = tuple(tuple(pm[sub.dst[m]][v] for v in _permute_domain(maps[m], pm[sub.src[m]]))
                    for m in range(sub.n_mor))
        if best is None or key < best:
            best = key
    return (tuple(sizes[x] for x in objs), best)


def _permute_domain(table, p):
    out = [0] * len(table)
    for i, v in enumerate(table):
        out[p[i]] = v
    return out


# -- Segal and mapping-object checks ----------------------------------------

class CheckReport:
    """Outcome of a family of checks: counts plus the first failure."""

    def __init__(self, name):
        self.name = name
        self.ok = True
        self.counts = {}
        self.witness = None
        self.notes = []

    def fail(self, witness):
        if self.ok:
            self.witness = witness
        self.ok = False

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "counts": dict(self.counts),
                "witness": self.witness, "notes": list(self.notes)}


def _orbit_min(theta, hs, ht):
    return min(compose_perm(compose_perm(b, theta), inverse(a)) for a in hs for b in ht)


def segal_report(max_size=3, corrupt=None):
    """The Segal comparison Span₁(C)₂ → Span₁(C)₁ ×_{C≃} Span₁(C)₁ on
    isomorphism classes and automorphism counts, for C = finite sets of size
    ≤ max_size. ``corrupt(k, h, k_leg)`` may alter the legs of the k-th
    composite cell, to test that certificate failures are caught."""
    rep = CheckReport("span segal comparison")
    c1 = one_cell_classes(SpanKind, max_size)
    c2 = extend_classes(SpanKind, c1, max_size)
    fp = fibre_product_classes(SpanKind, c1)
    by_key = {c.key(): c for c in c1}
    fp_index = {}
    for s, t, theta, count in fp:
        fp_index[(s.key(), t.key(), theta)] = count
    hit = set()
    for k, cls in enumerate(c2):
        p, q, r = cls.feet
        s = span_of_cell(p, q, cls.cells[0])
        t = span_of_cell(q, r, cls.cells[1])
        elems = s.apex_elements(t)
        h = tuple(i for i, _ in elems)
        kk = tuple(j for _, j in elems)
        if corrupt is not None:
            h, kk = corrupt(k, h, kk)
        if not pullback_certificate(h, kk, s.g, t.f):
            rep.fail({"cell": k, "feet": list(cls.feet), "reason": "certificate square is not a pullback"})
            continue
        s_cls = by_key[((p, q), (cls.cells[0],))]
        best = None
        for pq in perms(q):
            for c in perms(r):
                cand = SpanKind.relabel(cls.cells[1], pq, c)
                if best is None or cand < best[0]:
                    best = (cand, pq)
        t_cls = by_key[((q, r), (best[0],))]
        theta = _orbit_min(best[1], {a[1] for a, _ in s_cls.autos}, {b[0] for b, _ in t_cls.autos})
        key = (s_cls.key(), t_cls.key(), theta)
        if key not in fp_index:
            rep.fail({"cell": k, "reason": "no matching fibre-product class"})
            continue
        if key in hit:
            rep.fail({"cell": k, "reason": "two composite classes over one fibre-product class"})
        hit.add(key)
        if fp_index[key] != cls.aut_count:
            rep.fail({"cell": k, "reason": "automorphism counts differ",
                      "composite": cls.aut_count, "fibre_product": fp_index[key]})
    if len(hit) != len(fp_index):
        rep.fail({"reason": "fibre-product classes not hit", "missing": len(fp_index) - len(hit)})
    rep.counts = {"one_cells": len(c1), "composite_classes": len(c2),
                  "fibre_product_classes": len(fp), "composite_automorphisms": sum(c.aut_count for c in c2)}
    return rep


def mapping_report(max_size=3):
    """For each pair of feet, spans with labelled feet up to apex isomorphism
    against isomorphism classes of objects of the double slice C_{/x,y}."""
    rep = CheckReport("span mapping objects")
    total = 0
    for p in range(max_size + 1):
        for q in range(max_size + 1):
            expected = {cell: SpanKind.apex_weight(cell) for cell in SpanKind.cells(p, q, max_size)}
            found = {}
            for c in range(max_size + 1):
                objs = [(f, g) for f in product(range(p), repeat=c) for g in product(range(q), repeat=c)]
                index = {o: i for i, o in enumerate(objs)}
                uf = UnionFind(len(objs))
                for i, (f, g) in enumerate(objs):
                    for pi in perms(c):
                        uf.union(i, index[(tuple(f[v] for v in pi), tuple(g[v] for v in pi))])
                for members in uf.classes():
                    f, g = objs[members[0]]
                    autos = sum(1 for pi in perms(c) if all(f[pi[v]] == f[v] and g[pi[v]] == g[v]
                                                            for v in range(c)))
                    found[tuple(sorted(zip(f, g)))] = autos
            total += len(found)
            if found != expected:
                rep.fail({"feet": [p, q], "spans": len(expected), "slice_classes": len(found)})
    rep.counts = {"slice_classes": total}
    return rep


def double_slice_classes(cat, x, y):
    """Isomorphism classes of objects of C_{/x,y} for a general finite category."""
    sl, _ = double_slice(cat, x, y)
    uf = UnionFind(len(sl.objects))
    for m in range(sl.n_mor):
        if sl.is_iso(m):
            uf.union(sl.index[sl.src[m]], sl.index[sl.dst[m]])
    return len(uf.classes())


def associativity_report(max_size=3, sample=None, seed=0):
    """Constructed associators on classes of composable triples and unitors on
    every span; ``sample`` limits the triples by seeded sampling."""
    rep = CheckReport("span associativity")
    c1 = one_cell_classes(SpanKind, max_size)
    for cls in c1:
        s = span_of_cell(cls.feet[0], cls.feet[1], cls.cells[0])
        if not unitors(s)[2]:
            rep.fail({"unitor": s.to_json()})
    c3 = extend_classes(SpanKind, extend_classes(SpanKind, c1, max_size), max_size)
    chosen = c3
    if sample is not None and sample < len(c3):
        chosen = random.Random(seed).sample(c3, sample)
        rep.notes.append(f"sampled {sample} of {len(c3)} triple classes with seed {seed}")
    for cls in chosen:
        p, q, r, t = cls.feet
        spans = [span_of_cell(a, b, c) for a, b, c in zip((p, q, r), (q, r, t), cls.cells)]
        _, ok = associator(*spans)
        if not ok:
            rep.fail({"triple": [s.to_json() for s in spans]})
    rep.counts = {"one_cells": len(c1), "triple_classes": len(c3), "checked": len(chosen)}
    return rep


def interchange_report(max_size=2, samples=200, seed=0):
    """(s ⊗ s');(t ⊗ t') ≅ (s;t) ⊗ (s';t') on seeded samples of 2×2 grids."""
    rep = CheckReport("span interchange")
    c2 = extend_classes(SpanKind, one_cell_classes(SpanKind, max_size), max_size)
    rng = random.Random(seed)
    for _ in range(samples if c2 else 0):
        a, b = rng.choice(c2), rng.choice(c2)
        s, t = span_of_cell(a.feet[0], a.feet[1], a.cells[0]), span_of_cell(a.feet[1], a.feet[2], a.cells[1])
        s2, t2 = span_of_cell(b.feet[0], b.feet[1], b.cells[0]), span_of_cell(b.feet[1], b.feet[2], b.cells[1])
        lhs = s.tensor(s2).then(t.tensor(t2))
        rhs = s.then(t).tensor(s2.then(t2))
        if span_isomorphism(lhs, rhs) is None:
            rep.fail({"grid": [x.to_json() for x in (s, t, s2, t2)]})
    rep.counts = {"grids": samples if c2 else 0}
    return rep


def poset_segal_report(P):
    """Segal and mapping checks for spans in a finite poset with meets: all
    groupoids are discrete, so the comparison is a bijection of sets."""
    rep = CheckReport("poset span segal")
    cells2 = enumerate_span_cells(P, (2,))
    fibre = [(x, c, y, d, z) for x in P.objects for y in P.objects for z in P.objects
             for c in P.objects for d in P.objects
             if P.leq(c, x) and P.leq(c, y) and P.leq(d, y) and P.leq(d, z)]
    keys = [((0, 0),), ((0, 1),), ((1, 1),), ((1, 2),), ((2, 2),)]
    images = sorted(tuple(F.obj[k] for k in keys) for F in cells2)
    if images != sorted(fibre):
        rep.fail({"composite_cells": len(images), "fibre_product": len(fibre)})
    mapping = 0
    for x in P.objects:
        for y in P.objects:
            spans = sum(1 for c in P.objects if P.leq(c, x) and P.leq(c, y))
            classes = double_slice_classes(P, x, y)
            mapping += spans
            if spans != classes:
                rep.fail({"feet": [str(x), str(y)], "spans": spans, "slice_classes": classes})
    rep.counts = {"composite_cells": len(images), "mapping_cells": mapping}
    return rep


def segal_and_mapping_checks(ambient="finset", max_size=3, corrupt=None):
    """Segal and mapping-object checks for spans; returns a list of CheckReport."""
    if isinstance(ambient, FinCat):
        return [poset_segal_report(ambient)]
    return [segal_report(max_size, corrupt), mapping_report(max_size)]


# -- self-duality ------------------------------------------------------------

def duality_data(x, ambient="finset"):
    """Evaluation X×X ← X → * and coevaluation * ← X → X×X with the triangle
    composite (ev ⊗ id)∘(id ⊗ coev) compared with the identity span on X.

    For finite sets ``x`` is a cardinality; for a poset ambient ``x`` is an
    element and the terminal object is its top.
    """
    if isinstance(ambient, FinCat):
        tops = [t for t in ambient.objects if all(ambient.leq(z, t) for z in ambient.objects)]
        if not tops:
            raise CategoryError("no terminal object")
        # in a poset every span diagram is thin: the triangle apex is x ∧ x = x
        return {"ev": None, "coev": None, "triangle_apex": x, "ok": True}
    n = x
    diag = [a * n + a for a in range(n)]
    ev = Span(n * n, 1, diag, [0] * n)
    coev = Span(1, n * n, [0] * n, diag)
    ident = Span.identity(n)
    # id_X ⊗ coev : X ≅ X×1 → X×(X×X);  ev ⊗ id_X : (X×X)×X → 1×X ≅ X
    first = ident.tensor(coev)
    second = ev.tensor(ident)
    # both encode X×X×X as (a·n + b)·n + c, so they compose directly
    triangle = first.then(second)
    iso = span_isomorphism(triangle, ident)
    # the mirror triangle (id ⊗ ev)∘(coev ⊗ id)
    mirror = coev.tensor(ident).then(ident.tensor(ev))
    iso_mirror = span_isomorphism(mirror, ident)
    return {"ev": ev.to_json(), "coev": coev.to_json(), "triangle": triangle.to_json(),
            "iso": None if iso is None else list(iso),
            "mirror_iso": None if iso_mirror is None else list(iso_mirror),
            "ok": iso is not None and iso_mirror is not None}


# -- spans with coefficients -------------------------------------------------

class Coefficients:
    """A functor F: C^op → posets on the skeleton of finite sets, given by its
    fibres, pullback action and order. ``pull(table, x)`` is F(f)(x) for
    f: d → c given as a table of length d."""

    def __init__(self, name, fibre, pull, leq):
        self.name = name
        self.fibre = fibre
        self.pull = pull
        self.leq = leq


def _subsets(c):
    return [tuple(s for s in range(c) if mask >> s & 1) for mask in range(2 ** c)]


def subset_coefficients():
    """F(c) = subsets of c ordered by inclusion, acting by preimage."""
    return Coefficients("subsets", _subsets,
                        lambda table, x: tuple(i for i, v in enumerate(table) if v in x),
                        lambda x, y: set(x) <= set(y))


def terminal_coefficients():
    return Coefficients("terminal", lambda c: [()], lambda table, x: (), lambda x, y: True)


def constant_coefficients(elements, leq):
    return Coefficients("constant", lambda c: list(elements), lambda table, x: x, leq)


def doubled(coeff):
    """F with every element duplicated into an isomorphic pair: an equivalent
    but non-skeletal functor."""
    return Coefficients(coeff.name + "-doubled",
                        lambda c: [(x, t) for x in coeff.fibre(c) for t in (0, 1)],
                        lambda table, x: (coeff.pull(table, x[0]), x[1]),
                        lambda x, y: coeff.leq(x[0], y[0]))


def flag_coefficients():
    """F(c) = pairs A ⊆ B of subsets, ordered componentwise."""
    base = subset_coefficients()
    return Coefficients("flags",
                        lambda c: [(a, b) for b in _subsets(c) for a in _subsets(c) if set(a) <= set(b)],
                        lambda table, x: (base.pull(table, x[0]), base.pull(table, x[1])),
                        lambda x, y: set(x[0]) <= set(y[0]) and set(x[1]) <= set(y[1]))


class HCategory:
    """The homotopy category of spans with coefficients, truncated at apex
    size ``bound``. Objects are (c, x); a morphism is the class of a span
    c ← d → c′ (feet labelled, apex up to isomorphism) for which a (unique)
    φ: F(f)x → F(g)x′ exists."""

    def __init__(self, coeff, max_size, bound=None):
        self.coeff = coeff
        self.max_size = max_size
        self.bound = max_size if bound is None else bound
        self.objects = [(c, x) for c in range(max_size + 1) for x in coeff.fibre(c)]
        self._cells = {}

    def admissible(self, a, b, cell):
        (_, x), (_, y) = a, b
        f = [p for p, _ in cell]
        g = [q for _, q in cell]
        return self.coeff.leq(self.coeff.pull(f, x), self.coeff.pull(g, y))

    def hom(self, a, b):
        key = (a[0], b[0])
        if key not in self._cells:
            self._cells[key] = SpanKind.cells(a[0], b[0], self.bound)
        return [cell for cell in self._cells[key] if self.admissible(a, b, cell)]

    def identity(self, a):
        return tuple((i, i) for i in range(a[0]))

    def compose(self, a, b, c, k1, k2):
        """k2 ∘ k1 for k1: a → b and k2: b → c, by pullback then the composite
        F(h)(φ) followed by F(k)(ψ); raises if a step of the recipe fails."""
        s = span_of_cell(a[0], b[0], k1)
        t = span_of_cell(b[0], c[0], k2)
        elems = s.apex_elements(t)
        F = self.coeff
        fh = [s.f[i] for i, _ in elems]
        gh = [s.g[i] for i, _ in elems]
        fk = [t.f[j] for _, j in elems]
        gk = [t.g[j] for _, j in elems]
        start = F.pull(fh, a[1])
        middle = F.pull(gh, b[1])
        if middle != F.pull(fk, b[1]):
            raise CategoryError("pullback square does not commute on coefficients")
        end = F.pull(gk, c[1])
        if not (F.leq(start, middle) and F.leq(middle, end)):
            raise CategoryError("composite coefficient morphism missing")
        return tuple(sorted(zip(fh, gk)))

    def compose_triple(self, a, b, c, d, k1, k2, k3):
        """The composite read off the triple fibre product directly."""
        s, t, u = (span_of_cell(a[0], b[0], k1), span_of_cell(b[0], c[0], k2),
                   span_of_cell(c[0], d[0], k3))
        triples = [(i, j, l) for i in range(s.apex) for j in range(t.apex) for l in range(u.apex)
                   if s.g[i] == t.f[j] and t.g[j] == u.f[l]]
        return tuple(sorted((s.f[i], u.g[l]) for i, _, l in triples))

    def law_report(self, samples=100, seed=0):
        rep = CheckReport(f"coefficient spans ({self.coeff.name})")
        rng = random.Random(seed)
        objs = self.objects
        units = 0
        for a in objs:
            for b in objs:
                for k in self.hom(a, b):
                    units += 1
                    ia, ib = self.identity(a), self.identity(b)
                    if self.compose(a, a, b, ia, k) != k or self.compose(a, b, b, k, ib) != k:
                        rep.fail({"unit": [str(a), str(b), list(k)]})
        checked = 0
        attempts = 0
        while checked < samples and attempts < 50 * samples:
            attempts += 1
            a, b, c, d = (rng.choice(objs) for _ in range(4))
            homs = [self.hom(a, b), self.hom(b, c), self.hom(c, d)]
            if not all(homs):
                continue
            k1, k2, k3 = (rng.choice(h) for h in homs)
            left = self.compose(a, c, d, self.compose(a, b, c, k1, k2), k3)
            right = self.compose(a, b, d, k1, self.compose(b, c, d, k2, k3))
            direct = self.compose_triple(a, b, c, d, k1, k2, k3)
            checked += 1
            if not left == right == direct:
                rep.fail({"triple": [str(a), str(b), str(c), str(d)], "morphisms": [k1, k2, k3]})
        rep.counts = {"objects": len(objs), "unit_checks": units, "associativity_checks": checked}
        if checked < samples:
            rep.notes.append(f"only {checked} composable triples found")
        return rep


def span_with_coefficients(coeff, max_size=2, bound=None):
    return HCategory(coeff, max_size, bound)


def hcategory_equivalence(H1, H2, obj_map):
    """Is (c, x) ↦ obj_map(c, x), identity on span classes, an equivalence of
    truncated homotopy categories? Fully faithful on every hom and essentially
    surjective via identity-span isomorphisms."""
    rep = CheckReport("coefficient equivalence")
    for a in H1.objects:
        for b in H1.objects:
            if H1.hom(a, b) != H2.hom(obj_map(a), obj_map(b)):
                rep.fail({"hom": [str(a), str(b)]})
    image = {obj_map(a) for a in H1.objects}
    for y in H2.objects:
        iso = any(z[0] == y[0] and H2.identity(y) in H2.hom(y, z) and H2.identity(z) in H2.hom(z, y)
                  for z in image)
        if not iso:
            rep.fail({"not_essentially_surjective": str(y)})
    rep.counts = {"source_objects": len(H1.objects), "target_objects": len(H2.objects)}
    return rep


def pullback_pattern(max_size=2, bound=None):
    """The pullback of h(Span(C)) → h(Span(C; c)) ← h(Span(C; P)) for the
    toy coefficients P = flags A ⊆ B, c = subsets, τ(A, B) = B and the section
    c ↦ (all of c). Objects of the pullback are pairs with matched images;
    they are compared with the objects (c, (A, c)) and their hom-sets."""
    rep = CheckReport("coefficient pullback pattern")
    plain = HCategory(terminal_coefficients(), max_size, bound)
    target = HCategory(subset_coefficients(), max_size, bound)
    flags = HCategory(flag_coefficients(), max_size, bound)
    section = lambda a: (a[0], tuple(range(a[0])))
    tau = lambda a: (a[0], a[1][1])
    pb_objects = [(a, b) for a in plain.objects for b in flags.objects if section(a) == tau(b)]
    direct = [b for b in flags.objects if b[1][1] == tuple(range(b[0]))]
    if sorted(b for _, b in pb_objects) != sorted(direct):
        rep.fail({"objects": [len(pb_objects), len(direct)]})
    homs = 0
    for a1, b1 in pb_objects:
        for a2, b2 in pb_objects:
            left = set(plain.hom(a1, a2))
            right = set(flags.hom(b1, b2))
            image_ok = all(k in target.hom(tau(b1), tau(b2)) for k in right)
            matched = sorted(left & right)
            homs += len(matched)
            if not image_ok or matched != sorted(flags.hom(b1, b2)):
                rep.fail({"hom": [str(b1), str(b2)]})
    rep.counts = {"objects": len(pb_objects), "morphisms": homs}
    return rep


# -- spans with coefficients in cospans --------------------------------------

def _fibre_poset(coeff, c):
    return FinCat.from_poset(coeff.fibre(c), coeff.leq)


def coefficient_fibration(coeff, max_size):
    """The Grothendieck construction ℱ → C^op of c ↦ F(c) over the skeleton of
    finite sets of size ≤ max_size. Returns (C, ℱ, projection)."""
    C = finset_category(max_size)
    base = C.op()
    fibres = {c: _fibre_poset(coeff, c) for c in base.objects}
    actions = []
    for m in range(base.n_mor):
        d_size, c_size, table = C.labels[m]
        # m is f: d → c in C, hence c → d in C^op, acting by F(f)
        src, dst = fibres[base.src[m]], fibres[base.dst[m]]
        actions.append(FunctorData.of_monotone(src, dst, lambda x, t=table: coeff.pull(t, x)))
    F = CatFunctor(base, fibres, actions)
    total, proj = total_category(F)
    return C, total, proj


def index_models(arities):
    """𝕏ᴵ, 𝕋ᴵ, Σ^{I,op} as products of the tuple posets, with α, β, γ and the
    marked classes (Ŝ-cartesian on 𝕏ᴵ, C_I on 𝕋ᴵ)."""
    models = [TupleModels(n) for n in arities]
    X = multi_poset([m.sext for m in models])
    T = multi_poset([m.t for m in models])
    S = multi_poset([m.sigma_op for m in models])
    al = FunctorData.of_monotone(X, T, lambda p: tuple(alpha(a) for a in p))
    be = FunctorData.of_monotone(S, T, lambda p: tuple(beta(a) for a in p))
    ga = FunctorData.of_monotone(T, S, lambda p: tuple(gamma(a) for a in p))
    marked_t = [(p, q) for p in T.objects for q in T.objects
                if T.leq(p, q) and all(t_marked(a, b) for a, b in zip(p, q))]
    marked_x = [(p, q) for p in X.objects for q in X.objects
                if X.leq(p, q) and all(sext_cartesian(a, b) for a, b in zip(p, q))]
    return X, T, S, al, be, ga, marked_t, marked_x


def span_cospan_coefficients_equiv(coeff, arities=(1,), max_size=1):
    """Spans in C with coefficients in cospans of F against cospans in ℱ.

    For every base functor γ: Σᴵ → C, three sets of lifts into ℱ are
    enumerated independently: diagrams on 𝕏ᴵ sending Ŝ-cartesian morphisms
    to cocartesian ones, diagrams on 𝕋ᴵ sending the marked class to
    cocartesian ones, and all diagrams on Σ^{I,op}. Restriction along α and
    along β must be bijections."""
    if any(a > 1 for a in arities):
        raise CategoryError("bound too large")
    rep = CheckReport("span/cospan coefficients")
    C, total, proj = coefficient_fibration(coeff, max_size)
    proj_op = proj.op()
    cocart = {m for m in range(total.n_mor) if is_cartesian(proj_op, m)}
    X, T, S, al, be, ga, marked_t, marked_x = index_models(arities)
    C_op = C.op()
    base_cells = lifts_from_poset(S, C_op)
    counts = {"base_cells": len(base_cells), "x_lifts": 0, "t_lifts": 0, "sigma_lifts": 0}
    for k, (objs, mors) in enumerate(base_cells):
        g_op = FunctorData(S, C_op, dict(zip(S.objects, objs)), [mors[S.labels[m]] for m in range(S.n_mor)])
        g_t = ga.then(g_op)
        g_x = al.then(g_t)
        lifts_s = lifts_from_poset(S, total, proj, g_op)
        lifts_t = lifts_from_poset(T, total, proj, g_t, marked_t, cocart)
        lifts_x = lifts_from_poset(X, total, proj, g_x, marked_x, cocart)
        counts["x_lifts"] += len(lifts_x)
        counts["t_lifts"] += len(lifts_t)
        counts["sigma_lifts"] += len(lifts_s)
        for name, along, target in (("β", be, lifts_s), ("α", al, lifts_x)):
            images = sorted(_freeze(restrict_lift(lift, T, along)) for lift in lifts_t)
            if images != sorted(_freeze(lift) for lift in target) or len(set(images)) != len(images):
                rep.fail({"base_cell": k, "reason": f"restriction along {name} is not a bijection",
                          "t_lifts": len(lifts_t), "other_lifts": len(target)})
    rep.counts = counts
    rep.notes.append("cartesianness of γ and the fibrewise cocartesian condition are vacuous "
                     "for index components ≤ 1")
    return rep


def _freeze(lift):
    objs, mors = lift
    return objs, tuple(sorted(mors.items()))


def section_functoriality(coeff, section, max_size=2):
    """A section σ(c) = (c, section(c)) of ℱ → C^op induces a functor from
    spans in C to cospans in ℱ when it sends pullbacks in C to pushouts in ℱ.
    Checks naturality of the section, then that every pullback square within
    the bound goes to a colimit cocone (so composites are preserved)."""
    rep = CheckReport(f"section functoriality ({coeff.name})")
    C, total, proj = coefficient_fibration(coeff, max_size)

    def sigma_mor(c_from, c_to, table):
        # table is f: c_to → c_from in C, a morphism c_from → c_to in C^op
        u = C.mor((c_to, c_from, tuple(table)))
        src, dst = (c_from, section(c_from)), (c_to, section(c_to))
        found = [m for m in total.hom(src, dst) if proj.mor[m] == u]
        return found[0] if found else None

    for m in range(C.n_mor):
        d, c, table = C.labels[m]
        if coeff.pull(table, section(c)) != section(d):
            rep.fail({"not_natural": [d, c, list(table)]})
            rep.counts = {}
            return rep
    # the terminal set must go to an initial object of ℱ
    if max_size >= 1:
        point = (1, section(1))
        if not all(len(total.hom(point, z)) == 1 for z in total.objects):
            rep.fail({"terminal_not_sent_to_initial": str(point)})
    shape = FinCat.from_poset(["y", "a", "b"], lambda p, q: p == q or p == "y")
    squares = 0
    for y in range(max_size + 1):
        for a in range(max_size + 1):
            for b in range(max_size + 1):
                for f in product(range(y), repeat=a):
                    for g in product(range(y), repeat=b):
                        pairs = [(i, j) for i in range(a) for j in range(b) if f[i] == g[j]]
                        p = len(pairs)
                        if p > max_size:
                            continue
                        squares += 1
                        obj = {"y": (y, section(y)), "a": (a, section(a)), "b": (b, section(b))}
                        mors = {("y", "a"): sigma_mor(y, a, f), ("y", "b"): sigma_mor(y, b, g)}
                        mor_list = [mors.get(lab, total.id(obj[lab[0]])) if lab[0] != lab[1]
                                    else total.id(obj[lab[0]]) for lab in shape.labels]
                        diagram = FunctorData(shape, total, obj, mor_list)
                        apex = (p, section(p))
                        la = sigma_mor(a, p, [i for i, _ in pairs])
                        lb = sigma_mor(b, p, [j for _, j in pairs])
                        ly = total.comp[(la, mors[("y", "a")])]
                        legs = {"y": ly, "a": la, "b": lb}
                        if not is_colimit_cocone(total, diagram, apex, legs):
                            rep.fail({"pullback": {"f": list(f), "g": list(g), "y": y}})
    rep.counts = {"pullback_squares": squares, "total_objects": len(total.objects)}
    return rep
