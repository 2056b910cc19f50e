"""Index combinatorics for iterated spans: interval posets, twisted arrows,
the tuple posets with their structure maps, the filtration certificate on
the nerve of the T-poset, and localization of free categories."""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from math import comb

from .deltacomb import SimplexMap, simplex_category
from .fincat import (CategoryError, FinCat, FunctorData, UnionFind, equivalence_check,
                     is_cartesian, isomorphism_check, strict_pullback)


# -- interval posets --------------------------------------------------------

def sigma_elements(n):
    return [(i, j) for i in range(n + 1) for j in range(i, n + 1)]


def sigma_leq(p, q):
    """(i,j) ≤ (i',j') iff i ≤ i' and j' ≤ j: the smaller interval is larger."""
    return p[0] <= q[0] and q[1] <= p[1]


def sigma_poset(n):
    return FinCat.from_poset(sigma_elements(n), sigma_leq)


def lambda_elements(n):
    return [p for p in sigma_elements(n) if p[1] - p[0] <= 1]


def lambda_poset(n):
    return FinCat.from_poset(lambda_elements(n), sigma_leq)


def multi_poset(factors):
    """Product of posets whose elements are tuples, one entry per factor."""
    elements = list(product(*[f.objects for f in factors]))
    return FinCat.from_poset(elements, lambda p, q: all(f.leq(a, b) for f, a, b in zip(factors, p, q)))


def sigma_multi(arities):
    return multi_poset([sigma_poset(n) for n in arities])


def lambda_multi(arities):
    return [p for p in product(*[lambda_elements(n) for n in arities])]


def sigma_functor(phi):
    """Σⁿ → Σᵐ, (i,j) ↦ (φ(i), φ(j))."""
    return FunctorData.of_monotone(sigma_poset(phi.source), sigma_poset(phi.target),
                                   lambda p: (phi(p[0]), phi(p[1])))


def interval_projection(sigma, max_n):
    """Π: Σⁿ → Δ^op, (i,j) ↦ [j−i]; (i,j) ≤ (k,l) goes to s ↦ s+k−i."""
    delta_op = simplex_category(max_n).op()
    obj = {p: p[1] - p[0] for p in sigma.objects}
    mor = []
    for m in range(sigma.n_mor):
        (i, j), (k, l) = sigma.src[m], sigma.dst[m]
        mor.append(delta_op.mor(SimplexMap([s + k - i for s in range(l - k + 1)], j - i)))
    return FunctorData(sigma, delta_op, obj, mor)


SHAT_CONVENTIONS = {
    # (i,j) ≤ (φ(i'), φ(j')) in Σ^{p,op}: the fibre over [p] is Σ^{p,op}
    "sigma_op": lambda i, j, a, b: a <= i <= j <= b,
    # nested the other way; kept to document that it does not give the tuple models
    "nested": lambda i, j, a, b: i <= a <= b <= j,
}


def shat_category(max_n, convention="sigma_op"):
    """Ŝ_{1,op} over Δ^op truncated at [max_n].

    Objects ([p], (i,j)); a morphism ([p],(i,j)) → ([q],(i',j')) is a
    monotone φ: [q] → [p] with φ(i') ≤ i ≤ j ≤ φ(j'), so that the fibre over
    [p] is Σ^{p,op}. Returns the category and its projection to Δ^op.
    """
    admissible = SHAT_CONVENTIONS[convention]
    delta_op = simplex_category(max_n).op()
    objs = [(p, ij) for p in range(max_n + 1) for ij in sigma_elements(p)]
    labels, src, dst = [], [], []
    for (p, (i, j)) in objs:
        for (q, (k, l)) in objs:
            for phi in SimplexMap.all_maps(q, p):
                if admissible(i, j, phi(k), phi(l)):
                    labels.append(phi)
                    src.append((p, (i, j)))
                    dst.append((q, (k, l)))
    index = {(s, lab): m for m, (s, lab) in enumerate(zip(src, labels))}
    by_src = {}
    for m, s in enumerate(src):
        by_src.setdefault(s, []).append(m)
    comp = {}
    for f in range(len(labels)):
        for g in by_src[dst[f]]:
            comp[(g, f)] = index[(src[f], labels[g].then(labels[f]))]
    identities = {(p, ij): index[((p, ij), SimplexMap.identity(p))] for (p, ij) in objs}
    cat = FinCat(objs, src, dst, identities, comp, list(zip(src, labels)))
    proj = FunctorData(cat, delta_op, {o: o[0] for o in objs}, [delta_op.mor(phi) for phi in labels])
    return cat, proj


# -- tuple models -----------------------------------------------------------

def monotone_tuples(length, n):
    return [tuple(t) for t in combinations_with_replacement(range(n + 1), length)]


def quad_span_leq(p, q):
    """Model of Σⁿ ×_{Δop} Ŝ_{1,op}: a ≤ a' ≤ b' ≤ b ≤ c ≤ c' ≤ d' ≤ d."""
    a, b, c, d = p
    a2, b2, c2, d2 = q
    return a <= a2 <= b2 <= b <= c <= c2 <= d2 <= d


def quad_tw_leq(p, q):
    """Model of Tw^ℓ(Σⁿ): a' ≤ a ≤ b ≤ b' ≤ c' ≤ c ≤ d ≤ d'."""
    return quad_span_leq(q, p)


def sext_leq(p, q):
    """Model of 𝕏ⁿ: a' ≤ a ≤ b ≤ b' ≤ c' ≤ c ≤ d ≤ d' ≤ e' ≤ e ≤ f ≤ f'."""
    a, b, c, d, e, f = p
    a2, b2, c2, d2, e2, f2 = q
    return a2 <= a <= b <= b2 <= c2 <= c <= d <= d2 <= e2 <= e <= f <= f2


def t_leq(p, q):
    """𝕋ⁿ: a' ≤ a ≤ f ≤ f' and c' ≤ c ≤ d ≤ d'."""
    a, c, d, f = p
    a2, c2, d2, f2 = q
    return a2 <= a <= f <= f2 and c2 <= c <= d <= d2


def quad_span_cartesian(p, q):
    return p[1] == q[1] and p[2] == q[2]


def sext_cartesian(p, q):
    return p[2] == q[2] and p[3] == q[3]


def t_marked(p, q):
    """Morphisms of C_n: c = c', d = d'."""
    return t_leq(p, q) and p[1] == q[1] and p[2] == q[2]


def alpha(s):
    a, b, c, d, e, f = s
    return (a, c, d, f)


def beta(p):
    i, j = p
    return (i, i, j, j)


def gamma(t):
    return (t[0], t[3])


class TupleModels:
    def __init__(self, n):
        self.n = n
        self.quad_span = FinCat.from_poset(monotone_tuples(4, n), quad_span_leq)
        self.quad_tw = FinCat.from_poset(monotone_tuples(4, n), quad_tw_leq)
        self.sext = FinCat.from_poset(monotone_tuples(6, n), sext_leq)
        self.t = FinCat.from_poset(monotone_tuples(4, n), t_leq)
        self.sigma_op = sigma_poset(n).op()
        self.alpha = FunctorData.of_monotone(self.sext, self.t, alpha)
        self.beta = FunctorData.of_monotone(self.sigma_op, self.t, beta)
        self.gamma = FunctorData.of_monotone(self.t, self.sigma_op, gamma)
        self.marked = [(self.t.src[m], self.t.dst[m]) for m in range(self.t.n_mor)
                       if t_marked(self.t.src[m], self.t.dst[m])]

    def gamma_beta_is_identity(self):
        gb = self.beta.then(self.gamma)
        return all(gb.obj[p] == p for p in self.sigma_op.objects) and \
            gb.mor == list(range(self.sigma_op.n_mor))

    def counts(self):
        return {"quad_span": len(self.quad_span.objects), "quad_tw": len(self.quad_tw.objects),
                "sext": len(self.sext.objects), "t": len(self.t.objects)}


def gamma_beta_check(n):
    """γ∘β = id on Σ^{n,op} without building 𝕋ⁿ: β and γ are monotone on the
    relevant elements and γβ fixes every object; all categories are thin, so
    morphisms follow. Returns (ok, counts)."""
    elems = sigma_elements(n)
    ok = True
    pairs = 0
    for p in elems:
        if gamma(beta(p)) != p:
            ok = False
        for q in elems:
            if sigma_leq(q, p):
                pairs += 1
                if not (t_leq(beta(p), beta(q)) and sigma_leq(gamma(beta(q)), gamma(beta(p)))):
                    ok = False
    return ok, {"objects": len(elems), "morphisms": pairs}


def build_tuple_models(n):
    return TupleModels(n)


def expected_counts(n):
    """Monotone sequences of the relevant lengths in {0..n}."""
    return {"quad_span": comb(n + 4, 4), "quad_tw": comb(n + 4, 4),
            "sext": comb(n + 6, 6), "t": comb(n + 4, 4)}


# -- twisted arrows ---------------------------------------------------------

def tw_r(cat):
    """Tw^r(C): objects are morphisms a → b; a morphism f ⇒ f' is a pair
    (u: a → a', v: b' → b) with v∘f'∘u = f."""
    objs = list(range(cat.n_mor))
    labels, src, dst = [], [], []
    for f in objs:
        a, b = cat.src[f], cat.dst[f]
        for f2 in objs:
            a2, b2 = cat.src[f2], cat.dst[f2]
            for u in cat.hom(a, a2):
                for v in cat.hom(b2, b):
                    if cat.comp[(v, cat.comp[(f2, u)])] == f:
                        labels.append((u, v))
                        src.append(f)
                        dst.append(f2)
    index = {(s, lab): k for k, (s, lab) in enumerate(zip(src, labels))}
    by_src = {}
    for k, s in enumerate(src):
        by_src.setdefault(s, []).append(k)
    comp = {}
    for k in range(len(labels)):
        u1, v1 = labels[k]
        for k2 in by_src[dst[k]]:
            u2, v2 = labels[k2]
            comp[(k2, k)] = index[(src[k], (cat.comp[(u2, u1)], cat.comp[(v1, v2)]))]
    identities = {f: index[(f, (cat.id(cat.src[f]), cat.id(cat.dst[f])))] for f in objs}
    return FinCat(objs, src, dst, identities, comp, labels)


def tw_r_projection(cat, tw=None):
    """Tw^r(C) → C × C^op, (a → b) ↦ (a, b)."""
    tw = tw_r(cat) if tw is None else tw
    base = cat.product(cat.op())
    obj = {f: (cat.src[f], cat.dst[f]) for f in tw.objects}
    mor = [base.mor((cat.labels[u], cat.labels[v])) for u, v in tw.labels]
    return tw, FunctorData(tw, base, obj, mor)


def tw_l(cat):
    return tw_r(cat).op()


def is_right_fibration(functor):
    """Every morphism into every object has a lift, every morphism is
    cartesian and the functor reflects identities (fibres are discrete)."""
    E, B = functor.source, functor.target
    for e in E.objects:
        over = {functor.mor[m] for x in E.objects for m in E.hom(x, e)}
        if any(u not in over for b in B.objects for u in B.hom(b, functor.obj[e])):
            return False
    for m in range(E.n_mor):
        if not is_cartesian(functor, m):
            return False
    for m in range(E.n_mor):
        if functor.target.is_identity(functor.mor[m]) and not E.is_identity(m):
            return False
    return True


def is_left_fibration(functor):
    return is_right_fibration(functor.op())


def tw_slice_iso(cat, x):
    """Tw^r(C_{/x}) ≅ (C_{/x})^op ×_{C^op} Tw^r(C): builds both sides and checks
    the evident comparison is an isomorphism of categories."""
    from .fincat import slice_category
    sl, proj = slice_category(cat, x)
    left = tw_r(sl)
    tw, twp = tw_r_projection(cat)
    target_leg = FunctorData(tw, cat.op(), {f: cat.dst[f] for f in tw.objects},
                             [v for (_, v) in tw.labels])
    right, p1, p2 = strict_pullback(proj.op(), target_leg)
    # an arrow h: s → t of C_{/x} goes to (t, h viewed as an arrow of C)
    obj = {h: (sl.dst[h], proj.mor[h]) for h in left.objects}
    mor = []
    for k, (u, v) in enumerate(left.labels):
        s, d = obj[left.src[k]], obj[left.dst[k]]
        cands = [m for m in right.hom(s, d)
                 if right.labels[m][0] == v and tw.labels[right.labels[m][1]] == (proj.mor[u], proj.mor[v])]
        if len(cands) != 1:
            return False
        mor.append(cands[0])
    comparison = FunctorData(left, right, obj, mor)
    comparison.check()
    return isomorphism_check(comparison)


# -- categorical constructions of the tuple models ------------------------

class TupleIsoReport:
    def __init__(self):
        self.ok = True
        self.failures = []
        self.counts = {}

    def fail(self, what):
        self.ok = False
        self.failures.append(what)


def span_fibre_product(n, convention="sigma_op"):
    """Σⁿ ×_{Δop} Ŝ_{1,op} built from its defining pullback."""
    sigma = sigma_poset(n)
    shat, shat_proj = shat_category(n, convention)
    pi = interval_projection(sigma, n)
    cat, p_sigma, p_shat = strict_pullback(pi, shat_proj)
    return cat, p_sigma, p_shat, shat_proj


def quad_of_span_object(obj):
    (i, j), (_, (k, l)) = obj
    return (i, k + i, l + i, j)


def quad_of_tw_object(cat, f):
    (i, j), (k, l) = cat.src[f], cat.dst[f]
    return (i, k, l, j)


def sext_fibre_product(n, convention="sigma_op"):
    """𝕏ⁿ = Tw^ℓ(Σⁿ) ×_{Δop} Ŝ_{1,op}, using the projection Tw^ℓ(Σⁿ) → Σⁿ."""
    sigma = sigma_poset(n)
    tw = tw_l(sigma)
    to_sigma = FunctorData(tw, sigma, {f: sigma.dst[f] for f in tw.objects},
                           [v for (_, v) in tw.labels])
    pi = interval_projection(sigma, n)
    shat, shat_proj = shat_category(n, convention)
    cat, p_tw, p_shat = strict_pullback(to_sigma.then(pi), shat_proj)
    return cat, p_tw, p_shat, shat_proj, sigma


def sext_of_object(sigma, obj):
    f, (_, (u, v)) = obj
    (i0, j0), (i1, j1) = sigma.src[f], sigma.dst[f]
    return (i0, i1, i1 + u, i1 + v, j1, j0)


def _compare(report, name, cat, model, objmap, cart_functor=None, cart_pred=None):
    obj = {x: objmap(x) for x in cat.objects}
    if len(set(obj.values())) != len(obj) or set(obj.values()) != set(model.objects):
        missing = sorted(set(model.objects) - set(obj.values()))
        report.fail(f"{name}: object map is not a bijection (first unmatched {missing[:1]})")
        return None
    if not cat.is_thin():
        report.fail(f"{name}: constructed category is not a poset")
        return None
    try:
        functor = FunctorData.of_monotone(cat, model, lambda x: obj[x])
    except CategoryError as err:
        report.fail(f"{name}: {err}")
        return None
    if not isomorphism_check(functor):
        extra = [(model.src[m], model.dst[m]) for m in range(model.n_mor) if m not in set(functor.mor)]
        report.fail(f"{name}: not an isomorphism (first unmatched morphism {extra[:1]})")
        return None
    if cart_functor is not None:
        for m in range(cat.n_mor):
            claimed = cart_pred(obj[cat.src[m]], obj[cat.dst[m]])
            actual = is_cartesian(cart_functor[0], cart_functor[1].mor[m])
            if claimed != actual:
                report.fail(f"{name}: cartesian predicate disagrees at {obj[cat.src[m]]} -> {obj[cat.dst[m]]}")
                return functor
    return functor


def verify_tuple_isomorphisms(n, cartesian_predicates=None, convention="sigma_op"):
    """Construct the three categories from their definitions and match them
    with the closed-form tuple posets, including the cartesian predicates
    and projections."""
    preds = {"quad": quad_span_cartesian, "sext": sext_cartesian}
    preds.update(cartesian_predicates or {})
    report = TupleIsoReport()
    models = TupleModels(n)

    span_cat, p_sigma, p_shat, shat_proj = span_fibre_product(n, convention)
    iso = _compare(report, "sigma x shat", span_cat, models.quad_span, quad_of_span_object,
                   (shat_proj, p_shat), preds["quad"])
    if iso is not None:
        for x in span_cat.objects:
            q = iso.obj[x]
            if p_sigma.obj[x] != (q[0], q[3]):
                report.fail(f"sigma x shat: projection to sigma wrong at {q}")
                break

    sigma = sigma_poset(n)
    tw = tw_l(sigma)
    iso_tw = _compare(report, "twisted arrows", tw, models.quad_tw, lambda f: quad_of_tw_object(sigma, f))
    if iso_tw is not None:
        for f in tw.objects:
            q = iso_tw.obj[f]
            if (sigma.src[f], sigma.dst[f]) != ((q[0], q[3]), (q[1], q[2])):
                report.fail(f"twisted arrows: projections wrong at {q}")
                break

    sext_cat, p_tw, p_shat6, shat_proj6, _ = sext_fibre_product(n, convention)
    iso6 = _compare(report, "X", sext_cat, models.sext, lambda o: sext_of_object(sigma, o),
                    (shat_proj6, p_shat6), preds["sext"])
    if iso6 is not None and iso_tw is not None:
        for o in sext_cat.objects:
            s = iso6.obj[o]
            if iso_tw.obj[p_tw.obj[o]] != sext_projection_tw(s):
                report.fail(f"X: projection to twisted arrows wrong at {s}")
                break
            f, shat_obj = o
            span_obj = (sigma.dst[f], shat_obj)
            if quad_of_span_object(span_obj) != sext_projection_span(s):
                report.fail(f"X: projection to sigma x shat wrong at {s}")
                break
    report.counts = {"n": n, **models.counts(),
                     "sext_morphisms": models.sext.n_mor, "quad_morphisms": models.quad_span.n_mor}
    return report


def sext_projection_tw(s):
    """(a,b,c,d,e,f) ↦ (a,b,e,f), the projection that is order preserving."""
    return (s[0], s[1], s[4], s[5])


def sext_projection_span(s):
    return (s[1], s[2], s[3], s[4])


# -- the filtration certificate --------------------------------------------

class TPower:
    """𝕋^I for a multi-arity I, with β-image and the marked class C_I."""

    def __init__(self, arities):
        self.arities = tuple(arities)
        self.elements = list(product(*[monotone_tuples(4, n) for n in self.arities]))
        self.beta_image = set(product(*[[beta(p) for p in sigma_elements(n)] for n in self.arities]))

    def leq(self, p, q):
        return all(t_leq(a, b) for a, b in zip(p, q))

    def marked(self, p, q):
        return all(t_marked(a, b) for a, b in zip(p, q))

    def poset(self):
        return FinCat.from_poset(self.elements, self.leq)

    def marked_edges(self):
        return [(p, q) for p in self.elements for q in self.elements if p != q and self.marked(p, q)]


def _chains(tp, maxdim):
    above = {x: [y for y in tp.elements if y != x and tp.leq(x, y)] for x in tp.elements}
    out = {0: [(x,) for x in tp.elements]}
    for d in range(1, maxdim + 1):
        out[d] = [c + (y,) for c in out[d - 1] for y in above[c[-1]]]
    return out


def nu(tp, simplex):
    for k, v in enumerate(simplex):
        if v not in tp.beta_image:
            return k
    return None


def is_long(tp, simplex):
    k = nu(tp, simplex)
    return k is not None and k > 0 and tp.marked(simplex[k - 1], simplex[k])


def _face(simplex, i):
    return simplex[:i] + simplex[i + 1:]


class Certificate:
    def __init__(self, arities, maxdim):
        self.arities = tuple(arities)
        self.maxdim = maxdim
        self.counts = {}
        self.pairing = []
        self.violations = []
        self.notes = []

    @property
    def ok(self):
        return not self.violations

    @property
    def ok_for_filtration(self):
        """All checks except the literal equality ν(d_{ν+1}σ') = ν(σ)+1, which
        is replaced by the inclusion in the next filtration stage."""
        return not [v for v in self.violations if v[0] != "face_next"]

    def violation_counts(self):
        out = {}
        for v in self.violations:
            out[v[0]] = out.get(v[0], 0) + 1
        return dict(sorted(out.items()))

    def to_json(self, full_pairing=None):
        full = self.maxdim <= 3 if full_pairing is None else full_pairing
        from .fincat import _jsonable
        out = {"arities": list(self.arities), "maxdim": self.maxdim, "counts": self.counts,
               "violation_counts": self.violation_counts(),
               "violations": [_jsonable(v) for v in self.violations], "notes": self.notes}
        if full:
            out["pairing"] = [_jsonable(p) for p in self.pairing]
        return out


def filtration_certificate(arities, maxdim, mutate=None):
    """Classify nondegenerate simplices of N𝕋^I relative to β(NΣ^{I,op}) and
    check the short/long pairing together with its face identities.

    ``mutate`` optionally rewrites the marked predicate, for corruption tests.
    """
    if any(n > 2 for n in arities) or maxdim > 5:
        raise CategoryError("bound too large")
    tp = TPower(arities)
    if mutate is not None:
        tp = mutate(tp)
    cert = Certificate(arities, maxdim)
    chains = _chains(tp, maxdim)
    long_by_face = {}
    for d in range(maxdim + 1):
        old = new_short = new_long = 0
        for s in chains[d]:
            k = nu(tp, s)
            if k is None:
                old += 1
            elif is_long(tp, s):
                new_long += 1
                long_by_face.setdefault(_face(s, k - 1), []).append(s)
            else:
                new_short += 1
        cert.counts[str(d)] = {"old": old, "short": new_short, "long": new_long}
    for d in range(maxdim + 1):
        for s in chains[d]:
            k = nu(tp, s)
            if k is None or is_long(tp, s):
                continue
            if d == maxdim:
                cert.notes.append(f"short simplices of dimension {d} not paired: beyond truncation")
                break
            partners = long_by_face.get(s, [])
            if len(partners) != 1:
                cert.violations.append(("pairing", s, len(partners)))
                continue
            t = partners[0]
            cert.pairing.append((s, t))
            if _face(t, k) != s:
                cert.violations.append(("face_nu", s, t))
            for i in range(d + 2):
                if i in (k, k + 1):
                    continue
                if not is_long(tp, _face(t, i)):
                    cert.violations.append(("face_long", s, t, i))
            nxt = _face(t, k + 1)
            nu_next = nu(tp, nxt)
            if nu_next != k + 1:
                cert.violations.append(("face_next", s, t))
            # what the filtration needs: the face is old, long, or short with ν ≥ ν(σ)+1
            if not (nu_next is None or is_long(tp, nxt) or nu_next >= k + 1):
                cert.violations.append(("face_next_filtration", s, t))
            if k == 0 and not tp.marked(t[0], t[1]):
                cert.violations.append(("horn_edge", s, t))
    for face_, longs in long_by_face.items():
        if is_long(tp, face_) or nu(tp, face_) is None:
            cert.violations.append(("orphan_long", longs[0]))
    return cert


# -- localization of free categories ---------------------------------------

def hasse_graph(poset):
    """Edges x → y of the covering relation."""
    edges = []
    for m in range(poset.n_mor):
        x, y = poset.src[m], poset.dst[m]
        if x == y:
            continue
        if not any(z not in (x, y) and poset.leq(x, z) and poset.leq(z, y) for z in poset.objects):
            edges.append((len(edges), x, y))
    return list(poset.objects), edges


def _reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def localize_free_category(vertices, edges, inverted=(), word_bound=32):
    """Category of fractions of the free category on a graph, with the edges
    named in ``inverted`` made invertible.

    Morphisms are reduced words of letters (edge, ±1); an inverted edge may be
    traversed backwards. The underlying graph must be a forest.
    """
    uf = UnionFind(len(vertices))
    pos = {v: k for k, v in enumerate(vertices)}
    for name, s, t in edges:
        if uf.find(pos[s]) == uf.find(pos[t]):
            raise CategoryError("graph is not a forest: word reduction may not be confluent")
        uf.union(pos[s], pos[t])
    inverted = set(inverted)
    moves = {v: [] for v in vertices}
    for name, s, t in edges:
        moves[s].append(((name, 1), t))
        if name in inverted:
            moves[t].append(((name, -1), s))
    labels, src, dst = [], [], []
    for v in vertices:
        stack = [((), v)]
        while stack:
            word, end = stack.pop()
            if len(word) > word_bound:
                raise CategoryError("word bound exceeded")
            labels.append((v, word))
            src.append(v)
            dst.append(end)
            for letter, nxt in moves[end]:
                if word and word[-1][0] == letter[0] and word[-1][1] == -letter[1]:
                    continue
                stack.append((word + (letter,), nxt))
    index = {lab: k for k, lab in enumerate(labels)}
    by_src = {}
    for k, s in enumerate(src):
        by_src.setdefault(s, []).append(k)
    comp = {}
    for f in range(len(labels)):
        for g in by_src[dst[f]]:
            comp[(g, f)] = index[(src[f], _reduce(labels[f][1] + labels[g][1]))]
    identities = {v: index[(v, ())] for v in vertices}
    return FinCat(vertices, src, dst, identities, comp, labels)


def skeleton_size(cat):
    reps = []
    for x in cat.objects:
        if not any(cat.isomorphic(x, y) for y in reps):
            reps.append(x)
    return len(reps)


def localization_report(n=1):
    """Localize 𝕏¹ at (0,0,0,0,1,1) → (0,0,0,0,0,1) and (0,0,1,1,1,1) →
    (0,1,1,1,1,1), then compare with 𝕋¹ through the functor induced by α."""
    models = TupleModels(n)
    vertices, edges = hasse_graph(models.sext)
    free = localize_free_category(vertices, edges)
    free_is_poset = FunctorData.of_monotone(free, models.sext, lambda x: x)
    free_ok = isomorphism_check(free_is_poset)
    wanted = {((0, 0, 0, 0, 1, 1), (0, 0, 0, 0, 0, 1)), ((0, 0, 1, 1, 1, 1), (0, 1, 1, 1, 1, 1))}
    inverted = [name for name, s, t in edges if (s, t) in wanted]
    loc = localize_free_category(vertices, edges, inverted)
    induced = FunctorData.of_monotone(loc, models.t, alpha)
    return {
        "free_on_hasse": free_ok,
        "objects": len(loc.objects),
        "skeleton": skeleton_size(loc),
        "morphisms": loc.n_mor,
        "equivalent_to_t": equivalence_check(induced),
        "t_objects": len(models.t.objects),
        "inverted": len(inverted),
    }
