"""Fibrations between finite categories: Grothendieck constructions,
(co)cartesian fibrations, bifibrations and their left/right duals, the free
bifibration, sections through twisted arrows, Tw₂ and fibrations of functor
categories."""

from __future__ import annotations

from itertools import combinations, permutations, product

from .fincat import (CatFunctor, CategoryError, FinCat, FunctorData, UnionFind, cofinality_check,
                     connected_components, is_cartesian, slice_category, strict_pullback,
                     total_category)
from .sigmacomb import is_right_fibration, tw_r, tw_r_projection
from .spancat import CheckReport


# -- small helpers -----------------------------------------------------------------

def fibre(functor, b):
    """The subcategory over the identity of ``b`` and its inclusion."""
    E, B = functor.source, functor.target
    objs = [e for e in E.objects if functor.obj[e] == b]
    keep = [m for m in range(E.n_mor) if functor.mor[m] == B.id(b) and E.src[m] in objs]
    return _subcategory(E, objs, keep)


def _subcategory(E, objs, keep):
    new = {m: k for k, m in enumerate(keep)}
    comp = {(new[g], new[f]): new[h] for (g, f), h in E.comp.items() if g in new and f in new}
    cat = FinCat(objs, [E.src[m] for m in keep], [E.dst[m] for m in keep],
                 {x: new[E.id(x)] for x in objs}, comp, [E.labels[m] for m in keep])
    return cat, FunctorData(cat, E, {x: x for x in objs}, keep)


def pair_functor(f, g):
    """(f, g): E → X × Y; morphism (a, b) of the product has index a·|Y₁| + b."""
    X, Y = f.target, g.target
    P = X.product(Y)
    return FunctorData(f.source, P, {x: (f.obj[x], g.obj[x]) for x in f.source.objects},
                       [a * Y.n_mor + b for a, b in zip(f.mor, g.mor)])


def retarget(functor, target):
    """The same object and morphism data viewed in an index-identical target."""
    return FunctorData(functor.source, target, functor.obj, functor.mor)


def as_op(functor):
    return FunctorData(functor.source.op(), functor.target.op(), functor.obj, functor.mor)


def cartesian_set(functor):
    return {m for m in range(functor.source.n_mor) if is_cartesian(functor, m)}


def is_cartesian_fibration(functor, cart=None):
    """Every base morphism into p(e) has a cartesian lift ending at e.
    Returns (ok, witness)."""
    E, B = functor.source, functor.target
    cart = cartesian_set(functor) if cart is None else cart
    into = {}
    for m in cart:
        into.setdefault((E.dst[m], functor.mor[m]), True)
    for e in E.objects:
        for u in range(B.n_mor):
            if B.dst[u] == functor.obj[e] and (e, u) not in into:
                return False, {"object": _plain(e), "base_morphism": _plain(B.labels[u])}
    return True, None


def is_cocartesian_fibration(functor):
    return is_cartesian_fibration(as_op(functor))


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    return x


def is_right_fib(functor):
    """A cartesian fibration all of whose morphisms are cartesian (fibres are
    groupoids)."""
    cart = cartesian_set(functor)
    return len(cart) == functor.source.n_mor and is_cartesian_fibration(functor, cart)[0]


def is_left_fib(functor):
    return is_right_fib(as_op(functor))


def factor(p, c, g, t):
    """The unique h with c∘h = g and p(h) = t, for c cartesian."""
    E = p.source
    hs = [h for h in E.hom(E.src[g], E.src[c]) if E.comp[(c, h)] == g and p.mor[h] == t]
    if len(hs) != 1:
        raise CategoryError("factorization through a cartesian morphism is not unique")
    return hs[0]


def arrow_category(I):
    """I^{Δ¹} with ev₀, ev₁ and const: I → I^{Δ¹}."""
    objs = list(range(I.n_mor))
    labels, src, dst = [], [], []
    for f in objs:
        for f2 in objs:
            for u in I.hom(I.src[f], I.src[f2]):
                for v in I.hom(I.dst[f], I.dst[f2]):
                    if I.comp[(v, f)] == I.comp[(f2, u)]:
                        labels.append((u, v))
                        src.append(f)
                        dst.append(f2)
    index = {(s, lab): k for k, (s, lab) in enumerate(zip(src, labels))}
    comp = {}
    for k, (u, v) in enumerate(labels):
        for k2, (u2, v2) in enumerate(labels):
            if src[k2] == dst[k]:
                comp[(k2, k)] = index[(src[k], (I.comp[(u2, u)], I.comp[(v2, v)]))]
    ids = {f: index[(f, (I.id(I.src[f]), I.id(I.dst[f])))] for f in objs}
    A = FinCat(objs, src, dst, ids, comp, labels)
    ev0 = FunctorData(A, I, {f: I.src[f] for f in objs}, [u for u, _ in labels])
    ev1 = FunctorData(A, I, {f: I.dst[f] for f in objs}, [v for _, v in labels])
    const = FunctorData(I, A, {a: I.id(a) for a in I.objects},
                        [index[(I.id(I.src[u]), (u, u))] for u in range(I.n_mor)])
    return A, ev0, ev1, const


def monoid_category(elements, mult, unit):
    """A one-object category from a monoid table."""
    n = len(elements)
    comp = {(g, f): mult[g][f] for g in range(n) for f in range(n)}
    return FinCat(["*"], ["*"] * n, ["*"] * n, {"*": unit}, comp, list(elements))


def point():
    return FinCat.from_poset(["*"], lambda a, b: True)


def chain(n):
    return FinCat.from_poset(list(range(n + 1)), lambda a, b: a <= b)


def discrete(k):
    return FinCat.discrete(list(range(k)))


# -- functor enumeration and natural isomorphisms --------------------------------

def enumerate_functors(S, T, obj_options=None, mor_ok=None, fixed_obj=None):
    """All functors S → T, optionally with per-object candidate lists and a
    predicate mor_ok(m, t) on morphism images."""
    order = list(S.objects)
    pos = {x: k for k, x in enumerate(order)}
    if fixed_obj is not None:
        obj_options = {x: [fixed_obj[x]] for x in order}
    if obj_options is None:
        obj_options = {x: list(T.objects) for x in order}
    seq = []
    for k, x in enumerate(order):
        seq.append(("obj", x))
        for m in range(S.n_mor):
            if S.is_identity(m):
                continue
            a, b = pos[S.src[m]], pos[S.dst[m]]
            if max(a, b) == k:
                seq.append(("mor", m))
    step = {}
    for k, (kind, v) in enumerate(seq):
        if kind == "obj":
            step[S.id(v)] = k
        else:
            step[v] = k
    checks = [[] for _ in seq]
    for (g, f), h in S.comp.items():
        checks[max(step[g], step[f], step[h])].append((g, f, h))
    obj, mor = {}, [None] * S.n_mor
    out = []

    def ok_at(k):
        return all(T.comp[(mor[g], mor[f])] == mor[h] for g, f, h in checks[k])

    def visit(k):
        if k == len(seq):
            out.append(FunctorData(S, T, dict(obj), list(mor)))
            return
        kind, v = seq[k]
        if kind == "obj":
            for t in obj_options[v]:
                obj[v] = t
                mor[S.id(v)] = T.id(t)
                if (mor_ok is None or mor_ok(S.id(v), T.id(t))) and ok_at(k):
                    visit(k + 1)
            obj.pop(v, None)
            return
        for t in T.hom(obj[S.src[v]], obj[S.dst[v]]):
            if mor_ok is not None and not mor_ok(v, t):
                continue
            mor[v] = t
            if ok_at(k):
                visit(k + 1)
        mor[v] = None

    visit(0)
    return out


def functors_over(S, total, legs, base_legs):
    """Functors Φ: S → total with leg∘Φ = base_leg for each pair."""
    options = {x: [e for e in total.objects
                   if all(l.obj[e] == b.obj[x] for l, b in zip(legs, base_legs))] for x in S.objects}
    return enumerate_functors(S, total, options,
                              lambda m, t: all(l.mor[t] == b.mor[m] for l, b in zip(legs, base_legs)))


def vertical_isos(phi, psi, legs):
    """Natural isomorphisms φ ⇒ ψ whose components lie over identities of
    every leg."""
    S, T = phi.source, phi.target
    order = list(S.objects)
    comps = {}
    count = 0

    def candidates(x):
        out = []
        for t in T.hom(phi.obj[x], psi.obj[x]):
            if all(l.target.is_identity(l.mor[t]) for l in legs) and T.is_iso(t):
                out.append(t)
        return out

    def natural(x):
        for m in range(S.n_mor):
            a, b = S.src[m], S.dst[m]
            if x in (a, b) and a in comps and b in comps:
                if T.comp[(psi.mor[m], comps[a])] != T.comp[(comps[b], phi.mor[m])]:
                    return False
        return True

    def visit(k):
        nonlocal count
        if k == len(order):
            count += 1
            return
        x = order[k]
        for t in candidates(x):
            comps[x] = t
            if natural(x):
                visit(k + 1)
        comps.pop(x, None)

    visit(0)
    return count


def functor_classes(functors, legs):
    """Isomorphism classes under vertical natural isomorphisms:
    (class index per functor, list of (representative, automorphism count))."""
    T = functors[0].target if functors else None
    iso_class = {}
    if T is not None:
        uf = UnionFind(len(T.objects))
        for m in range(T.n_mor):
            if T.is_iso(m):
                uf.union(T.index[T.src[m]], T.index[T.dst[m]])
        iso_class = {x: uf.find(T.index[x]) for x in T.objects}
    buckets = {}
    for k, phi in enumerate(functors):
        key = tuple(iso_class[phi.obj[x]] for x in phi.source.objects)
        buckets.setdefault(key, []).append(k)
    which = [None] * len(functors)
    classes = []
    for members in buckets.values():
        for k in members:
            if which[k] is not None:
                continue
            which[k] = len(classes)
            for k2 in members:
                if which[k2] is None and vertical_isos(functors[k], functors[k2], legs):
                    which[k2] = len(classes)
            classes.append((k, vertical_isos(functors[k], functors[k], legs)))
    return which, classes


def same_functor(a, b):
    return a.obj == b.obj and list(a.mor) == list(b.mor)


def class_bijection(src_functors, src_legs, dst_functors, dst_legs, transport):
    """Does ``transport`` induce a bijection of isomorphism classes with equal
    automorphism counts? Returns (ok, counts, witness)."""
    s_which, s_classes = functor_classes(src_functors, src_legs)
    d_which, d_classes = functor_classes(dst_functors, dst_legs)
    index = {}
    for k, phi in enumerate(dst_functors):
        index[(tuple(sorted(phi.obj.items(), key=repr)), tuple(phi.mor))] = k
    hit = {}
    for c, (rep, auts) in enumerate(s_classes):
        image = transport(src_functors[rep])
        key = (tuple(sorted(image.obj.items(), key=repr)), tuple(image.mor))
        if key not in index:
            return False, None, {"class": c, "reason": "image is not a valid target functor"}
        dc = d_which[index[key]]
        if dc in hit:
            return False, None, {"class": c, "reason": "two classes map to one"}
        hit[dc] = c
        if d_classes[dc][1] != auts:
            return False, None, {"class": c, "reason": "automorphism counts differ"}
    counts = {"source_classes": len(s_classes), "target_classes": len(d_classes),
              "source_functors": len(src_functors), "target_functors": len(dst_functors)}
    if len(hit) != len(d_classes):
        return False, counts, {"reason": "target classes not hit", "missing": len(d_classes) - len(hit)}
    return True, counts, None


# -- Grothendieck constructions ------------------------------------------------------

class FibrationData:
    """A functor with a marked set of morphisms claimed (co)cartesian."""

    def __init__(self, functor, marked, kind):
        if kind not in ("cartesian", "cocartesian"):
            raise CategoryError(f"unknown fibration kind {kind}")
        self.functor = functor
        self.marked = sorted(marked)
        self.kind = kind

    def check(self):
        rep = CheckReport(f"{self.kind} fibration")
        p = self.functor if self.kind == "cartesian" else as_op(self.functor)
        E, B = p.source, p.target
        for m in self.marked:
            if not is_cartesian(p, m):
                rep.fail({"marked": _plain(E.labels[m]), "reason": f"not {self.kind}"})
        ends = {(E.dst[m], p.mor[m]) for m in self.marked}
        for e in E.objects:
            for u in range(B.n_mor):
                if B.dst[u] == p.obj[e] and (e, u) not in ends:
                    rep.fail({"object": _plain(e), "base_morphism": _plain(B.labels[u]),
                              "reason": "no marked lift"})
        rep.counts = {"objects": len(E.objects), "morphisms": E.n_mor, "marked": len(self.marked)}
        return rep

    def to_json(self):
        return {"kind": self.kind, "total": self.functor.source.to_json(),
                "base": self.functor.target.to_json(), "marked": list(self.marked)}


def cat_functor(base, fibres, maps):
    """A CatFunctor whose actions between thin fibres are given by object maps
    ``maps[m]`` (dicts) for every base morphism m."""
    actions = [FunctorData.of_monotone(fibres[base.src[m]], fibres[base.dst[m]], maps[m].__getitem__)
               for m in range(base.n_mor)]
    return CatFunctor(base, fibres, actions).check()


def grothendieck(F, variance="covariant"):
    """Covariant F on C: the cocartesian fibration ∫F → C. Contravariant F
    (a CatFunctor on C^op): the cartesian fibration over C with fibres F(c)."""
    if variance == "covariant":
        total, proj = total_category(F)
        marked = [m for m, (u, phi) in enumerate(total.labels)
                  if F.fibres[F.base.dst[u]].is_identity(phi)]
        return FibrationData(proj, marked, "cocartesian")
    if variance != "contravariant":
        raise CategoryError(f"unknown variance {variance}")
    fib_op = {c: F.fibres[c].op() for c in F.base.objects}
    acts = [FunctorData(fib_op[F.base.src[m]], fib_op[F.base.dst[m]], a.obj, a.mor)
            for m, a in enumerate(F.actions)]
    total, proj = total_category(CatFunctor(F.base, fib_op, acts))
    E = total.op()
    C = F.base.op()
    marked = [m for m, (u, phi) in enumerate(total.labels) if fib_op[F.base.dst[u]].is_identity(phi)]
    return FibrationData(FunctorData(E, C, proj.obj, proj.mor), marked, "cartesian")


def grothendieck_hom_count(F, x, y, variance="covariant"):
    """Covariant: Σ_{u: c → c'} |Hom_{F(c')}(F(u)x, x')|. Contravariant (F on
    C^op): Σ_{u: c → c'} |Hom_{F(c)}(x, F(u)x')|."""
    (c, a), (c2, b) = x, y
    if variance == "covariant":
        return sum(len(F.fibres[c2].hom(F.actions[u].obj[a], b)) for u in F.base.hom(c, c2))
    return sum(len(F.fibres[c].hom(a, F.actions[u].obj[b])) for u in F.base.hom(c2, c))


def hasse_edges(P):
    """Non-identity morphisms of a thin category that do not factor."""
    out = []
    for m in range(P.n_mor):
        a, b = P.src[m], P.dst[m]
        if a != b and not any(z not in (a, b) and P.leq(a, z) and P.leq(z, b) for z in P.objects):
            out.append((a, b))
    return out


def random_poset_functor(base, fibres, rng, attempts=200):
    """A random functor from a finite poset to posets: each object gets a
    fibre drawn from ``fibres``, Hasse edges get random monotone maps and
    composites must agree along all paths."""
    for _ in range(attempts):
        fib = {c: rng.choice(fibres) for c in base.objects}
        edges = {}
        for a, b in hasse_edges(base):
            options = [h for h in functor_poset(fib[a], fib[b]).objects]
            if not options:
                break
            edges[(a, b)] = dict(zip(fib[a].objects, rng.choice(options)))
        else:
            maps, ok = [], True
            for m in range(base.n_mor):
                found = _path_maps(base, edges, base.src[m], base.dst[m], fib)
                if len({tuple(sorted(d.items())) for d in found}) != 1:
                    ok = False
                    break
                maps.append(found[0])
            if ok:
                return cat_functor(base, fib, maps)
    raise CategoryError("no consistent random functor found")


def _path_maps(base, edges, a, b, fib):
    if a == b:
        return [{x: x for x in fib[a].objects}]
    out = []
    for (x, y), t in edges.items():
        if x == a and base.leq(y, b):
            for rest in _path_maps(base, edges, y, b, fib):
                out.append({v: rest[t[v]] for v in t})
    return out


# -- bifibrations ------------------------------------------------------------------

class OverProduct:
    """A category with two legs E → X and E → Y (a functor to X × Y)."""

    def __init__(self, total, first, second):
        self.total, self.first, self.second = total, first, second

    @property
    def pair(self):
        return pair_functor(self.first, self.second)

    def fibre(self, x, y):
        E = self.total
        objs = [e for e in E.objects if self.first.obj[e] == x and self.second.obj[e] == y]
        keep = [m for m in range(E.n_mor) if E.src[m] in objs and E.dst[m] in objs
                and self.first.target.is_identity(self.first.mor[m])
                and self.second.target.is_identity(self.second.mor[m])]
        return _subcategory(E, objs, keep)[0]

    def to_json(self):
        return {"total": self.total.to_json(),
                "first": [[_plain(e), _plain(self.first.obj[e])] for e in self.total.objects],
                "second": [[_plain(e), _plain(self.second.obj[e])] for e in self.total.objects]}


def _restrict_leg(leg, incl):
    return FunctorData(incl.source, leg.target, {x: leg.obj[x] for x in incl.source.objects},
                       [leg.mor[m] for m in incl.mor])


def check_bifibration(data):
    """The hypotheses (p cartesian, q cocartesian, each inverting the other's
    marked morphisms) and the four equivalent criteria: (1) the bifibration
    definition, (2) every q_a a left fibration, (3) every p_b a right
    fibration, (4) every fibre E_{a,b} a groupoid."""
    rep = CheckReport("bifibration")
    p, q = data.first, data.second
    E, A, B = data.total, p.target, q.target
    cart = cartesian_set(p)
    cocart = {m for m in range(E.n_mor) if is_cartesian(as_op(q), m)}
    hyp = (is_cartesian_fibration(p, cart)[0] and is_cartesian_fibration(as_op(q), cocart)[0]
           and all(A.is_iso(p.mor[m]) for m in cocart) and all(B.is_iso(q.mor[m]) for m in cart))
    crit = [True] * 4
    where = [None] * 4
    for m in range(E.n_mor):
        if (m in cart) != B.is_iso(q.mor[m]) or (m in cocart) != A.is_iso(p.mor[m]):
            crit[0], where[0] = False, {"morphism": _plain(E.labels[m])}
            break
    for a in A.objects:
        Ea, incl = fibre(p, a)
        if Ea.objects and not is_left_fib(_restrict_leg(q, incl)):
            crit[1], where[1] = False, {"a": _plain(a)}
            break
    for b in B.objects:
        Eb, incl = fibre(q, b)
        if Eb.objects and not is_right_fib(_restrict_leg(p, incl)):
            crit[2], where[2] = False, {"b": _plain(b)}
            break
    for a in A.objects:
        for b in B.objects:
            if not data.fibre(a, b).is_groupoid():
                crit[3], where[3] = False, {"a": _plain(a), "b": _plain(b)}
                break
        if not crit[3]:
            break
    rep.counts = {"hypotheses": hyp, "criteria": crit}
    if not hyp:
        rep.fail({"reason": "hypotheses fail"})
    elif len(set(crit)) != 1:
        rep.fail({"reason": "criteria disagree", "criteria": crit, "where": where})
    elif not crit[0]:
        rep.fail({"reason": "not a bifibration", "where": where})
    return rep


class DualData:
    """The dual of a cartesian fibration: total category, projection to the
    opposite base, transported legs, the chosen cartesian lifts and the index
    of morphisms by (source, (u, φ))."""

    def __init__(self, total, proj, others, lifts, index):
        self.total, self.proj, self.others = total, proj, others
        self.lifts, self.index = lifts, index


def dual_cartesian(p, others=()):
    """For a cartesian fibration p: E → A, the cocartesian fibration over A^op
    with the same objects; a morphism x → y over u: p(y) → p(x) is (u, φ) with
    φ: u*x → y over an identity. Legs r: E → X that invert the chosen lifts are
    carried along as r(φ)∘r(lift)⁻¹."""
    E, A = p.source, p.target
    cart = cartesian_set(p)
    lifts = {}
    for x in E.objects:
        for u in range(A.n_mor):
            if A.dst[u] != p.obj[x]:
                continue
            if A.is_identity(u):
                lifts[(u, x)] = E.id(x)
                continue
            found = [m for m in cart if E.dst[m] == x and p.mor[m] == u]
            if not found:
                raise CategoryError("not a cartesian fibration")
            lifts[(u, x)] = found[0]
    labels, src, dst = [], [], []
    for x in E.objects:
        for u in range(A.n_mor):
            if (u, x) not in lifts:
                continue
            z = E.src[lifts[(u, x)]]
            a2 = A.src[u]
            for y in E.objects:
                if p.obj[y] != a2:
                    continue
                for phi in E.hom(z, y):
                    if p.mor[phi] == A.id(a2):
                        labels.append((u, phi))
                        src.append(x)
                        dst.append(y)
    index = {(s, lab): k for k, (s, lab) in enumerate(zip(src, labels))}
    by_src = {}
    for k, s in enumerate(src):
        by_src.setdefault(s, []).append(k)
    comp = {}
    for f, (u, phi) in enumerate(labels):
        x, y = src[f], dst[f]
        for g in by_src[y]:
            v, psi = labels[g]
            uv = A.comp[(u, v)]
            h = factor(p, lifts[(u, x)], lifts[(uv, x)], v)
            h2 = factor(p, lifts[(v, y)], E.comp[(phi, h)], A.id(A.src[v]))
            comp[(g, f)] = index[(x, (uv, E.comp[(psi, h2)]))]
    ids = {x: index[(x, (A.id(p.obj[x]), E.id(x)))] for x in E.objects}
    D = FinCat(E.objects, src, dst, ids, comp, labels)
    proj = FunctorData(D, A.op(), {x: p.obj[x] for x in E.objects}, [u for u, _ in labels])
    legs = []
    for r in others:
        X = r.target
        mors = []
        for k, (u, phi) in enumerate(labels):
            inv = X.inverse(r.mor[lifts[(u, src[k])]])
            if inv is None:
                raise CategoryError("leg does not invert the cartesian lifts")
            mors.append(X.comp[(r.mor[phi], inv)])
        legs.append(FunctorData(D, X, {x: r.obj[x] for x in E.objects}, mors))
    return DualData(D, proj, legs, lifts, index)


def dual_cocartesian(p, others=()):
    """For a cocartesian fibration p: F → C, the cartesian fibration over C^op."""
    d = dual_cartesian(as_op(p), [as_op(r) for r in others])
    D = d.total.op()
    return D, FunctorData(D, d.proj.target.op(), d.proj.obj, d.proj.mor), \
        [FunctorData(D, r.target.op(), r.obj, r.mor) for r in d.others]


def left_dual(bif):
    """Bifibration E → A × B ↦ left fibration E^ℓ → A^op × B."""
    d = dual_cartesian(bif.first, [bif.second])
    return OverProduct(d.total, d.proj, d.others[0]), d


def swap_op(bif):
    """E → A × B ↦ E^op → B^op × A^op (again a bifibration)."""
    return OverProduct(bif.total.op(), as_op(bif.second), as_op(bif.first))


def right_dual(bif):
    """Bifibration E → A × B ↦ right fibration E^r → A × B^op, built as the
    opposite of the left dual of swap_op(E)."""
    L, d = left_dual(swap_op(bif))
    return OverProduct(L.total.op(), as_op(L.second), as_op(L.first)), d


def from_left(L):
    """Left fibration F → A^op × B ↦ bifibration over A × B."""
    D, pd, (qd,) = dual_cocartesian(L.first, [L.second])
    return OverProduct(D, pd, qd)


def from_right(R):
    """Right fibration F → A × B^op ↦ bifibration over A × B."""
    d = dual_cartesian(R.second, [R.first])
    return OverProduct(d.total, d.others[0], d.proj)


def iso_over_base(X, Y):
    """An identity-on-objects isomorphism X.total → Y.total commuting with
    both legs, or None."""
    if set(X.total.objects) != set(Y.total.objects):
        return None
    S, T = X.total, Y.total

    def ok(m, t):
        return Y.first.mor[t] == X.first.mor[m] and Y.second.mor[t] == X.second.mor[m]

    for G in enumerate_functors(S, T, fixed_obj={x: x for x in S.objects}, mor_ok=ok):
        if sorted(G.mor) == list(range(T.n_mor)):
            return G
    return None


def dualize(data, kind):
    """``kind`` names the input: "bifibration" gives (left dual, right dual);
    "left" or "right" gives the bifibration."""
    if kind == "bifibration":
        return left_dual(data)[0], right_dual(data)[0]
    if kind == "left":
        return from_left(data)
    if kind == "right":
        return from_right(data)
    raise CategoryError(f"unknown kind {kind}")


def dualization_report(bif, name="instance"):
    """Bifibration check, left/right fibration checks on the duals, and both
    roundtrips up to isomorphism over the base."""
    rep = CheckReport(f"dualization {name}")
    b = check_bifibration(bif)
    if not b.ok:
        rep.fail({"stage": "input", "detail": b.witness})
        return rep
    L, R = dualize(bif, "bifibration")
    if not is_left_fib(L.pair):
        rep.fail({"stage": "left dual is not a left fibration"})
    if not is_right_fib(R.pair):
        rep.fail({"stage": "right dual is not a right fibration"})
    back_l, back_r = from_left(L), from_right(R)
    for label, back in (("left", back_l), ("right", back_r)):
        if not check_bifibration(back).ok:
            rep.fail({"stage": f"{label} roundtrip is not a bifibration"})
        elif iso_over_base(bif, back) is None:
            rep.fail({"stage": f"{label} roundtrip not isomorphic over the base"})
    L2 = left_dual(back_l)[0]
    if iso_over_base(L, L2) is None:
        rep.fail({"stage": "left fibration roundtrip not isomorphic over the base"})
    rep.counts = {"objects": len(bif.total.objects), "morphisms": bif.total.n_mor,
                  "left_morphisms": L.total.n_mor, "right_morphisms": R.total.n_mor}
    return rep


# -- instances ----------------------------------------------------------------------

def arrow_bifibration(I):
    A, ev0, ev1, _ = arrow_category(I)
    return OverProduct(A, ev0, ev1)


def category_of_elements(base, sizes, maps):
    """The left fibration of a set-valued functor on ``base``; ``maps[m]`` is
    the function table of morphism m."""
    objs = [(c, x) for c in base.objects for x in range(sizes[c])]
    labels, src, dst = [], [], []
    for (c, x) in objs:
        for m in range(base.n_mor):
            if base.src[m] == c:
                labels.append(m)
                src.append((c, x))
                dst.append((base.dst[m], maps[m][x]))
    index = {(s, m): k for k, (s, m) in enumerate(zip(src, labels))}
    comp = {}
    for f in range(len(labels)):
        for g in range(len(labels)):
            if src[g] == dst[f]:
                comp[(g, f)] = index[(src[f], base.comp[(labels[g], labels[f])])]
    ids = {o: index[(o, base.id(o[0]))] for o in objs}
    E = FinCat(objs, src, dst, ids, comp, labels)
    return E, FunctorData(E, base, {o: o[0] for o in objs}, labels)


def random_set_functor(base, rng, max_size=2, attempts=200):
    """A random functor base → FinSet on a finite poset base (tables on Hasse
    edges, composites along paths; rejected when two paths disagree)."""
    for _ in range(attempts):
        sizes = {}
        order = sorted(base.objects, key=lambda v: sum(1 for u in base.objects if base.leq(u, v)))
        for v in order:
            low = int(any(sizes[u] for u in sizes if base.leq(u, v) and u != v))
            sizes[v] = rng.randint(low, max(low, max_size))
        edge_table = {}
        for m in range(base.n_mor):
            a, b = base.src[m], base.dst[m]
            if a != b and not any(z not in (a, b) and base.leq(a, z) and base.leq(z, b) for z in base.objects):
                edge_table[(a, b)] = tuple(rng.randrange(sizes[b]) for _ in range(sizes[a]))
        maps, ok = [], True
        for m in range(base.n_mor):
            tables = _path_tables(base, edge_table, base.src[m], base.dst[m], sizes)
            if len(set(tables)) != 1:
                ok = False
                break
            maps.append(tables[0])
        if ok:
            return sizes, maps
    raise CategoryError("no consistent random functor found")


def _path_tables(base, edges, a, b, sizes):
    if a == b:
        return [tuple(range(sizes[a]))]
    out = []
    for (x, y), t in edges.items():
        if x == a and base.leq(y, b):
            for rest in _path_tables(base, edges, y, b, sizes):
                out.append(tuple(rest[v] for v in t))
    return out


def left_fibration_instance(A, B, rng, max_size=2):
    """A random left fibration over A^op × B from a set-valued functor."""
    Aop = A.op()
    base = Aop.product(B)
    if not base.is_thin():
        raise CategoryError("random instances need thin bases")
    sizes, maps = random_set_functor(base, rng, max_size)
    E, proj = category_of_elements(base, sizes, maps)
    first = FunctorData(E, Aop, {o: o[0][0] for o in E.objects}, [m // B.n_mor for m in proj.mor])
    second = FunctorData(E, B, {o: o[0][1] for o in E.objects}, [m % B.n_mor for m in proj.mor])
    return OverProduct(E, first, second)


def with_groupoid_factor(bif, G):
    """E × G over A × B through the first factor: fibres gain a factor G."""
    P = bif.total.product(G)
    first = FunctorData(P, bif.first.target, {(e, g): bif.first.obj[e] for e, g in P.objects},
                        [bif.first.mor[m // G.n_mor] for m in range(P.n_mor)])
    second = FunctorData(P, bif.second.target, {(e, g): bif.second.obj[e] for e, g in P.objects},
                         [bif.second.mor[m // G.n_mor] for m in range(P.n_mor)])
    return OverProduct(P, first, second)


def cyclic_group(n):
    return monoid_category(list(range(n)), [[(a + b) % n for b in range(n)] for a in range(n)], 0)


# -- the free bifibration ------------------------------------------------------------

def free_bifibration_check(I, E):
    """Restriction along const from maps I^{Δ¹} → E over I × I to sections
    I → E over the diagonal: a bijection on isomorphism classes with equal
    automorphism counts."""
    rep = CheckReport("free bifibration")
    if len(I.objects) > 3:
        raise CategoryError("bound too large")
    A, ev0, ev1, const = arrow_category(I)
    legs = [E.first, E.second]
    side1 = functors_over(A, E.total, legs, [ev0, ev1])
    ident = FunctorData.identity(I)
    side2 = functors_over(I, E.total, legs, [ident, ident])
    ok, counts, witness = class_bijection(side1, legs, side2, legs, lambda phi: const.then(phi))
    rep.counts = counts or {}
    if not ok:
        rep.fail(witness)
    return rep


# -- sections through twisted arrows ---------------------------------------------

def tw_legs(C, tw=None):
    """Tw^r(C) with its source leg to C and target leg to C^op."""
    tw = tw_r(C) if tw is None else tw
    src_leg = FunctorData(tw, C, {f: C.src[f] for f in tw.objects}, [u for u, _ in tw.labels])
    dst_leg = FunctorData(tw, C.op(), {f: C.dst[f] for f in tw.objects}, [v for _, v in tw.labels])
    return tw, src_leg, dst_leg


def _check_gaunt(*cats):
    for X in cats:
        for m in range(X.n_mor):
            if X.is_iso(m) and not X.is_identity(m):
                raise CategoryError("bases must have no nontrivial isomorphisms")


def section_to_twl(E, d, C, alpha, s):
    """The Tw^ℓ(C)-diagram in the left dual attached to a section s over
    (α, β): f: a → b goes to α(f)*s(b); a morphism (u, v) from f′ to f goes to
    the unique fibre map compatible with s(v)."""
    p, A = E.first, E.first.target
    tw = tw_r(C)
    twl = tw.op()
    D = d.total
    obj = {}
    for f in tw.objects:
        obj[f] = E.total.src[d.lifts[(alpha.mor[f], s.obj[C.dst[f]])]]
    mor = []
    for k, (u, v) in enumerate(tw.labels):
        f, f2 = tw.src[k], tw.dst[k]
        w = alpha.mor[u]
        X = obj[f2]
        lift_w = d.lifts[(w, X)]
        rhs = E.total.comp[(s.mor[v], E.total.comp[(d.lifts[(alpha.mor[f2], s.obj[C.dst[f2]])], lift_w)])]
        phi = factor(p, d.lifts[(alpha.mor[f], s.obj[C.dst[f]])], rhs, A.id(alpha.obj[C.src[f]]))
        mor.append(d.index[(X, (w, phi))])
    return FunctorData(twl, D, obj, mor)


def sections_via_tw(E, C, alpha, beta):
    """Sections of E over (α, β), Tw^r(C)-diagrams in E^r and Tw^ℓ(C)-diagrams
    in E^ℓ over the induced bases, with explicit maps from the first to the
    other two; each must be a bijection on isomorphism classes."""
    rep = CheckReport("sections via twisted arrows")
    if max(len(C.objects), len(E.first.target.objects), len(E.second.target.objects)) > 4:
        raise CategoryError("bound too large")
    _check_gaunt(E.first.target, E.second.target)
    legs = [E.first, E.second]
    sections = functors_over(C, E.total, legs, [alpha, beta])
    # Tw^ℓ(C) → E^ℓ over α^op × β
    L, d = left_dual(E)
    tw, src_leg, dst_leg = tw_legs(C)
    twl = tw.op()
    a_op = FunctorData(C.op(), L.first.target, alpha.obj, alpha.mor)
    a_obj = {f: alpha.obj[o] for f, o in src_leg.obj.items()}
    b_obj = {f: beta.obj[o] for f, o in dst_leg.obj.items()}
    base_l = [FunctorData(twl, L.first.target, a_obj, [a_op.mor[u] for u in src_leg.mor]),
              FunctorData(twl, L.second.target, b_obj, [beta.mor[v] for v in dst_leg.mor])]
    left_diagrams = functors_over(twl, L.total, [L.first, L.second], base_l)
    ok_l, counts_l, wit_l = class_bijection(sections, legs, left_diagrams, [L.first, L.second],
                                            lambda s: section_to_twl(E, d, C, alpha, s))
    # Tw^r(C) → E^r over α × β^op, through the opposite data
    R, d_op = right_dual(E)
    Eo = swap_op(E)
    Co = C.op()
    b_op = FunctorData(Co, Eo.first.target, beta.obj, beta.mor)
    base_r = [FunctorData(tw, R.first.target, a_obj, [alpha.mor[u] for u in src_leg.mor]),
              FunctorData(tw, R.second.target, b_obj, [beta.mor[v] for v in dst_leg.mor])]
    right_diagrams = functors_over(tw, R.total, [R.first, R.second], base_r)
    tw_o = tw_r(Co)
    tw_o_index = {(tw_o.src[k], lab): k for k, lab in enumerate(tw_o.labels)}
    swap = [tw_o_index[(tw.src[k], (v, u))] for k, (u, v) in enumerate(tw.labels)]

    def to_right(s):
        s_op = FunctorData(Co, Eo.total, s.obj, s.mor)
        t = section_to_twl(Eo, d_op, Co, b_op, s_op)
        return FunctorData(tw, R.total, t.obj, [t.mor[swap[k]] for k in range(tw.n_mor)])

    ok_r, counts_r, wit_r = class_bijection(sections, legs, right_diagrams, [R.first, R.second], to_right)
    rep.counts = {"sections": len(sections), "tw_left": len(left_diagrams), "tw_right": len(right_diagrams)}
    if not ok_l:
        rep.fail({"side": "left", **(wit_l or {})})
    if not ok_r:
        rep.fail({"side": "right", **(wit_r or {})})
    return rep


# -- posets --------------------------------------------------------------------------

def posets_up_to_iso(max_n):
    """One FinCat per isomorphism class of posets with ≤ max_n elements."""
    out = []
    for n in range(max_n + 1):
        pairs = list(combinations(range(n), 2))
        seen = set()
        for bits in range(1 << len(pairs)):
            rel = {pairs[k] for k in range(len(pairs)) if bits >> k & 1}
            if any((a, b) in rel and (b, c) in rel and (a, c) not in rel
                   for a in range(n) for b in range(n) for c in range(n)):
                continue
            canon = min(_relabel_key(rel, s) for s in permutations(range(n)))
            if canon in seen:
                continue
            seen.add(canon)
            out.append(FinCat.from_poset(list(range(n)), lambda a, b, r=frozenset(rel): a == b or (a, b) in r))
    return out


def _relabel_key(rel, s):
    return tuple(sorted((s[a], s[b]) for a, b in rel))


def twr_right_fibration_report(max_n=5):
    rep = CheckReport("twisted arrow right fibration")
    posets = posets_up_to_iso(max_n)
    for k, P in enumerate(posets):
        _, proj = tw_r_projection(P)
        if not is_right_fibration(proj):
            rep.fail({"poset": k, "size": len(P.objects)})
    rep.counts = {"posets": len(posets)}
    return rep


def thin_iso(X, Y, objmap):
    """For thin categories: is the object map an isomorphism?"""
    if len(X.objects) != len(Y.objects) or len(set(objmap.values())) != len(X.objects):
        return False
    return all(X.leq(a, b) == Y.leq(objmap[a], objmap[b]) for a in X.objects for b in X.objects)


# -- Tw₂ ------------------------------------------------------------------------------

def tw2(C):
    """Tw₂(C) = Tw^r(C) ×_{C^op} Tw^r(C)^op: objects are chains x → y → z as
    pairs (f, g); returns (Tw₂, π₀, π₂, Φ to C^{Δ¹})."""
    tw, src_leg, dst_leg = tw_legs(C)
    src_op = FunctorData(tw.op(), C.op(), src_leg.obj, src_leg.mor)
    T, p1, p2 = strict_pullback(dst_leg, src_op)
    pi0 = FunctorData(T, C, {o: C.src[o[0]] for o in T.objects},
                      [tw.labels[k1][0] for k1, _ in T.labels])
    pi2 = FunctorData(T, C, {o: C.dst[o[1]] for o in T.objects},
                      [tw.labels[k2][1] for _, k2 in T.labels])
    A, _, _, _ = arrow_category(C)
    a_index = {(A.src[k], lab): k for k, lab in enumerate(A.labels)}
    obj = {o: C.comp[(o[1], o[0])] for o in T.objects}
    mor = [a_index[(obj[T.src[k]], (tw.labels[k1][0], tw.labels[k2][1]))] for k, (k1, k2) in enumerate(T.labels)]
    phi = FunctorData(T, A, obj, mor)
    return T, pi0, pi2, phi


def tw2_report(C):
    """π₀ cartesian with fibres Tw^r(C_{x/})^op, π₂ cocartesian with fibres
    Tw^r(C_{/x}), and Φ final and initial (thin C)."""
    rep = CheckReport("Tw2")
    T, pi0, pi2, phi = tw2(C)
    phi.check()
    if not is_cartesian_fibration(pi0)[0]:
        rep.fail({"reason": "pi0 is not a cartesian fibration"})
    if not is_cocartesian_fibration(pi2)[0]:
        rep.fail({"reason": "pi2 is not a cocartesian fibration"})
    for x in C.objects:
        F2, _ = fibre(pi2, x)
        sl, sl_proj = slice_category(C, x)
        tws = tw_r(sl)
        # (f, g) ↦ the slice morphism (g∘f → x) ⇒ (g → x) with underlying f
        idx = {(sl.src[m], sl.dst[m], sl_proj.mor[m]): m for m in range(sl.n_mor)}
        objmap = {o: idx[(C.comp[(o[1], o[0])], o[1], o[0])] for o in F2.objects}
        if not thin_iso(F2, tws, objmap):
            rep.fail({"reason": "pi2 fibre differs", "x": _plain(x)})
        F0, _ = fibre(pi0, x)
        co, co_proj = slice_category(C.op(), x)
        tw_co = tw_r(co.op()).op()
        idx = {(co.src[m], co.dst[m], co_proj.mor[m]): m for m in range(co.n_mor)}
        # (f, g) ↦ the coslice morphism (x → y) → (x → z) with underlying g
        objmap = {o: idx[(C.comp[(o[1], o[0])], o[0], o[1])] for o in F0.objects}
        if not thin_iso(F0, tw_co, objmap):
            rep.fail({"reason": "pi0 fibre differs", "x": _plain(x)})
    final, initial = cofinality_check(phi, "final"), cofinality_check(phi, "initial")
    if not (final and initial):
        rep.fail({"reason": "Phi not final and initial", "final": final, "initial": initial})
    rep.counts = {"objects": len(T.objects), "morphisms": T.n_mor}
    return rep


def twr_pullback_report(E, B, f):
    """Tw^r(B) ×_B E → B^op is a cartesian fibration with fibre at b
    isomorphic to B_{/b} ×_B E (thin B and E)."""
    rep = CheckReport("twisted arrow pullback")
    tw, src_leg, dst_leg = tw_legs(B)
    P, p1, p2 = strict_pullback(src_leg, f)
    to_bop = p1.then(dst_leg)
    if not is_cartesian_fibration(to_bop)[0]:
        rep.fail({"reason": "not a cartesian fibration"})
    for b in B.objects:
        Fb, _ = fibre(to_bop, b)
        sl, sl_proj = slice_category(B, b)
        Q, _, _ = strict_pullback(sl_proj, f)
        objmap = {o: (o[0], o[1]) for o in Fb.objects}
        if not thin_iso(Fb, Q, objmap):
            rep.fail({"reason": "fibre differs", "b": _plain(b)})
    rep.counts = {"objects": len(P.objects)}
    return rep


def cofinal_fibration_report(p):
    """A cartesian fibration with connected nonempty fibres is final and
    initial. Returns a report with hypothesis and conclusion."""
    rep = CheckReport("fibration cofinality")
    hyp = is_cartesian_fibration(p)[0] and all(
        len(connected_components(fibre(p, b)[0])) == 1 for b in p.target.objects)
    concl = cofinality_check(p, "final") and cofinality_check(p, "initial")
    rep.counts = {"hypothesis": hyp, "conclusion": concl}
    if hyp and not concl:
        rep.fail({"reason": "connected fibres but not final and initial"})
    return rep


def first_of_two_report(f, q):
    """Hypotheses: p = q∘f and q cartesian fibrations, f keeps cartesian
    morphisms cartesian, each fibre map f_c a right fibration. Conclusion: f
    is a cartesian fibration."""
    rep = CheckReport("first of two cartesian")
    p = f.then(q)
    cart_p = cartesian_set(p)
    cart_q = cartesian_set(q)
    hyp = is_cartesian_fibration(p, cart_p)[0] and is_cartesian_fibration(q, cart_q)[0] \
        and all(f.mor[m] in cart_q for m in cart_p)
    if hyp:
        for c in q.target.objects:
            Ec, incl_e = fibre(p, c)
            Dc, incl_d = fibre(q, c)
            pos = {m: k for k, m in enumerate(incl_d.mor)}
            fc = FunctorData(Ec, Dc, {x: f.obj[x] for x in Ec.objects},
                             [pos[f.mor[m]] for m in incl_e.mor])
            if Ec.objects and not is_right_fib(fc):
                hyp = False
                break
    concl = is_cartesian_fibration(f)[0]
    rep.counts = {"hypothesis": hyp, "conclusion": concl}
    if hyp and not concl:
        rep.fail({"reason": "hypotheses hold but f is not a cartesian fibration"})
    return rep


def projection_report(E):
    """For π: E → I × J with π_I cartesian preserving cartesian morphisms and
    each π_i cocartesian: π_J is cocartesian and π keeps cocartesian morphisms
    over identities of I."""
    rep = CheckReport("projection cocartesian")
    pI, pJ = E.first, E.second
    I, J = pI.target, pJ.target
    cart = cartesian_set(pI)
    cart_prod = {m for m in cart if J.is_iso(pJ.mor[m])}
    hyp = is_cartesian_fibration(pI, cart)[0] and cart == cart_prod
    if hyp:
        for i in I.objects:
            Ei, incl = fibre(pI, i)
            if Ei.objects and not is_cocartesian_fibration(_restrict_leg(pJ, incl))[0]:
                hyp = False
                break
    cocart = {m for m in range(E.total.n_mor) if is_cartesian(as_op(pJ), m)}
    concl = is_cocartesian_fibration(pJ)[0] and all(I.is_iso(pI.mor[m]) for m in cocart)
    rep.counts = {"hypothesis": hyp, "conclusion": concl}
    if hyp and not concl:
        rep.fail({"reason": "hypotheses hold but the conclusion fails"})
    return rep


# -- fibrations of functor categories ---------------------------------------------

def functor_poset(P, Q):
    """Fun(P, Q) for posets: monotone maps ordered pointwise."""
    objs = []
    for images in product(Q.objects, repeat=len(P.objects)):
        h = dict(zip(P.objects, images))
        if all(Q.leq(h[a], h[b]) for a in P.objects for b in P.objects if P.leq(a, b)):
            objs.append(tuple(images))
    return FinCat.from_poset(objs, lambda h, k: all(Q.leq(a, b) for a, b in zip(h, k)))


def fun_fibration_check(I, C, D, gamma_c, gamma_d, eps, phi):
    """For ε: C^op → posets (a CatFunctor on C^op) and φ: D → posets (on D),
    with 𝒢 → C × D the cocartesian fibration of Fun(ε, φ) and a functor
    γ = (γ_C, γ_D): I → C × D of posets: sections of 𝒢 over γ against functors
    I ×_C ℰ → ℱ over D, by an explicit map; cocartesian sections must match the
    functors taking cartesian morphisms to cocartesian ones."""
    rep = CheckReport("functor fibration")
    for X in (I, C, D):
        if not X.is_thin():
            raise CategoryError("functor fibrations are checked over posets")
    base = C.product(D)
    fib = {}
    for c in C.objects:
        for d in D.objects:
            fib[(c, d)] = functor_poset(eps.fibres[c], phi.fibres[d])
    maps = []
    for m in range(base.n_mor):
        u, w = divmod(m, D.n_mor)
        (c, d), (c2, _) = base.src[m], base.dst[m]
        eu = eps.actions[u]
        pw = phi.actions[w]
        P2 = eps.fibres[c2].objects
        maps.append({h: tuple(pw.obj[dict(zip(eps.fibres[c].objects, h))[eu.obj[x]]] for x in P2)
                     for h in fib[(c, d)].objects})
    H = cat_functor(base, fib, maps)
    G = grothendieck(H)
    Efib = grothendieck(eps, "contravariant")
    Ffib = grothendieck(phi)
    gamma = pair_functor(gamma_c, gamma_d)
    Gp = G.functor
    sections = functors_over(I, Gp.source, [Gp], [retarget(gamma, Gp.target)])
    Ep = retarget(Efib.functor, C)
    P, pr_i, pr_e = strict_pullback(gamma_c, Ep)
    to_d = pr_i.then(gamma_d)
    functors = functors_over(P, Ffib.functor.source, [Ffib.functor], [to_d])
    # explicit map: Ψ ↦ the section i ↦ (x ↦ fibre part of Ψ(i, (c_i, x)))
    def to_section(psi):
        obj = {}
        for i in I.objects:
            c = gamma_c.obj[i]
            obj[i] = ((c, gamma_d.obj[i]),
                      tuple(psi.obj[(i, (c, x))][1] for x in eps.fibres[c].objects))
        mor = []
        for m in range(I.n_mor):
            hs = [k for k in Gp.source.hom(obj[I.src[m]], obj[I.dst[m]]) if Gp.mor[k] == gamma.mor[m]]
            if len(hs) != 1:
                return None
            mor.append(hs[0])
        return FunctorData(I, Gp.source, obj, mor)

    images = {}
    for k, psi in enumerate(functors):
        s = to_section(psi)
        key = None if s is None else tuple(sorted(s.obj.items(), key=repr))
        if key is None or key in images:
            rep.fail({"functor": k, "reason": "map is not injective or not a section"})
            continue
        images[key] = k
    sec_keys = {tuple(sorted(s.obj.items(), key=repr)): s for s in sections}
    if set(images) != set(sec_keys):
        rep.fail({"reason": "sections and functors differ", "sections": len(sections),
                  "functors": len(functors)})
    # order: a vertical transformation exists on one side iff on the other
    keys = list(images)
    for a in keys:
        for b in keys:
            fa, fb = functors[images[a]], functors[images[b]]
            left = vertical_isos_or_maps(fa, fb, Ffib.functor)
            right = vertical_isos_or_maps(sec_keys[a], sec_keys[b], Gp)
            if left != right:
                rep.fail({"reason": "transformations differ"})
    # marking
    cart_p = {m for m in range(P.n_mor) if Efib.functor.source.is_identity(pr_e.mor[m])
              or pr_e.mor[m] in set(Efib.marked)}
    g_marked = set(G.marked)
    f_marked = set(Ffib.marked)
    for key in keys:
        psi = functors[images[key]]
        s = sec_keys[key]
        cocart_sec = all(s.mor[m] in g_marked for m in range(I.n_mor))
        keeps = all(psi.mor[m] in f_marked for m in cart_p)
        if cocart_sec != keeps:
            rep.fail({"reason": "cocartesian sections do not match", "section": _plain(key)})
    rep.counts = {"sections": len(sections), "functors": len(functors),
                  "cocartesian_sections": sum(all(sec_keys[k].mor[m] in g_marked for m in range(I.n_mor))
                                              for k in keys)}
    return rep


def vertical_isos_or_maps(phi, psi, proj):
    """Does a natural transformation φ ⇒ ψ with components over identities
    exist? (thin targets, so it is unique when it exists)."""
    S, T = phi.source, phi.target
    comps = {}
    for x in S.objects:
        hs = [t for t in T.hom(phi.obj[x], psi.obj[x]) if proj.target.is_identity(proj.mor[t])]
        if not hs:
            return False
        comps[x] = hs[0]
    return all(T.comp[(psi.mor[m], comps[S.src[m]])] == T.comp[(comps[S.dst[m]], phi.mor[m])]
               for m in range(S.n_mor))


# -- seeded instance families ---------------------------------------------------------

def small_posets():
    """Named bases used by the generated families."""
    return {"pt": point(), "[1]": chain(1), "[2]": chain(2), "2pt": discrete(2),
            "V": FinCat.from_poset([0, 1, 2], lambda a, b: a == b or a == 0),
            "Lambda": FinCat.from_poset([0, 1, 2], lambda a, b: a == b or b == 0)}


def generated_bifibrations(count, rng):
    """Bifibrations from random set-valued functors on A^op × B, with every
    third instance thickened by a groupoid factor."""
    names = ["pt", "[1]", "[2]", "2pt", "V"]
    bases = small_posets()
    out = []
    while len(out) < count:
        a, b = rng.choice(names), rng.choice(names)
        A, B = bases[a], bases[b]
        if len(A.objects) * len(B.objects) > 6:
            continue
        bif = from_left(left_fibration_instance(A, B, rng, 2))
        if len(out) % 3 == 2:
            bif = with_groupoid_factor(bif, cyclic_group(2))
        out.append((f"{a} x {b}", bif))
    return out


def generated_fun_instances(count, rng):
    """(I, C, D, γ_C, γ_D, ε, φ) with poset fibres drawn from pt, [1] and two
    points."""
    bases = small_posets()
    fibs = [point(), chain(1), discrete(2)]
    cs = ["pt", "[1]", "[2]", "V", "Lambda", "2pt"]
    ds = ["pt", "[1]", "2pt"]
    out = []
    while len(out) < count:
        C, D, I = bases[rng.choice(cs)], bases[rng.choice(ds)], bases[rng.choice(ds)]
        eps = random_poset_functor(C.op(), fibs, rng)
        phi = random_poset_functor(D, fibs, rng)
        gc = rng.choice(enumerate_functors(I, C))
        gd = rng.choice(enumerate_functors(I, D))
        out.append((I, C, D, gc, gd, eps, phi))
    return out


def random_cat_functor(rng, max_base=3, max_fibre=3):
    """A random functor from a poset with ≤ max_base elements to posets with
    ≤ max_fibre elements."""
    posets = [P for P in posets_up_to_iso(max_fibre) if P.objects]
    bases = [P for P in posets_up_to_iso(max_base) if P.objects]
    return random_poset_functor(rng.choice(bases), posets, rng)
