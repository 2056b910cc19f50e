"""Finite categories as flat tables, with exact (co)limit, Kan, equivalence
and cofinality checks."""

from __future__ import annotations

from itertools import permutations, product


class CategoryError(ValueError):
    pass


class UnionFind:
    """Union-find over range(n); each class is represented by its smallest index."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        lo, hi = min(rx, ry), max(rx, ry)
        self.parent[hi] = lo
        return lo

    def classes(self):
        out = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return [out[r] for r in sorted(out)]


class FinCat:
    """A finite category.

    Morphisms are the dense integers ``0..n-1``; ``src``/``dst`` give their
    endpoints and ``comp[(g, f)]`` is ``g∘f``. ``labels`` keeps a readable name
    per morphism (for posets it is the pair ``(x, y)``).
    """

    def __init__(self, objects, src, dst, identities, comp, labels=None):
        self.objects = tuple(objects)
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.identities = dict(identities)
        self.comp = comp
        self.labels = tuple(labels) if labels is not None else tuple(range(len(self.src)))
        self.index = {x: k for k, x in enumerate(self.objects)}
        self._hom = {}
        for m in range(len(self.src)):
            self._hom.setdefault((self.src[m], self.dst[m]), []).append(m)
        self._label_index = None

    # -- basic access ---------------------------------------------------
    @property
    def n_mor(self):
        return len(self.src)

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def id(self, x):
        return self.identities[x]

    def compose(self, g, f):
        return self.comp[(g, f)]

    def compose_path(self, *ms):
        """compose_path(h, g, f) = h∘g∘f."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.comp[(m, out)]
        return out

    def mor(self, label):
        if self._label_index is None:
            self._label_index = {lab: m for m, lab in enumerate(self.labels)}
        return self._label_index[label]

    def is_identity(self, m):
        return self.identities[self.src[m]] == m

    def is_thin(self):
        return all(len(v) <= 1 for v in self._hom.values())

    def inverse(self, f):
        x, y = self.src[f], self.dst[f]
        for g in self.hom(y, x):
            if self.comp[(g, f)] == self.identities[x] and self.comp[(f, g)] == self.identities[y]:
                return g
        return None

    def is_iso(self, f):
        return self.inverse(f) is not None

    def is_groupoid(self):
        return all(self.is_iso(m) for m in range(self.n_mor))

    def isomorphic(self, x, y):
        return any(self.is_iso(f) for f in self.hom(x, y))

    def __repr__(self):
        return f"FinCat({len(self.objects)} objects, {self.n_mor} morphisms)"

    # -- constructions --------------------------------------------------
    @classmethod
    def from_poset(cls, elements, leq):
        elements = list(elements)
        labels, src, dst = [], [], []
        for x in elements:
            for y in elements:
                if leq(x, y):
                    labels.append((x, y))
                    src.append(x)
                    dst.append(y)
        idx = {lab: m for m, lab in enumerate(labels)}
        identities = {x: idx[(x, x)] for x in elements}
        comp = {}
        for g, (y, z) in enumerate(labels):
            for f, (x, y2) in enumerate(labels):
                if y2 == y:
                    comp[(g, f)] = idx[(x, z)]
        return cls(elements, src, dst, identities, comp, labels)

    @classmethod
    def discrete(cls, objects):
        objects = list(objects)
        return cls(objects, objects, objects, {x: k for k, x in enumerate(objects)},
                   {(k, k): k for k in range(len(objects))}, [(x, x) for x in objects])

    def leq(self, x, y):
        return bool(self.hom(x, y))

    def op(self):
        comp = {(f, g): h for (g, f), h in self.comp.items()}
        return FinCat(self.objects, self.dst, self.src, self.identities, comp, self.labels)

    def product(self, other):
        objs = [(x, y) for x in self.objects for y in other.objects]
        pairs = [(f, g) for f in range(self.n_mor) for g in range(other.n_mor)]
        idx = {p: k for k, p in enumerate(pairs)}
        src = [(self.src[f], other.src[g]) for f, g in pairs]
        dst = [(self.dst[f], other.dst[g]) for f, g in pairs]
        identities = {(x, y): idx[(self.id(x), other.id(y))] for x, y in objs}
        comp = {}
        for (g1, f1), h1 in self.comp.items():
            for (g2, f2), h2 in other.comp.items():
                comp[(idx[(g1, g2)], idx[(f1, f2)])] = idx[(h1, h2)]
        labels = [(self.labels[f], other.labels[g]) for f, g in pairs]
        return FinCat(objs, src, dst, identities, comp, labels)

    def full_subcategory(self, objects):
        keep = set(objects)
        objs = [x for x in self.objects if x in keep]
        mors = [m for m in range(self.n_mor) if self.src[m] in keep and self.dst[m] in keep]
        new = {m: k for k, m in enumerate(mors)}
        comp = {(new[g], new[f]): new[h] for (g, f), h in self.comp.items()
                if g in new and f in new}
        sub = FinCat(objs, [self.src[m] for m in mors], [self.dst[m] for m in mors],
                     {x: new[self.identities[x]] for x in objs}, comp,
                     [self.labels[m] for m in mors])
        return sub, FunctorData(sub, self, {x: x for x in objs}, list(mors))

    def to_json(self):
        return {
            "objects": [_jsonable(x) for x in self.objects],
            "morphisms": [{"id": m, "src": _jsonable(self.src[m]), "dst": _jsonable(self.dst[m])}
                          for m in range(self.n_mor)],
            "identities": {str(_jsonable(x)): self.identities[x] for x in self.objects},
            "compose": [[g, f, h] for (g, f), h in sorted(self.comp.items())
                        if not (self.is_identity(g) or self.is_identity(f))],
        }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _hashable(x):
    if isinstance(x, list):
        return tuple(_hashable(y) for y in x)
    return x


def validate_category(raw):
    """Build a FinCat from the JSON interchange description, checking every law.

    Identities may be omitted (fresh identity morphisms are synthesized) and
    composition rows involving identities may be omitted.
    """
    objects = [_hashable(x) for x in raw["objects"]]
    if len(set(objects)) != len(objects):
        raise CategoryError("duplicate object id")
    labels, src, dst = [], [], []
    for row in raw["morphisms"]:
        labels.append(_hashable(row["id"]))
        src.append(_hashable(row["src"]))
        dst.append(_hashable(row["dst"]))
    if len(set(labels)) != len(labels):
        raise CategoryError("duplicate morphism id")
    for s, d in zip(src, dst):
        if s not in objects or d not in objects:
            raise CategoryError(f"morphism endpoint not an object: {s}->{d}")
    idx = {lab: m for m, lab in enumerate(labels)}
    raw_ids = raw.get("identities") or {}
    keyed = {str(_jsonable(x)): x for x in objects}
    identities = {}
    for key, lab in raw_ids.items():
        x = keyed.get(str(key), _hashable(key))
        if x not in objects:
            raise CategoryError(f"identity given for unknown object {key}")
        m = idx[_hashable(lab)]
        if src[m] != x or dst[m] != x:
            raise CategoryError(f"identity {lab} is not an endomorphism of {key}")
        identities[x] = m
    for x in objects:
        if x not in identities:
            fresh = ("id", x)
            while fresh in idx:
                fresh = ("id", fresh)
            idx[fresh] = len(labels)
            labels.append(fresh)
            src.append(x)
            dst.append(x)
            identities[x] = idx[fresh]
    comp = {}
    for g_lab, f_lab, h_lab in raw.get("compose", []):
        g, f, h = idx[_hashable(g_lab)], idx[_hashable(f_lab)], idx[_hashable(h_lab)]
        if src[g] != dst[f]:
            raise CategoryError(f"non-composable pair in table: ({g_lab}, {f_lab})")
        if (g, f) in comp and comp[(g, f)] != h:
            raise CategoryError(f"conflicting composites for ({g_lab}, {f_lab})")
        comp[(g, f)] = h
    for m in range(len(labels)):
        for side in ("left", "right"):
            key = (identities[dst[m]], m) if side == "left" else (m, identities[src[m]])
            if key in comp and comp[key] != m:
                raise CategoryError(f"{side} identity law fails for {labels[m]}")
            comp[key] = m
    cat = FinCat(objects, src, dst, identities, comp, labels)
    _check_laws(cat)
    return cat


def _check_laws(cat):
    n = cat.n_mor
    for g in range(n):
        for f in range(n):
            if cat.src[g] != cat.dst[f]:
                continue
            h = cat.comp.get((g, f))
            if h is None:
                raise CategoryError(f"composition table not total: missing ({cat.labels[g]}, {cat.labels[f]})")
            if cat.src[h] != cat.src[f] or cat.dst[h] != cat.dst[g]:
                raise CategoryError(f"composite of ({cat.labels[g]}, {cat.labels[f]}) has wrong endpoints")
    for m in range(n):
        if cat.comp[(cat.id(cat.dst[m]), m)] != m or cat.comp[(m, cat.id(cat.src[m]))] != m:
            raise CategoryError(f"identity law fails for {cat.labels[m]}")
    by_src = {}
    for m in range(n):
        by_src.setdefault(cat.src[m], []).append(m)
    for f in range(n):
        for g in by_src.get(cat.dst[f], []):
            gf = cat.comp[(g, f)]
            for h in by_src.get(cat.dst[g], []):
                if cat.comp[(h, gf)] != cat.comp[(cat.comp[(h, g)], f)]:
                    raise CategoryError(
                        f"associativity fails at triple ({cat.labels[h]}, {cat.labels[g]}, {cat.labels[f]})")


def check_category(cat):
    """Re-check the laws of an already built FinCat; raises CategoryError."""
    _check_laws(cat)
    return cat


class FunctorData:
    def __init__(self, source, target, obj, mor):
        self.source = source
        self.target = target
        self.obj = dict(obj)
        self.mor = list(mor)

    def __call__(self, x):
        return self.obj[x]

    def check(self):
        s, t = self.source, self.target
        for m in range(s.n_mor):
            fm = self.mor[m]
            if t.src[fm] != self.obj[s.src[m]] or t.dst[fm] != self.obj[s.dst[m]]:
                raise CategoryError(f"functor breaks endpoints at {s.labels[m]}")
        for x in s.objects:
            if self.mor[s.id(x)] != t.id(self.obj[x]):
                raise CategoryError(f"functor does not preserve identity of {x}")
        for (g, f), h in s.comp.items():
            if t.comp[(self.mor[g], self.mor[f])] != self.mor[h]:
                raise CategoryError(f"functor does not preserve composite ({s.labels[g]}, {s.labels[f]})")
        return self

    def then(self, other):
        return FunctorData(self.source, other.target,
                           {x: other.obj[y] for x, y in self.obj.items()},
                           [other.mor[m] for m in self.mor])

    def op(self):
        return FunctorData(self.source.op(), self.target.op(), self.obj, self.mor)

    @classmethod
    def identity(cls, cat):
        return cls(cat, cat, {x: x for x in cat.objects}, range(cat.n_mor))

    @classmethod
    def of_monotone(cls, source, target, fn):
        """Functor between thin categories given by its object map."""
        obj = {x: fn(x) for x in source.objects}
        mor = []
        for m in range(source.n_mor):
            hs = target.hom(obj[source.src[m]], obj[source.dst[m]])
            if not hs:
                raise CategoryError(f"map is not monotone at {source.labels[m]}")
            mor.append(hs[0])
        return cls(source, target, obj, mor)


def constant_functor(source, target, x):
    return FunctorData(source, target, {y: x for y in source.objects},
                       [target.id(x)] * source.n_mor)


# -- finite sets -----------------------------------------------------------

class SetDiagram:
    """A functor from a finite shape to finite sets.

    ``sizes[x]`` is the cardinality of the value at ``x`` (the set
    ``{0..n-1}``) and ``maps[m]`` is the function table of morphism ``m``.
    """

    def __init__(self, shape, sizes, maps):
        self.shape = shape
        self.sizes = dict(sizes)
        self.maps = [tuple(t) for t in maps]

    def check(self):
        s = self.shape
        for m in range(s.n_mor):
            table = self.maps[m]
            if len(table) != self.sizes[s.src[m]]:
                raise CategoryError(f"table of {s.labels[m]} has wrong length")
            if any(not 0 <= v < self.sizes[s.dst[m]] for v in table):
                raise CategoryError(f"table of {s.labels[m]} leaves its target")
        for x in s.objects:
            if self.maps[s.id(x)] != tuple(range(self.sizes[x])):
                raise CategoryError(f"identity at {x} is not the identity function")
        for (g, f), h in s.comp.items():
            if tuple(self.maps[g][v] for v in self.maps[f]) != self.maps[h]:
                raise CategoryError(f"composite ({s.labels[g]}, {s.labels[f]}) not respected")
        return self

    def restrict(self, functor):
        """Precompose with ``functor`` (whose target is this diagram's shape)."""
        return SetDiagram(functor.source, {x: self.sizes[functor.obj[x]] for x in functor.source.objects},
                          [self.maps[functor.mor[m]] for m in range(functor.source.n_mor)])

    def to_json(self):
        s = self.shape
        return {"values": [[_jsonable(x), self.sizes[x]] for x in s.objects],
                "maps": [[_jsonable(s.src[m]), _jsonable(s.dst[m]), list(self.maps[m])]
                         for m in range(s.n_mor) if not s.is_identity(m)]}


def finset_limit(diagram):
    """Limit as the lexicographically ordered set of compatible families.

    Returns ``(elements, projections)`` where ``elements`` lists families
    (tuples indexed like ``shape.objects``) and ``projections[x]`` is the
    projection table to the value at ``x``.
    """
    shape = diagram.shape
    objs = shape.objects
    k = len(objs)
    pos = shape.index
    checks = [[] for _ in range(k)]
    for m in range(shape.n_mor):
        a, b = pos[shape.src[m]], pos[shape.dst[m]]
        checks[max(a, b)].append((a, b, diagram.maps[m]))
    elements = []
    family = [0] * k

    def extend(i):
        if i == k:
            elements.append(tuple(family))
            return
        for v in range(diagram.sizes[objs[i]]):
            family[i] = v
            if all(table[family[a]] == family[b] for a, b, table in checks[i]):
                extend(i + 1)

    extend(0)
    projections = {x: tuple(e[pos[x]] for e in elements) for x in objs}
    return elements, projections


def finset_colimit(diagram):
    """Colimit as a quotient of the disjoint union.

    Elements of the disjoint union are numbered object by object; each class is
    named by its smallest member and classes are ordered by that member.
    Returns ``(classes, injections)``.
    """
    shape = diagram.shape
    offset, total = {}, 0
    for x in shape.objects:
        offset[x] = total
        total += diagram.sizes[x]
    uf = UnionFind(total)
    for m in range(shape.n_mor):
        a, b = shape.src[m], shape.dst[m]
        for v, w in enumerate(diagram.maps[m]):
            uf.union(offset[a] + v, offset[b] + w)
    classes = uf.classes()
    which = {}
    for c, members in enumerate(classes):
        for v in members:
            which[v] = c
    injections = {x: tuple(which[offset[x] + v] for v in range(diagram.sizes[x]))
                  for x in shape.objects}
    return classes, injections


def pullback(f, g):
    """Pullback of ``f: A → C`` and ``g: B → C`` as lexicographic pairs."""
    return [(a, b) for a in range(len(f)) for b in range(len(g)) if f[a] == g[b]]


def pushout(f, g, size_b, size_c):
    """Pushout of ``f: A → B`` and ``g: A → C``; returns (size, inj_b, inj_c)."""
    uf = UnionFind(size_b + size_c)
    for a in range(len(f)):
        uf.union(f[a], size_b + g[a])
    classes = uf.classes()
    which = {}
    for k, members in enumerate(classes):
        for v in members:
            which[v] = k
    return (len(classes), tuple(which[v] for v in range(size_b)),
            tuple(which[size_b + v] for v in range(size_c)))


def finset_category(n):
    """The skeleton of finite sets of cardinality ≤ n; morphisms are tables."""
    labels = []
    for a in range(n + 1):
        for b in range(n + 1):
            for table in product(range(b), repeat=a):
                labels.append((a, b, table))
    idx = {lab: m for m, lab in enumerate(labels)}
    by_src = {}
    for m, (a, b, t) in enumerate(labels):
        by_src.setdefault(a, []).append(m)
    comp = {}
    for f, (a, b, t) in enumerate(labels):
        for g in by_src[b]:
            _, c, u = labels[g]
            comp[(g, f)] = idx[(a, c, tuple(u[v] for v in t))]
    identities = {a: idx[(a, a, tuple(range(a)))] for a in range(n + 1)}
    return FinCat(range(n + 1), [l[0] for l in labels], [l[1] for l in labels],
                  identities, comp, labels)


# -- slices -----------------------------------------------------------------

def slice_category(cat, x):
    """C_{/x}: objects are morphisms into x."""
    objs = [f for f in range(cat.n_mor) if cat.dst[f] == x]
    labels, src, dst = [], [], []
    for f in objs:
        for f2 in objs:
            for h in cat.hom(cat.src[f], cat.src[f2]):
                if cat.comp[(f2, h)] == f:
                    labels.append(h)
                    src.append(f)
                    dst.append(f2)
    return _over_category(cat, objs, labels, src, dst, lambda f: cat.src[f])


def double_slice(cat, x, y):
    """C_{/x,y}: objects are spans x ← c → y."""
    objs = [(f, g) for f in range(cat.n_mor) if cat.dst[f] == x
            for g in range(cat.n_mor) if cat.dst[g] == y and cat.src[g] == cat.src[f]]
    labels, src, dst = [], [], []
    for s in objs:
        for t in objs:
            for h in cat.hom(cat.src[s[0]], cat.src[t[0]]):
                if cat.comp[(t[0], h)] == s[0] and cat.comp[(t[1], h)] == s[1]:
                    labels.append(h)
                    src.append(s)
                    dst.append(t)
    return _over_category(cat, objs, labels, src, dst, lambda s: cat.src[s[0]])


def _over_category(cat, objs, labels, src, dst, foot):
    index = {}
    for m, (h, s) in enumerate(zip(labels, src)):
        index[(s, h)] = m
    comp = {}
    for g in range(len(labels)):
        for f in range(len(labels)):
            if dst[f] == src[g]:
                comp[(g, f)] = index[(src[f], cat.comp[(labels[g], labels[f])])]
    identities = {s: index[(s, cat.id(foot(s)))] for s in objs}
    sl = FinCat(objs, src, dst, identities, comp, list(zip(src, labels)))
    proj = FunctorData(sl, cat, {s: foot(s) for s in objs}, labels)
    return sl, proj


def comma_under(obj_d, functor, cat_d=None):
    """(d ↓ F) for F: A → D: objects (a, u: d → F a)."""
    A, D = functor.source, functor.target
    objs = [(a, u) for a in A.objects for u in D.hom(obj_d, functor.obj[a])]
    labels, src, dst = [], [], []
    for (a, u) in objs:
        for (b, v) in objs:
            for h in A.hom(a, b):
                if D.comp[(functor.mor[h], u)] == v:
                    labels.append(h)
                    src.append((a, u))
                    dst.append((b, v))
    return _comma(A, objs, labels, src, dst)


def comma_over(functor, obj_d):
    """(F ↓ d) for F: A → D: objects (a, u: F a → d)."""
    A, D = functor.source, functor.target
    objs = [(a, u) for a in A.objects for u in D.hom(functor.obj[a], obj_d)]
    labels, src, dst = [], [], []
    for (a, u) in objs:
        for (b, v) in objs:
            for h in A.hom(a, b):
                if D.comp[(v, functor.mor[h])] == u:
                    labels.append(h)
                    src.append((a, u))
                    dst.append((b, v))
    return _comma(A, objs, labels, src, dst)


def _comma(A, objs, labels, src, dst):
    index = {(s, h): m for m, (s, h) in enumerate(zip(src, labels))}
    comp = {}
    for g in range(len(labels)):
        for f in range(len(labels)):
            if dst[f] == src[g]:
                comp[(g, f)] = index[(src[f], A.comp[(labels[g], labels[f])])]
    identities = {s: index[(s, A.id(s[0]))] for s in objs}
    cat = FinCat(objs, src, dst, identities, comp, list(zip(src, labels)))
    return cat, FunctorData(cat, A, {s: s[0] for s in objs}, labels)


def connected_components(cat):
    uf = UnionFind(len(cat.objects))
    for m in range(cat.n_mor):
        uf.union(cat.index[cat.src[m]], cat.index[cat.dst[m]])
    return [[cat.objects[k] for k in cls] for cls in uf.classes()]


# -- Kan extensions ---------------------------------------------------------

def check_pointwise_kan(functor, subobjects, side="right"):
    """Is ``functor`` the pointwise right (left) Kan extension of its
    restriction to the full subcategory on ``subobjects``?

    ``functor`` is either a SetDiagram or a FunctorData into a thin category,
    in which case limits are meets (colimits joins). Returns
    ``(ok, first_failing_object)``.
    """
    if isinstance(functor, SetDiagram):
        D = functor.shape
    else:
        D = functor.source
        if not functor.target.is_thin():
            raise CategoryError("limit shape unsupported")
    sub, incl = D.full_subcategory(subobjects)
    for d in D.objects:
        if d in incl.obj:
            continue
        if side == "right":
            comma, proj = comma_under(d, incl)
        else:
            comma, proj = comma_over(incl, d)
        if not _kan_cell_ok(functor, d, comma, proj, incl, side):
            return False, d
    return True, None


def _kan_cell_ok(functor, d, comma, proj, incl, side):
    to_d = proj.then(incl)
    if isinstance(functor, SetDiagram):
        restricted = functor.restrict(to_d)
        if side == "right":
            elements, _ = finset_limit(restricted)
            comparison = [tuple(functor.maps[u][v] for (_, u) in comma.objects)
                          for v in range(functor.sizes[d])]
            return sorted(comparison) == elements and len(set(comparison)) == len(elements)
        classes, inj = finset_colimit(restricted)
        hits = [None] * len(classes)
        for k, (a, u) in enumerate(comma.objects):
            for v in range(restricted.sizes[(a, u)]):
                w = functor.maps[u][v]
                c = inj[(a, u)][v]
                if hits[c] is None:
                    hits[c] = w
                elif hits[c] != w:
                    return False
        return sorted(hits) == list(range(functor.sizes[d]))
    T = functor.target
    values = [functor.obj[a] for (a, _) in comma.objects]
    best = _meet(T, values) if side == "right" else _meet(T.op(), values)
    return best == functor.obj[d]


def _meet(poset, values):
    lower = [z for z in poset.objects if all(poset.leq(z, v) for v in values)]
    tops = [z for z in lower if all(poset.leq(w, z) for w in lower)]
    if not tops:
        raise CategoryError("limit shape unsupported")
    return tops[0]


class KanPlan:
    """Pointwise Kan extension of set-valued functors from the full
    subcategory on ``subobjects``; the comma categories are built once."""

    def __init__(self, shape, subobjects, side="right"):
        self.shape = shape
        self.side = side
        self.sub, self.incl = shape.full_subcategory(subobjects)
        self.sub_mor = {m: k for k, m in enumerate(self.incl.mor)}
        self.commas = {}
        for d in shape.objects:
            if d in self.incl.obj:
                continue
            if side == "right":
                comma, proj = comma_under(d, self.incl)
            else:
                comma, proj = comma_over(self.incl, d)
            self.commas[d] = (comma, proj)

    def extend(self, g):
        """Extend a SetDiagram on the subcategory to the whole shape."""
        S = self.shape
        sub_val = {}
        for d, (comma, proj) in self.commas.items():
            restricted = g.restrict(proj)
            if self.side == "right":
                sub_val[d] = finset_limit(restricted)[0]
            else:
                classes, inj = finset_colimit(restricted)
                sub_val[d] = (classes, inj, {x: k for k, x in enumerate(comma.objects)})
        sizes = {}
        for d in S.objects:
            if d in self.incl.obj:
                sizes[d] = g.sizes[d]
            elif self.side == "right":
                sizes[d] = len(sub_val[d])
            else:
                sizes[d] = len(sub_val[d][0])
        maps = [self._map(g, sub_val, m, sizes) for m in range(S.n_mor)]
        return SetDiagram(S, sizes, maps)

    def is_extension(self, diagram):
        """Is a diagram on the whole shape the pointwise Kan extension of its
        restriction? Returns (ok, first failing object)."""
        for d, (comma, proj) in self.commas.items():
            if not _kan_cell_ok(diagram, d, comma, proj, self.incl, self.side):
                return False, d
        return True, None

    def _map(self, g, val, m, sizes):
        S = self.shape
        d, e = S.src[m], S.dst[m]
        inside = self.incl.obj
        if d in inside and e in inside:
            return g.maps[self.sub_mor[m]]
        if self.side == "right":
            def component(x, v, a, u):
                if x in inside:
                    return g.maps[self.sub_mor[u]][v]
                comma = self.commas[x][0]
                return val[x][v][comma.index[(a, u)]]
            if e in inside:
                return tuple(component(d, v, e, m) for v in range(sizes[d]))
            comma_e = self.commas[e][0]
            lookup = {fam: k for k, fam in enumerate(val[e])}
            return tuple(lookup[tuple(component(d, v, a, S.comp[(u, m)]) for (a, u) in comma_e.objects)]
                         for v in range(sizes[d]))
        # left side: elements are classes of (a, u: a → x, v)
        def cls_at(x, a, u, v):
            if x in inside:
                return g.maps[self.sub_mor[u]][v]
            classes, inj, _ = val[x]
            return inj[(a, u)][v]
        out = []
        if d in inside:
            for v in range(sizes[d]):
                out.append(cls_at(e, d, m, v))
        else:
            classes, inj, pos = val[d]
            comma = self.commas[d][0]
            offsets, total = {}, 0
            for x in comma.objects:
                offsets[x] = total
                total += g.sizes[x[0]]
            owner = []
            for x in comma.objects:
                owner.extend((x, v) for v in range(g.sizes[x[0]]))
            for members in classes:
                (a, u), v = owner[members[0]]
                out.append(cls_at(e, a, S.comp[(m, u)], v))
        return tuple(out)


# -- equivalences and cofinality ------------------------------------------

def is_fully_faithful(functor):
    S, T = functor.source, functor.target
    for x in S.objects:
        for y in S.objects:
            image = [functor.mor[m] for m in S.hom(x, y)]
            if len(set(image)) != len(image) or len(image) != len(T.hom(functor.obj[x], functor.obj[y])):
                return False
    return True


def is_essentially_surjective(functor):
    T = functor.target
    image = set(functor.obj.values())
    return all(any(T.isomorphic(y, z) for z in image) for y in T.objects)


def equivalence_check(functor):
    return is_fully_faithful(functor) and is_essentially_surjective(functor)


def isomorphism_check(functor):
    """Bijective on objects and on morphisms."""
    S, T = functor.source, functor.target
    return (sorted(map(T.index.get, functor.obj.values())) == list(range(len(T.objects)))
            and len(S.objects) == len(T.objects)
            and sorted(functor.mor) == list(range(T.n_mor)))


def cofinality_check(functor, side="final"):
    """Final: every (b ↓ F) is nonempty and connected. Initial: every (F ↓ b)."""
    for b in functor.target.objects:
        comma = comma_under(b, functor)[0] if side == "final" else comma_over(functor, b)[0]
        if len(connected_components(comma)) != 1:
            return False
    return True


# -- colimits inside a finite category -------------------------------------

def cocones(cat, diagram):
    """All cocones (apex, legs) over ``diagram`` (a FunctorData J → cat)."""
    J = diagram.source
    out = []
    for z in cat.objects:
        legs = {}

        def extend(i):
            if i == len(J.objects):
                out.append((z, dict(legs)))
                return
            j = J.objects[i]
            for lam in cat.hom(diagram.obj[j], z):
                legs[j] = lam
                ok = True
                for m in range(J.n_mor):
                    a, b = J.src[m], J.dst[m]
                    if a in legs and b in legs and \
                            cat.comp[(legs[b], diagram.mor[m])] != legs[a]:
                        ok = False
                        break
                if ok:
                    extend(i + 1)
            legs.pop(j, None)

        extend(0)
    return out


def is_colimit_cocone(cat, diagram, apex, legs, all_cocones=None):
    all_cocones = cocones(cat, diagram) if all_cocones is None else all_cocones
    for z, other in all_cocones:
        factors = [h for h in cat.hom(apex, z)
                   if all(cat.comp[(h, legs[j])] == other[j] for j in legs)]
        if len(factors) != 1:
            return False
    return True


def colimit_in(cat, diagram):
    """First colimit cocone in enumeration order, or None if none exists."""
    everything = cocones(cat, diagram)
    for apex, legs in everything:
        if is_colimit_cocone(cat, diagram, apex, legs, everything):
            return apex, legs
    return None


def limit_in(cat, diagram):
    return colimit_in(cat.op(), diagram.op())


# -- Cat-valued functors and their total categories ----------------------

class CatFunctor:
    """A strict functor ``base → FinCat``: one category per object and one
    FunctorData per morphism."""

    def __init__(self, base, fibres, actions):
        self.base = base
        self.fibres = dict(fibres)
        self.actions = list(actions)

    def check(self):
        B = self.base
        for m in range(B.n_mor):
            act = self.actions[m]
            if act.source is not self.fibres[B.src[m]] or act.target is not self.fibres[B.dst[m]]:
                raise CategoryError(f"action of {B.labels[m]} has wrong endpoints")
            act.check()
        for x in B.objects:
            act = self.actions[B.id(x)]
            if any(act.obj[y] != y for y in act.source.objects) or act.mor != list(range(act.source.n_mor)):
                raise CategoryError(f"identity of {x} does not act trivially")
        for (g, f), h in B.comp.items():
            a = self.actions[f].then(self.actions[g])
            if a.obj != self.actions[h].obj or a.mor != self.actions[h].mor:
                raise CategoryError(f"action not functorial at ({B.labels[g]}, {B.labels[f]})")
        return self


def total_category(F):
    """∫F: objects (c, x); morphisms (u, φ) with φ: F(u)(x) → x' in F(c')."""
    B = F.base
    objs = [(c, x) for c in B.objects for x in F.fibres[c].objects]
    labels, src, dst = [], [], []
    for (c, x) in objs:
        for u in range(B.n_mor):
            if B.src[u] != c:
                continue
            c2 = B.dst[u]
            fib = F.fibres[c2]
            pushed = F.actions[u].obj[x]
            for x2 in fib.objects:
                for phi in fib.hom(pushed, x2):
                    labels.append((u, phi))
                    src.append((c, x))
                    dst.append((c2, x2))
    # a label (u, φ) only determines the morphism together with its source
    index = {(s, lab): m for m, (s, lab) in enumerate(zip(src, labels))}
    by_src = {}
    for m, s in enumerate(src):
        by_src.setdefault(s, []).append(m)
    comp = {}
    for f in range(len(labels)):
        u, phi = labels[f]
        for g in by_src[dst[f]]:
            v, psi = labels[g]
            fib = F.fibres[B.dst[v]]
            comp[(g, f)] = index[(src[f], (B.comp[(v, u)], fib.comp[(psi, F.actions[v].mor[phi])]))]
    identities = {(c, x): index[((c, x), (B.id(c), F.fibres[c].id(x)))] for (c, x) in objs}
    total = FinCat(objs, src, dst, identities, comp, labels)
    proj = FunctorData(total, B, {o: o[0] for o in objs}, [lab[0] for lab in labels])
    return total, proj


def grothendieck_colimit(F, diagram):
    """Colimit in ∫F by the recipe: base colimit, cocartesian pushforward to
    its apex, then the colimit in that fibre. Compares the result against the
    colimit computed directly in ∫F.

    ``diagram`` is a FunctorData J → ∫F (as built by ``total_category``).
    Returns a dict with ``agree`` plus both results.
    """
    total, proj = total_category(F)
    if diagram.target.objects != total.objects or diagram.target.labels != total.labels:
        raise CategoryError("diagram must land in total_category(F)")
    J = diagram.source
    B = F.base
    base_diagram = diagram.then(proj)
    found = colimit_in(B, base_diagram)
    if found is None:
        raise CategoryError("base colimit missing")
    c, lam = found
    fib = F.fibres[c]
    pushed_obj, pushed_mor = {}, []
    for j in J.objects:
        _, x = diagram.obj[j]
        pushed_obj[j] = F.actions[lam[j]].obj[x]
    for m in range(J.n_mor):
        _, phi = total.labels[diagram.mor[m]]
        pushed_mor.append(F.actions[lam[J.dst[m]]].mor[phi])
    pushed = FunctorData(J, fib, pushed_obj, pushed_mor)
    fibre_found = colimit_in(fib, pushed)
    direct = colimit_in(total, diagram)
    result = {"base_apex": c, "recipe": None, "direct": None if direct is None else direct[0],
              "agree": False}
    if fibre_found is None:
        result["agree"] = direct is None
        return result
    x, mu = fibre_found
    apex = (c, x)
    legs = {j: next(m for m in total.hom(diagram.obj[j], apex) if total.labels[m] == (lam[j], mu[j]))
            for j in J.objects}
    result["recipe"] = apex
    recipe_is_colimit = is_colimit_cocone(total, diagram, apex, legs)
    result["agree"] = bool(recipe_is_colimit and direct is not None
                           and total.isomorphic(apex, direct[0]))
    return result


# -- groupoid summaries -----------------------------------------------------

MAX_CANONICAL = 8


def canonical_group_table(elements, mult, identity):
    """Smallest relabelled multiplication table over orderings that put the
    identity first. Brute force, so limited to MAX_CANONICAL elements."""
    n = len(elements)
    if n > MAX_CANONICAL:
        raise CategoryError(f"canonical form bound exceeded ({n} > {MAX_CANONICAL})")
    rest = [e for e in elements if e != identity]
    best = None
    for perm in permutations(rest):
        order = (identity,) + perm
        pos = {e: k for k, e in enumerate(order)}
        table = tuple(pos[mult(a, b)] for a in order for b in order)
        if best is None or table < best:
            best = table
    return best


class GroupoidSummary:
    """Multiset of (canonical vertex group, automorphism count), one entry per
    isomorphism class. Two finite groupoids are equivalent iff their summaries
    are equal."""

    def __init__(self, entries):
        self.entries = tuple(sorted(entries))

    @classmethod
    def of(cls, groupoid):
        if not groupoid.is_groupoid():
            raise CategoryError("not a groupoid")
        entries = []
        cache = {}
        for comp in connected_components(groupoid):
            x = comp[0]
            autos = groupoid.hom(x, x)
            key = tuple(sorted((g, f, groupoid.comp[(g, f)]) for g in autos for f in autos))
            if key not in cache:
                cache[key] = canonical_group_table(autos, lambda g, f: groupoid.comp[(g, f)],
                                                   groupoid.id(x))
            entries.append((cache[key], len(autos)))
        return cls(entries)

    @property
    def n_classes(self):
        return len(self.entries)

    def automorphism_counts(self):
        return sorted(n for _, n in self.entries)

    def __eq__(self, other):
        return isinstance(other, GroupoidSummary) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"GroupoidSummary(classes={self.n_classes}, aut={self.automorphism_counts()})"


def core(cat):
    """Maximal subgroupoid."""
    keep = [m for m in range(cat.n_mor) if cat.is_iso(m)]
    new = {m: k for k, m in enumerate(keep)}
    comp = {(new[g], new[f]): new[h] for (g, f), h in cat.comp.items() if g in new and f in new}
    return FinCat(cat.objects, [cat.src[m] for m in keep], [cat.dst[m] for m in keep],
                  {x: new[cat.id(x)] for x in cat.objects}, comp, [cat.labels[m] for m in keep])


def iso_comma(f, g):
    """Homotopy fibre product of groupoid functors f: G → K ← H: g.

    Objects (x, y, θ: f x → g y); morphisms (α, β) with g(β)θ = θ'f(α).
    Returns the groupoid and its two projections.
    """
    G, H, K = f.source, g.source, f.target
    objs = [(x, y, t) for x in G.objects for y in H.objects
            for t in K.hom(f.obj[x], g.obj[y])]
    labels, src, dst = [], [], []
    for (x, y, t) in objs:
        for (x2, y2, t2) in objs:
            for a in G.hom(x, x2):
                for b in H.hom(y, y2):
                    if K.comp[(g.mor[b], t)] == K.comp[(t2, f.mor[a])]:
                        labels.append((a, b))
                        src.append((x, y, t))
                        dst.append((x2, y2, t2))
    index = {(s, lab): m for m, (s, lab) in enumerate(zip(src, labels))}
    comp = {}
    by_src = {}
    for m, s in enumerate(src):
        by_src.setdefault(s, []).append(m)
    for f_ in range(len(labels)):
        for g_ in by_src[dst[f_]]:
            (a1, b1), (a2, b2) = labels[f_], labels[g_]
            comp[(g_, f_)] = index[(src[f_], (G.comp[(a2, a1)], H.comp[(b2, b1)]))]
    identities = {o: index[(o, (G.id(o[0]), H.id(o[1])))] for o in objs}
    cat = FinCat(objs, src, dst, identities, comp, labels)
    p1 = FunctorData(cat, G, {o: o[0] for o in objs}, [lab[0] for lab in labels])
    p2 = FunctorData(cat, H, {o: o[1] for o in objs}, [lab[1] for lab in labels])
    return cat, p1, p2


# -- (co)cartesian morphisms ------------------------------------------------

def is_cartesian(functor, f):
    """f: x → y is cartesian iff every Hom(z, x) → Hom(z, y) ×_{Hom(pz, py)} Hom(pz, px)
    is a bijection."""
    E, B = functor.source, functor.target
    x, y = E.src[f], E.dst[f]
    pf = functor.mor[f]
    for z in E.objects:
        pairs = {}
        for h in E.hom(z, x):
            key = (E.comp[(f, h)], functor.mor[h])
            if key in pairs:
                return False
            pairs[key] = h
        pz = functor.obj[z]
        expected = sum(1 for g in E.hom(z, y) for u in B.hom(pz, functor.obj[x])
                       if B.comp[(pf, u)] == functor.mor[g])
        if len(pairs) != expected:
            return False
    return True


def is_cocartesian(functor, f):
    return is_cartesian(functor.op(), f)


def strict_pullback(left, right):
    """A ×_C B for functors left: A → C and right: B → C; returns the category
    and both projections."""
    A, B = left.source, right.source
    objs = [(a, b) for a in A.objects for b in B.objects if left.obj[a] == right.obj[b]]
    by_image = {}
    for g in range(B.n_mor):
        by_image.setdefault(right.mor[g], []).append(g)
    labels = []
    for f in range(A.n_mor):
        for g in by_image.get(left.mor[f], []):
            labels.append((f, g))
    index = {lab: k for k, lab in enumerate(labels)}
    src = [(A.src[f], B.src[g]) for f, g in labels]
    dst = [(A.dst[f], B.dst[g]) for f, g in labels]
    by_src = {}
    for k, s in enumerate(src):
        by_src.setdefault(s, []).append(k)
    comp = {}
    for k, (f, g) in enumerate(labels):
        for k2 in by_src.get(dst[k], []):
            f2, g2 = labels[k2]
            comp[(k2, k)] = index[(A.comp[(f2, f)], B.comp[(g2, g)])]
    identities = {(a, b): index[(A.id(a), B.id(b))] for a, b in objs}
    cat = FinCat(objs, src, dst, identities, comp, labels)
    p1 = FunctorData(cat, A, {o: o[0] for o in objs}, [lab[0] for lab in labels])
    p2 = FunctorData(cat, B, {o: o[1] for o in objs}, [lab[1] for lab in labels])
    return cat, p1, p2


def lifts_from_poset(P, E, proj=None, base=None, marked=(), allowed=None):
    """All functors Φ: P → E from a finite poset P with proj∘Φ = base.

    Without ``proj``/``base`` every functor is enumerated. ``marked`` lists
    pairs x ≤ y whose image must lie in the morphism set ``allowed``. Each
    functor is returned as (object tuple, morphism dict keyed by pairs).
    """
    order = sorted(P.objects, key=lambda v: sum(1 for u in P.objects if P.leq(u, v)))
    marked = set(marked)
    by_base = {}
    for e in E.objects:
        by_base.setdefault(proj.obj[e] if proj else None, []).append(e)
    obj, mor = {}, {}
    out = []

    def over(u, v, m):
        if proj is None:
            return True
        return proj.mor[m] == base.mor[P.mor((u, v))]

    def assign_preds(v, preds, k):
        if k == len(preds):
            visit(order.index(v) + 1)
            return
        u = preds[k]
        for m in E.hom(obj[u], obj[v]):
            if not over(u, v, m):
                continue
            if (u, v) in marked and m not in allowed:
                continue
            if any(E.comp[(mor[(w, v)], mor[(u, w)])] != m for w in preds[:k] if P.leq(u, w)):
                continue
            mor[(u, v)] = m
            assign_preds(v, preds, k + 1)
        mor.pop((u, v), None)

    def visit(i):
        if i == len(order):
            out.append((tuple(obj[x] for x in P.objects), dict(mor)))
            return
        v = order[i]
        preds = [u for u in reversed(order[:i]) if P.leq(u, v)]
        for e in by_base.get(base.obj[v] if proj else None, []):
            obj[v] = e
            mor[(v, v)] = E.id(e)
            assign_preds(v, preds, 0)
        obj.pop(v, None)
        mor.pop((v, v), None)

    visit(0)
    return out


def restrict_lift(lift, P, along):
    """Precompose a lift from lifts_from_poset with a monotone functor Q → P."""
    objs, mors = lift
    pos = P.index
    Q = along.source
    new_objs = tuple(objs[pos[along.obj[q]]] for q in Q.objects)
    new_mors = {(a, b): mors[(along.obj[a], along.obj[b])]
                for a in Q.objects for b in Q.objects if Q.leq(a, b)}
    return new_objs, new_mors
