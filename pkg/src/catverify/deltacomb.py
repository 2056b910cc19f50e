"""The simplex category at desk scale: monotone maps, inert/active
factorization, Segal-type conditions on groupoid-valued simplicial data and
truncated marked nerves of posets."""

from __future__ import annotations

from itertools import combinations_with_replacement, product

from .fincat import (CategoryError, FinCat, FunctorData, GroupoidSummary,
                     equivalence_check, iso_comma)


class SimplexMap:
    """A monotone map [n] → [m], stored as its value table."""

    __slots__ = ("values", "target")

    def __init__(self, values, target):
        self.values = tuple(values)
        self.target = target
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"not monotone: {self.values}")
        if self.values and not (0 <= self.values[0] and self.values[-1] <= target):
            raise ValueError(f"values leave [{target}]: {self.values}")

    @property
    def source(self):
        return len(self.values) - 1

    def __call__(self, i):
        return self.values[i]

    def __eq__(self, other):
        return isinstance(other, SimplexMap) and (self.values, self.target) == (other.values, other.target)

    def __hash__(self):
        return hash((self.values, self.target))

    def __repr__(self):
        return f"SimplexMap({list(self.values)}, [{self.target}])"

    def then(self, other):
        """other ∘ self."""
        return SimplexMap([other.values[v] for v in self.values], other.target)

    def is_inert(self):
        return all(v == self.values[0] + i for i, v in enumerate(self.values))

    def is_active(self):
        return self.values[0] == 0 and self.values[-1] == self.target

    @classmethod
    def identity(cls, n):
        return cls(range(n + 1), n)

    @classmethod
    def all_maps(cls, n, m):
        return [cls(v, m) for v in combinations_with_replacement(range(m + 1), n + 1)]


def segal_vertex(i, n):
    """σ_i: [0] → [n] picking out i."""
    return SimplexMap([i], n)


def segal_edge(i, n):
    """ρ_i: [1] → [n] picking out the edge (i-1, i), for 1 ≤ i ≤ n."""
    return SimplexMap([i - 1, i], n)


def face(i, n):
    """d^i: [n-1] → [n] skipping i."""
    return SimplexMap([k for k in range(n + 1) if k != i], n)


def degeneracy(i, n):
    """s^i: [n+1] → [n] hitting i twice."""
    return SimplexMap([k if k <= i else k - 1 for k in range(n + 2)], n)


def inert_active_factorize(phi):
    """Unique factorization φ = inert ∘ active."""
    lo, hi = phi.values[0], phi.values[-1]
    active = SimplexMap([v - lo for v in phi.values], hi - lo)
    inert = SimplexMap(range(lo, hi + 1), phi.target)
    return active, inert


def simplex_category(max_n):
    """Δ truncated to [0..max_n] as a FinCat; morphism labels are SimplexMaps."""
    labels = [phi for n in range(max_n + 1) for m in range(max_n + 1) for phi in SimplexMap.all_maps(n, m)]
    idx = {phi: k for k, phi in enumerate(labels)}
    comp = {}
    for f, phi in enumerate(labels):
        for g, psi in enumerate(labels):
            if psi.source == phi.target:
                comp[(g, f)] = idx[phi.then(psi)]
    return FinCat(range(max_n + 1), [p.source for p in labels], [p.target for p in labels],
                  {n: idx[SimplexMap.identity(n)] for n in range(max_n + 1)}, comp, labels)


# -- groupoid-valued multisimplicial data -----------------------------------

class MultiSegalData:
    """A d-fold simplicial object in finite groupoids, truncated at ``bound``
    in every direction.

    ``groupoid(I)`` returns the groupoid at multi-index I and ``act(I, k, phi)``
    returns the functor X_I → X_{I'} induced by φ: [m] → [I_k] in direction k,
    where I' is I with its k-th entry replaced by m.
    """

    def __init__(self, dim, bound, groupoid, act, name=""):
        self.dim = dim
        self.bound = bound
        self._groupoid = groupoid
        self._act = act
        self._cache = {}
        self.name = name

    def groupoid(self, index):
        index = tuple(index)
        if index not in self._cache:
            self._cache[index] = self._groupoid(index)
        return self._cache[index]

    def act(self, index, direction, phi):
        return self._act(tuple(index), direction, phi)

    def indices(self):
        return list(product(range(self.bound + 1), repeat=self.dim))


def _require(X, needed=3):
    if X.bound < needed:
        raise CategoryError("insufficient truncation")


def _product_of_groupoids(factors):
    """Strict product of groupoids, nested to the left."""
    out = factors[0]
    for g in factors[1:]:
        out = out.product(g)
    return out


def segal_comparison(X, index, direction):
    """The functor X_I → X_1 ×^h_{X_0} ⋯ ×^h_{X_0} X_1 in direction k (with
    the other entries of I fixed), for I_k ≥ 2. Fibre products are iso-commas,
    built left to right."""
    n = index[direction]

    def at(k):
        return index[:direction] + (k,) + index[direction + 1:]

    edge_idx = at(1)
    source_leg = X.act(edge_idx, direction, SimplexMap([0], 1))
    target_leg = X.act(edge_idx, direction, SimplexMap([1], 1))
    edges = [X.act(index, direction, segal_edge(i, n)) for i in range(1, n + 1)]
    vertex_groupoid = X.groupoid(at(0))
    comparison, last_leg = edges[0], target_leg
    for i in range(1, n):
        fp, _, p2 = iso_comma(last_leg, source_leg)
        src = comparison.source
        obj = {}
        for x in src.objects:
            a, b = comparison.obj[x], edges[i].obj[x]
            if last_leg.obj[a] != source_leg.obj[b]:
                raise CategoryError("simplicial data does not match at a vertex")
            obj[x] = (a, b, vertex_groupoid.id(source_leg.obj[b]))
        mor = [_find(fp, obj[src.src[m]], obj[src.dst[m]], (comparison.mor[m], edges[i].mor[m]))
               for m in range(src.n_mor)]
        comparison = FunctorData(src, fp, obj, mor)
        last_leg = p2.then(target_leg)
    return comparison


def segal_check(X, directions=None):
    """X_n → X_1 ×_{X_0} ⋯ ×_{X_0} X_1 an equivalence for every index with an
    entry n ≥ 2 in a checked direction. Returns (ok, witness index)."""
    _require(X)
    directions = range(X.dim) if directions is None else directions
    for index in X.indices():
        for k in directions:
            if index[k] < 2:
                continue
            if not equivalence_check(segal_comparison(X, index, k)):
                return False, index
    return True, None


def monoid_check(X):
    """A_n → A_1 × ⋯ × A_1 (strict product, via the edge maps) an equivalence
    for 2 ≤ n ≤ bound. Returns (ok, witness n)."""
    _require(X)
    one = X.groupoid((1,))
    for n in range(2, X.bound + 1):
        edges = [X.act((n,), 0, segal_edge(i, n)) for i in range(1, n + 1)]
        target = _product_of_groupoids([one] * n)
        src = X.groupoid((n,))
        obj, mor = {}, []
        for x in src.objects:
            obj[x] = _nest([e.obj[x] for e in edges])
        for m in range(src.n_mor):
            mor.append(target.mor(_nest([one.labels[e.mor[m]] for e in edges])))
        if not equivalence_check(FunctorData(src, target, obj, mor)):
            return False, n
    return True, None


def _nest(items):
    out = items[0]
    for y in items[1:]:
        out = (out, y)
    return out


def constancy_check(X):
    """Every structure map of X_{0,•,…,•} is an equivalence."""
    if X.dim < 2:
        return True
    for index in X.indices():
        if index[0] != 0:
            continue
        for k in range(1, X.dim):
            for m in range(X.bound + 1):
                for phi in SimplexMap.all_maps(m, index[k]):
                    if not equivalence_check(X.act(index, k, phi)):
                        return False
    return True


def invertible_part(X, index=None, direction=0):
    """Full subgroupoid of X_1 on the elements with a left and a right inverse,
    detected through 2-simplices whose long edge is degenerate."""
    base = (0,) * X.dim if index is None else tuple(index)

    def at(k):
        return base[:direction] + (k,) + base[direction + 1:]

    one, two = X.groupoid(at(1)), X.groupoid(at(2))
    d0, d1, d2 = (X.act(at(2), direction, face(i, 2)) for i in range(3))
    s0 = X.act(at(0), direction, degeneracy(0, 0))
    src1 = X.act(at(1), direction, SimplexMap([0], 1))
    tgt1 = X.act(at(1), direction, SimplexMap([1], 1))
    keep = []
    for x in one.objects:
        unit_src, unit_tgt = s0.obj[src1.obj[x]], s0.obj[tgt1.obj[x]]
        has_left = any(one.isomorphic(d2.obj[z], x) and one.isomorphic(d1.obj[z], unit_src)
                       for z in two.objects)
        has_right = any(one.isomorphic(d0.obj[z], x) and one.isomorphic(d1.obj[z], unit_tgt)
                        for z in two.objects)
        if has_left and has_right:
            keep.append(x)
    return one.full_subcategory(keep)


def completeness_check(X, direction=0):
    """1-truncated completeness: the degeneracy X_0 → (X_1)^inv is an
    equivalence of groupoids."""
    _require(X, 2)
    base = (0,) * X.dim
    inv, incl = invertible_part(X, base, direction)
    s0 = X.act(base, direction, degeneracy(0, 0))
    if any(y not in incl.obj for y in s0.obj.values()):
        return False
    restricted = FunctorData(s0.source, inv, s0.obj,
                             [inv.mor(s0.target.labels[m]) for m in s0.mor])
    return equivalence_check(restricted)


# -- concrete simplicial groupoids -----------------------------------------

def _chains(cat, n):
    """Composable strings x_0 → ⋯ → x_n as (objects, morphisms)."""
    if n == 0:
        return [((x,), ()) for x in cat.objects]
    out = []
    for objs, mors in _chains(cat, n - 1):
        for m in range(cat.n_mor):
            if cat.src[m] == objs[-1]:
                out.append((objs + (cat.dst[m],), mors + (m,)))
    return out


def _restrict_chain(cat, chain, phi):
    objs, mors = chain
    new_objs = tuple(objs[v] for v in phi.values)
    new_mors = []
    for a, b in zip(phi.values, phi.values[1:]):
        m = cat.id(objs[a])
        for k in range(a, b):
            m = cat.comp[(mors[k], m)]
        new_mors.append(m)
    return new_objs, tuple(new_mors)


def rezk_nerve(cat, bound=3):
    """X_n = core of Fun([n], C): strings of morphisms with natural
    isomorphisms between them."""
    isos = [m for m in range(cat.n_mor) if cat.is_iso(m)]

    def groupoid(index):
        (n,) = index
        chains = _chains(cat, n)
        labels, src, dst = [], [], []
        for a in chains:
            for b in chains:
                for comps in product(*[[m for m in isos if cat.src[m] == x and cat.dst[m] == y]
                                       for x, y in zip(a[0], b[0])]):
                    if all(cat.comp[(comps[k + 1], a[1][k])] == cat.comp[(b[1][k], comps[k])]
                           for k in range(n)):
                        labels.append(comps)
                        src.append(a)
                        dst.append(b)
        index_of = {(s, lab): k for k, (s, lab) in enumerate(zip(src, labels))}
        comp = {}
        by_src = {}
        for k, s in enumerate(src):
            by_src.setdefault(s, []).append(k)
        for f in range(len(labels)):
            for g in by_src[dst[f]]:
                comp[(g, f)] = index_of[(src[f], tuple(cat.comp[(y, x)] for x, y in zip(labels[f], labels[g])))]
        identities = {c: index_of[(c, tuple(cat.id(x) for x in c[0]))] for c in chains}
        return FinCat(chains, src, dst, identities, comp, labels)

    data = None

    def act(index, direction, phi):
        src_g = data.groupoid(index)
        tgt_g = data.groupoid((phi.source,))
        obj = {c: _restrict_chain(cat, c, phi) for c in src_g.objects}
        mor = []
        for m in range(src_g.n_mor):
            lab = tuple(src_g.labels[m][v] for v in phi.values)
            mor.append(_find(tgt_g, obj[src_g.src[m]], obj[src_g.dst[m]], lab))
        return FunctorData(src_g, tgt_g, obj, mor)

    data = MultiSegalData(1, bound, groupoid, act, name="rezk nerve")
    return data


def _find(cat, x, y, label):
    for k in cat.hom(x, y):
        if cat.labels[k] == label:
            return k
    raise CategoryError(f"no morphism {label} from {x} to {y}")


def discrete_simplicial(simplices, restrict, bound=3, name="discrete"):
    """A simplicial set viewed as discrete groupoids.

    ``simplices(n)`` lists the n-simplices and ``restrict(s, phi)`` applies φ.
    """
    data = None

    def groupoid(index):
        return FinCat.discrete(simplices(index[0]))

    def act(index, direction, phi):
        src_g = data.groupoid(index)
        tgt_g = data.groupoid((phi.source,))
        obj = {s: restrict(s, phi) for s in src_g.objects}
        return FunctorData(src_g, tgt_g, obj, [tgt_g.id(obj[s]) for s in src_g.objects])

    data = MultiSegalData(1, bound, groupoid, act, name=name)
    return data


def discrete_nerve(cat, bound=3):
    return discrete_simplicial(lambda n: _chains(cat, n),
                               lambda c, phi: _restrict_chain(cat, c, phi), bound, "nerve")


def delete_simplex(X, degree, simplex):
    """Remove one simplex from a discrete simplicial datum, together with every
    higher simplex having it as a face (so the remaining data stays simplicial)."""
    removed = {degree: {simplex}}
    cache = {}

    def alive(n):
        if n in cache:
            return cache[n]
        base = list(X.groupoid((n,)).objects)
        if n < degree:
            out = base
        else:
            gone = removed.setdefault(n, set())
            if n > degree:
                lower = set(alive(n - 1))
                for s in base:
                    if any(X.act((n,), 0, face(i, n)).obj[s] not in lower for i in range(n + 1)):
                        gone.add(s)
            out = [s for s in base if s not in gone]
        cache[n] = out
        return out

    data = None

    def groupoid(index):
        return FinCat.discrete(alive(index[0]))

    def act(index, direction, phi):
        src_g = data.groupoid(index)
        tgt_g = data.groupoid((phi.source,))
        full = X.act(index, direction, phi)
        obj = {s: full.obj[s] for s in src_g.objects}
        return FunctorData(src_g, tgt_g, obj, [tgt_g.id(obj[s]) for s in src_g.objects])

    data = MultiSegalData(1, X.bound, groupoid, act, name=X.name + " minus a simplex")
    return data


def delooping(elements, mult, bound=3):
    """Nerve of a one-object category with the given multiplication."""
    unit = [e for e in elements if all(mult(e, x) == x == mult(x, e) for x in elements)][0]

    def simplices(n):
        return list(product(elements, repeat=n))

    def restrict(s, phi):
        out = []
        for a, b in zip(phi.values, phi.values[1:]):
            v = unit
            for k in range(a, b):
                v = mult(v, s[k])
            out.append(v)
        return tuple(out)

    return discrete_simplicial(simplices, restrict, bound, "delooping")


def constant_simplicial(groupoid, dim=1, bound=3):
    data = None

    def act(index, direction, phi):
        g = data.groupoid(index)
        return FunctorData.identity(g)

    data = MultiSegalData(dim, bound, lambda index: groupoid, act, name="constant")
    return data


def summary_of(X, index):
    return GroupoidSummary.of(X.groupoid(index))


# -- marked nerves ----------------------------------------------------------

class MarkedNerve:
    """Nondegenerate simplices (strict chains) of a poset up to ``maxdim``,
    with a set of marked edges."""

    def __init__(self, poset, marked, maxdim):
        self.poset = poset
        self.maxdim = maxdim
        self.simplices = _strict_chains(poset, maxdim)
        edges = set(self.simplices[1]) if maxdim >= 1 else set()
        self.marked = sorted(tuple(e) for e in marked)
        for e in self.marked:
            if e not in edges:
                raise CategoryError(f"marked edge {e} is not an edge of the poset")

    @staticmethod
    def face(simplex, i):
        return simplex[:i] + simplex[i + 1:]

    def counts(self):
        return {str(k): len(v) for k, v in sorted(self.simplices.items())}

    def to_json(self):
        from .fincat import _jsonable
        return {
            "vertices": [_jsonable(v[0]) for v in self.simplices[0]],
            "simplices": {str(k): [_jsonable(s) for s in v] for k, v in sorted(self.simplices.items())},
            "marked": [_jsonable(e) for e in self.marked],
        }


def _strict_chains(poset, maxdim):
    objs = poset.objects
    above = {x: [y for y in objs if y != x and poset.leq(x, y)] for x in objs}
    out = {0: [(x,) for x in objs]}
    for d in range(1, maxdim + 1):
        out[d] = [c + (y,) for c in out[d - 1] for y in above[c[-1]]]
    return out


def build_marked_nerve(poset, marks, maxdim):
    return MarkedNerve(poset, marks, maxdim)
