"""Isomorphism classes of chains of spans or cospans between finite sets.

A 1-cell between labelled feet of sizes p and q is stored with its apex
already reduced up to isomorphism, so that relabelling the feet is the only
remaining symmetry. Classes of longer chains are orbits of the next cell under
the automorphisms of the chain so far; the automorphism count of a chain is
carried along exactly.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import factorial


@lru_cache(maxsize=None)
def perms(n):
    return tuple(permutations(range(n)))


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def compose_perm(p, q):
    """(p∘q)(i) = p[q[i]]."""
    return tuple(p[v] for v in q)


class SpanKind:
    """Spans p ← c → q with the apex reduced to a sorted multiset of leg pairs."""

    name = "span"

    @staticmethod
    def cells(p, q, max_apex):
        pairs = [(a, b) for a in range(p) for b in range(q)]
        out = []

        def grow(start, acc):
            out.append(tuple(acc))
            if len(acc) == max_apex:
                return
            for k in range(start, len(pairs)):
                acc.append(pairs[k])
                grow(k, acc)
                acc.pop()

        grow(0, [])
        return out

    @staticmethod
    def relabel(cell, pp, pq):
        return tuple(sorted((pp[a], pq[b]) for a, b in cell))

    @staticmethod
    def apex_weight(cell):
        w = 1
        run = 1
        for k in range(1, len(cell) + 1):
            if k < len(cell) and cell[k] == cell[k - 1]:
                run += 1
            else:
                w *= factorial(run)
                run = 1
        return w if cell else 1

    @staticmethod
    def apex_size(cell):
        return len(cell)


class CospanKind:
    """Cospans p → m ← q with m relabelled by first appearance; the cell is
    (m, f, g)."""

    name = "cospan"

    @staticmethod
    def normalize(m, f, g):
        order = {}
        for v in f + g:
            if v not in order:
                order[v] = len(order)
        return (m, tuple(order[v] for v in f), tuple(order[v] for v in g))

    @classmethod
    def cells(cls, p, q, max_apex):
        out = set()
        for m in range(max_apex + 1):
            for f in product(range(m), repeat=p):
                for g in product(range(m), repeat=q):
                    out.add(cls.normalize(m, f, g))
        return sorted(out)

    @classmethod
    def relabel(cls, cell, pp, pq):
        m, f, g = cell
        nf = [0] * len(f)
        for a, v in enumerate(f):
            nf[pp[a]] = v
        ng = [0] * len(g)
        for b, v in enumerate(g):
            ng[pq[b]] = v
        return cls.normalize(m, tuple(nf), tuple(ng))

    @staticmethod
    def apex_weight(cell):
        m, f, g = cell
        return factorial(m - len(set(f + g)))

    @staticmethod
    def apex_size(cell):
        return cell[0]


class ChainClass:
    """An isomorphism class of composable chains of 1-cells.

    ``feet`` are the foot sizes, ``cells`` the representative chain and
    ``autos`` the automorphisms as (tuple of foot permutations, weight), where
    the weight counts apex automorphisms over those foot permutations.
    """

    __slots__ = ("feet", "cells", "autos")

    def __init__(self, feet, cells, autos):
        self.feet = tuple(feet)
        self.cells = tuple(cells)
        self.autos = autos

    @property
    def aut_count(self):
        return sum(w for _, w in self.autos)

    def key(self):
        return (self.feet, self.cells)


def one_cell_classes(kind, max_size, max_apex=None):
    max_apex = max_size if max_apex is None else max_apex
    out = []
    for p in range(max_size + 1):
        for q in range(max_size + 1):
            seen = set()
            for cell in kind.cells(p, q, max_apex):
                canon = min(kind.relabel(cell, a, b) for a in perms(p) for b in perms(q))
                if canon in seen:
                    continue
                seen.add(canon)
                autos = [((a, b), kind.apex_weight(canon)) for a in perms(p) for b in perms(q)
                         if kind.relabel(canon, a, b) == canon]
                out.append(ChainClass((p, q), (canon,), autos))
    return out


def extend_classes(kind, classes, max_size, max_apex=None, raw_cache=None):
    """Classes of chains one cell longer: orbits of the new cell (with labelled
    left foot) under the automorphisms of the chain, times relabellings of the
    new right foot."""
    max_apex = max_size if max_apex is None else max_apex
    raw_cache = {} if raw_cache is None else raw_cache
    out = []
    for cls in classes:
        q = cls.feet[-1]
        foot_group = sorted({a[-1] for a, _ in cls.autos})
        for r in range(max_size + 1):
            if (q, r) not in raw_cache:
                raw_cache[(q, r)] = kind.cells(q, r, max_apex)
            seen = set()
            for cell in raw_cache[(q, r)]:
                canon = min(kind.relabel(cell, g, c) for g in foot_group for c in perms(r))
                if canon in seen:
                    continue
                seen.add(canon)
                autos = []
                w_new = kind.apex_weight(canon)
                for a, w in cls.autos:
                    for c in perms(r):
                        if kind.relabel(canon, a[-1], c) == canon:
                            autos.append((a + (c,), w * w_new))
                out.append(ChainClass(cls.feet + (r,), cls.cells + (canon,), autos))
    return out


def fibre_product_classes(kind, classes):
    """Classes of the iso-comma groupoid X_1 ×^h_{X_0} X_1: pairs of 1-cell
    classes with a bijection θ between the shared feet, up to the action of
    both automorphism groups. Returns (left, right, θ, automorphism count)."""
    by_left = {}
    for c in classes:
        by_left.setdefault(c.feet[0], []).append(c)
    out = []
    for s in classes:
        y = s.feet[1]
        hs = [(a[1], w) for a, w in s.autos]
        for t in by_left.get(y, []):
            ht = [(b[0], w) for b, w in t.autos]
            ht_set = {b for b, _ in ht}
            hs_set = {a for a, _ in hs}
            seen = set()
            for theta in perms(y):
                if theta in seen:
                    continue
                orbit = {compose_perm(compose_perm(b, theta), inverse(a)) for a in hs_set for b in ht_set}
                seen |= orbit
                count = 0
                for a, wa in hs:
                    target = compose_perm(compose_perm(theta, a), inverse(theta))
                    count += wa * sum(wb for b, wb in ht if b == target)
                out.append((s, t, theta, count))
    return out
