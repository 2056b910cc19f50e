"""Compose spans of finite sets, check the associator, and compare algebras
and bimodules in (FinSet, ⊔) with cospans."""

from catverify.moritabm import Bimodule, bimodule_associator, compose_bimodules, one_cells_report
from catverify.spancat import Span, associator, duality_data

s = Span.from_pairs(2, 1, [(0, 0), (1, 0)])
t = Span.from_pairs(1, 3, [(0, 0), (0, 2)])
u = Span.from_pairs(3, 2, [(2, 1)])
print("s;t has apex", s.then(t).apex)
h, ok = associator(s, t, u)
print("associator found:", ok, "map", h)
print("the 2-element set is self-dual:", duality_data(2)["ok"])

m1 = Bimodule(2, 1, 2, [0, 1], [0])
m2 = Bimodule(1, 2, 2, [0], [0, 1])
print("relative tensor product has", compose_bimodules(m1, m2).size, "elements")
print("associator for bimodules:", bimodule_associator(m1, m2, Bimodule.unit(2))[1])
rep = one_cells_report(2)
print("bimodule classes vs cospan classes:", rep.counts)
