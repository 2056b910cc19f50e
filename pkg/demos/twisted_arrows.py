"""Twisted arrow categories, the four bifibration criteria and dualization on
small examples."""

import random

from catverify import fibrations as fib
from catverify.fincat import FunctorData

I = fib.chain(1)
tw, src, dst = fib.tw_legs(I)
print("Tw^r([1]) has", len(tw.objects), "objects")
print("it is a right fibration over [1] x [1]^op:", fib.is_right_fib(fib.pair_functor(src, dst)))

arrows = fib.arrow_bifibration(I)
print("arrow category criteria:", fib.check_bifibration(arrows).counts["criteria"])

to_pt = FunctorData(I, fib.point(), {0: "*", 1: "*"}, [0] * I.n_mor)
print("[1] over a point:", fib.check_bifibration(fib.OverProduct(I, to_pt, to_pt)).counts["criteria"])

for name, bif in fib.generated_bifibrations(3, random.Random(0)):
    print(name, "dualizes and comes back:", fib.dualization_report(bif, name).ok)

T, *_ = fib.tw2(I)
print("Tw2([1]) has", len(T.objects), "objects")
