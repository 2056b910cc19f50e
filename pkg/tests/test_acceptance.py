"""One test per acceptance criterion, run at its stated tolerance (all are
exact) and time budget. Each test reports one PASS/FAIL line."""

import itertools
import random
import time

import pytest

from catverify import fibrations as fib
from catverify import moritabm, sigmacomb, spancat
from catverify.moritabm import _mutants


class Outcome:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.start = time.perf_counter()
        self.details = []

    def finish(self, ok, record):
        elapsed = time.perf_counter() - self.start
        in_time = self.budget is None or elapsed < self.budget
        verdict = "PASS" if ok and in_time else "FAIL"
        budget = "" if self.budget is None else f" (budget {self.budget:g}s)"
        extra = "; ".join(self.details)
        record(f"{verdict} criterion {self.number}: {self.title} [{elapsed:.2f}s{budget}]"
               + (f" {extra}" if extra else ""))
        return ok and in_time


def test_criterion_1_tuple_poset_models(criterion_line):
    out = Outcome(1, "tuple-poset models with cartesian predicates", 5)
    ok = True
    for n in (1, 2, 3):
        rep = sigmacomb.verify_tuple_isomorphisms(n)
        expected = sigmacomb.expected_counts(n)
        ok &= rep.ok and all(rep.counts[k] == v for k, v in expected.items())
        out.details.append(f"n={n}: |X|={rep.counts['sext']} |T|={rep.counts['t']}")
    c1, c2 = sigmacomb.expected_counts(1), sigmacomb.expected_counts(2)
    ok &= (c1["sext"], c1["t"], c2["sext"], c2["t"]) == (7, 5, 28, 15)
    assert out.finish(ok, criterion_line)


def test_criterion_2_gamma_beta(criterion_line):
    out = Outcome(2, "gamma after beta is the identity for n <= 6", 1)
    ok = all(sigmacomb.gamma_beta_check(n)[0] for n in range(0, 7))
    assert out.finish(ok, criterion_line)


def test_criterion_3_filtration_certificate(criterion_line):
    out = Outcome(3, "filtration certificate for [1] and [1]x[1] up to dimension 4", 30)
    ok = True
    for arities in ((1,), (1, 1)):
        cert = sigmacomb.filtration_certificate(arities, 4)
        ok &= cert.ok
        out.details.append(f"{list(arities)}: violations {cert.violation_counts()}")
    assert out.finish(ok, criterion_line)


def test_criterion_4_localization(criterion_line):
    out = Outcome(4, "localization of X^1 has a 5-object skeleton equivalent to T^1", 1)
    res = sigmacomb.localization_report(1)
    ok = res["free_on_hasse"] and res["skeleton"] == 5 and res["equivalent_to_t"]
    out.details.append(f"skeleton {res['skeleton']}")
    assert out.finish(ok, criterion_line)


def test_criterion_5_span_structure(criterion_line):
    out = Outcome(5, "span Segal, associativity, mapping objects and self-duality at |X| <= 3", 60)
    seg, mapping = spancat.segal_and_mapping_checks("finset", 3)
    assoc = spancat.associativity_report(3)
    duality = all(spancat.duality_data(n)["ok"] for n in range(4))
    ok = seg.ok and mapping.ok and assoc.ok and duality
    out.details.append(f"triples {assoc.counts['checked']}")
    assert out.finish(ok, criterion_line)


def test_criterion_6_morita_cospans(criterion_line):
    out = Outcome(6, "algebras and bimodules against cospans at |X| <= 3", 60)
    reps = moritabm.morita_cospan_equivalence(max_size=3)
    ok = all(r.ok for r in reps)
    out.details.append(f"{len(reps)} reports")
    assert out.finish(ok, criterion_line)


def test_criterion_7_free_algebras(criterion_line):
    out = Outcome(7, "free-algebra monads agree for n <= 2", 10)
    ok, count = True, 0
    for n in (1, 2):
        sup = [(i, j) for (i, j) in sigmacomb.sigma_elements(n) if i < j]
        for sizes in itertools.product(range(3), repeat=len(sup)):
            phi = {c: [f"{c}{k}" for k in range(s)] for c, s in zip(sup, sizes)}
            ok &= moritabm.monad_agreement(n, phi).ok
            count += 1
    out.details.append(f"{count} assignments")
    assert out.finish(ok, criterion_line)


def test_criterion_8_span_coefficients(criterion_line):
    out = Outcome(8, "spans with coefficients against cospans of coefficients", 60)
    cases = [(spancat.terminal_coefficients(), (1,)), (spancat.terminal_coefficients(), (1, 1)),
             (spancat.subset_coefficients(), (1,)), (spancat.subset_coefficients(), (1, 1)),
             (spancat.flag_coefficients(), (1,))]
    ok = all(spancat.span_cospan_coefficients_equiv(c, a, 1).ok for c, a in cases)
    ok &= spancat.section_functoriality(spancat.subset_coefficients(), lambda c: (), 2).ok
    ok &= not spancat.section_functoriality(spancat.subset_coefficients(), lambda c: tuple(range(c)), 2).ok
    assert out.finish(ok, criterion_line)


def test_criterion_9_fibration_suite(criterion_line):
    out = Outcome(9, "twisted arrows, dualization, free bifibrations, functor fibrations and Tw2", 120)
    rng = random.Random(0)
    ok = fib.twr_right_fibration_report(5).ok
    insts = fib.generated_bifibrations(24, rng)
    ok &= all(fib.dualization_report(b, n).ok for n, b in insts)
    ok &= all(fib.free_bifibration_check(I, fib.arrow_bifibration(I)).ok for I in fib.posets_up_to_iso(3))
    funs = fib.generated_fun_instances(12, rng)
    ok &= all(fib.fun_fibration_check(*x).ok for x in funs)
    ok &= all(fib.tw2_report(P).ok for P in fib.posets_up_to_iso(4))
    out.details.append(f"{len(insts)} dualizations, {len(funs)} functor fibrations")
    assert out.finish(ok, criterion_line)


def _corrupt_sext(p, q):
    if (p, q) == ((0, 0, 0, 0, 1, 1), (0, 0, 0, 0, 0, 1)):
        return not sigmacomb.sext_cartesian(p, q)
    return sigmacomb.sext_cartesian(p, q)


class _UnmarkedEdge(sigmacomb.TPower):
    def marked(self, p, q):
        if (p, q) == (((0, 0, 0, 0),), ((0, 0, 0, 1),)):
            return False
        return super().marked(p, q)


def test_criterion_10_mutations(criterion_line):
    out = Outcome(10, "planted corruptions are detected with named witnesses", None)
    witnesses = {}
    rep = sigmacomb.verify_tuple_isomorphisms(1, {"sext": _corrupt_sext})
    witnesses[1] = rep.failures[0] if rep.failures else None
    cert = sigmacomb.filtration_certificate((1,), 4, mutate=lambda tp: _UnmarkedEdge(tp.arities))
    blocking = [v for v in cert.violations if v[0] != "face_next"]
    witnesses[3] = blocking[0] if not cert.ok_for_filtration and blocking else None
    seg = spancat.segal_report(3, corrupt=lambda k, h, kk: (h[:-1], kk[:-1]) if k == 115 else (h, kk))
    witnesses[5] = seg.witness if not seg.ok else None
    two = moritabm.two_cells_report(2, corrupt=lambda k, d: (_mutants(d) or [d])[0] if k == 100 else d)
    witnesses[6] = two.witness if not two.ok else None
    for k, w in witnesses.items():
        out.details.append(f"[{k}] {w}")
    assert out.finish(all(w is not None for w in witnesses.values()), criterion_line)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
