"""Named verification suites. Each suite is a fixed list of tasks; a task
returns one or more records. Records are assembled in task order, so reports
do not depend on the worker count."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass
from math import comb

from . import deltacomb, fibrations as fib, moritabm, sigmacomb, spancat
from .fincat import CatFunctor, CategoryError, FinCat, FunctorData

SUITES = ("poset-models", "filtration", "localization", "span-segal", "span-duality",
          "span-coefficients", "morita-cospan", "free-algebra", "fibrations", "tw-appendix")
GUARD = 10 ** 7


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    max_n: int = 3
    max_set_size: int = 3
    max_dim: int = 4
    chain_bound: int = 3
    seed: int = 0
    jobs: int = 1
    format: str = "json"
    timings: bool = False

    def validate(self):
        if self.suite not in SUITES + ("all",):
            raise CategoryError(f"unknown suite {self.suite}")
        for name in ("max_n", "max_dim", "chain_bound", "jobs"):
            if getattr(self, name) < 1:
                raise CategoryError(f"{name.replace('_', '-')} must be positive")
        if self.max_set_size < 0:
            raise CategoryError("max-set-size must be non-negative")
        if self.format not in ("json", "text"):
            raise CategoryError(f"unknown format {self.format}")

    def public(self):
        out = asdict(self)
        out.pop("jobs")
        out.pop("timings")
        return out


def _record(anchor, params, ok, counts=None, witness=None, notes=()):
    return {"anchor": anchor, "params": params, "verdict": "pass" if ok else "fail",
            "counts": counts or {}, "witness": None if ok else witness, "notes": list(notes)}


def _from_report(anchor, params, rep):
    return _record(anchor, params, rep.ok, rep.counts, rep.witness, rep.notes)


def _empty(anchor, params, what):
    return _record(anchor, params, True, {}, None, [f"empty range: {what}"])


# -- estimates for the bound guard -------------------------------------------------

def _span_raw_cells(n):
    return sum(comb(p * q + n, n) for p in range(n + 1) for q in range(n + 1))


def estimate(task, params):
    """Rough candidate counts; tasks above GUARD are refused."""
    if task in ("span_segal", "span_assoc"):
        return _span_raw_cells(params["max_size"]) ** 2
    if task == "tuple_models":
        return comb(params["n"] + 12, 12) ** 2
    if task == "filtration":
        return sum(comb(2 * a + 4, 4) for a in params["arities"]) ** params["max_dim"]
    if task == "morita":
        return _span_raw_cells(params["max_size"]) ** 2
    if task == "deltacomb":
        return 4 ** (params["bound"] + 2)
    return 0


# -- tasks ---------------------------------------------------------------------------

def task_tuple_models(n):
    rep = sigmacomb.verify_tuple_isomorphisms(n)
    expected = sigmacomb.expected_counts(n)
    counts = dict(rep.counts)
    ok = rep.ok and all(counts[k] == v for k, v in expected.items())
    witness = {"failures": rep.failures, "expected": expected}
    return [_record("tuple-poset models of the span and twisted-arrow fibre products",
                    {"n": n}, ok, counts, witness)]


def task_gamma_beta(n):
    ok, counts = sigmacomb.gamma_beta_check(n)
    return [_record("gamma after beta is the identity on the opposite interval poset",
                    {"n": n}, ok, counts, {"n": n})]


def task_filtration(arities, max_dim):
    cert = sigmacomb.filtration_certificate(arities, max_dim)
    params = {"arities": list(arities), "max_dim": max_dim}
    counts = {"simplices": cert.counts, "pairs": len(cert.pairing),
              "violations": cert.violation_counts()}
    first = cert.violations[0] if cert.violations else None
    literal = _record("short simplices pair with unique long simplices and all face identities hold",
                      params, cert.ok, counts, {"first_violation": _plain(first)}, cert.notes)
    blocking = [v for v in cert.violations if v[0] != "face_next"]
    filtration = _record("the pairing fills each filtration stage by marked anodyne horns",
                         params, cert.ok_for_filtration, counts,
                         {"first_violation": _plain(blocking[0]) if blocking else None}, cert.notes)
    return [literal, filtration]


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    return x


def task_localization():
    res = sigmacomb.localization_report(1)
    ok = res["free_on_hasse"] and res["skeleton"] == 5 and res["equivalent_to_t"]
    return [_record("localization of the sextuple poset at two arrows", {}, ok, res, res)]


def task_span_segal(max_size):
    params = {"max_size": max_size}
    if max_size == 0:
        return [_empty("Segal comparison for spans of finite sets", params, "max-set-size 0"),
                _empty("span mapping objects match double-slice classes", params, "max-set-size 0")]
    seg, mapping = spancat.segal_and_mapping_checks("finset", max_size)
    return [_from_report("Segal comparison for spans of finite sets", params, seg),
            _from_report("span mapping objects match double-slice classes", params, mapping)]


def task_span_assoc(max_size):
    params = {"max_size": max_size}
    if max_size == 0:
        return [_empty("span composition is associative and unital up to constructed isomorphism",
                       params, "max-set-size 0")]
    return [_from_report("span composition is associative and unital up to constructed isomorphism",
                         params, spancat.associativity_report(max_size))]


def task_poset_spans():
    P = FinCat.from_poset(["0", "a", "b", "1"],
                          lambda x, y: x == y or x == "0" or y == "1")
    return [_from_report("Segal comparison for spans in a poset with meets", {"poset": "square"},
                         spancat.poset_segal_report(P))]


def task_deltacomb(bound):
    params = {"chain_bound": bound}
    out = []
    for name, X in (("nerve of [1]", deltacomb.rezk_nerve(fib.chain(1), bound)),
                    ("nerve of the walking isomorphism",
                     deltacomb.rezk_nerve(FinCat.from_poset([0, 1], lambda a, b: True), bound))):
        seg, where = deltacomb.segal_check(X)
        complete = deltacomb.completeness_check(X)
        out.append(_record(f"Segal and completeness conditions for the {name}", params,
                           seg and complete, {"segal": seg, "complete": complete},
                           {"segal_failure": where}))
    Z2 = deltacomb.delooping([0, 1], lambda a, b: (a + b) % 2, bound)
    ok, where = deltacomb.monoid_check(Z2)
    out.append(_record("delooping of a group satisfies the monoid condition", params, ok,
                       {"bound": bound}, {"n": where}))
    return out


def task_span_duality(max_size):
    params = {"max_size": max_size}
    if max_size == 0:
        return [_empty("finite sets are self-dual in spans: triangle identities", params, "max-set-size 0")]
    results = {n: spancat.duality_data(n)["ok"] for n in range(max_size + 1)}
    ok = all(results.values())
    bad = [n for n, v in results.items() if not v]
    out = [_record("finite sets are self-dual in spans: triangle identities", params, ok,
                   {"objects": len(results)}, {"failing_sizes": bad})]
    out.append(_from_report("disjoint union of spans is compatible with composition",
                            {"max_size": min(max_size, 2)}, spancat.interchange_report(min(max_size, 2))))
    return out


def task_span_coefficients(max_size):
    params = {"index_components": 1}
    if max_size == 0:
        return [_empty("spans with coefficients match cospans of coefficients", params, "max-set-size 0")]
    out = []
    cases = [(spancat.terminal_coefficients(), (1,)), (spancat.terminal_coefficients(), (1, 1)),
             (spancat.subset_coefficients(), (1,)), (spancat.subset_coefficients(), (1, 1)),
             (spancat.flag_coefficients(), (1,))]
    for coeff, arities in cases:
        rep = spancat.span_cospan_coefficients_equiv(coeff, arities, 1)
        out.append(_from_report("spans with coefficients match cospans of coefficients",
                                {"coefficients": coeff.name, "arities": list(arities)}, rep))
    size = min(max_size, 2)
    good = spancat.section_functoriality(spancat.subset_coefficients(), lambda c: (), size)
    out.append(_from_report("a natural section sending pullbacks to pushouts induces a functor",
                            {"coefficients": "subsets", "section": "empty", "max_size": size}, good))
    bad = spancat.section_functoriality(spancat.subset_coefficients(), lambda c: tuple(range(c)), size)
    out.append(_record("a section that is not initial on the point is rejected",
                       {"coefficients": "subsets", "section": "full", "max_size": size}, not bad.ok,
                       bad.counts, {"reason": "section accepted"}))
    return out


def task_morita(max_size, seed):
    params = {"max_size": max_size, "seed": seed}
    if max_size == 0:
        return [_empty("algebras and bimodules match cospans", params, "max-set-size 0")]
    reps = moritabm.morita_cospan_equivalence(max_size=max_size, seed=seed)
    return [_from_report(f"algebras and bimodules match cospans: {r.name}", params, r) for r in reps]


def task_free_algebra(max_n, max_size):
    out = []
    top = min(max_n, 2)
    sizes = range(min(max_size, 2) + 1)
    for n in range(1, top + 1):
        sup = [(i, j) for (i, j) in sigmacomb.sigma_elements(n) if i < j]
        checked, failures = 0, []
        for choice in itertools.product(sizes, repeat=len(sup)):
            phi = {c: [f"x{c[0]}{c[1]}_{k}" for k in range(s)] for c, s in zip(sup, choice)}
            rep = moritabm.monad_agreement(n, phi)
            checked += 1
            if not rep.ok:
                failures.append({"sizes": list(choice), "detail": rep.witness})
        out.append(_record("free algebras agree for the simplex, BM and BM* descriptions",
                           {"n": n, "max_elements": max(sizes)}, not failures,
                           {"assignments": checked}, failures[:1] or None))
    for n in range(1, min(max_n, 3) + 1):
        for star in (False, True):
            ok, checked, failure = moritabm.composition_closure(moritabm.BMOperad(n, star))
            out.append(_record("BM operad composition is closed", {"n": n, "star": star}, ok,
                               {"composites": checked}, _plain(failure)))
    return out


def task_fibrations(seed):
    rng = random.Random(seed)
    out = []
    # Grothendieck constructions on random poset-valued functors
    bad, hom_bad, towers, tower_bad = 0, 0, 0, 0
    for _ in range(20):
        F = fib.random_cat_functor(rng)
        for variance in ("covariant", "contravariant"):
            G = F if variance == "covariant" else fib.random_poset_functor(
                F.base.op(), [F.fibres[c] for c in F.base.objects], rng)
            data = fib.grothendieck(G, variance)
            tot = data.functor.source
            if not data.check().ok:
                bad += 1
            if any(len(tot.hom(x, y)) != fib.grothendieck_hom_count(G, x, y, variance)
                   for x in tot.objects for y in tot.objects):
                hom_bad += 1
        # tower ∫F → B → pt: the first map of two cartesian fibrations
        data = fib.grothendieck(fib.random_poset_functor(F.base.op(), [fib.point()], rng), "contravariant")
        to_pt = FunctorData(data.functor.target, fib.point(), {c: "*" for c in data.functor.target.objects},
                            [0] * data.functor.target.n_mor)
        rep = fib.first_of_two_report(data.functor, to_pt)
        towers += 1
        tower_bad += not rep.ok
    out.append(_record("Grothendieck construction is a fibration with the expected hom counts",
                       {"instances": 20, "seed": seed}, bad == 0 and hom_bad == 0 and tower_bad == 0,
                       {"constructions": 40, "marking_failures": bad, "hom_count_failures": hom_bad,
                        "towers": towers, "tower_failures": tower_bad},
                       {"marking_failures": bad, "hom_count_failures": hom_bad, "tower_failures": tower_bad}))
    # monoid fibres: covariant functor [1] → monoids
    Z2 = fib.cyclic_group(2)
    one = fib.chain(1)
    F = CatFunctor(one, {0: Z2, 1: Z2}, [FunctorData.identity(Z2), FunctorData(Z2, Z2, {"*": "*"}, [0, 0]),
                                           FunctorData.identity(Z2)]).check()
    data = fib.grothendieck(F)
    tot = data.functor.source
    ok = data.check().ok and all(len(tot.hom(x, y)) == fib.grothendieck_hom_count(F, x, y)
                                 for x in tot.objects for y in tot.objects)
    out.append(_record("Grothendieck construction of monoid fibres", {"monoid": "Z/2"}, ok,
                       {"morphisms": tot.n_mor}, {"morphisms": tot.n_mor}))
    # bifibration criteria
    rows, disagree = [], []
    for name, bif, expected in _criteria_cases():
        rep = fib.check_bifibration(bif)
        crit = rep.counts["criteria"]
        rows.append(name)
        if not rep.counts["hypotheses"] or len(set(crit)) != 1 or crit[0] != expected:
            disagree.append({"instance": name, "criteria": crit, "expected": expected})
    out.append(_record("the four bifibration criteria agree", {"instances": len(rows)}, not disagree,
                       {"instances": len(rows)}, disagree[:1] or None))
    # dualization roundtrips
    insts = fib.generated_bifibrations(24, rng)
    fails = []
    for name, bif in insts:
        rep = fib.dualization_report(bif, name)
        if not rep.ok:
            fails.append({"instance": name, "detail": rep.witness})
    for I in (fib.chain(1), fib.chain(2), fib.discrete(2)):
        L, _ = fib.left_dual(fib.arrow_bifibration(I))
        tw, s, d = fib.tw_legs(I)
        twl = fib.OverProduct(tw.op(), fib.as_op(s), FunctorData(tw.op(), I, d.obj, d.mor))
        if fib.iso_over_base(L, twl) is None:
            fails.append({"instance": "arrow category", "detail": "left dual is not Tw^l"})
    setpt = fib.OverProduct(fib.discrete(2), *[FunctorData(fib.discrete(2), fib.point(), {0: "*", 1: "*"}, [0, 0])] * 2)
    L, _ = fib.left_dual(setpt)
    if fib.iso_over_base(setpt, fib.OverProduct(L.total, fib.retarget(L.first, fib.point()),
                                                 L.second)) is None:
        fails.append({"instance": "set over a point", "detail": "not self-dual"})
    out.append(_record("bifibrations dualize to left and right fibrations and back",
                       {"generated": len(insts), "seed": seed}, not fails,
                       {"generated": len(insts), "failures": len(fails)}, fails[:1] or None))
    # free bifibration
    frees, fails = 0, []
    for I in fib.posets_up_to_iso(3):
        for name, E in (("arrow", fib.arrow_bifibration(I)),
                        ("arrow x BZ2", fib.with_groupoid_factor(fib.arrow_bifibration(I), fib.cyclic_group(2))),
                        ("empty", _empty_bifibration(I))):
            rep = fib.free_bifibration_check(I, E)
            frees += 1
            if not rep.ok:
                fails.append({"base_size": len(I.objects), "instance": name, "detail": rep.witness})
    out.append(_record("free bifibration on the arrow category", {"max_objects": 3}, not fails,
                       {"instances": frees}, fails[:1] or None))
    # sections through twisted arrows
    checked, fails = 0, []
    for name, E in fib.generated_bifibrations(6, rng):
        A, B = E.first.target, E.second.target
        for C in (fib.chain(1), fib.discrete(2)):
            for al in fib.enumerate_functors(C, A)[:3]:
                for be in fib.enumerate_functors(C, B)[:3]:
                    rep = fib.sections_via_tw(E, C, al, be)
                    checked += 1
                    if not rep.ok:
                        fails.append({"instance": name, "detail": rep.witness})
    out.append(_record("sections match twisted-arrow diagrams in both duals", {"seed": seed}, not fails,
                       {"checked": checked}, fails[:1] or None))
    # functor fibrations
    insts = fib.generated_fun_instances(12, rng)
    totals = {"sections": 0, "cocartesian_sections": 0}
    fails = []
    for k, inst in enumerate(insts):
        rep = fib.fun_fibration_check(*inst)
        totals["sections"] += rep.counts.get("sections", 0)
        totals["cocartesian_sections"] += rep.counts.get("cocartesian_sections", 0)
        if not rep.ok:
            fails.append({"instance": k, "detail": rep.witness})
    out.append(_record("functor fibration sections match functors over the base",
                       {"instances": len(insts), "seed": seed}, not fails, totals, fails[:1] or None))
    # projection check on products of a cartesian and a cocartesian fibration
    fails, hyp = [], 0
    for _ in range(10):
        F = fib.random_cat_functor(rng, 2, 2)
        G = fib.random_cat_functor(rng, 2, 2)
        cart = fib.grothendieck(fib.random_poset_functor(F.base.op(), [F.fibres[c] for c in F.base.objects], rng),
                                "contravariant").functor
        cocart = fib.grothendieck(G).functor
        E = _product_over(cart, cocart)
        rep = fib.projection_report(E)
        hyp += rep.counts["hypothesis"]
        if not rep.ok:
            fails.append(rep.witness)
    out.append(_record("projection to the second factor is cocartesian", {"instances": 10}, not fails,
                       {"hypotheses_held": hyp}, fails[:1] or None))
    return out


def _product_over(p, q):
    P = p.source.product(q.source)
    n = q.source.n_mor
    first = FunctorData(P, p.target, {(a, b): p.obj[a] for a, b in P.objects}, [p.mor[m // n] for m in range(P.n_mor)])
    second = FunctorData(P, q.target, {(a, b): q.obj[b] for a, b in P.objects}, [q.mor[m % n] for m in range(P.n_mor)])
    return fib.OverProduct(P, first, second)


def _empty_bifibration(I):
    E = FinCat([], [], [], {}, {}, [])
    return fib.OverProduct(E, FunctorData(E, I, {}, []), FunctorData(E, I, {}, []))


def _criteria_cases():
    pt = fib.point()
    out = []
    for k, I in enumerate(fib.posets_up_to_iso(3)):
        out.append((f"arrow category {k}", fib.arrow_bifibration(I), True))
    for name, A in (("discrete", fib.discrete(2)), ("Z/2", fib.cyclic_group(2)), ("[1]", fib.chain(1))):
        to_pt = FunctorData(A, pt, {x: "*" for x in A.objects}, [0] * A.n_mor)
        out.append((f"{name} over a point", fib.OverProduct(A, to_pt, to_pt), A.is_groupoid()))
    for name, bif in fib.generated_bifibrations(6, random.Random(7)):
        out.append((f"generated {name}", bif, True))
        thick = fib.with_groupoid_factor(bif, fib.chain(1))
        out.append((f"generated {name} with a non-groupoid fibre", thick, False))
    return out


def task_twr(max_n):
    return [_from_report("twisted arrow category is a right fibration", {"max_poset_size": max_n},
                         fib.twr_right_fibration_report(max_n))]


def task_tw2(max_n):
    fails, count = [], 0
    for P in fib.posets_up_to_iso(max_n):
        rep = fib.tw2_report(P)
        count += 1
        if not rep.ok:
            fails.append({"poset_size": len(P.objects), "detail": rep.witness})
    T, *_ = fib.tw2(fib.chain(1))
    return [_record("Tw2 projections are fibrations with the stated fibres and the composition map "
                    "is final and initial", {"max_poset_size": max_n}, not fails,
                    {"posets": count, "objects_over_[1]": len(T.objects)}, fails[:1] or None)]


def task_tw_lemmas(max_n, seed):
    rng = random.Random(seed)
    posets = fib.posets_up_to_iso(max_n)
    pull_fails, checked = [], 0
    for B in posets:
        for E in rng.sample(posets, min(4, len(posets))):
            for f in fib.enumerate_functors(E, B)[:2]:
                rep = fib.twr_pullback_report(E, B, f)
                checked += 1
                if not rep.ok:
                    pull_fails.append(rep.witness)
    out = [_record("twisted arrow pullback is a cartesian fibration with slice fibres",
                   {"max_poset_size": max_n, "seed": seed}, not pull_fails, {"checked": checked},
                   pull_fails[:1] or None)]
    cof_fails, hyp = [], 0
    for P in posets:
        tw, s, d = fib.tw_legs(P)
        for p in (d, fib.as_op(s)):
            rep = fib.cofinal_fibration_report(p)
            hyp += rep.counts["hypothesis"]
            if not rep.ok:
                cof_fails.append({"poset_size": len(P.objects)})
    out.append(_record("fibrations with connected fibres are final and initial",
                       {"max_poset_size": max_n}, not cof_fails, {"hypotheses_held": hyp},
                       cof_fails[:1] or None))
    return out


def tasks_for(config):
    """(suite, task name, params) in report order."""
    N, K, L, D, seed = config.max_set_size, config.max_n, config.chain_bound, config.max_dim, config.seed
    table = {
        "poset-models": [("tuple_models", {"n": n}) for n in range(1, K + 1)]
        + [("gamma_beta", {"n": n}) for n in range(1, max(6, K) + 1)],
        "filtration": [("filtration", {"arities": (1,), "max_dim": D}),
                       ("filtration", {"arities": (1, 1), "max_dim": D})],
        "localization": [("localization", {})],
        "span-segal": [("span_segal", {"max_size": N}), ("span_assoc", {"max_size": N}),
                       ("poset_spans", {}), ("deltacomb", {"bound": L})],
        "span-duality": [("span_duality", {"max_size": N})],
        "span-coefficients": [("span_coefficients", {"max_size": N})],
        "morita-cospan": [("morita", {"max_size": N, "seed": seed})],
        "free-algebra": [("free_algebra", {"max_n": K, "max_size": N})],
        "fibrations": [("fibrations", {"seed": seed})],
        "tw-appendix": [("twr", {"max_n": 5}), ("tw2", {"max_n": 4}),
                        ("tw_lemmas", {"max_n": 3, "seed": seed})],
    }
    names = SUITES if config.suite == "all" else (config.suite,)
    return [(s, t, p) for s in names for t, p in table[s]]


TASKS = {
    "tuple_models": task_tuple_models, "gamma_beta": task_gamma_beta, "filtration": task_filtration,
    "localization": task_localization, "span_segal": task_span_segal, "span_assoc": task_span_assoc,
    "poset_spans": task_poset_spans, "deltacomb": task_deltacomb, "span_duality": task_span_duality,
    "span_coefficients": task_span_coefficients, "morita": task_morita, "free_algebra": task_free_algebra,
    "fibrations": task_fibrations, "twr": task_twr, "tw2": task_tw2, "tw_lemmas": task_tw_lemmas,
}


def run_task(item):
    suite, name, params = item
    start = time.perf_counter()
    try:
        records = TASKS[name](**params)
    except CategoryError as exc:
        records = [_record(name.replace("_", " "), _jsonable(params), False, {}, {"error": str(exc)})]
    elapsed = time.perf_counter() - start
    for r in records:
        r["params"] = _jsonable(r["params"])
        r["suite"] = suite
        r["time"] = round(elapsed / len(records), 3)
    return records


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def check_guard(items):
    for _, name, params in items:
        est = estimate(name, params)
        if est > GUARD:
            raise CategoryError(f"bound guard: task {name} with {params} needs about {est} candidates")


def run_suite(config):
    """Run every task of the configured suite; returns the report dict."""
    config.validate()
    items = tasks_for(config)
    check_guard(items)
    if config.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(run_task, items))
    else:
        results = [run_task(item) for item in items]
    records = [r for group in results for r in group]
    if not config.timings:
        for r in records:
            r.pop("time")
    return {"suite": config.suite, "config": config.public(), "records": records,
            "pass": all(r["verdict"] == "pass" for r in records)}

