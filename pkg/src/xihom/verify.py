"""The acceptance suite over the bundled catalog, one function per criterion.

Every check returns a :class:`CriterionResult`; the CLI ``verify`` command and
the test suite both call into this module, so there is a single definition of
what passing means.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cohomology import (
    DEFAULT_STABILITY,
    NotStabilized,
    build_complete_resolution,
    complete_ext,
    complete_ext_colimit_oracle,
    complete_ext_stable_oracle,
    gpd,
    injective_side_supported,
    vanishing_report,
    xi_ext,
    xi_ext_injective_side,
    xi_ext_two_resolutions,
)
from .instance import Instance, catalog_names, load_catalog
from .modcat import random_map
from .propclass import ProperClass, SplitZeroLeftFixture, audit_axioms
from .resolution import DEFAULT_WINDOW, build_resolution, homotopy_between, lift_morphism, xi_pd

AUDIT_TRIALS = 200
HOMOTOPY_TRIALS = 100
COMPLETE_DEGREES = range(-6, 7)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title}"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "details": self.details}


def thread_count() -> int:
    raw = os.environ.get("XIHOM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def ordered_map(fn, items, threads: int | None = None) -> list:
    """``[fn(x) for x in items]``, possibly evaluated on a thread pool."""
    items = list(items)
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def catalog() -> list[Instance]:
    return [load_catalog(n) for n in catalog_names()]


def _by_name(instances, name) -> Instance:
    for inst in instances:
        if inst.name == name:
            return inst
    raise KeyError(name)


# 1 ------------------------------------------------------------------------------------


def criterion_audit(instances=None, trials: int = AUDIT_TRIALS, seed: int = 0) -> CriterionResult:
    instances = instances or catalog()
    details, ok = {}, True
    for name in ("dual_numbers", "f3_x3"):
        inst = _by_name(instances, name)
        mods = list(inst.modules.values())
        k = inst.module("k")
        for xi in (ProperClass.all(inst.algebra), ProperClass.relative_to(inst.algebra, [k], "relative(k)")):
            rep = audit_axioms(xi, trials, seed, mods)
            counts = rep.violation_counts()
            details[f"{name}/{xi.label}"] = {"checks": dict(rep.checks), "violations": counts}
            ok &= rep.total_violations == 0
    inst = _by_name(instances, "dual_numbers")
    fx = audit_axioms(SplitZeroLeftFixture(inst.algebra), trials, seed, list(inst.modules.values()))
    details["fixture/" + fx.label] = {"checks": dict(fx.checks), "violations": fx.violation_counts()}
    ok &= fx.total_violations >= 1
    return CriterionResult(1, "proper-class axiom audit", ok, details)


# 2 ------------------------------------------------------------------------------------


def criterion_two_resolutions(instances=None, degrees=range(1, 7)) -> CriterionResult:
    instances = instances or catalog()
    details, ok = {}, True
    for inst in instances:
        xi = inst.proper_class
        queries = [(a, b, d) for a in inst.modules for b in inst.modules for d in degrees]

        def run(q, inst=inst, xi=xi):
            a, b, d = q
            m, n = inst.modules[a], inst.modules[b]
            return xi_ext(xi, m, n, d).dimension, xi_ext_two_resolutions(xi, m, n, d).dimension

        vals = ordered_map(run, queries)
        bad = [[a, b, d, x, y] for (a, b, d), (x, y) in zip(queries, vals) if x != y]
        details[inst.name] = {"comparisons": len(queries), "mismatches": bad}
        ok &= not bad
    return CriterionResult(2, "resolution Hom complex agrees with the two-resolution complex", ok, details)


# 3 ------------------------------------------------------------------------------------


def criterion_injective_side(instances=None, degrees=range(0, 7)) -> CriterionResult:
    instances = instances or catalog()
    details, ok = {}, True
    for inst in instances:
        xi = inst.proper_class
        if not injective_side_supported(xi):
            details[inst.name] = "unsupported"
            continue
        queries = [(a, b, d) for a in inst.modules for b in inst.modules for d in degrees]

        def run(q, inst=inst, xi=xi):
            a, b, d = q
            m, n = inst.modules[a], inst.modules[b]
            return xi_ext(xi, m, n, d).dimension, xi_ext_injective_side(m, n, d, xi).dimension

        vals = ordered_map(run, queries)
        bad = [[a, b, d, x, y] for (a, b, d), (x, y) in zip(queries, vals) if x != y]
        details[inst.name] = {"comparisons": len(queries), "mismatches": bad}
        ok &= not bad
    return CriterionResult(3, "projective and injective routes agree", ok, details)


# 4 ------------------------------------------------------------------------------------


def _pd_checks(inst: Instance, name: str, window: int) -> dict:
    xi = inst.proper_class
    m = inst.modules[name]
    pd = xi_pd(xi, m, window)
    failures = []
    for n in range(window):
        vanish = all(xi_ext(xi, m, t, n + 1).dimension == 0 for t in inst.modules.values())
        if (pd is not None and pd <= n) != vanish:
            failures.append(n)
    g = gpd(xi, m, window)
    ce0 = complete_ext(xi, m, m, 0, window).dimension if g.finite else None
    return {
        "pd": pd if pd is not None else "ExceedsWindow",
        "gpd": g.to_dict(),
        "complete_ext0": ce0,
        "ext_criterion_failures": failures,
        "pd_iff_ce0": None if ce0 is None else (pd is not None) == (ce0 == 0),
    }


def criterion_pd_vanishing(instances=None, window: int = DEFAULT_WINDOW,
                           named_cases: bool = True) -> CriterionResult:
    instances = instances or catalog()
    details, ok = {}, True
    for inst in instances:
        rows = dict(zip(inst.modules, ordered_map(lambda nm, inst=inst: _pd_checks(inst, nm, window),
                                                 list(inst.modules))))
        for r in rows.values():
            ok &= not r["ext_criterion_failures"] and r["pd_iff_ce0"] is not False
        details[inst.name] = rows
    if not named_cases:
        return CriterionResult(4, "projective dimension versus relative and complete vanishing", ok, details)
    dual = details["dual_numbers"]["k"]
    specific = dual["pd"] == "ExceedsWindow" and dual["complete_ext0"] == 1
    for name in ("a2", "a3"):
        inst = _by_name(instances, name)
        xi = inst.proper_class
        for mname, m in inst.modules.items():
            if details[name][mname]["pd"] == "ExceedsWindow":
                specific = False
            dims = [complete_ext(xi, m, t, d, window).dimension
                    for t in inst.modules.values() for d in COMPLETE_DEGREES]
            if any(dims):
                specific = False
    details["named_cases"] = specific
    ok &= specific
    return CriterionResult(4, "projective dimension versus relative and complete vanishing", ok, details)


# 5 ------------------------------------------------------------------------------------


def criterion_complete_resolutions(instances=None, window: int = DEFAULT_WINDOW) -> CriterionResult:
    instances = instances or catalog()
    details, ok = {}, True
    for inst in instances:
        xi = inst.proper_class

        def run(name, inst=inst, xi=xi):
            m = inst.modules[name]
            g = gpd(xi, m, window)
            if not g.finite:
                return {"gpd": g.to_dict(), "built": False}
            cr = build_complete_resolution(xi, m, window)
            checks = cr.validate()
            return {"gpd": g.to_dict(), "built": True, "iso_from": cr.iso_from, "checks": checks,
                    "extension_rule": cr.extension_rule["kind"]}

        rows = dict(zip(inst.modules, ordered_map(run, list(inst.modules))))
        for r in rows.values():
            if r["built"]:
                ok &= all(r["checks"].values())
        details[inst.name] = rows
    return CriterionResult(5, "split complete resolutions pass the validator", ok, details)


# 6 ------------------------------------------------------------------------------------


def criterion_complete_oracles(instances=None, window: int = DEFAULT_WINDOW,
                               stability: int = DEFAULT_STABILITY) -> CriterionResult:
    instances = instances or catalog()
    details, ok = {}, True
    for name in ("dual_numbers", "f3_x3"):
        inst = _by_name(instances, name)
        xi = inst.proper_class
        k = inst.module("k")

        def run(d, xi=xi, k=k):
            ce = complete_ext(xi, k, k, d, window).dimension
            st = complete_ext_stable_oracle(k, k, d).dimension
            col = complete_ext_colimit_oracle(xi, k, k, d, window, stability)
            cv = None if isinstance(col, NotStabilized) else col.dimension
            return {"degree": d, "complete": ce, "stable": st, "colimit": cv}

        rows = ordered_map(run, list(COMPLETE_DEGREES))
        for r in rows:
            ok &= r["complete"] == r["stable"] == 1
            ok &= r["colimit"] is None or r["colimit"] == r["complete"]
        details[name] = rows
    return CriterionResult(6, "complete cohomology matches the stable and colimit oracles", ok, details)


# 7 ------------------------------------------------------------------------------------

EXPECTED_MATRICES = {
    ("dual_numbers", "k"): {
        "pd": "ExceedsWindow",
        "gpd": {"value": 0, "regime": "CertifiedSelfInjective"},
        "complete_ext0": 1,
        "verdicts": {
            "certified": True,
            "pd_finite": False,
            "complete_ext0_vanishes": False,
            "pd_finite_iff_complete_ext0_vanishes": True,
            "gpd_equals_pd": False,
            "complete_ext_vanishes_on_targets": False,
            "gpd_equals_pd_iff_vanishing": True,
        },
    },
    ("a2", "S1"): {
        "pd": 1,
        "gpd": {"value": 1, "regime": "CertifiedFinitePd"},
        "complete_ext0": 0,
        "verdicts": {
            "certified": True,
            "pd_finite": True,
            "complete_ext0_vanishes": True,
            "pd_finite_iff_complete_ext0_vanishes": True,
            "gpd_equals_pd": True,
            "complete_ext_vanishes_on_targets": True,
            "gpd_equals_pd_iff_vanishing": True,
        },
    },
}


def criterion_gpd_matrices(instances=None, window: int = DEFAULT_WINDOW) -> CriterionResult:
    instances = instances or catalog()
    details, ok = {}, True
    for (name, mname), expected in EXPECTED_MATRICES.items():
        inst = _by_name(instances, name)
        m = inst.module(mname)
        others = [x for x in inst.modules.values() if x != m]
        got = vanishing_report(inst.proper_class, m, window, others, COMPLETE_DEGREES)
        details[f"{name}/{mname}"] = got
        ok &= got == expected
    return CriterionResult(7, "Gorenstein and projective dimension verdict matrices", ok, details)


# 8 ------------------------------------------------------------------------------------


def criterion_homotopy(instances=None, trials: int = HOMOTOPY_TRIALS, seed: int = 0,
                       length: int = 4) -> CriterionResult:
    instances = instances or catalog()
    failures = []
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        inst = instances[int(rng.integers(len(instances)))]
        names = list(inst.modules)
        a = names[int(rng.integers(len(names)))]
        b = names[int(rng.integers(len(names)))]
        m, n = inst.modules[a], inst.modules[b]
        xi = inst.proper_class
        mu = random_map(m, n, rng)
        rm, rn = build_resolution(xi, m, length), build_resolution(xi, n, length + 1)
        phi = lift_morphism(mu, rm, rn, length, rng)
        psi = lift_morphism(mu, rm, rn, length, rng)
        if not (phi.verify() and psi.verify()) or homotopy_between(phi, psi) is None:
            failures.append([inst.name, a, b, t])
    return CriterionResult(8, "two lifts of one morphism are homotopic", not failures,
                           {"trials": trials, "failures": failures})


CRITERIA = {
    1: criterion_audit,
    2: criterion_two_resolutions,
    3: criterion_injective_side,
    4: criterion_pd_vanishing,
    5: criterion_complete_resolutions,
    6: criterion_complete_oracles,
    7: criterion_gpd_matrices,
    8: criterion_homotopy,
}


def run_all(instances=None, window: int = DEFAULT_WINDOW, stability: int = DEFAULT_STABILITY,
            seed: int = 0) -> list[CriterionResult]:
    instances = instances or catalog()
    return [
        criterion_audit(instances, seed=seed),
        criterion_two_resolutions(instances),
        criterion_injective_side(instances),
        criterion_pd_vanishing(instances, window),
        criterion_complete_resolutions(instances, window),
        criterion_complete_oracles(instances, window, stability),
        criterion_gpd_matrices(instances, window),
        criterion_homotopy(instances, seed=seed),
    ]
