"""Proper classes of conflations.

Two shapes are supported: the class of all short exact sequences, and the
class of sequences that stay exact under ``Hom(X, -)`` for every ``X`` in a
finite list.  The regular module is always adjoined to the list, so the
relative class has enough projectives by construction: the canonical cover of
``m`` is the projective cover plus one copy of ``X`` for every basis element
of ``Hom(X, m)``.

:func:`audit_axioms` checks the defining closure properties on randomly
generated instances and records every counterexample it meets.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import Algebra
from .modcat import (
    AlgebraMismatch,
    Conflation,
    Module,
    ModuleMap,
    conflation_from_surjection,
    direct_sum,
    direct_sum_conflation,
    hom_basis,
    hom_dim,
    is_split,
    kernel,
    projective,
    projective_cover,
    pullback_conflation,
    pushout_conflation,
    random_map,
    section,
    split_conflation,
)


def is_projective(m: Module) -> bool:
    """Ordinary projectivity: the minimal projective cover is an isomorphism."""
    return projective_cover(m).source.dim == m.dim


def indecomposable_projectives(alg: Algebra) -> list[Module]:
    return [projective(alg, v) for v in range(alg.vertices)]


@dataclass(frozen=True, eq=False)
class ProperClass:
    """Either all conflations (``relative is None``) or the ``Hom(X, -)``-exact ones."""

    algebra: Algebra
    relative: tuple[Module, ...] | None = None
    label: str = field(default="")

    @classmethod
    def all(cls, alg: Algebra) -> "ProperClass":
        return cls(alg, None, "all")

    @classmethod
    def relative_to(cls, alg: Algebra, modules, label: str = "") -> "ProperClass":
        mods = tuple(modules)
        if not mods:
            raise ValueError("a relative proper class needs at least one module")
        for m in mods:
            if m.algebra.key != alg.key:
                raise AlgebraMismatch("relative class module over a different algebra")
        if not label:
            label = "relative(" + ",".join(m.name or "?" for m in mods) + ")"
        return cls(alg, mods, label)

    @property
    def is_all(self) -> bool:
        return self.relative is None

    @property
    def key(self) -> str:
        if self.relative is None:
            return f"all:{self.algebra.key}"
        h = hashlib.sha1(self.algebra.key.encode())
        for m in self.relative:
            h.update(m.key.encode())
        return "rel:" + h.hexdigest()[:16]

    def generators(self) -> list[Module]:
        """A finite set whose additive closure is the class of projectives."""
        gens = indecomposable_projectives(self.algebra)
        if self.relative:
            gens = gens + [m for m in self.relative if m.dim]
        return gens

    def contains(self, c: Conflation) -> bool:
        if not c.is_exact():
            return False
        if self.relative is None:
            return True
        q = c.deflation.matrix
        p = self.algebra.p
        for x in self.relative:
            target = hom_dim(x, c.right)
            if target == 0:
                continue
            hs = hom_basis(x, c.middle)
            if not hs:
                return False
            imgs = np.stack([(q @ h.matrix % p).reshape(-1) for h in hs])
            if linalg.rank(imgs, p) != target:
                return False
        return True

    def cover(self, m: Module) -> Conflation:
        return xi_cover(self, m)

    def is_projective(self, m: Module) -> bool:
        return xi_projective(self, m)


def xi_cover(xi: ProperClass, m: Module) -> Conflation:
    """Canonical conflation ``K -> Q -> m`` in xi with Q projective for xi."""
    pc = projective_cover(m)
    if xi.relative is None:
        return conflation_from_surjection(pc)
    pieces = [pc.source]
    blocks = [pc.matrix]
    for x in xi.relative:
        for h in hom_basis(x, m):
            pieces.append(x)
            blocks.append(h.matrix)
    total, _, _ = direct_sum(*pieces)
    defl = ModuleMap(total, m, np.concatenate(blocks, axis=1), check=False)
    return conflation_from_surjection(defl)


def xi_projective(xi: ProperClass, m: Module) -> bool:
    """m is projective for xi iff its canonical cover splits."""
    if m.dim == 0:
        return True
    c = xi_cover(xi, m)
    return section(c.deflation) is not None


# --- axiom audit --------------------------------------------------------------------

AXIOMS = ("delta0", "coproduct", "base_change", "cobase_change", "saturation")


@dataclass
class AuditReport:
    label: str
    trials: int
    seed: int
    checks: dict = field(default_factory=lambda: {a: 0 for a in AXIOMS})
    violations: dict = field(default_factory=lambda: {a: [] for a in AXIOMS})

    @property
    def total_violations(self) -> int:
        return sum(len(v) for v in self.violations.values())

    def violation_counts(self) -> dict:
        return {a: len(self.violations[a]) for a in AXIOMS}

    def to_dict(self, max_examples: int = 3) -> dict:
        return {
            "class": self.label,
            "trials": self.trials,
            "seed": self.seed,
            "checks": dict(self.checks),
            "violations": self.violation_counts(),
            "examples": {a: self.violations[a][:max_examples] for a in AXIOMS if self.violations[a]},
        }


def describe_conflation(c: Conflation) -> dict:
    """Plain-data rendering of a conflation for reports."""
    return {
        "left_dimvec": c.left.dimension_vector(),
        "middle_dimvec": c.middle.dimension_vector(),
        "right_dimvec": c.right.dimension_vector(),
        "inflation": c.inflation.matrix.tolist(),
        "deflation": c.deflation.matrix.tolist(),
    }


def _candidate(rng: np.random.Generator, pool: list[Module], xi) -> Conflation:
    """A random conflation built from covers, split sequences and cobase changes."""
    m = pool[rng.integers(len(pool))]
    kind = int(rng.integers(4))
    if kind == 0:
        return split_conflation(pool[rng.integers(len(pool))], m)
    cov = getattr(xi, "cover", None)
    if kind == 1 and cov is not None:
        return cov(m)
    c = conflation_from_surjection(projective_cover(m))
    if kind == 3 and c.left.dim:
        target = pool[rng.integers(len(pool))]
        c = pushout_conflation(c, random_map(c.left, target, rng))
    return c


def _member(rng, pool, xi, tries: int = 12) -> Conflation | None:
    for _ in range(tries):
        c = _candidate(rng, pool, xi)
        if xi.contains(c):
            return c
    return None


def _fiber_product_diagram(d1: Conflation, d2: Conflation):
    """The pullback square over C with the two induced conflations through M."""
    b1, b2, c = d1.middle, d2.middle, d1.right
    p = c.p
    s, _, _ = direct_sum(b1, b2)
    h = ModuleMap(s, c, np.concatenate([d1.deflation.matrix, (-d2.deflation.matrix) % p], axis=1),
                  check=False)
    mm, inc = kernel(h)
    e2 = ModuleMap(mm, b1, inc.matrix[: b1.dim], check=False)
    e1 = ModuleMap(mm, b2, inc.matrix[b1.dim :], check=False)
    z1 = np.concatenate([d1.inflation.matrix, linalg.zeros(b2.dim, d1.left.dim)], axis=0)
    z2 = np.concatenate([linalg.zeros(b1.dim, d2.left.dim), d2.inflation.matrix], axis=0)
    m1 = ModuleMap(d1.left, mm, linalg.solve(inc.matrix, z1, p), check=False)
    m2 = ModuleMap(d2.left, mm, linalg.solve(inc.matrix, z2, p), check=False)
    row = Conflation(m1, e1)
    col = Conflation(m2, e2)
    return row, col


def _trial(xi, pool: list[Module], rng: np.random.Generator, out: dict) -> None:
    def record(axiom, ok, *cs):
        out["checks"][axiom] += 1
        if not ok:
            out["violations"][axiom].append([describe_conflation(c) for c in cs])

    x, y = pool[rng.integers(len(pool))], pool[rng.integers(len(pool))]
    s = split_conflation(x, y)
    record("delta0", xi.contains(s), s)

    c1, c2 = _member(rng, pool, xi), _member(rng, pool, xi)
    if c1 is not None and c2 is not None:
        c12 = direct_sum_conflation(c1, c2)
        record("coproduct", xi.contains(c12), c12)

    if c1 is not None:
        src = pool[rng.integers(len(pool))]
        g = random_map(src, c1.right, rng)
        pb = pullback_conflation(c1, g)
        record("base_change", xi.contains(pb), c1, pb)
        tgt = pool[rng.integers(len(pool))]
        f = random_map(c1.left, tgt, rng)
        po = pushout_conflation(c1, f)
        record("cobase_change", xi.contains(po), c1, po)

    # saturation: d2 a member ending at C, d1 any conflation ending at C
    d2 = c2 if c2 is not None else c1
    if d2 is not None:
        cc = d2.right
        base = conflation_from_surjection(projective_cover(cc))
        d1 = base
        if base.left.dim and rng.integers(2):
            d1 = pushout_conflation(base, random_map(base.left, pool[rng.integers(len(pool))], rng))
        row, col = _fiber_product_diagram(d1, d2)
        consistent = row.is_exact() and col.is_exact()
        if xi.contains(d2) and xi.contains(row):
            record("saturation", consistent and xi.contains(d1), d2, row, d1)
        elif not consistent:
            record("saturation", False, d1, d2)


def audit_axioms(xi, trials: int, seed: int, modules: list[Module] | None = None,
                 label: str | None = None) -> AuditReport:
    """Randomized check of the proper-class axioms for any object with ``contains``.

    Each trial draws from its own generator seeded by ``(seed, trial)``, so the
    report does not depend on evaluation order.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    alg = xi.algebra
    pool = [m for m in (modules or []) if m.dim] + indecomposable_projectives(alg)
    rel = getattr(xi, "relative", None)
    if rel:
        pool += [m for m in rel if m.dim]
    report = AuditReport(label or getattr(xi, "label", type(xi).__name__), trials, seed)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        _trial(xi, pool, rng, {"checks": report.checks, "violations": report.violations})
    return report


# --- deliberately broken classes used to exercise the audit ------------------------


@dataclass(frozen=True, eq=False)
class SplitZeroLeftFixture:
    """Split conflations ``0 -> B -> C`` only; misses most of the split sequences."""

    algebra: Algebra
    label: str = "split-with-zero-left"

    def contains(self, c: Conflation) -> bool:
        return c.is_exact() and c.left.dim == 0


@dataclass(frozen=True, eq=False)
class SmallMiddleFixture:
    """Split conflations together with every conflation whose middle term is small."""

    algebra: Algebra
    bound: int = 2
    label: str = "split-or-small-middle"

    def contains(self, c: Conflation) -> bool:
        return c.is_exact() and (c.middle.dim <= self.bound or is_split(c))


def sampled_deflation_sections(xi: ProperClass, m: Module, others: list[Module],
                               rng: np.random.Generator, samples: int = 5) -> bool:
    """For projective m: every sampled xi-deflation onto m has a section."""
    for _ in range(samples):
        x = others[rng.integers(len(others))]
        c = xi_cover(xi, x)
        g = random_map(m, x, rng)
        pb = pullback_conflation(c, g)
        if not xi.contains(pb):
            return False
        if section(pb.deflation) is None:
            return False
    return True


__all__ = [
    "AXIOMS",
    "AuditReport",
    "ProperClass",
    "SmallMiddleFixture",
    "SplitZeroLeftFixture",
    "audit_axioms",
    "describe_conflation",
    "indecomposable_projectives",
    "is_projective",
    "xi_cover",
    "xi_projective",
]
