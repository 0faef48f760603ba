"""Projective resolutions relative to a proper class, lifts, homotopies, coresolutions."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .modcat import (
    Conflation,
    Module,
    ModuleMap,
    conflation_from_injection,
    direct_sum,
    dual,
    dual_conflation,
    hom_basis,
    identity_map,
    opposite_algebra,
    projective,
    solve_hom,
    zero_map,
)
from .propclass import ProperClass, xi_cover, xi_projective

DEFAULT_WINDOW = 12


class UnsupportedInstance(ValueError):
    """The requested construction is not available for this algebra or class."""


class LiftingFault(RuntimeError):
    """A lift that the theory guarantees could not be solved."""


@dataclass
class XiResolution:
    """Conflations ``K_{i+1} -> P_i -> K_i`` with ``K_0`` the base module."""

    xi: ProperClass
    base: Module
    steps: list[Conflation] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.steps)

    def term(self, i: int) -> Module:
        return self.steps[i].middle

    def syzygy(self, i: int) -> Module:
        if i == 0:
            return self.base
        return self.steps[i - 1].left

    def augmentation(self) -> ModuleMap:
        return self.steps[0].deflation

    def differential(self, i: int) -> ModuleMap:
        """``d_i: P_i -> P_{i-1}`` for ``i >= 1``."""
        return self.steps[i - 1].inflation @ self.steps[i].deflation

    def truncated(self, length: int) -> "XiResolution":
        return XiResolution(self.xi, self.base, self.steps[:length])

    def validate(self) -> None:
        for i, c in enumerate(self.steps):
            c.validate()
            if c.right != self.syzygy(i):
                raise ValueError(f"step {i} does not end at the previous syzygy")
            if not self.xi.contains(c):
                raise ValueError(f"step {i} is not in the proper class")
            if not xi_projective(self.xi, c.middle):
                raise ValueError(f"term {i} is not projective for the class")


_MEMO: dict[tuple[str, str], XiResolution] = {}
_MEMO_LOCK = threading.Lock()


def build_resolution(xi: ProperClass, m: Module, length: int) -> XiResolution:
    """Iterated canonical covers, memoized per (class, module) and extended on demand."""
    if length < 0:
        raise ValueError("length must be >= 0")
    key = (xi.key, m.key)
    with _MEMO_LOCK:
        res = _MEMO.get(key)
        if res is None:
            res = XiResolution(xi, m, [])
            _MEMO[key] = res
        while res.length < length:
            res.steps.append(xi_cover(xi, res.syzygy(res.length)))
        return res.truncated(length)


def clear_memo() -> None:
    with _MEMO_LOCK:
        _MEMO.clear()


def xi_pd(xi: ProperClass, m: Module, window: int = DEFAULT_WINDOW) -> int | None:
    """Smallest n <= window with the n-th syzygy projective for xi; None past the window."""
    if window < 0:
        raise ValueError("window must be >= 0")
    res = build_resolution(xi, m, window)
    for n in range(window + 1):
        if xi_projective(xi, res.syzygy(n)):
            return n
    return None


# --- comparison maps ----------------------------------------------------------------


@dataclass
class ChainMap:
    """Components ``phi_i: P_i -> Q_i`` over ``mu`` with the induced syzygy maps."""

    mu: ModuleMap
    source: XiResolution
    target: XiResolution
    components: list[ModuleMap]
    syzygy_maps: list[ModuleMap]

    def verify(self) -> bool:
        p = self.mu.p
        if self.components:
            left = self.target.augmentation().matrix @ self.components[0].matrix % p
            right = self.mu.matrix @ self.source.augmentation().matrix % p
            if not np.array_equal(left, right):
                return False
        for i in range(1, len(self.components)):
            a = self.target.differential(i).matrix @ self.components[i].matrix % p
            b = self.components[i - 1].matrix @ self.source.differential(i).matrix % p
            if not np.array_equal(a, b):
                return False
        return True


def lift_morphism(mu: ModuleMap, r_src: XiResolution, r_tgt: XiResolution,
                  length: int | None = None, rng: np.random.Generator | None = None) -> ChainMap:
    """Lift ``mu: M -> N`` degree by degree.

    With ``rng`` set, each component is perturbed by a random map killed by the
    target deflation, which produces a different (homotopic) lift.
    """
    if mu.source != r_src.base or mu.target != r_tgt.base:
        raise ValueError("mu must go from the base of the first resolution to the second")
    n = min(r_src.length, r_tgt.length) if length is None else length
    p = mu.p
    kappa = mu
    comps, syz = [], [mu]
    for i in range(n):
        cs, ct = r_src.steps[i], r_tgt.steps[i]
        rhs = kappa.matrix @ cs.deflation.matrix % p
        sol, dirs = solve_hom(cs.middle, ct.middle, [(ct.deflation.matrix, None, rhs)],
                              homogeneous=True)
        if sol is None:
            raise LiftingFault(f"no lift in degree {i}")
        phi = sol.matrix
        if rng is not None and dirs:
            coeffs = rng.integers(0, p, size=len(dirs))
            for c, d in zip(coeffs, dirs):
                phi = (phi + int(c) * d) % p
        phi_map = ModuleMap(cs.middle, ct.middle, phi, check=False)
        comps.append(phi_map)
        x = linalg.solve(ct.inflation.matrix, phi @ cs.inflation.matrix % p, p)
        if x is None:
            raise LiftingFault(f"no syzygy map in degree {i + 1}")
        kappa = ModuleMap(cs.left, ct.left, x, check=False)
        syz.append(kappa)
    return ChainMap(mu, r_src, r_tgt, comps, syz)


def homotopy_between(phi: ChainMap, psi: ChainMap) -> list[ModuleMap] | None:
    """Maps ``s_i: P_i -> Q_{i+1}`` with ``phi_i - psi_i = d s_i + s_{i-1} d``.

    Solved jointly for the degrees where both lifts and ``Q_{i+1}`` are
    available; ``s_{-1} = 0``.
    """
    src, tgt = phi.source, phi.target
    n = min(len(phi.components), len(psi.components), tgt.length - 1)
    if n <= 0:
        return []
    p = phi.mu.p
    bases = [hom_basis(src.term(i), tgt.term(i + 1)) for i in range(n)]
    offs = np.cumsum([0] + [len(b) for b in bases])
    rows, rhs = [], []
    for i in range(n):
        pi_dim, qi_dim = src.term(i).dim, tgt.term(i).dim
        block = linalg.zeros(pi_dim * qi_dim, int(offs[-1]))
        dq = tgt.differential(i + 1).matrix
        for j, h in enumerate(bases[i]):
            block[:, offs[i] + j] = (dq @ h.matrix % p).reshape(-1)
        if i >= 1:
            dp = src.differential(i).matrix
            for j, h in enumerate(bases[i - 1]):
                block[:, offs[i - 1] + j] = (h.matrix @ dp % p).reshape(-1)
        rows.append(block % p)
        diff = (phi.components[i].matrix - psi.components[i].matrix) % p
        rhs.append(diff.reshape(-1, 1))
    a = np.concatenate(rows, axis=0)
    b = np.concatenate(rhs, axis=0)
    x = linalg.solve(a, b, p)
    if x is None:
        return None
    out = []
    for i in range(n):
        mat = linalg.zeros(tgt.term(i + 1).dim, src.term(i).dim)
        for j, h in enumerate(bases[i]):
            mat = (mat + int(x[offs[i] + j, 0]) * h.matrix) % p
        out.append(ModuleMap(src.term(i), tgt.term(i + 1), mat, check=False))
    return out


def compose_chain_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g f`` over ``g.mu f.mu``, on the degrees both carry."""
    if f.target is not g.source and f.target.base != g.source.base:
        raise ValueError("chain maps do not compose")
    comps = [a @ b for a, b in zip(g.components, f.components)]
    syz = [a @ b for a, b in zip(g.syzygy_maps, f.syzygy_maps)]
    return ChainMap(g.mu @ f.mu, f.source, g.target, comps, syz)


def identity_chain_map(res: XiResolution) -> ChainMap:
    comps = [identity_map(res.term(i)) for i in range(res.length)]
    syz = [identity_map(res.syzygy(i)) for i in range(res.length + 1)]
    return ChainMap(identity_map(res.base), res, res, comps, syz)


def zero_chain_map(r_src: XiResolution, r_tgt: XiResolution) -> ChainMap:
    n = min(r_src.length, r_tgt.length)
    comps = [zero_map(r_src.term(i), r_tgt.term(i)) for i in range(n)]
    syz = [zero_map(r_src.syzygy(i), r_tgt.syzygy(i)) for i in range(n + 1)]
    return ChainMap(zero_map(r_src.base, r_tgt.base), r_src, r_tgt, comps, syz)


# --- the injective side ---------------------------------------------------------------


def is_self_injective(alg) -> bool:
    """Every indecomposable projective is injective."""
    from .propclass import is_projective

    return all(is_projective(dual(projective(alg, v))) for v in range(alg.vertices))


def hom_to_regular(m: Module) -> tuple[Module, list[np.ndarray]]:
    """``Hom_A(m, A)`` as a left module over the opposite algebra.

    The vertex-v part is ``Hom_A(m, A e_v)``; the opposite arrow of ``a: s -> t``
    acts by right multiplication with ``a``, sending ``Hom(m, A e_t)`` to
    ``Hom(m, A e_s)``.  Also returns, per basis vector, the matrix of the map
    ``m -> A e_v`` it stands for.
    """
    alg = m.algebra
    op = opposite_algebra(alg)
    p = alg.p
    idx = [[i for i, b in enumerate(alg.basis) if b.source == v] for v in range(alg.vertices)]
    grading, maps, owner = [], [], []
    for v in range(alg.vertices):
        for h in hom_basis(m, projective(alg, v)):
            grading.append(v)
            maps.append(h.matrix)
            owner.append(v)
    dim = len(maps)
    arrows = {}
    for a in alg.arrows:
        x = linalg.zeros(dim, dim)
        ai = alg.arrow_index(a.name)
        if ai is not None and dim:
            # right multiplication by a as a map A e_t -> A e_s
            rmul = alg.right_mult_matrix(ai)[np.ix_(idx[a.source], idx[a.target])]
            tgt_cols = [j for j in range(dim) if owner[j] == a.source]
            stack = np.stack([maps[j].reshape(-1) for j in tgt_cols], axis=1) if tgt_cols \
                else linalg.zeros(0, 0)
            for j in range(dim):
                if owner[j] != a.target:
                    continue
                img = rmul @ maps[j] % p
                if not np.any(img):
                    continue
                coeff = linalg.solve(stack, img.reshape(-1, 1), p)
                x[tgt_cols, j] = coeff[:, 0]
        arrows[a.name] = x
    return Module(op, grading, arrows, check=False), maps


@dataclass
class XiCoresolution:
    """Conflations ``C_j -> I_j -> C_{j+1}`` with ``C_0`` the base module."""

    base: Module
    steps: list[Conflation]

    @property
    def length(self) -> int:
        return len(self.steps)

    def term(self, j: int) -> Module:
        return self.steps[j].middle

    def cosyzygy(self, j: int) -> Module:
        if j == 0:
            return self.base
        return self.steps[j - 1].right

    def coaugmentation(self) -> ModuleMap:
        return self.steps[0].inflation

    def differential(self, j: int) -> ModuleMap:
        """``I_j -> I_{j+1}``."""
        return self.steps[j + 1].inflation @ self.steps[j].deflation


def auslander_reiten_translate(x: Module) -> Module:
    """``D Tr x`` computed from a minimal projective presentation."""
    from .modcat import cokernel, kernel, projective_cover

    p0 = projective_cover(x)
    _, k_inc = kernel(p0)
    k = k_inc.source
    p1_cov = projective_cover(k)
    d1 = k_inc @ p1_cov  # P1 -> P0
    star0, maps0 = hom_to_regular(d1.target)
    star1, maps1 = hom_to_regular(d1.source)
    p = x.p
    # precomposition with d1: Hom(P0, A) -> Hom(P1, A)
    mat = linalg.zeros(star1.dim, star0.dim)
    by_vertex = {}
    for j, v in enumerate(star1.grading):
        by_vertex.setdefault(int(v), []).append(j)
    for j, v in enumerate(star0.grading):
        img = maps0[j] @ d1.matrix % p
        if not np.any(img):
            continue
        cols = by_vertex.get(int(v), [])
        stack = np.stack([maps1[c].reshape(-1) for c in cols], axis=1)
        coeff = linalg.solve(stack, img.reshape(-1, 1), p)
        mat[cols, j] = coeff[:, 0]
    tr, _ = cokernel(ModuleMap(star0, star1, mat, check=False))
    return dual(tr)


def _envelope(xi: ProperClass, m: Module) -> Conflation:
    """Conflation ``m -> I -> C`` in xi with I injective for xi."""
    dual_cover = xi_cover(ProperClass.all(opposite_algebra(m.algebra)), dual(m))
    c = dual_conflation(dual_cover)
    if xi.is_all or m.dim == 0:
        return c
    pieces, rows = [c.middle], [c.inflation.matrix]
    for y in _relative_injectives(xi):
        for h in hom_basis(m, y):
            pieces.append(y)
            rows.append(h.matrix)
    total, _, _ = direct_sum(*pieces)
    infl = ModuleMap(m, total, np.concatenate(rows, axis=0), check=False)
    out = conflation_from_injection(infl)
    if not xi.contains(out):
        raise LiftingFault("relative injective envelope is not in the class")
    return out


_TAU_CACHE: dict[str, list[Module]] = {}


def _relative_injectives(xi: ProperClass) -> list[Module]:
    hit = _TAU_CACHE.get(xi.key)
    if hit is None:
        hit = [t for t in (auslander_reiten_translate(x) for x in xi.relative) if t.dim]
        _TAU_CACHE[xi.key] = hit
    return hit


def build_coresolution(m: Module, length: int, xi: ProperClass | None = None) -> XiCoresolution:
    """Injective coresolution of m for xi.

    For the full class this is the dual of a projective resolution of ``D m``
    over the opposite algebra.  Relative classes are supported on
    self-injective algebras only, with injectives ``D A`` plus ``D Tr X``.
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    if xi is not None and not xi.is_all and not is_self_injective(m.algebra):
        raise UnsupportedInstance(
            "injective coresolutions for a relative class need a self-injective algebra")
    xi = xi or ProperClass.all(m.algebra)
    steps = []
    cur = m
    for _ in range(length):
        c = _envelope(xi, cur)
        steps.append(c)
        cur = c.right
    return XiCoresolution(m, steps)


def cosyzygy(m: Module, k: int) -> Module:
    if not is_self_injective(m.algebra):
        raise UnsupportedInstance("cosyzygies are only provided over self-injective algebras")
    return build_coresolution(m, k).cosyzygy(k)


__all__ = [
    "ChainMap",
    "DEFAULT_WINDOW",
    "LiftingFault",
    "UnsupportedInstance",
    "XiCoresolution",
    "XiResolution",
    "auslander_reiten_translate",
    "build_coresolution",
    "build_resolution",
    "clear_memo",
    "compose_chain_maps",
    "cosyzygy",
    "hom_to_regular",
    "homotopy_between",
    "identity_chain_map",
    "is_self_injective",
    "lift_morphism",
    "xi_pd",
    "zero_chain_map",
]
