"""Finite-dimensional left modules over a quiver algebra and their short exact sequences.

Every module carries a vertex grading: basis vector ``j`` lies in ``e_v M``
for ``v = grading[j]``.  Arrow ``a: s -> t`` acts by a ``dim x dim`` matrix
mapping the ``s`` block into the ``t`` block; a module map is a matrix acting
on column vectors that commutes with every arrow and respects the grading.

Extensions are never materialized as groups.  An element of Ext(C, A) is a
:class:`Conflation` representative, and two representatives are compared by
:func:`baer_equivalent`.
"""

from __future__ import annotations

import hashlib
import itertools
import threading
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import Algebra


class ModuleError(ValueError):
    """A module, map or conflation violates its defining invariants."""


class AlgebraMismatch(ModuleError):
    pass


_OPPOSITES: dict[str, Algebra] = {}
_OPP_LOCK = threading.Lock()


def opposite_algebra(alg: Algebra) -> Algebra:
    """Cached opposite so that ``opposite_algebra(opposite_algebra(A)) is A``."""
    with _OPP_LOCK:
        op = _OPPOSITES.get(alg.key)
        if op is None:
            op = alg.opposite()
            _OPPOSITES[alg.key] = op
            _OPPOSITES.setdefault(op.key, alg)
        return op


class Module:
    """A graded representation of the quiver satisfying the algebra relations."""

    def __init__(self, algebra: Algebra, grading, arrows: dict | None = None,
                 name: str | None = None, check: bool = True):
        self.algebra = algebra
        self.p = algebra.p
        self.grading = np.asarray(grading, dtype=np.int64).reshape(-1)
        self.dim = int(self.grading.size)
        arrows = arrows or {}
        self.arrows = {}
        for a in algebra.arrows:
            m = arrows.get(a.name)
            if m is None:
                m = linalg.zeros(self.dim, self.dim)
            self.arrows[a.name] = linalg.as_matrix(m, self.p, (self.dim, self.dim))
        self.name = name
        self._key = None
        self._blocks = [np.flatnonzero(self.grading == v) for v in range(algebra.vertices)]
        if check:
            self.validate(set(arrows) - set(self.arrows))

    @property
    def key(self) -> str:
        if self._key is None:
            h = hashlib.sha1(self.algebra.key.encode())
            h.update(self.grading.tobytes())
            for a in self.algebra.arrows:
                h.update(self.arrows[a.name].tobytes())
            self._key = h.hexdigest()
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Module) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"Module({label}dimvec={self.dimension_vector()})"

    def block(self, v: int) -> np.ndarray:
        """Basis indices of ``e_v M``."""
        return self._blocks[v]

    def dimension_vector(self) -> list[int]:
        return [int(b.size) for b in self._blocks]

    def vertex_block(self, v: int) -> np.ndarray:
        """The idempotent projection onto ``e_v M`` as a matrix."""
        e = linalg.zeros(self.dim, self.dim)
        e[self._blocks[v], self._blocks[v]] = 1
        return e

    def path_action(self, arrows) -> np.ndarray:
        out = linalg.identity(self.dim)
        for name in arrows:
            out = (self.arrows[name] @ out) % self.p
        return out

    def action(self, b: int) -> np.ndarray:
        """Matrix of the algebra basis element ``b``."""
        path = self.algebra.basis[b]
        return (self.path_action(path.arrows) @ self.vertex_block(path.source)) % self.p

    def radical_basis(self) -> np.ndarray:
        """Columns spanning ``rad M``, the sum of the arrow images."""
        if not self.arrows:
            return linalg.zeros(self.dim, 0)
        span = np.concatenate(list(self.arrows.values()), axis=1)
        return linalg.column_basis(span, self.p)

    def validate(self, unknown=()) -> None:
        alg, p = self.algebra, self.p
        if unknown:
            raise ModuleError(f"unknown arrows {sorted(unknown)}")
        if self.dim and (self.grading.min() < 0 or self.grading.max() >= alg.vertices):
            raise ModuleError("grading refers to a vertex outside the quiver")
        for a in alg.arrows:
            m = self.arrows[a.name]
            mask = np.ones_like(m, dtype=bool)
            mask[np.ix_(self._blocks[a.target], self._blocks[a.source])] = False
            if np.any(m[mask]):
                raise ModuleError(f"arrow {a.name} does not map vertex {a.source} into {a.target}")
        for k, rel in enumerate(alg.presentation.relations):
            total = linalg.zeros(self.dim, self.dim)
            for c, path in rel:
                total = (total + c * self.path_action(path)) % p
            if np.any(total):
                raise ModuleError(f"relation {k} does not act as zero")
        # J^N M = 0
        sub = linalg.identity(self.dim)
        for _ in range(alg.presentation.nilpotency_bound):
            if sub.shape[1] == 0:
                break
            sub = linalg.column_basis(
                np.concatenate([self.arrows[a.name] @ sub % p for a in alg.arrows], axis=1)
                if alg.arrows else linalg.zeros(self.dim, 0), p)
        if sub.shape[1]:
            raise ModuleError("paths of length >= nilpotency bound do not act as zero")


@dataclass(eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.source.algebra.key != self.target.algebra.key:
            raise AlgebraMismatch("source and target live over different algebras")
        p = self.source.p
        self.matrix = linalg.as_matrix(self.matrix, p, (self.target.dim, self.source.dim))
        if self.check:
            self.validate()

    @property
    def p(self) -> int:
        return self.source.p

    def validate(self) -> None:
        m, s, t, p = self.matrix, self.source, self.target, self.p
        if np.any(m[self.target.grading[:, None] != self.source.grading[None, :]]):
            raise ModuleError("map does not respect the vertex grading")
        for name, x in s.arrows.items():
            if not np.array_equal(m @ x % p, t.arrows[name] @ m % p):
                raise ModuleError(f"map does not commute with arrow {name}")

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target != self.source:
            raise ModuleError("maps are not composable")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix % self.p, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, (self.matrix + other.matrix) % self.p, check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, (self.matrix - other.matrix) % self.p, check=False)

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, (c * self.matrix) % self.p, check=False)

    def rank(self) -> int:
        return linalg.rank(self.matrix, self.p)

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()


def identity_map(m: Module) -> ModuleMap:
    return ModuleMap(m, m, linalg.identity(m.dim), check=False)


def zero_map(m: Module, n: Module) -> ModuleMap:
    return ModuleMap(m, n, linalg.zeros(n.dim, m.dim), check=False)


@dataclass(eq=False)
class Conflation:
    """A short exact sequence ``A -> B -> C`` (inflation, deflation)."""

    inflation: ModuleMap
    deflation: ModuleMap
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.check:
            self.validate()

    @property
    def left(self) -> Module:
        return self.inflation.source

    @property
    def middle(self) -> Module:
        return self.inflation.target

    @property
    def right(self) -> Module:
        return self.deflation.target

    def validate(self) -> None:
        i, q = self.inflation, self.deflation
        if i.target != q.source:
            raise ModuleError("inflation and deflation do not compose")
        if np.any(q.matrix @ i.matrix % i.p):
            raise ModuleError("deflation does not kill the image of the inflation")
        if not i.is_injective():
            raise ModuleError("inflation is not injective")
        if not q.is_surjective():
            raise ModuleError("deflation is not surjective")
        if i.source.dim + q.target.dim != i.target.dim:
            raise ModuleError("image of inflation differs from kernel of deflation")

    def is_exact(self) -> bool:
        try:
            self.validate()
        except ModuleError:
            return False
        return True


# --- constructions of modules ---------------------------------------------------


def zero_module(alg: Algebra) -> Module:
    return Module(alg, [], name="0", check=False)


def simple(alg: Algebra, v: int) -> Module:
    return Module(alg, [v], name=f"S{v}", check=False)


def projective(alg: Algebra, v: int) -> Module:
    """The indecomposable projective ``A e_v`` with basis the paths starting at ``v``."""
    idx = [i for i, b in enumerate(alg.basis) if b.source == v]
    grading = [alg.basis[i].target for i in idx]
    arrows = {}
    for a in alg.arrows:
        j = alg.arrow_index(a.name)
        if j is None:
            continue
        left = alg.left_mult_matrix(j)
        arrows[a.name] = left[np.ix_(idx, idx)]
    return Module(alg, grading, arrows, name=f"P{v}", check=False)


def injective(alg: Algebra, v: int) -> Module:
    """The indecomposable injective ``D(e_v A)``."""
    m = dual(projective(opposite_algebra(alg), v))
    m.name = f"I{v}"
    return m


def regular(alg: Algebra) -> Module:
    m, _, _ = direct_sum(*(projective(alg, v) for v in range(alg.vertices)))
    m.name = "A"
    return m


def direct_sum(*mods: Module) -> tuple[Module, list[ModuleMap], list[ModuleMap]]:
    """Direct sum with its canonical injections and projections."""
    if not mods:
        raise ModuleError("direct sum of no modules needs an algebra; use zero_module")
    alg = mods[0].algebra
    for m in mods:
        if m.algebra.key != alg.key:
            raise AlgebraMismatch("direct sum over different algebras")
    grading = np.concatenate([m.grading for m in mods]) if mods else []
    dim = sum(m.dim for m in mods)
    arrows = {}
    for a in alg.arrows:
        x = linalg.zeros(dim, dim)
        off = 0
        for m in mods:
            x[off : off + m.dim, off : off + m.dim] = m.arrows[a.name]
            off += m.dim
        arrows[a.name] = x
    total = Module(alg, grading, arrows, check=False)
    inj, proj = [], []
    off = 0
    for m in mods:
        e = linalg.zeros(dim, m.dim)
        e[off : off + m.dim] = linalg.identity(m.dim)
        inj.append(ModuleMap(m, total, e, check=False))
        proj.append(ModuleMap(total, m, e.T.copy(), check=False))
        off += m.dim
    return total, inj, proj


def power(m: Module, k: int) -> Module:
    if k == 0:
        return zero_module(m.algebra)
    return direct_sum(*([m] * k))[0]


def block_matrix(rows: list[list[np.ndarray | None]], row_dims, col_dims) -> np.ndarray:
    out = linalg.zeros(sum(row_dims), sum(col_dims))
    r0 = 0
    for i, row in enumerate(rows):
        c0 = 0
        for j, blk in enumerate(row):
            if blk is not None:
                out[r0 : r0 + row_dims[i], c0 : c0 + col_dims[j]] = blk
            c0 += col_dims[j]
        r0 += row_dims[i]
    return out


def block_map(source: Module, target: Module, rows, row_dims, col_dims, check=False) -> ModuleMap:
    return ModuleMap(source, target, block_matrix(rows, row_dims, col_dims), check=check)


# --- Hom spaces ---------------------------------------------------------------------

_HOM_CACHE: dict[tuple[str, str], np.ndarray] = {}
_HOM_LOCK = threading.Lock()


def _hom_stack(m: Module, n: Module) -> np.ndarray:
    """Basis of Hom(m, n) as an array of shape (r, n.dim, m.dim)."""
    if m.algebra.key != n.algebra.key:
        raise AlgebraMismatch("Hom between modules over different algebras")
    key = (m.key, n.key)
    with _HOM_LOCK:
        hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    alg, p = m.algebra, m.p
    offsets, shapes = [], []
    nvars = 0
    for v in range(alg.vertices):
        shape = (n.block(v).size, m.block(v).size)
        offsets.append(nvars)
        shapes.append(shape)
        nvars += shape[0] * shape[1]
    eqs = []
    for a in alg.arrows:
        s, t = a.source, a.target
        x = m.arrows[a.name][np.ix_(m.block(t), m.block(s))]
        y = n.arrows[a.name][np.ix_(n.block(t), n.block(s))]
        nt, ms = shapes[t][0], shapes[s][1]
        if nt * ms == 0:
            continue
        row = linalg.zeros(nt * ms, nvars)
        if shapes[t][0] * shapes[t][1]:
            row[:, offsets[t] : offsets[t] + shapes[t][0] * shapes[t][1]] += np.kron(
                linalg.identity(nt), x.T)
        if shapes[s][0] * shapes[s][1]:
            row[:, offsets[s] : offsets[s] + shapes[s][0] * shapes[s][1]] -= np.kron(
                y, linalg.identity(ms))
        eqs.append(row % p)
    e = np.concatenate(eqs, axis=0) if eqs else linalg.zeros(0, nvars)
    ker = linalg.kernel_basis(e, p)
    stack = np.zeros((ker.shape[1], n.dim, m.dim), dtype=np.int64)
    for j in range(ker.shape[1]):
        for v in range(alg.vertices):
            r, c = shapes[v]
            if r * c:
                blk = ker[offsets[v] : offsets[v] + r * c, j].reshape(r, c)
                stack[j][np.ix_(n.block(v), m.block(v))] = blk
    with _HOM_LOCK:
        _HOM_CACHE[key] = stack
    return stack


def hom_dim(m: Module, n: Module) -> int:
    return _hom_stack(m, n).shape[0]


def hom_basis(m: Module, n: Module) -> list[ModuleMap]:
    """Basis of Hom_A(m, n), ordered by the free variables of the intertwining system."""
    return [ModuleMap(m, n, h, check=False) for h in _hom_stack(m, n)]


def clear_caches() -> None:
    with _HOM_LOCK:
        _HOM_CACHE.clear()


def solve_hom(source: Module, target: Module, constraints, p: int | None = None,
              homogeneous: bool = False):
    """Find F in Hom(source, target) with ``post @ F @ pre == rhs`` for each constraint.

    ``constraints`` is a list of ``(post, pre, rhs)`` with ``None`` meaning identity.
    Returns the ModuleMap (free coordinates zero) or None; with ``homogeneous=True``
    returns ``(solution, directions)`` where ``directions`` spans the maps that
    satisfy the homogeneous constraints.
    """
    p = source.p
    stack = _hom_stack(source, target)
    r = stack.shape[0]
    cols, rhs = [], []
    for post, pre, b in constraints:
        imgs = stack
        if pre is not None:
            imgs = np.einsum("jab,bc->jac", imgs, pre)
        if post is not None:
            imgs = np.einsum("ab,jbc->jac", post, imgs)
        b = np.asarray(b, dtype=np.int64)
        cols.append(imgs.reshape(r, b.size).T % p)
        rhs.append(b.reshape(-1, 1) % p)
    a = np.concatenate(cols, axis=0) if cols else linalg.zeros(0, r)
    b = np.concatenate(rhs, axis=0) if rhs else linalg.zeros(0, 1)
    x = linalg.solve(a, b, p)
    sol = None
    if x is not None:
        mat = np.einsum("j,jab->ab", x[:, 0], stack) % p if r else linalg.zeros(target.dim, source.dim)
        sol = ModuleMap(source, target, mat, check=False)
    if not homogeneous:
        return sol
    ker = linalg.kernel_basis(a, p)
    dirs = [np.einsum("j,jab->ab", ker[:, k], stack) % p for k in range(ker.shape[1])]
    return sol, dirs


def lift_through(t: ModuleMap, q: ModuleMap) -> ModuleMap | None:
    """A map F with ``q @ F == t`` (t: P -> C, q: Q -> C), or None."""
    return solve_hom(t.source, q.source, [(q.matrix, None, t.matrix)])


def extend_along(t: ModuleMap, i: ModuleMap) -> ModuleMap | None:
    """A map F with ``F @ i == t`` (t: K -> X, i: K -> Q), or None."""
    return solve_hom(i.target, t.target, [(None, i.matrix, t.matrix)])


# --- kernels, cokernels -------------------------------------------------------------


def _submodule(m: Module, cols: np.ndarray, name=None) -> tuple[Module, ModuleMap]:
    """Module structure on a graded, arrow-stable subspace with the given basis columns."""
    p = m.p
    k = cols.shape[1]
    grading = np.array([int(m.grading[np.flatnonzero(cols[:, j])[0]]) for j in range(k)],
                       dtype=np.int64)
    arrows = {}
    if k:
        images = np.concatenate([m.arrows[a.name] @ cols % p for a in m.algebra.arrows], axis=1) \
            if m.algebra.arrows else linalg.zeros(m.dim, 0)
        x = linalg.solve(cols, images, p)
        if x is None:
            raise ModuleError("subspace is not stable under the arrows")
        for j, a in enumerate(m.algebra.arrows):
            arrows[a.name] = x[:, j * k : (j + 1) * k]
    sub = Module(m.algebra, grading, arrows, name=name, check=False)
    return sub, ModuleMap(sub, m, cols, check=False)


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    """Kernel submodule of f and its inclusion (basis from per-vertex null spaces)."""
    m, n, p = f.source, f.target, f.p
    cols = []
    for v in range(m.algebra.vertices):
        bm, bn = m.block(v), n.block(v)
        if bm.size == 0:
            continue
        ker = linalg.kernel_basis(f.matrix[np.ix_(bn, bm)], p)
        full = linalg.zeros(m.dim, ker.shape[1])
        full[bm] = ker
        cols.append(full)
    cols = np.concatenate(cols, axis=1) if cols else linalg.zeros(m.dim, 0)
    return _submodule(m, cols)


def image(f: ModuleMap) -> tuple[Module, ModuleMap]:
    m, n, p = f.source, f.target, f.p
    cols = []
    for v in range(m.algebra.vertices):
        bm, bn = m.block(v), n.block(v)
        if bm.size == 0 or bn.size == 0:
            continue
        blk = linalg.column_basis(f.matrix[np.ix_(bn, bm)], p)
        full = linalg.zeros(n.dim, blk.shape[1])
        full[bn] = blk
        cols.append(full)
    cols = np.concatenate(cols, axis=1) if cols else linalg.zeros(n.dim, 0)
    return _submodule(n, cols)


def _quotient(n: Module, sub_cols: np.ndarray, name=None) -> tuple[Module, ModuleMap, np.ndarray]:
    """Quotient of n by the graded submodule spanned by ``sub_cols``.

    Returns the quotient, the projection, and a (linear) section matrix.
    """
    p = n.p
    keep, proj_rows = [], []
    for v in range(n.algebra.vertices):
        bn = n.block(v)
        if bn.size == 0:
            continue
        blk = sub_cols[bn] % p
        red, pivots = linalg.row_space(blk.T, p) if blk.shape[1] else (linalg.zeros(0, bn.size), [])
        reducer = linalg.identity(bn.size)
        if pivots:
            sel = linalg.zeros(len(pivots), bn.size)
            sel[np.arange(len(pivots)), pivots] = 1
            reducer = (reducer - red.T @ sel) % p
        nonpiv = [c for c in range(bn.size) if c not in set(pivots)]
        for c in nonpiv:
            row = linalg.zeros(1, n.dim)
            row[0, bn] = reducer[c]
            proj_rows.append(row)
            keep.append(int(bn[c]))
    proj = np.concatenate(proj_rows, axis=0) if proj_rows else linalg.zeros(0, n.dim)
    sec = linalg.zeros(n.dim, len(keep))
    sec[keep, np.arange(len(keep))] = 1
    grading = n.grading[keep] if keep else np.zeros(0, dtype=np.int64)
    arrows = {a.name: proj @ n.arrows[a.name] @ sec % p for a in n.algebra.arrows}
    q = Module(n.algebra, grading, arrows, name=name, check=False)
    return q, ModuleMap(n, q, proj, check=False), sec


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    """Cokernel of f with the projection; complement basis by the RREF pivot rule."""
    _, inc = image(f)
    q, pi, _ = _quotient(f.target, inc.matrix)
    return q, pi


def cokernel_with_section(f: ModuleMap) -> tuple[Module, ModuleMap, np.ndarray]:
    _, inc = image(f)
    return _quotient(f.target, inc.matrix)


def conflation_from_injection(i: ModuleMap) -> Conflation:
    _, q = cokernel(i)
    return Conflation(i, q)


def conflation_from_surjection(q: ModuleMap) -> Conflation:
    _, i = kernel(q)
    return Conflation(i, q)


def split_conflation(x: Module, y: Module) -> Conflation:
    s, inj, proj = direct_sum(x, y)
    return Conflation(inj[0], proj[1])


def direct_sum_conflation(c1: Conflation, c2: Conflation) -> Conflation:
    a, _, _ = direct_sum(c1.left, c2.left)
    b, _, _ = direct_sum(c1.middle, c2.middle)
    c, _, _ = direct_sum(c1.right, c2.right)
    i = block_map(a, b, [[c1.inflation.matrix, None], [None, c2.inflation.matrix]],
                  [c1.middle.dim, c2.middle.dim], [c1.left.dim, c2.left.dim])
    q = block_map(b, c, [[c1.deflation.matrix, None], [None, c2.deflation.matrix]],
                  [c1.right.dim, c2.right.dim], [c1.middle.dim, c2.middle.dim])
    return Conflation(i, q)


# --- splitting, Baer equivalence, base and cobase change -----------------------------


def retraction(c: Conflation) -> ModuleMap | None:
    return extend_along(identity_map(c.left), c.inflation)


def section(q: ModuleMap) -> ModuleMap | None:
    """A right inverse of a surjective module map, if one exists."""
    return lift_through(identity_map(q.target), q)


def is_split(c: Conflation) -> bool:
    return retraction(c) is not None


def baer_equivalent(c1: Conflation, c2: Conflation) -> bool:
    """True iff some ``b: B1 -> B2`` gives a morphism ``(id, b, id)`` of conflations."""
    if c1.left != c2.left or c1.right != c2.right:
        return False
    b = solve_hom(c1.middle, c2.middle, [
        (None, c1.inflation.matrix, c2.inflation.matrix),
        (c2.deflation.matrix, None, c1.deflation.matrix),
    ])
    return b is not None


def pullback_conflation(c: Conflation, g: ModuleMap) -> Conflation:
    """Base change ``g^* c`` along ``g: C' -> C``: ``A -> B x_C C' -> C'``."""
    if g.target != c.right:
        raise ModuleError("base change map must land in the right end of the conflation")
    b, cp, p = c.middle, g.source, c.inflation.p
    s, _, _ = direct_sum(b, cp)
    h = block_map(s, c.right, [[c.deflation.matrix, (-g.matrix) % p]], [c.right.dim], [b.dim, cp.dim])
    k, inc = kernel(h)
    target = np.concatenate([c.inflation.matrix, linalg.zeros(cp.dim, c.left.dim)], axis=0)
    x = linalg.solve(inc.matrix, target, p)
    infl = ModuleMap(c.left, k, x, check=False)
    defl = ModuleMap(k, cp, inc.matrix[b.dim :], check=False)
    return Conflation(infl, defl)


def pushout_conflation(c: Conflation, f: ModuleMap) -> Conflation:
    """Cobase change ``f_* c`` along ``f: A -> A'``: ``A' -> A' +_A B -> C``."""
    if f.source != c.left:
        raise ModuleError("cobase change map must start at the left end of the conflation")
    ap, b, p = f.target, c.middle, f.p
    s, _, _ = direct_sum(ap, b)
    j = ModuleMap(c.left, s, np.concatenate([f.matrix, (-c.inflation.matrix) % p], axis=0),
                  check=False)
    q, pi, sec = cokernel_with_section(j)
    infl = ModuleMap(ap, q, pi.matrix[:, : ap.dim], check=False)
    d = np.concatenate([linalg.zeros(c.right.dim, ap.dim), c.deflation.matrix], axis=1)
    defl = ModuleMap(q, c.right, d @ sec % p, check=False)
    return Conflation(infl, defl)


def direct_sum_twist_conflation(c: Conflation, alpha: ModuleMap) -> Conflation:
    """For ``A -f-> B -g-> C`` and ``alpha: B -> D`` the conflation
    ``A -> D+B -> D+C`` with maps ``[-alpha f; f]`` and ``[[1, alpha], [0, g]]``."""
    if alpha.source != c.middle:
        raise ModuleError("alpha must start at the middle term")
    p = alpha.p
    d, b, cc = alpha.target, c.middle, c.right
    db, _, _ = direct_sum(d, b)
    dc, _, _ = direct_sum(d, cc)
    f, g = c.inflation.matrix, c.deflation.matrix
    infl = ModuleMap(c.left, db, np.concatenate([(-alpha.matrix @ f) % p, f], axis=0), check=False)
    defl = block_map(db, dc, [[linalg.identity(d.dim), alpha.matrix], [None, g]],
                     [d.dim, cc.dim], [d.dim, b.dim])
    return Conflation(infl, defl)


# --- duality ------------------------------------------------------------------------


def dual(m: Module) -> Module:
    """``D m = Hom_k(m, k)`` as a left module over the opposite algebra."""
    op = opposite_algebra(m.algebra)
    arrows = {name: x.T.copy() for name, x in m.arrows.items()}
    name = f"D({m.name})" if m.name else None
    return Module(op, m.grading.copy(), arrows, name=name, check=False)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(f.target), dual(f.source), f.matrix.T.copy(), check=False)


def dual_conflation(c: Conflation) -> Conflation:
    return Conflation(dual_map(c.deflation), dual_map(c.inflation), check=False)


# --- isomorphism search -------------------------------------------------------------


def find_isomorphism(m: Module, n: Module, seed: int = 0, tries: int = 64,
                     exhaustive_limit: int = 4096) -> ModuleMap | None:
    """Search Hom(m, n) for an invertible map.

    Seeded random combinations first, then exhaustive enumeration when the
    Hom space has at most ``exhaustive_limit`` elements.  A None result is
    conclusive only when the enumeration ran.
    """
    if m.dimension_vector() != n.dimension_vector():
        return None
    if m.dim == 0:
        return zero_map(m, n)
    stack = _hom_stack(m, n)
    r, p = stack.shape[0], m.p
    if r == 0:
        return None
    rng = np.random.default_rng(seed)

    def attempt(c):
        mat = np.einsum("j,jab->ab", c, stack) % p
        if linalg.rank(mat, p) == m.dim:
            return ModuleMap(m, n, mat, check=False)
        return None

    for j in range(r):
        e = np.zeros(r, dtype=np.int64)
        e[j] = 1
        hit = attempt(e)
        if hit is not None:
            return hit
    for _ in range(tries):
        hit = attempt(rng.integers(0, p, size=r))
        if hit is not None:
            return hit
    if p ** r <= exhaustive_limit:
        for c in itertools.product(range(p), repeat=r):
            hit = attempt(np.array(c, dtype=np.int64))
            if hit is not None:
                return hit
    return None


def is_isomorphic(m: Module, n: Module, seed: int = 0) -> bool:
    return find_isomorphism(m, n, seed=seed) is not None


def random_map(m: Module, n: Module, rng: np.random.Generator) -> ModuleMap:
    stack = _hom_stack(m, n)
    if stack.shape[0] == 0:
        return zero_map(m, n)
    c = rng.integers(0, m.p, size=stack.shape[0])
    return ModuleMap(m, n, np.einsum("j,jab->ab", c, stack) % m.p, check=False)


def top(m: Module) -> tuple[list[int], np.ndarray]:
    """Vertex labels and columns of elements of m lifting a basis of ``m / rad m``.

    The lifts are vertex-homogeneous and chosen greedily among standard basis
    vectors of each block, so they are reproducible.
    """
    p = m.p
    rad = m.radical_basis()
    verts, cols = [], []
    for v in range(m.algebra.vertices):
        bm = m.block(v)
        if bm.size == 0:
            continue
        radv = rad[bm] if rad.shape[1] else linalg.zeros(bm.size, 0)
        radv = linalg.column_basis(radv, p) if radv.shape[1] else radv
        chosen = linalg.complement_columns(radv, linalg.identity(bm.size), p)
        for c in chosen:
            col = linalg.zeros(m.dim, 1)
            col[bm[c], 0] = 1
            cols.append(col)
            verts.append(v)
    cols = np.concatenate(cols, axis=1) if cols else linalg.zeros(m.dim, 0)
    return verts, cols


def projective_cover(m: Module) -> ModuleMap:
    """Minimal projective cover ``P(m) -> m`` built from a basis of the top."""
    alg, p = m.algebra, m.p
    verts, cols = top(m)
    if not verts:
        return zero_map(zero_module(alg), m)
    pieces = [projective(alg, v) for v in verts]
    total, _, _ = direct_sum(*pieces)
    blocks = []
    for piece, v, j in zip(pieces, verts, range(len(verts))):
        gen = cols[:, j]
        idx = [i for i, b in enumerate(alg.basis) if b.source == v]
        blocks.append(np.stack([m.action(i) @ gen % p for i in idx], axis=1))
    mat = np.concatenate(blocks, axis=1)
    return ModuleMap(total, m, mat, check=False)
