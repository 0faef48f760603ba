"""Finite-dimensional algebras ``kQ/I`` given by a quiver with admissible relations.

Paths are written in traversal order: ``Path(s, t, ("a", "b"))`` first follows
arrow ``a`` and then ``b``.  The product ``x * y`` in the algebra means
"first ``y``, then ``x``" (composition order), so that a representation of
the quiver is the same thing as a left module: ``(x * y) . m = x . (y . m)``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg


class PresentationError(ValueError):
    """Raised when a quiver presentation is malformed or not admissible."""


class Arrow(NamedTuple):
    source: int
    target: int
    name: str


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(self.arrows)


@dataclass(frozen=True)
class QuiverPresentation:
    p: int
    vertices: int
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[tuple[int, tuple[str, ...]], ...], ...] = ()
    nilpotency_bound: int = 2

    @classmethod
    def build(cls, p, vertices, arrows, relations=(), nilpotency_bound=2):
        arrows = tuple(Arrow(int(s), int(t), str(n)) for s, t, n in arrows)
        rels = tuple(
            tuple((int(c) % int(p), tuple(path)) for c, path in rel) for rel in relations
        )
        return cls(int(p), int(vertices), arrows, rels, int(nilpotency_bound))

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise PresentationError(f"unknown arrow {name!r}")

    def path(self, names) -> Path:
        names = tuple(names)
        if not names:
            raise PresentationError("empty arrow sequence does not name a path")
        arrs = [self.arrow(n) for n in names]
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise PresentationError(f"arrows {x.name} and {y.name} do not compose")
        return Path(arrs[0].source, arrs[-1].target, names)

    def opposite(self) -> "QuiverPresentation":
        arrows = tuple(Arrow(a.target, a.source, a.name) for a in self.arrows)
        rels = tuple(tuple((c, tuple(reversed(path))) for c, path in rel) for rel in self.relations)
        return QuiverPresentation(self.p, self.vertices, arrows, rels, self.nilpotency_bound)

    def validate(self) -> None:
        linalg.check_prime(self.p)
        if self.vertices < 1:
            raise PresentationError("quiver needs at least one vertex")
        if self.nilpotency_bound < 1:
            raise PresentationError("nilpotency bound must be >= 1")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("arrow names must be unique")
        for a in self.arrows:
            if not (0 <= a.source < self.vertices and 0 <= a.target < self.vertices):
                raise PresentationError(f"arrow {a.name} has an endpoint outside the quiver")
        for k, rel in enumerate(self.relations):
            if not rel:
                raise PresentationError(f"relation {k} is empty")
            ends = set()
            for c, names_ in rel:
                path = self.path(names_)
                if path.length < 2:
                    raise PresentationError(
                        f"relation {k} is not admissible: term {path.label()} has length < 2"
                    )
                ends.add((path.source, path.target))
            if len(ends) != 1:
                raise PresentationError(f"relation {k} combines non-parallel paths")


def _enumerate_paths(pres: QuiverPresentation, max_len: int) -> list[Path]:
    paths = [Path(v, v, ()) for v in range(pres.vertices)]
    frontier = [Path(a.source, a.target, (a.name,)) for a in pres.arrows]
    length = 1
    while frontier and length <= max_len:
        paths.extend(frontier)
        nxt = []
        for path in frontier:
            for a in pres.arrows:
                if a.source == path.target:
                    nxt.append(Path(path.source, a.target, path.arrows + (a.name,)))
        frontier = nxt
        length += 1
    return paths


class Algebra:
    """An algebra ``kQ/I`` with an explicit path basis and structure constants.

    Attributes:
        presentation: the quiver presentation it was built from.
        basis: basis paths; the first ``vertices`` entries are the trivial paths.
        mult: array ``c[a, b, c]`` with ``basis[a] * basis[b] = sum_c c[a,b,c] basis[c]``.
    """

    def __init__(self, presentation: QuiverPresentation, basis: list[Path], mult: np.ndarray):
        self.presentation = presentation
        self.p = presentation.p
        self.basis = list(basis)
        self.mult = mult
        self.dim = len(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.vertex_idempotents = [self.index[Path(v, v, ())] for v in range(self.vertices)]
        self.key = _algebra_key(self)

    @property
    def vertices(self) -> int:
        return self.presentation.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.presentation.arrows

    def arrow_index(self, name: str) -> int | None:
        a = self.presentation.arrow(name)
        return self.index.get(Path(a.source, a.target, (name,)))

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two elements given as coordinate vectors."""
        return np.einsum("a,b,abc->c", x, y, self.mult) % self.p

    def unit(self) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[self.vertex_idempotents] = 1
        return e

    def left_mult_matrix(self, a: int) -> np.ndarray:
        """Matrix of ``y -> basis[a] * y`` in the basis (columns indexed by y)."""
        return self.mult[a].T.copy()

    def right_mult_matrix(self, a: int) -> np.ndarray:
        """Matrix of ``y -> y * basis[a]``."""
        return self.mult[:, a, :].T.copy()

    def opposite(self) -> "Algebra":
        """The opposite algebra on the same basis set with reversed paths."""
        basis = [Path(b.target, b.source, tuple(reversed(b.arrows))) for b in self.basis]
        mult = np.transpose(self.mult, (1, 0, 2)).copy()
        return Algebra(self.presentation.opposite(), basis, mult)

    def check_associative(self) -> None:
        p, c = self.p, self.mult
        # (ab)c and a(bc) for all basis triples at once
        left = np.einsum("abx,xcy->abcy", c, c) % p
        right = np.einsum("bcx,axy->abcy", c, c) % p
        if not np.array_equal(left, right):
            bad = np.argwhere(np.any(left != right, axis=3))[0]
            labels = [self.basis[i].label() for i in bad]
            raise PresentationError(f"multiplication not associative on {labels}")
        e = self.unit()
        eye = linalg.identity(self.dim)
        if not (np.array_equal(np.einsum("a,abc->bc", e, c) % p, eye)
                and np.array_equal(np.einsum("b,abc->ac", e, c) % p, eye)):
            raise PresentationError("sum of vertex idempotents is not a two-sided unit")

    def is_commutative(self) -> bool:
        return np.array_equal(self.mult, np.transpose(self.mult, (1, 0, 2)))

    def __repr__(self) -> str:
        return f"Algebra(p={self.p}, vertices={self.vertices}, dim={self.dim})"


def _algebra_key(alg: Algebra) -> str:
    h = hashlib.sha1()
    h.update(repr((alg.p, alg.vertices, alg.presentation.arrows, alg.basis)).encode())
    h.update(alg.mult.tobytes())
    return h.hexdigest()[:16]


def enumerate_basis(pres: QuiverPresentation) -> Algebra:
    """Build the path basis and multiplication table of ``kQ/I``.

    Paths of length >= N are treated as zero, where N is the nilpotency bound.
    The ideal is spanned degree-wise by ``u r v`` for relations ``r`` and paths
    ``u, v``; its RREF (longest paths as leading terms) leaves the shorter
    normal paths as the basis.

    Raises:
        PresentationError: non-admissible relations, or some path of length N
            is not a consequence of the relations (N too small).
    """
    pres.validate()
    p, N = pres.p, pres.nilpotency_bound
    paths = _enumerate_paths(pres, N)
    # column order: longest paths first so that leading terms are long paths
    order = sorted(range(len(paths)), key=lambda i: (-paths[i].length, i))
    paths = [paths[i] for i in order]
    col = {path: i for i, path in enumerate(paths)}
    by_end: dict[tuple[int, int], list[Path]] = {}
    for path in paths:
        by_end.setdefault((path.source, path.target), []).append(path)

    rows = []
    for rel in pres.relations:
        terms = [(c, pres.path(names)) for c, names in rel]
        s, t = terms[0][1].source, terms[0][1].target
        shortest = min(path.length for _, path in terms)
        before = [q for q in paths if q.target == s]
        after = [q for q in paths if q.source == t]
        for v in before:
            for u in after:
                if v.length + u.length + shortest > N:
                    continue
                vec = np.zeros(len(paths), dtype=np.int64)
                for c, path in terms:
                    full = v.arrows + path.arrows + u.arrows
                    if len(full) <= N:
                        vec[col[Path(v.source, u.target, full)]] += c
                if np.any(vec % p):
                    rows.append(vec % p)
    ideal = np.array(rows, dtype=np.int64).reshape(len(rows), len(paths))
    red, pivots = linalg.row_space(ideal, p)
    pivot_set = set(pivots)
    for path in paths:
        if path.length == N and col[path] not in pivot_set:
            raise PresentationError(
                f"path {path.label()} of length {N} is not in the relation ideal; "
                f"nilpotency bound {N} is too small"
            )

    basis_cols = sorted(
        (i for i in range(len(paths)) if i not in pivot_set and paths[i].length < N),
        key=lambda i: (paths[i].length, _vertex_first(paths[i]), i),
    )
    basis = [paths[i] for i in basis_cols]

    def normal_form(vec: np.ndarray) -> np.ndarray:
        v = vec % p
        for r, c in enumerate(pivots):
            if v[c]:
                v = (v - v[c] * red[r]) % p
        return np.array([v[c] for c in basis_cols], dtype=np.int64)

    d = len(basis)
    mult = np.zeros((d, d, d), dtype=np.int64)
    for a, x in enumerate(basis):
        for b, y in enumerate(basis):
            # x * y = first y then x
            if y.target != x.source:
                continue
            full = y.arrows + x.arrows
            if len(full) > N:
                continue
            vec = np.zeros(len(paths), dtype=np.int64)
            vec[col[Path(y.source, x.target, full)]] = 1
            mult[a, b] = normal_form(vec)
    alg = Algebra(pres, basis, mult)
    alg.check_associative()
    return alg


def _vertex_first(path: Path) -> tuple[int, int]:
    return (path.source, path.target)


def path_algebra_A(n: int, p: int = 2) -> QuiverPresentation:
    """Linear quiver ``0 -> 1 -> ... -> n-1`` with no relations."""
    names = [chr(ord("a") + i) for i in range(n - 1)]
    arrows = [(i, i + 1, names[i]) for i in range(n - 1)]
    return QuiverPresentation.build(p, n, arrows, (), max(n, 1))


def truncated_polynomial(p: int, k: int) -> QuiverPresentation:
    """``F_p[x]/(x^k)`` as one loop with relation ``x^k``."""
    rel = [[(1, ("x",) * k)]] if k >= 2 else []
    if k < 2:
        raise PresentationError("need k >= 2 for an admissible presentation")
    return QuiverPresentation.build(p, 1, [(0, 0, "x")], rel, k)
