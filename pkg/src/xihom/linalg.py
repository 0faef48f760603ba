"""Exact dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays whose entries are kept in
``[0, p)``.  Every routine is deterministic: pivots are chosen as the first
nonzero entry scanning columns left to right, so the bases produced
downstream (kernels, submodules, quotients) are reproducible bit for bit.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not (2 <= p <= MAX_PRIME) or not is_prime(p):
        raise ValueError(f"modulus must be a prime in [2, 2^16], got {p}")
    return p


def as_matrix(m, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``m`` to an int64 matrix reduced mod ``p``."""
    a = np.array(m, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    elif a.ndim != 2:
        if a.size == 0:
            a = a.reshape(0, 0)
        else:
            raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(*ms: np.ndarray, p: int) -> np.ndarray:
    """Product of the given matrices, reduced mod p after each step."""
    out = ms[0] % p
    for m in ms[1:]:
        out = (out @ m) % p
    return out


def _eliminate(a: np.ndarray, p: int, ncols: int) -> tuple[np.ndarray, list[int]]:
    """Reduce ``a`` in place to RREF, pivoting only in the first ``ncols`` columns."""
    rows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = (a[r] * pow(lead, -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int], np.ndarray]:
    """Reduced row echelon form with the recorded row operations.

    Returns ``(reduced, pivot_cols, transform)`` with
    ``reduced == transform @ m (mod p)`` and ``transform`` invertible.
    """
    m = np.asarray(m, dtype=np.int64) % p
    rows, cols = m.shape
    aug = np.concatenate([m, identity(rows)], axis=1)
    aug, pivots = _eliminate(aug, p, cols)
    return aug[:, :cols].copy(), pivots, aug[:, cols:].copy()


def rank(m: np.ndarray, p: int) -> int:
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return 0
    # eliminate over the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    _, pivots = _eliminate(m % p, p, m.shape[1])
    return len(pivots)


def row_space(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the RREF of ``m`` and their pivot columns."""
    m = np.asarray(m, dtype=np.int64) % p
    red, pivots = _eliminate(m.copy(), p, m.shape[1])
    return red[: len(pivots)], pivots


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning ``{x : m x = 0}``, one per free column in increasing order."""
    m = np.asarray(m, dtype=np.int64) % p
    cols = m.shape[1]
    red, pivots = row_space(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    k = zeros(cols, len(free))
    for j, f in enumerate(free):
        k[f, j] = 1
        for r, c in enumerate(pivots):
            k[c, j] = (-red[r, f]) % p
    return k


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """A solution ``x`` of ``a x = b`` with free variables set to zero, or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: a has {a.shape[0]} rows, b has {b.shape[0]}")
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    aug, pivots = _eliminate(aug, p, n)
    r = len(pivots)
    if np.any(aug[r:, n:]):
        return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(pivots):
        x[c] = aug[i, n:]
    return x


def inverse(m: np.ndarray, p: int) -> np.ndarray | None:
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        return None
    red, pivots, t = rref(m, p)
    if len(pivots) != n:
        return None
    return t


def complement_columns(span: np.ndarray, candidates: np.ndarray, p: int) -> list[int]:
    """Indices of ``candidates`` columns that greedily extend the column span of ``span``."""
    chosen: list[int] = []
    current = np.asarray(span, dtype=np.int64) % p
    r = rank(current, p) if current.size else 0
    for j in range(candidates.shape[1]):
        trial = np.concatenate([current, candidates[:, j : j + 1]], axis=1)
        rr = rank(trial, p)
        if rr > r:
            chosen.append(j)
            current, r = trial, rr
    return chosen


def column_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``m`` at the pivot positions of its RREF (a basis of the image)."""
    m = np.asarray(m, dtype=np.int64) % p
    if m.shape[1] == 0:
        return m
    _, pivots = row_space(m, p)
    return m[:, pivots]
