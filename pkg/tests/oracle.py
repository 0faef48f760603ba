"""Brute-force reference values computed without the package's linear algebra.

Hom spaces are counted by enumerating every vertex-respecting matrix and
testing the intertwining equations; dimensions are recovered as log_p of the
count.  Ext^1 follows from the exact sequence
0 -> Hom(M, N) -> Hom(P, N) -> Hom(K, N) -> Ext^1(M, N) -> 0
for a projective cover P -> M with kernel K, and higher Ext by dimension shift.
"""

import itertools
import math

import numpy as np

LIMIT = 3**10


def count_homs(m, n) -> int:
    p = m.p
    slots = [(i, j) for j in range(m.dim) for i in range(n.dim) if n.grading[i] == m.grading[j]]
    if p ** len(slots) > LIMIT:
        raise ValueError("too many candidate matrices for brute force")
    total = 0
    for vals in itertools.product(range(p), repeat=len(slots)):
        f = np.zeros((n.dim, m.dim), dtype=np.int64)
        for (i, j), v in zip(slots, vals):
            f[i, j] = v
        if all(np.array_equal(f @ m.arrows[a] % p, n.arrows[a] @ f % p) for a in m.arrows):
            total += 1
    return total


def hom_dim(m, n) -> int:
    c = count_homs(m, n)
    d = round(math.log(c, m.p))
    assert m.p**d == c
    return d


def ext1_dim(cover, kernel, m, n) -> int:
    """dim Ext^1(m, n) from ``0 -> kernel -> cover -> m -> 0`` with cover projective."""
    return hom_dim(kernel, n) - hom_dim(cover, n) + hom_dim(m, n)
