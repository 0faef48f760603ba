import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xihom.algebra import (
    Path,
    PresentationError,
    QuiverPresentation,
    enumerate_basis,
    path_algebra_A,
    truncated_polynomial,
)


def labels(alg):
    return [b.label() for b in alg.basis]


def test_dual_numbers_basis():
    alg = enumerate_basis(truncated_polynomial(2, 2))
    assert labels(alg) == ["e0", "x"] and alg.dim == 2


def test_a2_basis():
    alg = enumerate_basis(path_algebra_A(2, 2))
    assert sorted(labels(alg)) == ["a", "e0", "e1"] and alg.dim == 3


def test_f3_truncated_cubic_basis():
    alg = enumerate_basis(truncated_polynomial(3, 3))
    assert labels(alg) == ["e0", "x", "x*x"]


def test_product_order_is_composition():
    # a: 0 -> 1, b: 1 -> 2; the path "a then b" is b * a
    alg = enumerate_basis(path_algebra_A(3, 2))
    a, b = alg.arrow_index("a"), alg.arrow_index("b")
    ab = alg.index[Path(0, 2, ("a", "b"))]
    assert alg.mult[b, a, ab] == 1
    assert not alg.mult[a, b].any()


def test_commutative_relation_square():
    # two paths 0 -> 3 identified: a*c = b*d
    pres = QuiverPresentation.build(
        3, 4, [(0, 1, "a"), (0, 2, "b"), (1, 3, "c"), (2, 3, "d")],
        [[(1, ("a", "c")), (-1, ("b", "d"))]], 3)
    alg = enumerate_basis(pres)
    assert alg.dim == 4 + 4 + 1


def test_rejects_short_relation():
    pres = QuiverPresentation.build(2, 1, [(0, 0, "x")], [[(1, ("x",))]], 2)
    with pytest.raises(PresentationError, match="admissible"):
        enumerate_basis(pres)


def test_rejects_small_nilpotency_bound():
    pres = QuiverPresentation.build(2, 1, [(0, 0, "x")], [[(1, ("x", "x", "x"))]], 2)
    with pytest.raises(PresentationError, match="too small"):
        enumerate_basis(pres)


def test_rejects_non_parallel_relation():
    pres = QuiverPresentation.build(
        2, 3, [(0, 1, "a"), (1, 2, "b"), (0, 1, "c"), (1, 1, "d")],
        [[(1, ("a", "b")), (1, ("c", "d"))]], 3)
    with pytest.raises(PresentationError, match="non-parallel"):
        enumerate_basis(pres)


def test_opposite_of_dual_numbers_is_itself():
    alg = enumerate_basis(truncated_polynomial(2, 2))
    assert np.array_equal(alg.opposite().mult, alg.mult)


def test_opposite_reverses_arrow():
    op = enumerate_basis(path_algebra_A(2, 2)).opposite()
    assert [(a.source, a.target) for a in op.arrows] == [(1, 0)]
    op.check_associative()


presentations = st.one_of(
    st.builds(truncated_polynomial, st.sampled_from([2, 3, 5]), st.integers(2, 5)),
    st.builds(path_algebra_A, st.integers(1, 4), st.sampled_from([2, 3])),
)


@given(presentations)
def test_associative_with_unit(pres):
    alg = enumerate_basis(pres)
    alg.check_associative()
    e = alg.unit()
    for b in range(alg.dim):
        v = np.zeros(alg.dim, dtype=np.int64)
        v[b] = 1
        assert np.array_equal(alg.product(e, v), v) and np.array_equal(alg.product(v, e), v)


@given(presentations)
def test_opposite_is_an_involution(pres):
    alg = enumerate_basis(pres)
    op = alg.opposite()
    assert op.dim == alg.dim
    assert op.opposite().key == alg.key
