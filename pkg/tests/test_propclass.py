import numpy as np
import pytest
from conftest import PLAIN_NAMES, inst, random_module
from hypothesis import given
from hypothesis import strategies as st

from xihom.modcat import conflation_from_surjection, is_split, projective_cover, split_conflation
from xihom.propclass import (
    AXIOMS,
    ProperClass,
    SmallMiddleFixture,
    SplitZeroLeftFixture,
    audit_axioms,
    sampled_deflation_sections,
    xi_cover,
    xi_projective,
)


@pytest.fixture
def classes(dnum):
    alg, k = dnum.algebra, dnum.module("k")
    return ProperClass.all(alg), ProperClass.relative_to(alg, [k], "rel(k)")


def test_split_conflations_belong_to_every_class(dnum, classes):
    c = split_conflation(dnum.module("k"), dnum.module("A"))
    assert all(xi.contains(c) for xi in classes)


def test_socle_sequence_is_not_relative(dnum, classes):
    xall, xrel = classes
    c = conflation_from_surjection(projective_cover(dnum.module("k")))
    assert xall.contains(c)
    assert not xrel.contains(c)


def test_projectivity_examples(dnum, classes):
    xall, xrel = classes
    k, a = dnum.module("k"), dnum.module("A")
    assert xi_projective(xall, a) and xi_projective(xrel, a)
    assert not xi_projective(xall, k)
    assert xi_projective(xrel, k)


def test_cover_examples(dnum, classes):
    xall, xrel = classes
    k = dnum.module("k")
    c = xi_cover(xall, k)
    assert c.middle == dnum.module("A") and c.left.dim == 1
    r = xi_cover(xrel, k)
    assert r.middle.dim == 3 and xrel.contains(r)
    assert is_split(r)


def test_relative_class_needs_modules(dnum):
    with pytest.raises(ValueError):
        ProperClass.relative_to(dnum.algebra, [])


@pytest.mark.parametrize("name", ["dual_numbers", "f3_x3"])
def test_proper_classes_pass_the_audit(name):
    i = inst(name)
    mods = list(i.modules.values())
    for xi in (ProperClass.all(i.algebra), ProperClass.relative_to(i.algebra, [i.module("k")])):
        rep = audit_axioms(xi, 60, 7, mods)
        assert rep.total_violations == 0, rep.violation_counts()
        assert all(rep.checks[a] > 0 for a in AXIOMS)


def test_split_zero_left_fixture_is_caught(dnum):
    rep = audit_axioms(SplitZeroLeftFixture(dnum.algebra), 50, 0, list(dnum.modules.values()))
    counts = rep.violation_counts()
    assert counts["delta0"] > 0 and counts["cobase_change"] > 0
    assert rep.to_dict()["examples"]["delta0"]


def test_small_middle_fixture_breaks_coproducts(dnum):
    # k -> A -> k has a two-dimensional middle, its square does not
    rep = audit_axioms(SmallMiddleFixture(dnum.algebra), 80, 0, list(dnum.modules.values()))
    assert rep.violation_counts()["coproduct"] > 0


def test_audit_is_reproducible(f3):
    xi = ProperClass.relative_to(f3.algebra, [f3.module("k")])
    a = audit_axioms(xi, 20, 3, list(f3.modules.values())).to_dict()
    b = audit_axioms(xi, 20, 3, list(f3.modules.values())).to_dict()
    assert a == b


def test_audit_rejects_zero_trials(dnum):
    with pytest.raises(ValueError):
        audit_axioms(ProperClass.all(dnum.algebra), 0, 0)


def _classes(name):
    i = inst(name)
    out = [ProperClass.all(i.algebra)]
    if "k" in i.modules:
        out.append(ProperClass.relative_to(i.algebra, [i.module("k")]))
    return out


names = st.sampled_from(PLAIN_NAMES)
seeds = st.integers(0, 2**32 - 1)


@given(names, seeds, st.booleans())
def test_cover_is_a_member_with_projective_middle(name, seed, relative):
    xis = _classes(name)
    xi = xis[-1] if relative else xis[0]
    m = random_module(name, seed)
    c = xi_cover(xi, m)
    assert xi.contains(c)
    assert xi_projective(xi, c.middle)
    assert c.right == m


@given(names, seeds)
def test_all_membership_is_exactness(name, seed):
    m = random_module(name, seed)
    c = conflation_from_surjection(projective_cover(m))
    assert ProperClass.all(m.algebra).contains(c) == c.is_exact()


@given(names, seeds, st.booleans())
def test_projectives_split_sampled_deflations(name, seed, relative):
    xis = _classes(name)
    xi = xis[-1] if relative else xis[0]
    i = inst(name)
    rng = np.random.default_rng(seed)
    others = [random_module(name, int(s)) for s in rng.integers(0, 2**31, size=3)]
    for m in list(i.modules.values()) + others[:1]:
        if xi_projective(xi, m):
            assert sampled_deflation_sections(xi, m, others, rng, samples=3)
