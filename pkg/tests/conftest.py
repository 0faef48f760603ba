import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from xihom.instance import catalog_names, load_catalog
from xihom.modcat import cokernel, direct_sum, kernel, random_map

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "xihom", deadline=None, max_examples=30, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("xihom")

_CACHE = {}


def inst(name):
    if name not in _CACHE:
        _CACHE[name] = load_catalog(name)
    return _CACHE[name]


ALL_NAMES = catalog_names()
PLAIN_NAMES = [n for n in ALL_NAMES if not n.endswith("_rel_k")]


@pytest.fixture
def dnum():
    return inst("dual_numbers")


@pytest.fixture
def f3():
    return inst("f3_x3")


@pytest.fixture
def a2():
    return inst("a2")


@pytest.fixture
def a3():
    return inst("a3")


def random_module(name: str, seed: int, max_dim: int = 6):
    """A kernel or cokernel of a random map between small sums of catalog modules."""
    rng = np.random.default_rng(seed)
    mods = list(inst(name).modules.values())
    for _ in range(20):
        src = [mods[i] for i in rng.integers(len(mods), size=int(rng.integers(1, 3)))]
        tgt = [mods[i] for i in rng.integers(len(mods), size=int(rng.integers(1, 3)))]
        x, _, _ = direct_sum(*src)
        y, _, _ = direct_sum(*tgt)
        f = random_map(x, y, rng)
        m = cokernel(f)[0] if rng.integers(2) else kernel(f)[0]
        if 0 < m.dim <= max_dim:
            return m
    return mods[0]
