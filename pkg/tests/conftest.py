"""
Shared fixtures: S4 at p = 2, its Sylow subgroup D8, the two fusion systems
over D8 and the pruning triple (F_D8(D8), N_F(V), N_H(V)).
"""

import pytest

from src.fusion import pruned_subsystem, realize
from src.presets import named_subgroup, symmetric
from src.rep_graphs import pruning_triple
from src.settings import load_settings, use_settings

S4_KEY = "symmetric:4"


@pytest.fixture(autouse=True)
def default_settings():
    use_settings(load_settings())
    yield
    use_settings(load_settings())


@pytest.fixture(scope="session")
def s4():
    return symmetric(4)


@pytest.fixture(scope="session")
def sub(s4):
    """Named subgroups of S4: V, V', C4, Z, D8."""
    def lookup(name):
        return named_subgroup(s4, S4_KEY, name)
    return lookup


@pytest.fixture(scope="session")
def d8(sub):
    return sub("D8")


@pytest.fixture(scope="session")
def s4_fusion(s4, d8):
    return realize(s4, d8, 2, name="S4")


@pytest.fixture(scope="session")
def d8_fusion(d8):
    return realize(d8, d8, 2, name="D8")


@pytest.fixture(scope="session")
def d8_triple(s4_fusion, d8_fusion, sub):
    return pruning_triple(d8_fusion, s4_fusion, sub("V"))


@pytest.fixture(scope="session")
def pruned(s4_fusion, sub):
    return pruned_subsystem(s4_fusion, [sub("V")])
