import numpy as np
import pytest

from productldpc import build_hp, build_mscmpc, build_spc


@pytest.fixture(scope="session")
def comp5():
    return build_mscmpc(5, [3, 4])


@pytest.fixture(scope="session")
def spc3():
    return build_spc(3)


@pytest.fixture(scope="session")
def pc144(comp5):
    return build_hp(comp5, comp5)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
