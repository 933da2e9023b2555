import pytest

from fgl.rings import Integers, IntegersMod, PrimeField, Rationals, build_ring


@pytest.fixture
def ZZ():
    return build_ring(Integers())


@pytest.fixture
def QQ():
    return build_ring(Rationals())


def gf(p):
    return build_ring(PrimeField(p))


def zmod(m):
    return build_ring(IntegersMod(m))
