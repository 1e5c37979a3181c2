import pytest

from endomod.fields import extension_field, prime_field, rationals
from endomod.poly import Poly
from endomod.torsion import TorsionModule


@pytest.fixture
def F2():
    return prime_field(2)


@pytest.fixture
def F3():
    return prime_field(3)


@pytest.fixture
def F5():
    return prime_field(5)


@pytest.fixture
def Q():
    return rationals()


@pytest.fixture
def F4():
    return extension_field(2, [1, 1, 1])


def mod(F, rows):
    return TorsionModule.from_ints(F, rows)


def poly(F, coeffs):
    return Poly.from_ints(F, coeffs)
