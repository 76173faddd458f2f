import pytest

from twoalg import FiniteAlgebra, from_ideal
from twoalg.corpus import dual_numbers, precrossed_specimen, zero_crossed_module


@pytest.fixture
def Z2():
    return FiniteAlgebra.scalars(2)


@pytest.fixture
def Z4():
    return FiniteAlgebra.scalars(4)


@pytest.fixture
def D():
    """Z/2[x]/(x^2) on the basis (1, x)."""
    return dual_numbers(2)


@pytest.fixture
def ideal_xmod(D):
    return from_ideal(D, [[0, 1]])


@pytest.fixture
def specimen():
    return precrossed_specimen()


@pytest.fixture
def zero_over_dual(D):
    return zero_crossed_module(D)
