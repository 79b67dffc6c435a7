import pytest

from multikit.polynomials import parse_poly
from multikit.quotients import make_quotient
from multikit.structures import builtin


@pytest.fixture(scope="session")
def h3():
    return builtin("h3")


@pytest.fixture(scope="session")
def h3q():
    H3 = builtin("h3")
    return make_quotient(H3, parse_poly("X^2+2", H3))


def names(S, mask):
    return set(S.names_of(mask))
