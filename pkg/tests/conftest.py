# tests/conftest.py
import pytest

from cremona.polymap import parse_map
from cremona.projlinear import ProjPoint, standard_point
from cremona.quadlib import named_generators
from cremona.scalar import field_from_spec


@pytest.fixture
def qq():
    return field_from_spec("q")


@pytest.fixture
def f101():
    return field_from_spec("fp:101")


@pytest.fixture
def gens(qq):
    """sigma, tau, nu1, nu2, rho1, rho2 as polynomial triples over Q."""
    return named_generators(qq)


@pytest.fixture
def parse(qq):
    return lambda text: parse_map(text, qq)


@pytest.fixture
def pt(qq):
    return lambda *coords: ProjPoint.of(coords, qq)


@pytest.fixture
def p1(qq):
    return standard_point(1, qq)


@pytest.fixture
def p2(qq):
    return standard_point(2, qq)


@pytest.fixture
def p3(qq):
    return standard_point(3, qq)
