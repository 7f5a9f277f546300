import hypothesis
import pytest

from gradedgrowth.groups import ball
from gradedgrowth.registry import get_group
from gradedgrowth.rewriting import triangle_group

hypothesis.settings.register_profile(
    "suite", max_examples=40, deadline=None,
    suppress_health_check=[hypothesis.HealthCheck.too_slow],
)
hypothesis.settings.load_profile("suite")


@pytest.fixture(scope="session")
def t334():
    return triangle_group(4)


@pytest.fixture(scope="session")
def t335():
    return triangle_group(5)


@pytest.fixture(scope="session")
def z1():
    return get_group("z")


@pytest.fixture(scope="session")
def z2():
    return get_group("z2")


@pytest.fixture(scope="session")
def lamplighter():
    return get_group("lamplighter")


@pytest.fixture(scope="session")
def lamplighter_ball8(lamplighter):
    return ball(lamplighter, 8)
