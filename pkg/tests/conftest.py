import pytest
from hypothesis import HealthCheck, settings

from ratbase import AdeleContext, Base

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def b32() -> Base:
    return Base(3, 2)


@pytest.fixture(scope="session")
def ctx32() -> AdeleContext:
    return AdeleContext(Base(3, 2))


@pytest.fixture(scope="session")
def ctx53() -> AdeleContext:
    return AdeleContext(Base(5, 3))


@pytest.fixture(scope="session")
def ctx76() -> AdeleContext:
    return AdeleContext(Base(7, 6))
