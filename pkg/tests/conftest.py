import pytest

from irssim import default_scenario, validate


@pytest.fixture(scope="session")
def conv28():
    return validate(default_scenario("conventional", 28))


@pytest.fixture(scope="session")
def irs28():
    return validate(default_scenario("irs", 28))
