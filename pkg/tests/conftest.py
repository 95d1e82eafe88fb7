import pytest

from unisim import scenarios
from unisim.physics import DEFAULT_PARAMS


@pytest.fixture
def p():
    return DEFAULT_PARAMS


@pytest.fixture(scope="session")
def balance():
    return scenarios.load("balance")


@pytest.fixture(scope="session")
def speed_step():
    return scenarios.load("speed_step")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
