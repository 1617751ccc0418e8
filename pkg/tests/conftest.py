import pytest

from bentcodes.field import make_field

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def gf9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def gf81():
    return make_field(3, 4)


@pytest.fixture(scope="session")
def gf243():
    return make_field(3, 5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
