import pytest

from rigidquot.classification import cyclic_six, minimal_group
from rigidquot.groups import admissible_groups


@pytest.fixture(scope="session")
def G21():
    return minimal_group(3)


@pytest.fixture(scope="session")
def G20():
    return minimal_group(4)


@pytest.fixture(scope="session")
def G18():
    return minimal_group(6)


@pytest.fixture(scope="session")
def Z6():
    return cyclic_six()


@pytest.fixture(scope="session")
def small_groups():
    """Every admissible A x| Z_d of order at most 24."""
    return admissible_groups(24)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
