import pytest

from hopfcalc import QQ, group_algebra_c2, sweedler4
from hopfcalc.pipeline import Setup


@pytest.fixture(scope="session")
def h4():
    return sweedler4()


@pytest.fixture(scope="session")
def c2():
    return group_algebra_c2()


@pytest.fixture(scope="session")
def setup():
    """The worked double and everything built from it, shared by the slow tests."""
    return Setup(QQ)


@pytest.fixture(scope="session")
def double(setup):
    return setup.D, setup.b


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
