import hypothesis
import pytest

from tests.helpers import ACCEPTANCE_LINES, matchex, triangex

hypothesis.settings.register_profile(
    "repro", deadline=None, derandomize=True, print_blob=True,
    suppress_health_check=[hypothesis.HealthCheck.too_slow])
hypothesis.settings.load_profile("repro")

def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def matchex4():
    return matchex(4)


@pytest.fixture
def matchex6():
    return matchex(6)


@pytest.fixture
def triangex6():
    return triangex(2)
