import pytest

from ordcalc import config
from ordcalc.syntax import parse


@pytest.fixture(autouse=True)
def depth_one():
    """Every test starts at N=1; tests needing more use config.use_N."""
    with config.use_N(1):
        yield


@pytest.fixture
def P():
    return parse


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
