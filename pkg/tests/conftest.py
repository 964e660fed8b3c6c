import pytest

from qpbw.rootdata import root_datum


@pytest.fixture(scope="session")
def A1():
    return root_datum("A1")


@pytest.fixture(scope="session")
def A2():
    return root_datum("A2")


@pytest.fixture(scope="session")
def B2():
    return root_datum("B2")


@pytest.fixture(scope="session")
def G2():
    return root_datum("G2")


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion (if the acceptance suite ran)."""
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
