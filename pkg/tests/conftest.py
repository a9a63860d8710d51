import pytest

from ellipk.series import default_kernel
from oracles import ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def kernel():
    """Build (or load) the default series kernel once per test session."""
    return default_kernel()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
