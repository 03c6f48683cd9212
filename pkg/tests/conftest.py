"""Shared pytest plumbing for the suite.

The acceptance tests append one verdict line per criterion to a shared log;
a terminal-summary hook prints the block at the end of the run, so a plain
`pytest -v` always ends with the ten pass/fail lines.
"""

import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Mutable list of `criterion N: PASS/FAIL (detail)` lines."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
