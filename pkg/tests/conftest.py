import numpy as np
import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def gen():
    return np.random.default_rng(20240917)


@pytest.fixture
def report():
    """Record one acceptance line: ``report(criterion, passed, detail)``."""
    def _report(criterion, passed, detail):
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  [{criterion}] {detail}")
        return passed
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
