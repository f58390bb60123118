import numpy as np
import pytest

from thetalab import EvalSettings, PeriodMatrix

# one line per acceptance criterion, filled in by test_acceptance.py and
# echoed after the run so the verdicts survive output capture
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def settings():
    return EvalSettings()


@pytest.fixture
def Z0():
    """A fixed generic (non-diagonal) period matrix used across the suite."""
    return PeriodMatrix(0.1 + 1.0j, 0.05 + 0.3j, -0.2 + 1.2j)


@pytest.fixture
def Zdiag():
    """A fixed diagonal period matrix (product of two elliptic curves)."""
    return PeriodMatrix(0.3 + 1.1j, 0.0, -0.1 + 0.9j)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
