import numpy as np
import pytest

from qvalues import twoqubit

ACCEPTANCE_LINES = []

R_VALUES = (0.0, 0.3, 0.6, 1.0)
ZETA_VALUES = (0.0, np.pi / 2, np.pi, 3 * np.pi / 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def psi():
    """Generalized Bell state factory ``psi(r, zeta)``."""
    return twoqubit.bell_like_state
