import numpy as np
import pytest

from oscfock import ModePair

MODES_PHASED = ModePair(np.sqrt(3) / 2 * np.exp(1j * np.pi / 2), 0.5)
MODES_REAL = ModePair(np.sqrt(3) / 2, 0.5)


@pytest.fixture(params=[MODES_PHASED, MODES_REAL], ids=["phased", "real"])
def ref_modes(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(7)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance checks")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
