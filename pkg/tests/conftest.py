import pytest

from altcsit import sample_channel
from altcsit.schemes import construction

ACCEPTANCE_LINES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria gate")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def channel_for():
    """Channel sized for a scheme: ``channel_for(scheme, seed, batch=None)``."""
    def make(scheme, seed=0, batch=None):
        c = construction(scheme)
        return sample_channel(c.n_rx, c.n_tx, c.n_slots, seed, batch=batch)
    return make
