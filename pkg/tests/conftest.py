import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from level2net.random_nets import random_level2_network  # noqa: E402
from level2net.restriction import trinets  # noqa: E402


def corpus(count=200, start=0):
    """Seeded level-2 networks with 3 to 12 leaves."""
    return [random_level2_network(3 + seed % 10, seed) for seed in range(start, start + count)]


@pytest.fixture(scope="session")
def networks():
    return corpus()


@pytest.fixture(scope="session")
def corpus_trinets(networks):
    return [trinets(n) for n in networks]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
