import random

import pytest

from ratrel.sampling import random_grid

ACCEPTANCE_LINES: list[str] = []


def grid_corpus(seed: int = 0, n: int = 200):
    rng = random.Random(seed)
    return [random_grid(rng, max_stem=2, max_period=4) for _ in range(n)]


@pytest.fixture(scope="session")
def corpus():
    return grid_corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
