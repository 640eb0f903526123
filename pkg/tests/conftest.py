import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corange.generators import paper_fixture  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def p2():
    return paper_fixture("example_p2")


@pytest.fixture
def p3():
    return paper_fixture("example_p3")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, passed, detail)``."""

    def record(number, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
