from __future__ import annotations

import pytest

from tropsi.combinatorics import WeightVector

ACCEPTANCE_LINES: list[str] = []


def all_weights(lo: int = 4, hi: int = 6) -> list[WeightVector]:
    return [WeightVector(n, m) for n in range(lo, hi + 1) for m in range(n - 1)]


@pytest.fixture
def w532() -> WeightVector:
    """Three heavy and two light marks."""
    return WeightVector(5, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
