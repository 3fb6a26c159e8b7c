from __future__ import annotations

import pytest

from sqfpow.graphs import graph_from_edges

EXAMPLE_EDGES = [(1, 2), (2, 3), (3, 4), (3, 9), (9, 10), (10, 5), (10, 6), (10, 7), (10, 8), (10, 11)]


@pytest.fixture
def example_graph():
    """The 11-vertex tree with distant edge {10, 11} and t = 4 extra leaves."""
    return graph_from_edges(11, EXAMPLE_EDGES)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
