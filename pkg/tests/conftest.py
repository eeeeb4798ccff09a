import numpy as np
import pytest

from regseed.graph import ColoredGraph, validate_graph

B, W = 0, 1


def four_vertex_graph() -> ColoredGraph:
    """Parts {a, b} and {x, y}; every edge black except b-y."""
    g = ColoredGraph([2, 2], [[0, 0], [0, 0]], {(0, 1): [[B, B], [B, W]]}, [1, 1], {(0, 1): 2}, (1, 2))
    validate_graph(g)
    return g


@pytest.fixture
def four():
    return four_vertex_graph()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
