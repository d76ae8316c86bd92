import networkx as nx
import pytest
from hypothesis import strategies as st

from superdom.graph import Graph


@st.composite
def graphs(draw, max_n=8, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def trees(draw, max_n=14):
    n = draw(st.integers(2, max_n))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    h = nx.from_prufer_sequence(seq) if n > 2 else nx.path_graph(2)
    return Graph.from_edges(n, list(h.edges()))


@pytest.fixture
def p4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS, key=lambda n: (n == 0, n)):
        res = RESULTS[number]
        terminalreporter.write_line(res.summary())
        for failure in res.failures:
            terminalreporter.write_line(f"    failed: {failure}")
