from itertools import combinations

import hypothesis.strategies as st
import pytest

from geopos.graph import Graph

ACCEPTANCE_LINES: list[str] = []


@st.composite
def connected_graphs(draw, min_n=2, max_n=8, max_edges=18):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    edges = {(p, i) for i, p in enumerate(parents, 1)}
    pool = [e for e in combinations(range(n), 2) if e not in edges]
    room = max(0, min(max_edges - len(edges), len(pool)))
    if pool and room:
        extra = draw(st.lists(st.sampled_from(pool), max_size=room, unique=True))
        edges |= set(extra)
    return Graph(n, tuple(sorted(edges)))


@st.composite
def graph_and_edge_subset(draw, **kw):
    g = draw(connected_graphs(**kw))
    s = draw(st.sets(st.sampled_from(g.edges))) if g.edges else set()
    return g, frozenset(s)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
