import itertools

import pytest
from hypothesis import strategies as st

from zerograph.graph import Arc, Edge, OrientedGraph, UndirectedGraph, double


def oriented(n, pairs, ids=None):
    names = tuple(str(i) for i in range(1, n + 1))
    ids = ids or [f"e{k + 1}" for k in range(len(pairs))]
    return OrientedGraph(names, tuple(Arc(i, str(t), str(h)) for i, (t, h) in zip(ids, pairs)))


def undirected(n, pairs, ids=None, bipartition=None):
    names = tuple(str(i) for i in range(1, n + 1))
    ids = ids or [f"e{k + 1}" for k in range(len(pairs))]
    return UndirectedGraph(
        names, tuple(Edge(i, (str(x), str(y))) for i, (x, y) in zip(ids, pairs)), bipartition
    )


@pytest.fixture
def triangle():
    return oriented(3, [(1, 2), (2, 3), (3, 1)], ["a", "b", "c"])


@pytest.fixture
def p3():
    return undirected(3, [(1, 2), (2, 3)], ["a", "b"])


@pytest.fixture
def doubled_p3(p3):
    return double(p3).graph


@pytest.fixture
def doubled_edge():
    g = undirected(2, [(1, 2)], ["a"], (("1",), ("2",)))
    return double(g).graph


@pytest.fixture
def single_arc():
    return oriented(2, [(1, 2)], ["a"])


@st.composite
def oriented_graphs(draw, max_vertices=5, max_arcs=7):
    n = draw(st.integers(2, max_vertices))
    pairs = [(t, h) for t in range(1, n + 1) for h in range(1, n + 1) if t != h]
    arcs = draw(st.lists(st.sampled_from(pairs), max_size=max_arcs))
    return oriented(n, arcs)


@st.composite
def simple_graphs(draw, max_vertices=6, max_edges=7):
    n = draw(st.integers(1, max_vertices))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    if not pairs:
        return undirected(n, [])
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(max_edges, len(pairs))))
    return undirected(n, chosen)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get(
        "tests.test_acceptance"
    )
    lines = getattr(mod, "ACCEPTANCE", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 11):
        missing = f"[----] criterion {n:2d}: not run or errored before reporting"
        terminalreporter.write_line(lines.get(n, missing))
