import random

import pytest
from hypothesis import strategies as st

from raagpl.graph import Graph
from raagpl.words import Letter

from oracles import NAMES

ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)


@st.composite
def graphs(draw, min_vertices=1, max_vertices=4):
    n = draw(st.integers(min_vertices, max_vertices))
    vs = NAMES[:n]
    pairs = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(vs, [p for p, keep in zip(pairs, mask) if keep])


def words_over(g, min_size=0, max_size=8):
    letter = st.builds(Letter, st.sampled_from(g.vertices), st.sampled_from((1, -1)))
    return st.lists(letter, min_size=min_size, max_size=max_size).map(tuple)


@st.composite
def graph_and_word(draw, max_vertices=4, max_size=8, min_size=0):
    g = draw(graphs(max_vertices=max_vertices))
    return g, draw(words_over(g, min_size, max_size))


@pytest.fixture
def rng():
    return random.Random(20261018)


@pytest.fixture
def path3():
    return Graph.path("abc")


@pytest.fixture
def free2():
    return Graph.free("ab")


@pytest.fixture
def edge_ab():
    return Graph.complete("ab")
