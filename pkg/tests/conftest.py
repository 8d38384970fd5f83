import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from bfly.constructor import construct_pair  # noqa: E402
from bfly.graph import BipartiteGraph, build_graph  # noqa: E402

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def bipartite_graphs(draw, max_left=6, max_right=6, min_edges=0, min_side=1):
    nl = draw(st.integers(min_side, max_left))
    nr = draw(st.integers(min_side, max_right))
    grid = [(u, a) for u in range(nl) for a in range(nr)]
    edges = draw(st.sets(st.sampled_from(grid), min_size=min(min_edges, len(grid))))
    return BipartiteGraph(nl, nr, frozenset(edges))


def random_graph(rng: random.Random, nl, nr, p):
    return BipartiteGraph(nl, nr, frozenset(
        (u, a) for u in range(nl) for a in range(nr) if rng.random() < p))


def k(m, n):
    return build_graph(m, n, [(u, a) for u in range(m) for a in range(n)])


@pytest.fixture(scope="session")
def pair23():
    return construct_pair(2, 3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
