import itertools
import re

import numpy as np
import pytest
from hypothesis import strategies as st

from kcorelayout.generators import barabasi_albert
from kcorelayout.graph import Graph


def clique_edges(vertices):
    return list(itertools.combinations(vertices, 2))


def complete_graph(n):
    return Graph.from_edges(n, clique_edges(range(n)))


def two_k5():
    return Graph.from_edges(10, clique_edges(range(5)) + clique_edges(range(5, 10)))


def barbell_k5():
    """Two K5s joined through the path 4 - 10 - 11 - 5."""
    edges = clique_edges(range(5)) + clique_edges(range(5, 10)) + [(4, 10), (10, 11), (11, 5)]
    return Graph.from_edges(12, edges)


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def star_of_stars(branches=10, leaves=150):
    """Hub 0 wired to ``branches`` sub-hubs, each carrying ``leaves`` leaves."""
    edges = []
    nxt = branches + 1
    for b in range(1, branches + 1):
        edges.append((0, b))
        for _ in range(leaves):
            edges.append((b, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def corpus():
    """Named graphs shared by invariant and acceptance tests."""
    rng = np.random.default_rng(2024)
    graphs = {
        "k4": complete_graph(4),
        "two_k5": two_k5(),
        "barbell_k5": barbell_k5(),
        "cycle_pendant": Graph.from_edges(7, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6)]),
        "two_triangles": Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]),
        "star_of_stars": star_of_stars(4, 20),
        "ba_500": barabasi_albert(500, 2, seed=3),
    }
    for i in range(4):
        n = 60
        mask = np.triu(rng.random((n, n)) < 0.08 + 0.04 * i, 1)
        graphs[f"gnp_{i}"] = Graph.from_edges(n, np.argwhere(mask))
    return graphs


@st.composite
def small_graphs(draw, max_n=50):
    n = draw(st.integers(0, max_n))
    if n < 2:
        return Graph.from_edges(n, np.zeros((0, 2), dtype=np.int64))
    pairs = list(itertools.combinations(range(n), 2))
    p = draw(st.floats(0.0, 0.6))
    seed = draw(st.integers(0, 2**32 - 1))
    keep = np.random.default_rng(seed).random(len(pairs)) < p
    return Graph.from_edges(n, np.asarray(pairs)[keep].reshape(-1, 2))


@pytest.fixture(scope="session")
def graph_corpus():
    return corpus()


# one PASS/FAIL line per acceptance criterion, shown after the run
_criteria: dict[int, bool] = {}
_titles: dict[int, str] = {}
_CRITERION = re.compile(r"::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if match is None:
        return
    if report.when == "call" or report.outcome == "failed":
        k = int(match.group(1))
        _titles[k] = match.group(2).replace("_", " ")
        _criteria[k] = _criteria.get(k, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        status = "PASS" if _criteria[k] else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {k:2d}: {_titles[k]}")
