import numpy as np
import pytest

from longwalk.generators import (
    complete_graph,
    cycle_graph,
    path_graph,
    random_connected_graph,
)
from longwalk.graph import build_graph

CORPUS_SEED = 20260501
CORPUS_SIZE = 50


def random_corpus(size=CORPUS_SIZE, seed=CORPUS_SEED, nmin=3, nmax=50):
    """Random connected graphs, n in [nmin, nmax], weights in (0, 2].

    Every third graph carries loops and every fourth parallel edges.
    """
    rng = np.random.default_rng(seed)
    out = []
    for s in range(size):
        n = int(rng.integers(nmin, nmax + 1))
        out.append(random_connected_graph(n, rng, density=float(rng.uniform(0.05, 0.5)),
                                          loops=s % 3 == 0, parallel=s % 4 == 0))
    return out


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


@pytest.fixture
def p2():
    return path_graph(2)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def bowtie():
    """Two triangles sharing vertex 2."""
    return build_graph(5, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
                           (2, 3, 1.0), (3, 4, 1.0), (2, 4, 1.0)])


FIXTURES = {
    "P2": lambda: path_graph(2),
    "P3": lambda: path_graph(3),
    "K3": lambda: complete_graph(3),
    "C5": lambda: cycle_graph(5),
    "P5": lambda: path_graph(5),
}


# -- acceptance summary ----------------------------------------------------

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        mark = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")
