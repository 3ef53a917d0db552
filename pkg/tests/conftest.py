from pathlib import Path

import pytest

from mkvc.graph import BipartiteGraph, parse_graph

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = ROOT / "corpus"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # exposes the call-phase outcome to fixtures at teardown
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


@pytest.fixture
def p4() -> BipartiteGraph:
    return parse_graph("p bkvc 2 2 3\ne 1 1\ne 2 1\ne 2 2\n")


@pytest.fixture
def star2() -> BipartiteGraph:
    return parse_graph("p bkvc 1 2 2\ne 1 1\ne 1 2\n")


@pytest.fixture
def k23() -> BipartiteGraph:
    return BipartiteGraph.from_edges(2, 3, [(a, b) for a in (1, 2) for b in (1, 2, 3)])


@pytest.fixture
def empty33() -> BipartiteGraph:
    return BipartiteGraph.from_edges(3, 3, [])
