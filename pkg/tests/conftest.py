from pathlib import Path

import pytest

from rankreach import DirectedGraph, RankContext, parse_edge_list, parse_graph_json

GRAPH_DIR = Path(__file__).resolve().parent.parent / "graphs"


def load_graph(name: str) -> DirectedGraph:
    text = (GRAPH_DIR / name).read_text()
    if name.endswith(".json"):
        return parse_graph_json(text)
    return parse_edge_list(text)


@pytest.fixture(scope="session")
def g1():
    return load_graph("g1.edges")


@pytest.fixture(scope="session")
def g2():
    return load_graph("g2.edges")


@pytest.fixture(scope="session")
def g3():
    return load_graph("g3.edges")


@pytest.fixture(scope="session")
def cycle2():
    return load_graph("two_cycle.edges")


@pytest.fixture(scope="session")
def ctx1(g1):
    return RankContext.from_graph(g1)


@pytest.fixture(scope="session")
def ctx2(g2):
    return RankContext.from_graph(g2)


@pytest.fixture(scope="session")
def ctx3(g3):
    return RankContext.from_graph(g3)


@pytest.fixture(scope="session")
def ctx_cycle(cycle2):
    return RankContext.from_graph(cycle2)
