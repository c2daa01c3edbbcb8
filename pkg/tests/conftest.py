from __future__ import annotations

from functools import lru_cache

import networkx as nx
import pytest

from lapsum.graph import Graph, graph_from_edges


def from_nx(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(h.nodes())}
    return graph_from_edges(h.number_of_nodes(), [(mapping[u], mapping[v]) for u, v in h.edges()])


@lru_cache(maxsize=None)
def atlas_graphs(max_n: int = 7) -> tuple[Graph, ...]:
    """One graph per isomorphism class with 1..max_n vertices (1252 classes for max_n = 7)."""
    return tuple(from_nx(h) for h in nx.graph_atlas_g() if 1 <= h.number_of_nodes() <= max_n)


@pytest.fixture(scope="session")
def atlas7() -> tuple[Graph, ...]:
    return atlas_graphs(7)


@pytest.fixture(scope="session")
def atlas6() -> tuple[Graph, ...]:
    return tuple(g for g in atlas_graphs(7) if g.n <= 6)


# one line per acceptance criterion in the terminal summary
_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = dict(report.user_properties).get("detail", "")
        _ACCEPTANCE[name] = (report.outcome.upper(), detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        outcome, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{outcome:<7} {name}  {detail}")
