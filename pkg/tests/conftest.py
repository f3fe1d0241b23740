import functools

import networkx as nx
import pytest
from hypothesis import settings

from collinear.dual import dualize
from collinear.generators import corpus

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE = {}


def record(number: int, name: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (name, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {name}" + (f": {detail}" if detail else ""))


@functools.lru_cache(maxsize=None)
def _corpus():
    return tuple((name, T, dualize(T)) for name, T in corpus())


@pytest.fixture(scope="session")
def full_corpus():
    return _corpus()


def nx_graph(D):
    G = nx.Graph()
    G.add_nodes_from(range(D.n_vertices))
    G.add_edges_from(D.edge_list)
    return G


def primal_status(T, crossed):
    """Reference classification from the primal side: a vertex is touched when
    some incident edge is crossed; crossed edges around it form runs in its
    rotation, one run (not all edges) meaning caressed."""
    out = []
    for v in range(T.n):
        marks = [T.edge_id(v, w) in crossed for w in T.neighbors(v)]
        if not any(marks):
            out.append("untouched")
        elif all(marks):
            out.append("pinched")
        else:
            runs = sum(1 for i in range(len(marks)) if marks[i] and not marks[i - 1])
            out.append("caressed" if runs == 1 else "pinched")
    return out
