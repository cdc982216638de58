import networkx as nx
import pytest

from pathwidth2.graph_core import Graph


def graph_from_nx(h) -> Graph:
    index = {v: i for i, v in enumerate(h.nodes())}
    return Graph.from_edges(len(index), [(index[a], index[b]) for a, b in h.edges()])


def atlas(min_n=1, max_n=7):
    """All graphs on min_n..max_n vertices, one per isomorphism class."""
    for h in nx.graph_atlas_g():
        if min_n <= h.number_of_nodes() <= max_n:
            yield graph_from_nx(h)


def spider(legs: int, length: int) -> Graph:
    edges, n = [], 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, n))
            prev, n = n, n + 1
    return Graph.from_edges(n, edges)


def triangles_at(*hubs, base=None):
    """Triangles glued at the given hub vertices (fresh vertices elsewhere)."""
    edges = list(base.edges) if base else []
    n = base.n if base else max(hubs) + 1
    for h in hubs:
        a, b = n, n + 1
        n += 2
        edges += [(h, a), (a, b), (b, h)]
    return Graph.from_edges(n, edges)


def three_claw_tree() -> Graph:
    """Three subdivided claws with their centres joined to a new vertex."""
    edges, n = [], 1
    for _ in range(3):
        centre = n
        edges.append((0, centre))
        n += 1
        for _ in range(3):
            prev = centre
            for _ in range(2):
                edges.append((prev, n))
                prev, n = n, n + 1
    return Graph.from_edges(n, edges)


@pytest.fixture
def k4():
    from pathwidth2.graph_core import complete_graph
    return complete_graph(4)


# lines reported by the acceptance suite, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
