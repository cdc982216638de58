import itertools

import pytest
from hypothesis import given, settings, strategies as st

from pathwidth2 import CapacityError, DomainError, ParseError
from pathwidth2.graph_core import (Graph, canonical_code, complete_graph, components, contract_edge, cycle_graph,
                                   delete_vertices, edge_subgraph, format_graph, parse_graph, path_graph, subgraph)

from conftest import atlas


def test_parse_triangle():
    g = parse_graph("3 3\n0 1\n1 2\n2 0")
    assert g.n == 3 and g.edges == ((0, 1), (0, 2), (1, 2))


def test_parse_single_vertex():
    g = parse_graph("1 0\n")
    assert g.n == 1 and g.m == 0


def test_parse_double_edge():
    g = parse_graph("2 2 multi\n0 1\n0 1")
    assert g.allow_parallel and g.edges == ((0, 1), (0, 1))


def test_parse_comments_and_crlf():
    g = parse_graph("# header next\r\n2 1\r\n# edge\r\n0 1\r\n")
    assert g.edges == ((0, 1),)


@pytest.mark.parametrize("text, line", [
    ("", None),
    ("2\n", 1),
    ("2 1\n0 5\n", 2),
    ("2 1\n1 1\n", 2),
    ("2 2\n0 1\n", 1),
    ("2 2\n0 1\n0 1\n", 1),
    ("2 1\n0 x\n", 2),
    ("3 1\n0 1 2\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_format_roundtrip():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 1)], allow_parallel=True)
    assert parse_graph(format_graph(g)) == g


def test_graph_rejects_loops_and_range():
    with pytest.raises(DomainError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(DomainError):
        Graph.from_edges(2, [(0, 2)])


def test_contract_triangle_simple():
    g = contract_edge(cycle_graph(3), (0, 1))
    assert g.n == 2 and g.edges == ((0, 1),)


def test_contract_triangle_multi():
    tri = Graph(3, cycle_graph(3).edges, allow_parallel=True)
    g = contract_edge(tri, (0, 1))
    assert g.edges == ((0, 1), (0, 1))


def test_contract_c4_gives_triangle():
    g = contract_edge(cycle_graph(4), (1, 2))
    assert canonical_code(g) == canonical_code(cycle_graph(3))


def test_contract_missing_edge():
    with pytest.raises(DomainError):
        contract_edge(path_graph(3), (0, 2))


def test_subgraph_examples():
    tri, labels = subgraph(complete_graph(4), [0, 2, 3])
    assert tri.m == 3 and labels == [0, 2, 3]
    one, labels = edge_subgraph(complete_graph(4), [(1, 3)])
    assert one.n == 2 and one.m == 1 and labels == [1, 3]
    empty, _ = delete_vertices(complete_graph(4), range(4))
    assert empty.n == 0 and empty.m == 0


def test_components_examples():
    assert components(cycle_graph(3)) == [[0, 1, 2]]
    assert components(Graph.from_edges(4, [(0, 1), (2, 3)])) == [[0, 1], [2, 3]]
    assert components(Graph(0)) == []


def test_canonical_code_relabel_and_distinct():
    assert canonical_code(Graph.from_edges(3, [(0, 1), (1, 2)])) == canonical_code(Graph.from_edges(3, [(2, 0), (0, 1)]))
    assert canonical_code(path_graph(3)) != canonical_code(cycle_graph(3))


def _isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    target = set(b.edges)
    for perm in itertools.permutations(range(a.n)):
        if {tuple(sorted((perm[u], perm[v]))) for u, v in a.edges} == target:
            return True
    return False


def test_eleven_graphs_on_four_vertices():
    graphs = list(atlas(4, 4))
    assert len(graphs) == 11
    assert len({canonical_code(g) for g in graphs}) == 11
    # independent oracle: brute-force isomorphism over all 4! maps
    for a, b in itertools.combinations(graphs, 2):
        assert not _isomorphic(a, b)


def test_canonical_code_separates_atlas_seven():
    graphs = list(atlas(7, 7))
    assert len({canonical_code(g) for g in graphs}) == len(graphs)


def test_canonical_code_capacity():
    with pytest.raises(CapacityError):
        canonical_code(path_graph(17))


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, edges)


@settings(max_examples=150, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_canonical_code_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_code(g.relabel(perm)) == canonical_code(g)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_contraction_drops_one_vertex(g):
    for e in g.edges[:3]:
        h = contract_edge(g, e)
        assert h.n == g.n - 1 and h.m <= g.m - 1
