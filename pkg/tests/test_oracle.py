import random

import pytest

from pathwidth2 import CapacityError, ParseError
from pathwidth2.graph_core import (Graph, complete_bipartite, complete_graph, cycle_graph, path_graph, star_graph,
                                   subgraph)
from pathwidth2.oracle import (MAX_ORACLE_N, PathDecomposition, exact_pathwidth, format_decomposition, has_minor,
                               is_minor_minimal_obstruction, minimize_witness, one_step_minors, parse_decomposition,
                               pathwidth_at_most, verify_decomposition)

from conftest import spider, three_claw_tree


@pytest.mark.parametrize("g, width", [
    (path_graph(5), 1),
    (complete_graph(4), 3),
    (cycle_graph(5), 2),
    (Graph(1), 0),
    (complete_bipartite(2, 3), 2),
    (complete_graph(5), 4),
    (spider(3, 2), 2),
    (Graph(0), 0),
])
def test_exact_widths(g, width):
    w, d = exact_pathwidth(g)
    assert w == width
    assert verify_decomposition(g, d, w).ok


def test_three_claw_tree_width_three():
    assert exact_pathwidth(three_claw_tree())[0] == 3


def test_disconnected_width_is_max():
    g = Graph.from_edges(7, list(complete_graph(4).edges) + [(4, 5), (5, 6)])
    assert exact_pathwidth(g)[0] == 3


def test_oracle_capacity():
    with pytest.raises(CapacityError):
        exact_pathwidth(cycle_graph(MAX_ORACLE_N + 1))


def test_verify_examples():
    p3 = path_graph(3)
    assert verify_decomposition(p3, PathDecomposition.of([{0, 1}, {1, 2}]), 1).ok
    bad = verify_decomposition(cycle_graph(3), PathDecomposition.of([{0, 1}, {1, 2}]), 2)
    assert not bad.ok and any("(0,2)" in v for v in bad.violations)
    broken = verify_decomposition(p3, PathDecomposition.of([{0, 1}, {2}, {1, 2}]), 1)
    assert not broken.ok and any("vertex 1" in v for v in broken.violations)


def test_verify_width_violation():
    rep = verify_decomposition(cycle_graph(3), PathDecomposition.of([{0, 1, 2}]), 1)
    assert not rep.ok


def test_decomposition_text_roundtrip():
    d = PathDecomposition.of([{0, 1}, {1, 2, 3}])
    assert parse_decomposition(format_decomposition(d)) == d
    with pytest.raises(ParseError):
        parse_decomposition("B: 0 x\n")


def test_minor_examples():
    assert has_minor(cycle_graph(5), cycle_graph(3)) is not None
    assert has_minor(spider(3, 3), cycle_graph(3)) is None
    emb = has_minor(complete_graph(4), complete_graph(4))
    assert emb is not None and emb.check(complete_graph(4), complete_graph(4))
    assert has_minor(cycle_graph(6), complete_graph(4)) is None


def test_rooted_minor():
    # the root of C3 must land in a branch set containing host vertex 0
    emb = has_minor(cycle_graph(5), cycle_graph(3), roots=[(0, 0)])
    assert emb is not None and 0 in emb.branch_sets[0]


def test_minimize_examples():
    k4_pendant = Graph.from_edges(5, list(complete_graph(4).edges) + [(3, 4)])
    assert minimize_witness(k4_pendant) == complete_graph(4)
    k5_min = minimize_witness(complete_graph(5))
    assert 4 <= k5_min.n <= 6 and is_minor_minimal_obstruction(k5_min)
    assert minimize_witness(complete_graph(4)) == complete_graph(4)


def test_minimality_check():
    assert is_minor_minimal_obstruction(complete_graph(4))
    assert not is_minor_minimal_obstruction(complete_graph(5))
    assert not is_minor_minimal_obstruction(cycle_graph(5))


def test_monotone_under_one_step_minors():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(2, 8)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        w = exact_pathwidth(g)[0]
        for _, _, h in one_step_minors(g):
            assert exact_pathwidth(h)[0] <= w


def test_subgraph_never_wider():
    g = complete_bipartite(3, 3)
    h, _ = subgraph(g, range(5))
    assert exact_pathwidth(h)[0] <= exact_pathwidth(g)[0]


def test_pathwidth_at_most_matches():
    for g in (star_graph(6), cycle_graph(7), complete_graph(4)):
        w = exact_pathwidth(g)[0]
        assert pathwidth_at_most(g, w) and not pathwidth_at_most(g, w - 1)
