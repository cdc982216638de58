import random

import pytest
from hypothesis import given, settings, strategies as st

from pathwidth2 import DomainError, ParseError
from pathwidth2.graph_core import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph
from pathwidth2.oracle import exact_pathwidth, verify_decomposition
from pathwidth2.structure import generate, random_track
from pathwidth2.track import (Chord, TrackObstruction, TrackReason, TrackRepresentation, all_readings,
                              corner_placement, degenerate_side_placement, enumerate_representations,
                              format_representation, has_corner, has_degenerate, has_opposite,
                              opposite_corners_placement, parse_representation, recognize_track,
                              representation_problems, track_decomposition)


def _with_chords(n, chords):
    return Graph.from_edges(n, list(cycle_graph(n).edges) + list(chords))


def test_cycle_is_track_split_in_two_arcs():
    rep = recognize_track(cycle_graph(6))
    assert isinstance(rep, TrackRepresentation)
    assert not representation_problems(rep, cycle_graph(6))
    assert abs(rep.k - rep.l) == 0


def test_k23_representation():
    g = complete_bipartite(2, 3)
    rep = recognize_track(g)
    assert rep.P == (0,) and rep.Q == (1,)
    assert [c.middle for c in rep.chords] == [2, 3, 4] and all(c.is_long for c in rep.chords)
    assert not representation_problems(rep, g)


def test_k4_is_not_a_track():
    obs = recognize_track(complete_graph(4))
    assert isinstance(obs, TrackObstruction)
    assert obs.reason in (TrackReason.THREE_LEG_BRIDGE, TrackReason.CROSSING_BRIDGES)
    assert exact_pathwidth(obs.witness)[0] >= 3


def test_nine_cycle_with_three_ears():
    g = _with_chords(9, [(0, 2), (3, 5), (6, 8)])
    obs = recognize_track(g)
    assert isinstance(obs, TrackObstruction) and obs.reason == TrackReason.NONLINEAR_CHORD_ORDER
    assert not list(enumerate_representations(g))
    assert exact_pathwidth(g)[0] == 3


def test_not_two_connected():
    obs = recognize_track(path_graph(4))
    assert obs.reason == TrackReason.NOT_2_CONNECTED


def test_single_edge_track():
    rep = recognize_track(path_graph(2))
    assert rep.P == (0,) and rep.Q == (1,)
    assert track_decomposition(rep).bags == (frozenset({0, 1}),)


def test_c4_decomposition():
    rep = recognize_track(cycle_graph(4))
    d = track_decomposition(rep)
    assert len(d) == 2 and d.width == 2
    assert verify_decomposition(cycle_graph(4), d, 2).ok


def test_k23_decomposition():
    d = track_decomposition(recognize_track(complete_bipartite(2, 3)))
    assert set(d.bags) == {frozenset({0, 1, x}) for x in (2, 3, 4)}


def test_invalid_representation_rejected():
    crossing = TrackRepresentation((0, 1), (2, 3), (Chord(1, 1, "short"), Chord(1, 2, "short"),
                                                    Chord(2, 1, "short"), Chord(2, 2, "short")))
    with pytest.raises(DomainError):
        track_decomposition(crossing)


def test_representation_text_roundtrip():
    rep = recognize_track(complete_bipartite(2, 3))
    assert parse_representation(format_representation(rep)) == rep
    with pytest.raises(ParseError):
        parse_representation("P: 0\nQ: 1\nC: 1 1 sideways\n")


def test_corner_placement_examples():
    for r in range(4):
        rep = corner_placement(cycle_graph(4), r)
        assert rep is not None and rep.P[0] == r
    assert corner_placement(complete_bipartite(2, 3), 2).P[0] == 2
    assert corner_placement(_with_chords(8, [(1, 3), (4, 6)]), 0) is None


def test_opposite_corner_examples():
    rep = opposite_corners_placement(cycle_graph(6), 0, 3)
    assert rep.P[0] == 0 and rep.Q[-1] == 3
    rep = opposite_corners_placement(cycle_graph(6), 0, 1)
    assert rep.P[0] == 0 and 1 in (rep.P[-1], rep.Q[-1])
    g = _with_chords(6, [(0, 2), (3, 5)])
    rep = opposite_corners_placement(g, 1, 4)
    assert rep is not None and not representation_problems(rep, g)


def test_degenerate_side_examples():
    fan = _with_chords(5, [(0, 2), (0, 3)])
    assert degenerate_side_placement(fan, 0).P == (0,)
    assert degenerate_side_placement(_with_chords(6, [(1, 4)]), 0) is None
    for r in range(3):
        assert degenerate_side_placement(cycle_graph(3), r).P == (r,)


def test_placement_requires_track():
    with pytest.raises(DomainError):
        corner_placement(complete_graph(4), 0)


def test_enumeration_examples():
    tri = list(enumerate_representations(cycle_graph(3)))
    assert tri and {t.P[0] for t in all_readings(tri)} == {0, 1, 2}
    assert list(enumerate_representations(path_graph(3))) == []
    c4 = list(all_readings(enumerate_representations(cycle_graph(4))))
    # every rotation and reflection of the square appears as a reading
    for r in range(4):
        for nxt in ((r + 1) % 4, (r + 3) % 4):
            assert any(t.P[0] == r and t.Q[0] == nxt for t in c4)


def test_enumeration_outputs_are_valid_and_unique():
    for seed in range(30):
        g = generate("track", 3 + seed % 6, seed)
        reps = list(enumerate_representations(g))
        assert reps and len({r.key() for r in reps}) == len(reps)
        for rep in reps:
            assert not representation_problems(rep, g)
            assert rep == rep.normalized()


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 14), st.integers(0, 10_000))
def test_random_tracks_sweep_to_width_two(n, seed):
    rep = random_track(n, random.Random(seed))
    g = Graph.from_edges(n, rep.edges())
    assert not representation_problems(rep, g)
    assert verify_decomposition(g, track_decomposition(rep), 2).ok
    found = recognize_track(g)
    assert isinstance(found, TrackRepresentation) and not representation_problems(found, g)


def test_placements_agree_with_predicates():
    for seed in range(20):
        g = generate("track", 3 + seed % 5, seed)
        readings = list(all_readings(enumerate_representations(g)))
        for r in range(g.n):
            assert (corner_placement(g, r) is not None) == any(has_corner(t, r) for t in readings)
            assert (degenerate_side_placement(g, r) is not None) == any(has_degenerate(t, r) for t in readings)
            r2 = (r + 1) % g.n
            assert (opposite_corners_placement(g, r, r2) is not None) == any(has_opposite(t, r, r2) for t in readings)
