"""Acceptance criteria 1-8. Each test prints one ``CRITERION k: PASS|FAIL`` line.

Under pytest the lines are repeated in an "acceptance criteria" summary section.
Run alone with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import functools
import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from conftest import ACCEPTANCE_LINES, atlas  # noqa: E402

from pathwidth2.blocks import is_two_connected  # noqa: E402
from pathwidth2.cli import mine, random_connected  # noqa: E402
from pathwidth2.graph_core import (canonical_code, complete_bipartite, complete_graph, cycle_graph,  # noqa: E402
                                   is_connected, path_graph, star_graph)
from pathwidth2.oracle import (exact_pathwidth, is_minor_minimal_obstruction, one_step_minors,  # noqa: E402
                               pathwidth_at_most, verify_decomposition)
from pathwidth2.structure import generate, recognize_pw2  # noqa: E402
from pathwidth2.track import (TrackRepresentation, all_readings, corner_placement,  # noqa: E402
                              degenerate_side_placement, enumerate_representations, has_corner, has_degenerate,
                              has_opposite, opposite_corners_placement, recognize_track, representation_problems)

RANDOM_GRAPHS = 10_000
EDGE_PROBS = (0.15, 0.25, 0.4)


def report(number: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)


def criterion_1():
    start = time.perf_counter()
    cases = [(path_graph(n), 1) for n in range(2, 11)]
    cases += [(star_graph(n), 1) for n in range(1, 9)]
    cases += [(cycle_graph(n), 2) for n in range(3, 11)]
    cases += [(complete_graph(4), 3), (complete_bipartite(2, 3), 2)]
    wrong = [g for g, w in cases if exact_pathwidth(g)[0] != w]
    elapsed = time.perf_counter() - start
    return not wrong and elapsed < 1.0, f"{len(cases)} graphs, {len(wrong)} wrong, {elapsed:.2f}s"


def criterion_2():
    start = time.perf_counter()
    seen, mismatches = set(), 0
    for g in atlas(3, 7):
        if not is_two_connected(g):
            continue
        code = canonical_code(g)
        if code in seen:
            continue
        seen.add(code)
        if isinstance(recognize_track(g), TrackRepresentation) != pathwidth_at_most(g, 2):
            mismatches += 1
    elapsed = time.perf_counter() - start
    return mismatches == 0 and elapsed <= 600, f"{len(seen)} graphs, {mismatches} mismatches, {elapsed:.1f}s"


def criterion_3_instances():
    for g in atlas(1, 7):
        if is_connected(g):
            yield g
    rng = random.Random(20240611)
    for i in range(RANDOM_GRAPHS):
        yield random_connected(rng, rng.randint(1, 12), EDGE_PROBS[i % len(EDGE_PROBS)])


@functools.lru_cache(maxsize=1)
def criterion_3_run():
    start = time.perf_counter()
    total, mismatches, rejected = 0, 0, []
    for g in criterion_3_instances():
        total += 1
        cert = recognize_pw2(g)
        if cert.positive != pathwidth_at_most(g, 2):
            mismatches += 1
        if not cert.positive:
            rejected.append(cert)
    return total, mismatches, rejected, time.perf_counter() - start


def criterion_3():
    total, mismatches, rejected, elapsed = criterion_3_run()
    ok = mismatches == 0 and elapsed <= 1800
    return ok, f"{total} graphs, {len(rejected)} rejected, {mismatches} mismatches, {elapsed:.1f}s"


def criterion_4():
    _, _, rejected, _ = criterion_3_run()
    bad = 0
    for cert in rejected:
        witness_ok = cert.oracle_width >= 3 and not pathwidth_at_most(cert.witness, 2)
        if not witness_ok or not is_minor_minimal_obstruction(cert.minimal_witness):
            bad += 1
    return bad == 0 and rejected, f"{len(rejected)} certificates, {bad} invalid"


def criterion_5():
    start = time.perf_counter()
    seeds, mismatches, queries = 500, 0, 0
    for seed in range(seeds):
        g = generate("track", 3 + seed % 6, seed)
        readings = list(all_readings(enumerate_representations(g)))

        def agree(result, expected, check):
            return (result is not None) == expected and (result is None or not representation_problems(result, g)
                                                         and check(result))

        for r in range(g.n):
            queries += 2
            mismatches += not agree(corner_placement(g, r), any(has_corner(t, r) for t in readings),
                                    lambda t: t.P[0] == r)
            mismatches += not agree(degenerate_side_placement(g, r), any(has_degenerate(t, r) for t in readings),
                                    lambda t: t.P == (r,))
            for r2 in range(g.n):
                if r2 == r:
                    continue
                queries += 1
                mismatches += not agree(opposite_corners_placement(g, r, r2),
                                        any(has_opposite(t, r, r2) for t in readings),
                                        lambda t: t.P[0] == r and r2 in (t.P[-1], t.Q[-1]))
    elapsed = time.perf_counter() - start
    return mismatches == 0, f"{seeds} tracks, {queries} queries, {mismatches} mismatches, {elapsed:.1f}s"


def criterion_6():
    start = time.perf_counter()
    rejected = invalid = 0
    count = 1000
    largest = 0
    for seed in range(count):
        g = generate("pw2-structure", 10 + seed % 31, seed)
        largest = max(largest, g.n)
        cert = recognize_pw2(g)
        if not cert.positive:
            rejected += 1
        elif not verify_decomposition(g, cert.decomposition, 2).ok:
            invalid += 1
    elapsed = time.perf_counter() - start
    ok = rejected == 0 and invalid == 0 and largest <= 40 and elapsed <= 300
    return ok, f"{count} graphs (n<={largest}), {rejected} rejected, {invalid} invalid, {elapsed:.1f}s"


def criterion_7():
    rng = random.Random(77)
    pairs = bad = 0
    while pairs < 1000:
        n = rng.randint(2, 10)
        g = random_connected(rng, n, rng.choice(EDGE_PROBS))
        minors = list(one_step_minors(g))
        if not minors:
            continue
        _, _, h = rng.choice(minors)
        pairs += 1
        bad += exact_pathwidth(h)[0] > exact_pathwidth(g)[0]
    return bad == 0, f"{pairs} pairs, {bad} violations"


def criterion_8():
    found = mine(9, 8, 200)
    codes = [canonical_code(h) for h in found]
    minimal = all(is_minor_minimal_obstruction(h) and exact_pathwidth(h)[0] >= 3 for h in found)
    has_k4 = canonical_code(complete_graph(4)) in codes
    unique = len(codes) == len(set(codes))
    return minimal and has_k4 and unique, \
        f"{len(found)} obstructions, minimal={minimal}, includes K4={has_k4}, unique={unique}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("number", range(1, 9))
def test_criterion(number):
    ok, detail = CRITERIA[number - 1]()
    report(number, bool(ok), detail)
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for i, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        report(i, bool(ok), detail)
        failures += not ok
    sys.exit(1 if failures else 0)
