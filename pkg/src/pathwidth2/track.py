"""Tracks: two disjoint paths joined by noncrossing short and long chords.

A representation is ``P = p1..pk``, ``Q = q1..ql`` and chords ``(i, j)``
(1-based) joining ``p_i`` to ``q_j`` either directly (short) or through a
middle vertex of degree two (long). Corners are ``a = p1``, ``a' = q1``,
``b = pk`` and ``b' = ql``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Sequence

from .blocks import (Bridge, BridgeKind, Relation, bridge_relation, bridges_of_cycle, cycle_edges,
                     cycle_search, is_two_connected)
from .errors import CapacityError, DomainError, ParseError
from .graph_core import Edge, Graph, _norm, edge_subgraph
from .oracle import PathDecomposition

#: Largest graph :func:`enumerate_representations` accepts.
MAX_ENUM_N = 24


@dataclass(frozen=True, order=True)
class Chord:
    i: int
    j: int
    kind: str  # "short" | "long"
    middle: int | None = None

    @property
    def is_long(self) -> bool:
        return self.kind == "long"


@dataclass(frozen=True)
class TrackRepresentation:
    P: tuple[int, ...]
    Q: tuple[int, ...]
    chords: tuple[Chord, ...]

    @property
    def k(self) -> int:
        return len(self.P)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.Q)

    @property
    def corners(self) -> tuple[int, int, int, int]:
        """``(a, a', b, b')``."""
        return self.P[0], self.Q[0], self.P[-1], self.Q[-1]

    @property
    def middles(self) -> frozenset:
        return frozenset(c.middle for c in self.chords if c.is_long)

    @property
    def sides(self) -> frozenset:
        return frozenset(self.P) | frozenset(self.Q)

    @property
    def vertices(self) -> frozenset:
        return self.sides | self.middles

    def edges(self) -> list[Edge]:
        out = [_norm(a, b) for a, b in zip(self.P, self.P[1:])]
        out += [_norm(a, b) for a, b in zip(self.Q, self.Q[1:])]
        for c in self.chords:
            p, q = self.P[c.i - 1], self.Q[c.j - 1]
            if c.is_long:
                out += [_norm(p, c.middle), _norm(c.middle, q)]
            else:
                out.append(_norm(p, q))
        return out

    def swapped(self) -> "TrackRepresentation":
        return _build(self.Q, self.P, [Chord(c.j, c.i, c.kind, c.middle) for c in self.chords])

    def reversed(self) -> "TrackRepresentation":
        k, l = self.k, self.l
        return _build(self.P[::-1], self.Q[::-1],
                      [Chord(k + 1 - c.i, l + 1 - c.j, c.kind, c.middle) for c in self.chords])

    def variants(self) -> list["TrackRepresentation"]:
        """The four readings of the same track (corner relabellings)."""
        r = self.reversed()
        return [self, self.swapped(), r, r.swapped()]

    def normalized(self) -> "TrackRepresentation":
        return min(self.variants(), key=lambda t: (t.P[0], t.P, t.Q))

    def key(self) -> tuple:
        return self.P, self.Q, self.chords


def _build(P, Q, chords) -> TrackRepresentation:
    return TrackRepresentation(tuple(P), tuple(Q), tuple(sorted(chords, key=lambda c: (c.i, c.j, c.kind != "short",
                                                                                       c.middle if c.middle is not None else -1))))


def format_representation(rep: TrackRepresentation) -> str:
    lines = ["P: " + " ".join(map(str, rep.P)), "Q: " + " ".join(map(str, rep.Q))]
    for c in rep.chords:
        lines.append(f"C: {c.i} {c.j} {c.kind}" + (f" {c.middle}" if c.is_long else ""))
    return "\n".join(lines) + "\n"


def parse_representation(text: str) -> TrackRepresentation:
    P = Q = None
    chords = []
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, rest = line.partition(":")
        parts = rest.split()
        try:
            if tag == "P":
                P = tuple(int(x) for x in parts)
            elif tag == "Q":
                Q = tuple(int(x) for x in parts)
            elif tag == "C":
                if len(parts) == 3 and parts[2] == "short":
                    chords.append(Chord(int(parts[0]), int(parts[1]), "short"))
                elif len(parts) == 4 and parts[2] == "long":
                    chords.append(Chord(int(parts[0]), int(parts[1]), "long", int(parts[3])))
                else:
                    raise ParseError("chord line must be 'C: i j short' or 'C: i j long m'", lineno)
            else:
                raise ParseError(f"unknown line tag {tag!r}", lineno)
        except ValueError:
            raise ParseError("labels must be decimal integers", lineno) from None
    if not P or not Q:
        raise ParseError("representation needs non-empty P and Q lines")
    return _build(P, Q, chords)


def representation_problems(rep: TrackRepresentation, g: Graph | None = None) -> list[str]:
    """Violated invariants of ``rep`` (and of ``rep`` against ``g`` when given)."""
    out = []
    if not rep.P or not rep.Q:
        out.append("P and Q must be non-empty")
        return out
    if len(set(rep.P)) != len(rep.P) or len(set(rep.Q)) != len(rep.Q) or set(rep.P) & set(rep.Q):
        out.append("P and Q must be vertex-disjoint simple sequences")
    mids = [c.middle for c in rep.chords if c.is_long]
    if len(set(mids)) != len(mids) or set(mids) & rep.sides:
        out.append("long-chord middles must be distinct and off the paths")
    for c in rep.chords:
        if not (1 <= c.i <= rep.k and 1 <= c.j <= rep.l):
            out.append(f"chord {c.i},{c.j} out of range")
            return out
    for x in range(len(rep.chords)):
        for y in range(x + 1, len(rep.chords)):
            c, d = rep.chords[x], rep.chords[y]
            if (c.i - d.i) * (c.j - d.j) < 0:
                out.append(f"chords {c.i},{c.j} and {d.i},{d.j} cross")
    ends = {(c.i, c.j) for c in rep.chords}
    if (1, 1) not in ends or (rep.k, rep.l) not in ends:
        out.append("missing end-chord")
    if g is not None:
        if rep.vertices != frozenset(range(g.n)):
            out.append("representation does not cover exactly the vertex set")
        if Counter(rep.edges()) != Counter(g.edges):
            out.append("representation does not reconstruct the edge set")
        for m in mids:
            if 0 <= m < g.n and g.degree(m) != 2:
                out.append(f"middle {m} has degree {g.degree(m)}")
    return out


# ------------------------------------------------------------ enumeration

def _induced_paths(g: Graph) -> Iterator[tuple[int, ...]]:
    for s in range(g.n):
        path = [s]
        on = {s}

        def ext():
            yield tuple(path)
            last = path[-1]
            for w in sorted(g.adj[last]):
                if w in on:
                    continue
                if any(x in on and x != last for x in g.adj[w]):
                    continue
                path.append(w)
                on.add(w)
                yield from ext()
                path.pop()
                on.discard(w)

        yield from ext()


def _q_options(g: Graph, rest: set) -> list[tuple[int, ...]]:
    """Candidate orders of Q when ``rest`` = V - P must be Q plus middle leaves."""
    radj = {v: g.adj[v] & rest for v in rest}
    if sum(len(a) for a in radj.values()) // 2 != len(rest) - 1:
        return []
    seen = {next(iter(rest))}
    stack = list(seen)
    while stack:
        x = stack.pop()
        for y in radj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(rest):
        return []
    if len(rest) == 1:
        return [tuple(rest)]
    inner = {v for v in rest if len(radj[v]) >= 2}
    if not inner:
        x, y = sorted(rest)
        return [(x, y), (y, x), (x,), (y,)]
    iadj = {v: radj[v] & inner for v in inner}
    ends = [v for v in inner if len(iadj[v]) <= 1]
    if any(len(a) > 2 for a in iadj.values()) or len(ends) not in (1, 2):
        return []
    spine = [min(ends)]
    while len(spine) < len(inner):
        nxt = [w for w in iadj[spine[-1]] if w not in spine]
        spine.append(nxt[0])
    leaves_l = sorted(radj[spine[0]] - inner)
    leaves_r = sorted(radj[spine[-1]] - inner)
    out = []
    for left in [None] + leaves_l:
        for right in [None] + leaves_r:
            if left is not None and left == right:
                continue
            q = ([left] if left is not None else []) + spine + ([right] if right is not None else [])
            out.append(tuple(q))
            out.append(tuple(reversed(q)))
    return out


def _assemble(g: Graph, P: Sequence[int], Q: Sequence[int]) -> TrackRepresentation | None:
    pi = {v: i + 1 for i, v in enumerate(P)}
    qi = {v: j + 1 for j, v in enumerate(Q)}
    mult = g.multiplicity
    chords = []
    for (u, v), c in mult.items():
        if u in pi and v in pi:
            if abs(pi[u] - pi[v]) != 1 or c != 1:
                return None
        elif u in qi and v in qi:
            if abs(qi[u] - qi[v]) != 1 or c != 1:
                return None
        elif u in pi and v in qi:
            chords += [Chord(pi[u], qi[v], "short")] * c
        elif v in pi and u in qi:
            chords += [Chord(pi[v], qi[u], "short")] * c
    for m in range(g.n):
        if m in pi or m in qi:
            continue
        nb = g.adj[m]
        if g.degree(m) != 2 or len(nb) != 2:
            return None
        a, b = sorted(nb)
        if a in pi and b in qi:
            chords.append(Chord(pi[a], qi[b], "long", m))
        elif b in pi and a in qi:
            chords.append(Chord(pi[b], qi[a], "long", m))
        else:
            return None
    rep = _build(P, Q, chords)
    ends = {(c.i, c.j) for c in rep.chords}
    if (1, 1) not in ends or (rep.k, rep.l) not in ends:
        return None
    cs = sorted({(c.i, c.j) for c in rep.chords})
    best_j = 0
    for idx, (i, j) in enumerate(cs):
        # sorted by i then j: crossing iff an earlier i has a larger j
        if j < best_j:
            prev = [jj for ii, jj in cs[:idx] if ii < i]
            if prev and max(prev) > j:
                return None
        best_j = max(best_j, j)
    return rep


def enumerate_representations(g: Graph) -> Iterator[TrackRepresentation]:
    """Every representation of ``g`` as a track, each once after normalisation,
    in sorted order. Empty iff ``g`` is not a track."""
    if g.n > MAX_ENUM_N:
        raise CapacityError(f"representation enumeration supports at most {MAX_ENUM_N} vertices")
    if g.n < 2 or not _two_connected_or_edge(g):
        return
    found: dict[tuple, TrackRepresentation] = {}
    for P in _induced_paths(g):
        rest = set(range(g.n)) - set(P)
        if not rest:
            continue
        for Q in _q_options(g, rest):
            rep = _assemble(g, P, Q)
            if rep is not None:
                norm = rep.normalized()
                found.setdefault(norm.key(), norm)
    for key in sorted(found):
        yield found[key]


def _two_connected_or_edge(g: Graph) -> bool:
    if g.n == 2:
        return len(g.adj[0]) == 1
    return is_two_connected(g)


def all_readings(reps) -> Iterator[TrackRepresentation]:
    """All four corner readings of every representation, deduplicated."""
    seen = set()
    for rep in reps:
        for v in rep.variants():
            if v.key() not in seen:
                seen.add(v.key())
                yield v


# ---------------------------------------------------------- decomposition

def sweep(rep: TrackRepresentation) -> list[tuple[frozenset, bool]]:
    """Raw left-to-right sweep: ``(bag, is_frontier)`` pairs.

    Frontier bags are exactly ``{p_i, q_j}``; every path vertex lies in one.
    """
    bags: list[tuple[frozenset, bool]] = []
    P, Q = rep.P, rep.Q
    i = j = 1

    def frontier():
        bags.append((frozenset((P[i - 1], Q[j - 1])), True))

    frontier()
    targets = [(c.i, c.j, c) for c in rep.chords] + [(rep.k, rep.l, None)]
    for ci, cj, c in targets:
        while i < ci or j < cj:
            if i < ci:
                bags.append((frozenset((P[i - 1], Q[j - 1], P[i])), False))
                i += 1
            else:
                bags.append((frozenset((P[i - 1], Q[j - 1], Q[j])), False))
                j += 1
            frontier()
        if c is not None and c.is_long:
            bags.append((frozenset((P[i - 1], c.middle, Q[j - 1])), False))
            frontier()
    return bags


def compress(bags: Sequence[frozenset]) -> list[frozenset]:
    """Drop bags contained in a neighbouring bag."""
    out = list(bags)
    changed = True
    while changed:
        changed = False
        for t in range(len(out)):
            if (t > 0 and out[t] <= out[t - 1]) or (t + 1 < len(out) and out[t] <= out[t + 1]):
                del out[t]
                changed = True
                break
    return out


def track_decomposition(rep: TrackRepresentation) -> PathDecomposition:
    problems = representation_problems(rep)
    if problems:
        raise DomainError("invalid track representation: " + "; ".join(problems))
    return PathDecomposition(tuple(compress([b for b, _ in sweep(rep)])))


# ------------------------------------------------------------ recognition

class TrackReason(str, Enum):
    THREE_LEG_BRIDGE = "three-leg-bridge"
    NONTRIVIAL_BRIDGE = "nontrivial-bridge"
    CROSSING_BRIDGES = "crossing-bridges"
    NONLINEAR_CHORD_ORDER = "nonlinear-chord-order"
    NOT_2_CONNECTED = "not-2-connected"


@dataclass(frozen=True)
class TrackObstruction:
    reason: TrackReason
    witness: Graph
    witness_labels: tuple[int, ...]


def _witness(g: Graph, c: Sequence[int], bridges: Sequence[Bridge], reason: TrackReason) -> TrackObstruction:
    edges = list(cycle_edges(c)) if len(c) > 2 else []
    for b in bridges:
        edges.extend(b.edges)
    h, labels = edge_subgraph(g, edges)
    return TrackObstruction(reason, h, tuple(labels))


def reps_on_cycle(g: Graph, c: Sequence[int], bridges: Sequence[Bridge] | None = None
                  ) -> Iterator[TrackRepresentation]:
    """Representations whose outer cycle is ``c``: pick two end segments
    (a cycle edge, or two cycle edges around a degree-2 vertex) and read the
    two remaining arcs as ``P`` and reversed ``Q``."""
    if bridges is None:
        bridges = bridges_of_cycle(g, c)
    n = len(c)
    legs_at: set[int] = set()
    for b in bridges:
        legs_at |= set(b.legs)
    segs = []  # (first cycle position after the cut, positions removed)
    for s in range(n):
        segs.append((s, (s + 1) % n, ()))
        mid = (s + 1) % n
        if n > 3 and g.degree(c[mid]) == 2 and c[mid] not in legs_at:
            segs.append((s, (s + 2) % n, (mid,)))
    for x in range(len(segs)):
        a_last, a_next, a_mid = segs[x]
        for y in range(len(segs)):
            if y == x:
                continue
            b_last, b_next, b_mid = segs[y]
            # arc1 runs a_next .. b_last, arc2 runs b_next .. a_last
            arc1 = _arc(a_next, b_last, n)
            arc2 = _arc(b_next, a_last, n)
            if arc1 is None or arc2 is None:
                continue
            used = set(arc1) | set(arc2) | set(a_mid) | set(b_mid)
            if len(used) != n or len(arc1) + len(arc2) + len(a_mid) + len(b_mid) != n:
                continue
            P = [c[t] for t in arc1]
            Q = [c[t] for t in reversed(arc2)]
            rep = _assemble(g, P, Q)
            if rep is not None:
                yield rep


def _arc(start: int, end: int, n: int) -> list[int] | None:
    out = [start]
    t = start
    while t != end:
        t = (t + 1) % n
        out.append(t)
        if len(out) > n:
            return None
    return out


def recognize_track(g: Graph) -> TrackRepresentation | TrackObstruction:
    """Longest cycle, then bridge triviality, then pairwise noncrossing, then
    a linear order of the chords with end-chords at both extremes."""
    if g.n == 2 and g.m >= 1 and len(g.adj[0]) == 1:
        return next(enumerate_representations(g))
    if not is_two_connected(g):
        return TrackObstruction(TrackReason.NOT_2_CONNECTED, g, tuple(range(g.n)))
    c = cycle_search(g)
    bridges = bridges_of_cycle(g, c)
    for b in bridges:
        if len(b.legs) >= 3:
            return _witness(g, c, [b], TrackReason.THREE_LEG_BRIDGE)
    for b in bridges:
        if b.kind == BridgeKind.NONTRIVIAL:
            return _witness(g, c, [b], TrackReason.NONTRIVIAL_BRIDGE)
    for x, b in enumerate(bridges):
        for b2 in bridges[x + 1:]:
            if bridge_relation(b, b2, c) == Relation.CROSSING:
                return _witness(g, c, [b, b2], TrackReason.CROSSING_BRIDGES)
    best = min((rep.normalized() for rep in reps_on_cycle(g, c, bridges)), key=_preference, default=None)
    if best is not None:
        return best
    return _witness(g, c, bridges, TrackReason.NONLINEAR_CHORD_ORDER)


def _preference(rep: TrackRepresentation) -> tuple:
    """Most long chords, then the most balanced sides, then the smallest key."""
    return -len(rep.middles), abs(rep.k - rep.l), rep.key()


def is_track(g: Graph) -> bool:
    return isinstance(recognize_track(g), TrackRepresentation)


# -------------------------------------------------------------- placement

def oriented_with_corner(rep: TrackRepresentation, r: int) -> TrackRepresentation | None:
    for v in rep.variants():
        if v.P[0] == r:
            return v
    return None


def has_corner(rep: TrackRepresentation, r: int) -> bool:
    return r in rep.corners


def has_opposite(rep: TrackRepresentation, r: int, r2: int) -> bool:
    """``r`` at one end of the sweep and ``r2`` at the other."""
    left = {rep.P[0], rep.Q[0]}
    right = {rep.P[-1], rep.Q[-1]}
    return (r in left and r2 in right) or (r2 in left and r in right)


def has_degenerate(rep: TrackRepresentation, r: int) -> bool:
    return rep.P == (r,) or rep.Q == (r,)


@lru_cache(maxsize=256)
def _is_track_cached(g: Graph) -> bool:
    return is_track(g)


@lru_cache(maxsize=256)
def _all_reps_cached(g: Graph) -> tuple[TrackRepresentation, ...]:
    return tuple(enumerate_representations(g))


def _require_track(g: Graph):
    if not _is_track_cached(g):
        raise DomainError("graph is not a track")


def _with_fallback(g: Graph, constructive, accept, orient, prefer=None):
    """First accepted candidate from the constructive stream, else from full
    enumeration; candidates passing ``prefer`` win within each stream."""
    sources = [constructive]
    if g.n <= MAX_ENUM_N:
        sources.append(lambda: _all_reps_cached(g))
    for source in sources:
        cands = [rep for rep in source() if accept(rep)]
        for rep in cands:
            if prefer is None or prefer(rep):
                return orient(rep)
        if cands:
            return orient(cands[0])
    return None


def corner_placement(g: Graph, r: int) -> TrackRepresentation | None:
    """A representation with ``a = r``, or None when no representation has
    ``r`` as a corner."""
    _require_track(g)
    return _with_fallback(g, lambda: _cycle_reps(g, (r,)), lambda t: has_corner(t, r), lambda t: oriented_with_corner(t, r))


def opposite_corners_placement(g: Graph, r: int, r2: int) -> TrackRepresentation | None:
    """A representation with ``a = r`` and ``r2`` a corner at the other end."""
    if r == r2:
        raise DomainError("opposite corners must be distinct vertices")
    _require_track(g)

    def orient(t):
        for v in t.variants():
            if v.P[0] == r and r2 in (v.P[-1], v.Q[-1]):
                return min((w for w in v.variants() if w.P[0] == r and r2 in (w.P[-1], w.Q[-1])),
                           key=lambda w: (w.Q[-1] != r2, w.P))
        return None

    def strict(t):
        return any(v.P[0] == r and v.Q[-1] == r2 for v in t.variants())

    return _with_fallback(g, lambda: _cycle_reps(g, tuple(sorted((r, r2)))), lambda t: has_opposite(t, r, r2), orient, strict)


def degenerate_side_placement(g: Graph, r: int) -> TrackRepresentation | None:
    """A representation with ``P = (r)``, so ``a = b = r``."""
    _require_track(g)

    def orient(t):
        for v in t.variants():
            if v.P == (r,):
                return v
        return None

    return _with_fallback(g, lambda: _cycle_reps(g, (r,)), lambda t: has_degenerate(t, r), orient)


@lru_cache(maxsize=1024)
def _cycle_reps(g: Graph, through: tuple[int, ...]) -> tuple[TrackRepresentation, ...]:
    """Candidate representations read off a longest cycle through ``through``."""
    if g.n < 3:
        return ()
    try:
        c = cycle_search(g, through)
    except DomainError:
        return ()
    return tuple(reps_on_cycle(g, c))
