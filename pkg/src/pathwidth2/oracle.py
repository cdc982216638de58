"""Exact ground truth: path-width by subset search, minor containment,
decomposition checking and reduction to minor-minimal obstructions.

Memory model of :func:`exact_pathwidth`: a component on ``c`` vertices keeps
one Python int per dead subset in a set, at most ``2**c`` entries of roughly
60 bytes, so a 24-vertex component is bounded by about 1 GB and sparse graphs
use a tiny fraction of that. Concurrent callers each pay their own share.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError, ParseError
from .graph_core import Graph, components, contract_edge, delete_edge, delete_vertices, subgraph

#: Largest connected component :func:`exact_pathwidth` will search.
MAX_ORACLE_N = 24


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset, ...]

    @classmethod
    def of(cls, bags: Iterable[Iterable[int]]) -> "PathDecomposition":
        return cls(tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def relabel(self, label_map: Sequence[int]) -> "PathDecomposition":
        return PathDecomposition(tuple(frozenset(label_map[v] for v in b) for b in self.bags))

    def __len__(self):
        return len(self.bags)

    def __iter__(self):
        return iter(self.bags)


def format_decomposition(d: PathDecomposition) -> str:
    lines = []
    for bag in d.bags:
        lines.append(("B: " + " ".join(str(v) for v in sorted(bag))).rstrip())
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> PathDecomposition:
    bags = []
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if bags:
                break
            continue
        if not line.startswith("B:"):
            raise ParseError("bag line must start with 'B:'", lineno)
        try:
            bags.append(frozenset(int(x) for x in line[2:].split()))
        except ValueError:
            raise ParseError("bag members must be decimal integers", lineno) from None
    return PathDecomposition(tuple(bags))


# ------------------------------------------------------------ verification

@dataclass
class VerificationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else "; ".join(self.violations)


def verify_decomposition(g: Graph, d: PathDecomposition, max_width: int) -> VerificationReport:
    """Check coverage, edge coverage, interval contiguity and the width bound."""
    report = VerificationReport()
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    count: dict[int, int] = {}
    for i, bag in enumerate(d.bags):
        for v in bag:
            if not 0 <= v < g.n:
                report.violations.append(f"bag {i} holds unknown vertex {v}")
                continue
            first.setdefault(v, i)
            last[v] = i
            count[v] = count.get(v, 0) + 1
    for v in range(g.n):
        if v not in first:
            report.violations.append(f"vertex {v} in no bag")
        elif last[v] - first[v] + 1 != count[v]:
            report.violations.append(f"vertex {v} interval broken between bags {first[v]} and {last[v]}")
    for u, v in sorted(set(g.edges)):
        if u in first and v in first and not any(u in b and v in b for b in d.bags[max(first[u], first[v]):
                                                                                 min(last[u], last[v]) + 1]):
            report.violations.append(f"edge ({u},{v}) uncovered")
    for i, bag in enumerate(d.bags):
        if len(bag) - 1 > max_width:
            report.violations.append(f"bag {i} has size {len(bag)} > {max_width + 1}")
    return report


# ------------------------------------------------------------ exact width

def _boundary(masks: Sequence[int], placed: int) -> int:
    out, full = 0, (1 << len(masks)) - 1
    rest = full & ~placed
    x = placed
    while x:
        low = x & -x
        v = low.bit_length() - 1
        if masks[v] & rest:
            out |= low
        x ^= low
    return out


def _order_within(masks: Sequence[int], k: int) -> list[int] | None:
    """A vertex ordering of vertex separation at most ``k``, or None."""
    n = len(masks)
    full = (1 << n) - 1
    dead: set[int] = set()
    order: list[int] = []

    def rec(placed: int) -> bool:
        if placed == full:
            return True
        if placed in dead:
            return False
        rest = full & ~placed
        # a vertex whose whole neighbourhood is placed never hurts: take it now
        x = rest
        while x:
            low = x & -x
            v = low.bit_length() - 1
            if masks[v] & ~placed & ~low == 0:
                order.append(v)
                if rec(placed | low):
                    return True
                order.pop()
                dead.add(placed)
                return False
            x ^= low
        options = []
        x = rest
        while x:
            low = x & -x
            v = low.bit_length() - 1
            nxt = placed | low
            if nxt not in dead:
                size = _boundary(masks, nxt).bit_count()
                if size <= k:
                    options.append((size, v))
            x ^= low
        options.sort()
        for _, v in options:
            order.append(v)
            if rec(placed | (1 << v)):
                return True
            order.pop()
        dead.add(placed)
        return False

    limit = sys.getrecursionlimit()
    if limit < 4 * n + 100:
        sys.setrecursionlimit(4 * n + 100)
    return order if rec(0) else None


def _bags_from_order(masks: Sequence[int], order: Sequence[int]) -> list[frozenset]:
    bags, placed = [], 0
    for v in order:
        bnd = _boundary(masks, placed)
        bag = {v} | {u for u in range(len(masks)) if bnd >> u & 1}
        bags.append(frozenset(bag))
        placed |= 1 << v
    return bags


def _component_decomposition(g: Graph, verts: list[int], k_max: int | None
                             ) -> tuple[int, list[frozenset]] | None:
    if len(verts) > MAX_ORACLE_N:
        raise CapacityError(f"exact path-width supports components of at most {MAX_ORACLE_N} vertices,"
                            f" got {len(verts)}")
    h, back = subgraph(g, verts)
    if h.n == 1:
        return 0, [frozenset(verts)]
    masks = h.masks
    k = 1
    while k_max is None or k <= k_max:
        order = _order_within(masks, k)
        if order is not None:
            bags = _bags_from_order(masks, order)
            return k, [frozenset(back[v] for v in b) for b in bags]
        k += 1
    return None


def exact_pathwidth(g: Graph) -> tuple[int, PathDecomposition]:
    """Exact path-width of ``g`` and an optimal decomposition.

    Disconnected graphs are solved per component; the decompositions are
    concatenated and the width is the maximum.
    """
    if g.n == 0:
        return 0, PathDecomposition(())
    width, bags = 0, []
    for part in components(g):
        k, b = _component_decomposition(g, part, None)
        width = max(width, k)
        bags.extend(b)
    return width, PathDecomposition(tuple(bags))


def pathwidth_at_most(g: Graph, k: int) -> bool:
    """Decide ``pw(g) <= k`` without computing the exact value."""
    for part in components(g):
        if len(part) == 1:
            continue
        if k < 1 or _component_decomposition(g, part, k) is None:
            return False
    return True


# ---------------------------------------------------------------- minors

@dataclass(frozen=True)
class MinorEmbedding:
    """Branch set (host vertices) for every pattern vertex, plus one host edge
    witnessing each pattern edge."""

    branch_sets: tuple[frozenset, ...]
    edge_witness: dict = field(hash=False, compare=False, default_factory=dict)

    def check(self, host: Graph, pattern: Graph, roots: Sequence[tuple[int, int]] = ()) -> bool:
        seen: set[int] = set()
        for bs in self.branch_sets:
            if not bs or bs & seen:
                return False
            seen |= bs
            h, _ = subgraph(host, bs)
            if len(components(h)) != 1:
                return False
        for a, b in set(pattern.edges):
            x, y = self.edge_witness.get((a, b), (None, None))
            if x is None or not host.has_edge(x, y) or x not in self.branch_sets[a] or y not in self.branch_sets[b]:
                return False
        return all(r in self.branch_sets[s] for r, s in roots)


def _is_series_parallel_reducible(g: Graph) -> bool:
    """True iff ``g`` has no K4 minor (degree <= 2 reductions empty it)."""
    adj = {v: dict() for v in range(g.n)}
    for u, v in g.edges:
        adj[u][v] = 1
        adj[v][u] = 1
    queue = [v for v in adj if len(adj[v]) <= 2]
    while queue:
        v = queue.pop()
        if v not in adj or len(adj[v]) > 2:
            continue
        nb = list(adj[v])
        for w in nb:
            del adj[w][v]
        del adj[v]
        if len(nb) == 2:
            a, b = nb
            adj[a][b] = 1
            adj[b][a] = 1
        queue.extend(w for w in nb if len(adj[w]) <= 2)
    return not adj


def _connected_sets(g: Graph, allowed: int, must: int, max_size: int) -> Iterator[int]:
    """Connected vertex sets within ``allowed`` containing all of ``must`` (<= 1 vertex)
    or, when ``must`` is 0, any connected set; each set produced once."""
    masks = g.masks
    starts = [must.bit_length() - 1] if must else [v for v in range(g.n) if allowed >> v & 1]
    for s in starts:
        # sets whose designated start is s; exclude lower starts when free
        base_allowed = allowed if must else allowed & ~((1 << s) - 1)

        def grow(cur: int, frontier: int, excluded: int):
            yield cur
            if cur.bit_count() >= max_size:
                return
            cand = frontier & ~excluded
            x = cand
            while x:
                low = x & -x
                v = low.bit_length() - 1
                nf = (frontier | masks[v]) & base_allowed & ~cur & ~low
                yield from grow(cur | low, nf, excluded)
                excluded |= low
                x ^= low

        s_bit = 1 << s
        yield from grow(s_bit, masks[s] & base_allowed & ~s_bit, 0)


def has_minor(g: Graph, h: Graph, roots: Sequence[tuple[int, int]] = ()) -> MinorEmbedding | None:
    """Branch-set search for ``h`` as a (rooted) minor of ``g``.

    ``roots`` lists ``(host vertex, pattern vertex)`` pairs: the host vertex
    must lie in that pattern vertex's branch set.
    """
    if h.n > g.n:
        raise DomainError("pattern larger than host")
    for r, s in roots:
        if not (0 <= r < g.n and 0 <= s < h.n):
            raise DomainError("root references an unknown vertex")
    h_simple = h.simple()
    if len(set(h.edges)) > len(set(g.edges)):
        return None
    if h.n == 4 and h_simple.m == 6 and not roots and _is_series_parallel_reducible(g.simple()):
        return None
    rooted: dict[int, int] = {}
    for r, s in roots:
        rooted[s] = rooted.get(s, 0) | (1 << r)
    # place pattern vertices in BFS order, highest degree first
    order: list[int] = []
    for start in sorted(range(h.n), key=lambda v: (-len(h_simple.adj[v]), v)):
        if start in order:
            continue
        queue = [start]
        order.append(start)
        while queue:
            x = queue.pop(0)
            for y in sorted(h_simple.adj[x], key=lambda v: (-len(h_simple.adj[v]), v)):
                if y not in order:
                    order.append(y)
                    queue.append(y)
    masks = g.masks
    full = (1 << g.n) - 1
    branch: dict[int, int] = {}

    def nbr_mask(s: int) -> int:
        out, x = 0, s
        while x:
            low = x & -x
            out |= masks[low.bit_length() - 1]
            x ^= low
        return out

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        free = full & ~used
        need = rooted.get(p, 0)
        if need & used:
            return False
        left = len(order) - i - 1
        max_size = free.bit_count() - left
        placed_nbrs = [branch[q] for q in h_simple.adj[p] if q in branch]
        seed = need & -need
        for bs in _connected_sets(g, free, seed, max_size):
            if bs & need != need:
                continue
            nb = nbr_mask(bs)
            if any(not (nb & other) for other in placed_nbrs):
                continue
            branch[p] = bs
            if rec(i + 1, used | bs):
                return True
            del branch[p]
        return False

    if not rec(0, 0):
        return None
    sets = tuple(frozenset(v for v in range(g.n) if branch[p] >> v & 1) for p in range(h.n))
    witness = {}
    for a, b in set(h_simple.edges):
        for x in sorted(sets[a]):
            ys = sorted(g.adj[x] & sets[b])
            if ys:
                witness[(a, b)] = (x, ys[0])
                break
    return MinorEmbedding(sets, witness)


# ------------------------------------------------------- minimisation

def one_step_minors(g: Graph) -> Iterator[tuple[str, object, Graph]]:
    """Every graph one deletion/contraction away from ``g``, in the fixed
    order: edge deletions, contractions, isolated-vertex deletions."""
    for e in sorted(set(g.edges)):
        yield "delete", e, delete_edge(g, e)
    for e in sorted(set(g.edges)):
        yield "contract", e, contract_edge(g, e)
    for v in range(g.n):
        if not g.adj[v]:
            yield "drop", v, delete_vertices(g, [v])[0]


def minimize_witness(g: Graph, is_obstruction: Callable[[Graph], bool] | None = None) -> Graph:
    """Shrink ``g`` (path-width >= 3) to a minor-minimal graph of path-width >= 3.

    ``is_obstruction`` may supply a faster exact test for "path-width >= 3";
    the default consults the subset search.
    """
    test = is_obstruction or (lambda x: not pathwidth_at_most(x, 2))
    if not test(g):
        raise DomainError("minimize_witness needs a graph of path-width at least 3")
    cur = g.simple()
    changed = True
    while changed:
        changed = False
        for _, _, smaller in one_step_minors(cur):
            if test(smaller):
                cur = smaller
                changed = True
                break
    return cur


def is_minor_minimal_obstruction(g: Graph) -> bool:
    """Oracle check: ``pw(g) >= 3`` and every one-step minor has ``pw <= 2``."""
    if pathwidth_at_most(g, 2):
        return False
    return all(pathwidth_at_most(h, 2) for _, _, h in one_step_minors(g))
