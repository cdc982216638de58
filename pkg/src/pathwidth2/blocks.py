"""Block-cut structure, bridges of a cycle and exact longest-cycle search."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import DomainError
from .graph_core import Edge, Graph, _norm

Cycle = tuple[int, ...]


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks as edge tuples (with multiplicity) plus their vertex sets.

    ``tree`` is the block-cut tree: node ``("B", i)`` for block ``i`` and
    ``("C", v)`` for cut vertex ``v``.
    """

    blocks: tuple[tuple[Edge, ...], ...]
    block_vertices: tuple[frozenset, ...]
    cut_vertices: frozenset
    tree: dict

    def is_cut_edge(self, i: int) -> bool:
        return len(self.blocks[i]) == 1

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, vs in enumerate(self.block_vertices) if v in vs]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Iterative Hopcroft-Tarjan over edge ids, so parallel edges form blocks."""
    incident: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid, (u, v) in enumerate(g.edges):
        incident[u].append((v, eid))
        incident[v].append((u, eid))
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    edge_stack: list[int] = []
    blocks: list[list[int]] = []
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(incident[root]))]
        while stack:
            v, parent_eid, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == parent_eid:
                    continue
                if disc[w] == -1:
                    edge_stack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, iter(incident[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(eid)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        eid = edge_stack.pop()
                        comp.append(eid)
                        if eid == parent_eid:
                            break
                    blocks.append(sorted(comp))
    blocks.sort(key=lambda b: b[0])
    block_edges = tuple(tuple(g.edges[e] for e in b) for b in blocks)
    block_vertices = tuple(frozenset(x for e in b for x in e) for b in block_edges)
    count: dict[int, int] = {}
    for vs in block_vertices:
        for v in vs:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c > 1)
    tree: dict = {}
    for i, vs in enumerate(block_vertices):
        tree.setdefault(("B", i), set())
        for v in vs & cuts:
            tree[("B", i)].add(("C", v))
            tree.setdefault(("C", v), set()).add(("B", i))
    return BlockDecomposition(block_edges, block_vertices, cuts, tree)


def is_two_connected(g: Graph) -> bool:
    if g.n < 3:
        return False
    bd = block_decomposition(g)
    return len(bd.blocks) == 1 and len(bd.block_vertices[0]) == g.n


def is_two_edge_connected(g: Graph) -> bool:
    """Connected and without cut edges (parallel copies protect an edge)."""
    if g.n < 2:
        return g.n == 1
    bd = block_decomposition(g)
    covered = set().union(*bd.block_vertices) if bd.blocks else set()
    if len(covered) != g.n:
        return False
    from .graph_core import is_connected
    return is_connected(g) and not any(bd.is_cut_edge(i) for i in range(len(bd.blocks)))


# ---------------------------------------------------------------- bridges

class BridgeKind(str, Enum):
    ONE_EDGE = "trivial-1-edge"
    TWO_EDGE = "trivial-2-edge"
    NONTRIVIAL = "nontrivial"


class Relation(str, Enum):
    EQUIVALENT = "equivalent"
    CROSSING = "crossing"
    NONCROSSING = "noncrossing-distinct"


@dataclass(frozen=True)
class Bridge:
    edges: tuple[Edge, ...]
    legs: tuple[int, ...]
    kind: BridgeKind
    middle: int | None = None
    inner: frozenset = frozenset()


def check_cycle(g: Graph, c: Sequence[int]) -> None:
    if len(c) < 3 and not (len(c) == 2 and g.multiplicity.get(_norm(*c), 0) >= 2):
        raise DomainError("a cycle needs at least three vertices")
    if len(set(c)) != len(c):
        raise DomainError("cycle repeats a vertex")
    for i, v in enumerate(c):
        if not g.has_edge(v, c[(i + 1) % len(c)]):
            raise DomainError(f"({v},{c[(i + 1) % len(c)]}) is not an edge")


def cycle_edges(c: Sequence[int]) -> list[Edge]:
    if len(c) == 2:
        return [_norm(c[0], c[1])] * 2
    return [_norm(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]


def bridges_of_cycle(g: Graph, c: Sequence[int]) -> list[Bridge]:
    """Bridges of ``c``: components of ``G - V(C)`` with their attaching
    edges, and every non-cycle edge joining two cycle vertices."""
    check_cycle(g, c)
    pos = {v: i for i, v in enumerate(c)}
    remaining = list(g.edges)
    for e in cycle_edges(c):
        remaining.remove(e)
    out: list[Bridge] = []
    seen: set[int] = set()
    for s in range(g.n):
        if s in pos or s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in pos and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        edges = tuple(e for e in remaining if e[0] in comp or e[1] in comp)
        legs = tuple(sorted({x for e in edges for x in e if x in pos}, key=pos.__getitem__))
        if len(edges) == 2 and len(comp) == 1 and len(legs) == 2:
            out.append(Bridge(edges, legs, BridgeKind.TWO_EDGE, s, frozenset(comp)))
        else:
            out.append(Bridge(edges, legs, BridgeKind.NONTRIVIAL, None, frozenset(comp)))
    for e in remaining:
        if e[0] in pos and e[1] in pos:
            legs = tuple(sorted(e, key=pos.__getitem__))
            out.append(Bridge((e,), legs, BridgeKind.ONE_EDGE))
    out.sort(key=lambda b: (tuple(pos[x] for x in b.legs), sorted(b.inner)))
    return out


def _alternate(c_pos: dict, a: tuple[int, int], b: tuple[int, int]) -> bool:
    if set(a) & set(b):
        return False
    lo, hi = sorted(c_pos[x] for x in a)
    inside = [lo < c_pos[x] < hi for x in b]
    return inside[0] != inside[1]


def bridge_relation(b1: Bridge, b2: Bridge, c: Sequence[int]) -> Relation:
    pos = {v: i for i, v in enumerate(c)}
    for i, x in enumerate(b1.legs):
        for x2 in b1.legs[i + 1:]:
            for j, y in enumerate(b2.legs):
                for y2 in b2.legs[j + 1:]:
                    if _alternate(pos, (x, x2), (y, y2)):
                        return Relation.CROSSING
    if set(b1.legs) == set(b2.legs):
        return Relation.EQUIVALENT
    return Relation.NONCROSSING


# ----------------------------------------------------------- cycle search

def _normal_form(cyc: list[int]) -> tuple[int, ...]:
    i = cyc.index(min(cyc))
    rot = cyc[i:] + cyc[:i]
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def cycle_search(g: Graph, through: Sequence[int] = (), objective: str = "longest") -> Cycle:
    """Exact longest cycle containing every vertex of ``through``.

    Ties go to the lexicographically smallest sequence that starts at its
    minimum label and continues towards the smaller neighbour.
    """
    if objective != "longest":
        raise DomainError(f"unsupported objective {objective!r}")
    if len(through) > 2:
        raise DomainError("at most two prescribed vertices")
    need = set(through)
    for v in need:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} not in graph")
    adj = [sorted(a) for a in g.adj]
    best: list = [None]

    def reach_bound(start: int, end: int, visited: set) -> tuple[int, bool]:
        seen = {end}
        stack = [end]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y >= start and y not in visited and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) - 1, all(v in visited or v in seen for v in need)

    def better(cand: tuple) -> bool:
        b = best[0]
        return b is None or len(cand) > len(b) or (len(cand) == len(b) and cand < b)

    for start in range(g.n):
        if any(v < start for v in need):
            break
        path = [start]
        visited = {start}

        def dfs(v: int):
            extra, feasible = reach_bound(start, v, visited)
            if not feasible:
                return
            if best[0] is not None and len(path) + extra < len(best[0]):
                return
            for w in adj[v]:
                if w == start and len(path) >= 3 and need <= visited:
                    cand = _normal_form(path)
                    if better(cand):
                        best[0] = cand
                elif w > start and w not in visited:
                    visited.add(w)
                    path.append(w)
                    dfs(w)
                    path.pop()
                    visited.discard(w)

        dfs(start)
    if best[0] is None:
        raise DomainError("no cycle through the requested vertices")
    return best[0]
