"""Graph carrier, minor-operation primitives, canonical codes and edge-list I/O.

Vertices are always the dense integers ``0..n-1``. Operations that remove or
merge vertices return a compacted graph together with a label map back into
the source graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapacityError, DomainError, ParseError

Edge = tuple[int, int]

#: Largest vertex count accepted by :func:`canonical_code`.
MAX_CANONICAL_N = 16


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite undirected graph on ``0..n-1`` without self-loops.

    ``edges`` is kept as a sorted tuple of ``(u, v)`` pairs with ``u < v``;
    it is a multiset only when ``allow_parallel`` is set.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    allow_parallel: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("negative vertex count")
        norm = []
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            norm.append(_norm(u, v))
        if not self.allow_parallel:
            norm = set(norm)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], allow_parallel: bool = False) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges), allow_parallel)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nbrs: list[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as bit masks (bit ``u`` set when ``u`` is adjacent)."""
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @cached_property
    def multiplicity(self) -> Counter:
        return Counter(self.edges)

    def degree(self, v: int) -> int:
        """Degree counting parallel edges."""
        return sum(c for (a, b), c in self.multiplicity.items() if v in (a, b)) if self.allow_parallel \
            else len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def simple(self) -> "Graph":
        """Same graph with parallel edges merged and the mode flag cleared."""
        return Graph(self.n, tuple(set(self.edges)), False)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise DomainError("relabelling must be a permutation of 0..n-1")
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges), self.allow_parallel)

    def __str__(self) -> str:
        return format_graph(self)


# ---------------------------------------------------------------- parsing

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``n m [multi]`` then ``m`` lines ``u v``.

    ``#`` starts a comment line; blank lines are skipped; CRLF is accepted.
    """
    header = None
    edges: list[Edge] = []
    header_line = 0
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "multi"):
                raise ParseError("header must be 'n m' or 'n m multi'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("header counts must be decimal integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("header counts must be non-negative", lineno)
            header = (n, m, len(parts) == 3)
            header_line = lineno
            continue
        if len(parts) != 2:
            raise ParseError("edge line must hold exactly two vertex labels", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("vertex labels must be decimal integers", lineno) from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
    if header is None:
        raise ParseError("missing header line")
    n, m, multi = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", header_line)
    if not multi and len(set(_norm(u, v) for u, v in edges)) != len(edges):
        raise ParseError("parallel edges require the 'multi' header flag", header_line)
    return Graph.from_edges(n, edges, allow_parallel=multi)


def format_graph(g: Graph) -> str:
    head = f"{g.n} {g.m}" + (" multi" if g.allow_parallel else "")
    return "\n".join([head] + [f"{u} {v}" for u, v in g.edges]) + "\n"


# ------------------------------------------------------ minor operations

def contract_edge(g: Graph, e: Edge) -> Graph:
    """Merge the endpoints of ``e``; the merged vertex takes the smaller label.

    Loops are dropped. Parallel edges survive only when ``g.allow_parallel``.
    Labels above the removed endpoint shift down by one.
    """
    u, v = _norm(*e)
    if (u, v) not in g.multiplicity:
        raise DomainError(f"edge {e} not in graph")
    relabel = {}
    for w in range(g.n):
        if w == v:
            relabel[w] = u
        else:
            relabel[w] = w if w < v else w - 1
    out = []
    for a, b in g.edges:
        a2, b2 = relabel[a], relabel[b]
        if a2 != b2:
            out.append((a2, b2))
    return Graph(g.n - 1, tuple(out), g.allow_parallel)


def delete_edge(g: Graph, e: Edge) -> Graph:
    """Remove one copy of ``e``."""
    key = _norm(*e)
    edges = list(g.edges)
    try:
        edges.remove(key)
    except ValueError:
        raise DomainError(f"edge {e} not in graph") from None
    return Graph(g.n, tuple(edges), g.allow_parallel)


def subgraph(g: Graph, keep_vertices: Iterable[int], keep_edges: Iterable[Edge] | None = None
             ) -> tuple[Graph, list[int]]:
    """Subgraph on ``keep_vertices`` with compacted labels.

    With ``keep_edges=None`` the induced subgraph is returned. The second value
    maps new labels back to labels of ``g``.
    """
    verts = sorted(set(keep_vertices))
    for v in verts:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} not in graph")
    index = {v: i for i, v in enumerate(verts)}
    if keep_edges is None:
        chosen = [e for e in g.edges if e[0] in index and e[1] in index]
    else:
        avail = Counter(g.edges)
        chosen = []
        for e in keep_edges:
            key = _norm(*e)
            if avail[key] <= 0:
                raise DomainError(f"edge {e} not in graph")
            if key[0] not in index or key[1] not in index:
                raise DomainError(f"edge {e} has an endpoint outside the kept vertices")
            avail[key] -= 1
            chosen.append(key)
    return Graph(len(verts), tuple((index[a], index[b]) for a, b in chosen), g.allow_parallel), verts


def edge_subgraph(g: Graph, edges: Iterable[Edge]) -> tuple[Graph, list[int]]:
    """``G|_F``: vertex set ``V(F)``, edge set ``F``."""
    edges = [_norm(*e) for e in edges]
    return subgraph(g, {x for e in edges for x in e}, edges)


def delete_vertices(g: Graph, drop: Iterable[int]) -> tuple[Graph, list[int]]:
    drop = set(drop)
    return subgraph(g, [v for v in range(g.n) if v not in drop])


def components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by minimum."""
    seen = [False] * g.n
    parts = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, part = [s], []
        while stack:
            x = stack.pop()
            part.append(x)
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        parts.append(sorted(part))
    return parts


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, tuple(edges), any(h.allow_parallel for h in graphs))


# -------------------------------------------------------- canonical form

def _refine_colours(g: Graph) -> list[int]:
    colour = [0] * g.n
    while True:
        sigs = [(colour[v], tuple(sorted(colour[w] for w in g.adj[v])), g.degree(v)) for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_code(g: Graph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic.

    Minimises (here: maximises) the adjacency rows over vertex orderings that
    respect an isomorphism-invariant colour refinement; only orderings whose
    prefix rows tie with the best are explored, and twin vertices are tried
    once. Supports ``n <= MAX_CANONICAL_N``.
    """
    n = g.n
    if n > MAX_CANONICAL_N:
        raise CapacityError(f"canonical_code supports at most {MAX_CANONICAL_N} vertices, got {n}")
    mult = g.multiplicity
    colour = _refine_colours(g)

    def m(a, b):
        return mult.get(_norm(a, b), 0) if a != b else 0

    best: list = [None]

    def rec(order: list[int], rows: list[tuple], remaining: set):
        if not remaining:
            if best[0] is None or rows > best[0]:
                best[0] = list(rows)
            return
        c = min(colour[v] for v in remaining)
        cands = [v for v in remaining if colour[v] == c]
        scored = {}
        for v in cands:
            scored[v] = (c,) + tuple(m(v, u) for u in order)
        top = max(scored.values())
        depth = len(rows)
        if best[0] is not None:
            cur = rows + [top]
            ref = best[0][:depth + 1]
            if cur < ref:
                return
        tried: list[int] = []
        for v in sorted(cands):
            if scored[v] != top:
                continue
            # a transposition of twins is an automorphism: one branch suffices
            if any(all(m(v, x) == m(w, x) for x in range(n) if x != v and x != w) for w in tried):
                continue
            tried.append(v)
            remaining.discard(v)
            order.append(v)
            rec(order, rows + [top], remaining)
            order.pop()
            remaining.add(v)

    rec([], [], set(range(n)))
    flat = [n, 1 if g.allow_parallel else 0]
    for row in best[0] or []:
        flat.extend(row)
    return bytes(min(x, 255) for x in flat)


# --------------------------------------------------------- named graphs

def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycles need at least three vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))
