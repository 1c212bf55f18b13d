"""Simple undirected graphs with stable vertex ids, structural metrics and DIMACS I/O.

The maximum average degree is computed exactly (as a Fraction) via a
max-weight-closure / min-cut formulation and binary search over candidate
densities; girth by pruned per-vertex BFS.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import EmptyGraph, InvalidEdge, ParseError, UnknownVertex

INFINITE = float("inf")


class Graph:
    """Immutable simple undirected graph over integer vertex ids."""

    __slots__ = ("_adj", "_order", "edge_count")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise InvalidEdge(f"self-loop at {u}")
            if u not in adj or v not in adj:
                raise UnknownVertex(f"edge ({u}, {v}) uses an undeclared vertex")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._order = tuple(sorted(self._adj))
        self.edge_count = sum(len(ns) for ns in self._adj.values()) // 2

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._order

    @property
    def n(self) -> int:
        return len(self._order)

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} not in graph") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in self._order:
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def min_degree(self) -> int:
        return min((len(ns) for ns in self._adj.values()), default=0)

    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class Metrics:
    girth: object  # positive int or INFINITE
    mad: Fraction
    min_degree: int
    max_degree: int


def load_graph(text: str) -> Graph:
    """Parse a DIMACS edge-format document (`p edge n m`, `e u v`, `c ...`)."""
    n = None
    declared_m = None
    edges: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", line_no)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(f"malformed problem line {line!r}", line_no)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", line_no) from None
            if n < 0 or declared_m < 0:
                raise ParseError("negative counts in problem line", line_no)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", line_no)
            if len(parts) != 3:
                raise ParseError(f"malformed edge line {line!r}", line_no)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"malformed edge line {line!r}", line_no) from None
            if u == v:
                raise InvalidEdge(f"self-loop at vertex {u}", line_no)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range in {line!r}", line_no)
            edges.add((min(u, v), max(u, v)))
        else:
            raise ParseError(f"unrecognized line {line!r}", line_no)
    if n is None:
        raise ParseError("missing problem line")
    return Graph(range(1, n + 1), edges)


def dump_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    """Serialize to DIMACS edge format with 1-based ids (order-preserving relabel)."""
    index = {v: i + 1 for i, v in enumerate(g.vertices)}
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.edge_count}")
    lines.extend(f"e {index[u]} {index[v]}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def delete_vertices(g: Graph, drop: Iterable[int]) -> Graph:
    """Induced subgraph on V minus `drop`; ids are preserved, `g` is unchanged."""
    dropped = set(drop)
    for v in dropped:
        if v not in g:
            raise UnknownVertex(f"vertex {v} not in graph")
    keep = [v for v in g.vertices if v not in dropped]
    keep_set = set(keep)
    edges = [(u, v) for u, v in g.edges() if u in keep_set and v in keep_set]
    return Graph(keep, edges)


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components as vertex sets, ordered by smallest contained id."""
    seen: set[int] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def girth(g: Graph):
    """Length of a shortest cycle, or INFINITE for forests.

    BFS from every vertex; a non-tree edge seen at depth d closes a cycle of
    length dist[u] + dist[w] + 1. Searches are pruned at half the best bound.
    """
    best = INFINITE
    for start in g.vertices:
        dist = {start: 0}
        parent = {start: None}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du >= best:
                continue
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cycle = du + dist[w] + 1
                    if cycle < best:
                        best = cycle
    return best


def _dinic(n_nodes: int, arcs: list[list[int]], source: int, sink: int) -> int:
    """Max flow; arcs are [to, cap, rev_index] triples mutated in place."""
    graph: list[list[list[int]]] = [[] for _ in range(n_nodes)]
    for a in arcs:
        graph[a[3]].append(a)

    def add_level() -> Optional[list[int]]:
        level = [-1] * n_nodes
        level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for arc in graph[u]:
                if arc[1] > 0 and level[arc[0]] < 0:
                    level[arc[0]] = level[u] + 1
                    queue.append(arc[0])
        return level if level[sink] >= 0 else None

    flow = 0
    while True:
        level = add_level()
        if level is None:
            return flow
        it = [0] * n_nodes
        # iterative DFS for blocking flow
        while True:
            path: list[list[int]] = []
            u = source
            while u != sink:
                advanced = False
                while it[u] < len(graph[u]):
                    arc = graph[u][it[u]]
                    if arc[1] > 0 and level[arc[0]] == level[u] + 1:
                        path.append(arc)
                        u = arc[0]
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if not path:
                        u = None
                        break
                    level[u] = -1
                    u = path[-1][3]
                    path.pop()
            if u is None:
                break
            push = min(arc[1] for arc in path)
            for arc in path:
                arc[1] -= push
                arcs[arc[2]][1] += push
            flow += push


class _ClosureNet:
    """Densest-subgraph test network: does some subgraph have 2|E|/|V| > p/q?"""

    def __init__(self, g: Graph):
        self.g = g
        self.vid = {v: i for i, v in enumerate(g.vertices)}
        self.edge_list = list(g.edges())

    def denser_than(self, p: int, q: int) -> Optional[frozenset[int]]:
        """Witness vertex set with 2|E_H|/|V_H| > p/q, or None."""
        g = self.g
        nv, ne = g.n, len(self.edge_list)
        source = nv + ne
        sink = source + 1
        arcs: list[list[int]] = []

        def add(u, v, cap):
            # arc entries: [to, cap, rev_index, frm]
            arcs.append([v, cap, len(arcs) + 1, u])
            arcs.append([u, 0, len(arcs) - 1, v])

        inf = 2 * q * ne + p * nv + 1
        for i, (u, v) in enumerate(self.edge_list):
            add(source, nv + i, 2 * q)
            add(nv + i, self.vid[u], inf)
            add(nv + i, self.vid[v], inf)
        for v in g.vertices:
            add(self.vid[v], sink, p)
        total = 2 * q * ne
        cut = _dinic(sink + 1, arcs, source, sink)
        if total - cut <= 0:
            return None
        # source side of the residual graph = optimal closure
        graph: list[list[list[int]]] = [[] for _ in range(sink + 1)]
        for a in arcs:
            graph[a[3]].append(a)
        reach = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for arc in graph[u]:
                if arc[1] > 0 and arc[0] not in reach:
                    reach.add(arc[0])
                    queue.append(arc[0])
        witness = frozenset(v for v in g.vertices if self.vid[v] in reach)
        if not witness:
            return None
        return witness


def _density(g: Graph, vs: frozenset[int]) -> Fraction:
    inside = sum(1 for u, v in g.edges() if u in vs and v in vs)
    return Fraction(2 * inside, len(vs))


def mad_exact(g: Graph, with_witness: bool = False):
    """Exact maximum average degree: max over nonempty H of 2|E(H)|/|V(H)|.

    Binary search over densities with a min-cut feasibility test at each probe;
    the achieved lower bound is always a witness subgraph's exact density, and
    candidate values are rationals with denominator <= |V|, so the search ends
    as soon as the bracket contains a single candidate.
    """
    if g.n == 0:
        raise EmptyGraph("mad is undefined for the empty graph")
    if g.edge_count == 0:
        return (Fraction(0), frozenset([g.vertices[0]])) if with_witness else Fraction(0)

    degrees = {g.degree(v) for v in g.vertices}
    if len(degrees) == 1:
        # regular graphs are their own densest subgraph
        d = degrees.pop()
        witness = frozenset(g.vertices)
        return (Fraction(d), witness) if with_witness else Fraction(d)

    net = _ClosureNet(g)
    lo = Fraction(2 * g.edge_count, g.n)
    witness = frozenset(g.vertices)
    hi = Fraction(g.max_degree())
    gap = Fraction(1, 2 * g.n * g.n)
    while hi - lo > gap:
        mid = (lo + hi) / 2
        found = net.denser_than(mid.numerator, mid.denominator)
        if found is None:
            hi = mid
        else:
            lo = _density(g, found)
            witness = found
    assert net.denser_than(lo.numerator, lo.denominator) is None
    return (lo, witness) if with_witness else lo


def metrics(g: Graph) -> Metrics:
    if g.n == 0:
        raise EmptyGraph("metrics are undefined for the empty graph")
    return Metrics(girth=girth(g), mad=mad_exact(g), min_degree=g.min_degree(),
                   max_degree=g.max_degree())
