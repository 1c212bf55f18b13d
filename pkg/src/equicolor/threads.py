"""Thread decomposition and per-vertex thread statistics.

A thread is a maximal path whose interior vertices all have degree 2 and whose
endpoints are branch vertices (degree >= 3), or a cycle carrying exactly one
branch vertex (an "equal-endpoint" thread). A k-thread has k interior vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    NotBranchVertex,
    NotOneThreadPair,
    PreconditionViolated,
    PureCycleComponent,
    ThreadCycle,
    UnknownVertex,
)
from .graphs import Graph, components

BUCKET = "5+"


@dataclass(frozen=True)
class Thread:
    endpoints: tuple[int, int]
    interior: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.interior)

    @property
    def is_cycle(self) -> bool:
        return self.endpoints[0] == self.endpoints[1]

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.endpoints) | frozenset(self.interior)


@dataclass(frozen=True)
class ThreadProfile:
    """Thread-incidence counts at a branch vertex.

    ``counts`` maps 0..4 and the bucket "5+" to incidence counts; an
    equal-endpoint thread contributes two incidences. ``t`` is the raw sum of
    length times incidence, which equals the number of 2-vertices loosely
    adjacent to the owner exactly when no thread-cycle is incident.
    """

    owner: int
    counts: dict = field(default_factory=dict)
    t: int = 0
    has_thread_cycle: bool = False

    def a(self, length) -> int:
        return self.counts.get(length, 0)


def _walk(g: Graph, start: int, first: int) -> tuple[int, tuple[int, ...]]:
    """Follow the thread leaving `start` through `first`; return (far end, interior)."""
    interior = []
    prev, cur = start, first
    while g.degree(cur) == 2:
        interior.append(cur)
        a, b = g.neighbors(cur)
        nxt = b if a == prev else a
        prev, cur = cur, nxt
    return cur, tuple(interior)


def _canonical(end_a: int, end_b: int, interior: tuple[int, ...]) -> Thread:
    if end_a > end_b or (end_a == end_b and interior and interior[0] > interior[-1]):
        return Thread((end_b, end_a), tuple(reversed(interior)))
    return Thread((end_a, end_b), interior)


def threads_at(g: Graph, x: int) -> list[Thread]:
    """All threads incident to branch vertex x (equal-endpoint ones listed once)."""
    if x not in g:
        raise UnknownVertex(f"vertex {x} not in graph")
    if g.degree(x) < 3:
        raise NotBranchVertex(f"vertex {x} has degree {g.degree(x)}")
    seen = set()
    out = []
    for w in sorted(g.neighbors(x)):
        far, interior = _walk(g, x, w)
        th = _canonical(x, far, interior)
        if th not in seen:
            seen.add(th)
            out.append(th)
    return sorted(out, key=lambda t: (t.endpoints, t.interior))


def decompose(g: Graph) -> list[Thread]:
    """Thread decomposition of a graph with min degree >= 2.

    Every 2-vertex lands in exactly one thread's interior; every branch-branch
    edge is a 0-thread. Components without a branch vertex are rejected.
    """
    if g.n and g.min_degree() < 2:
        raise PreconditionViolated("thread decomposition requires min degree >= 2")
    branch = {v for v in g.vertices if g.degree(v) >= 3}
    for comp in components(g):
        if not comp & branch:
            raise PureCycleComponent(comp)
    seen = set()
    out = []
    for x in sorted(branch):
        for w in sorted(g.neighbors(x)):
            far, interior = _walk(g, x, w)
            th = _canonical(x, far, interior)
            if th not in seen:
                seen.add(th)
                out.append(th)
    return sorted(out, key=lambda t: (t.endpoints, t.interior))


def profile(g: Graph, x: int) -> ThreadProfile:
    """Thread-incidence counts and t(x) for a branch vertex."""
    counts = {0: 0, 1: 0, 2: 0, 3: 0, 4: 0, BUCKET: 0}
    t = 0
    has_cycle = False
    for th in threads_at(g, x):
        mult = 2 if th.is_cycle else 1
        if th.is_cycle:
            has_cycle = True
        key = th.length if th.length <= 4 else BUCKET
        counts[key] += mult
        t += th.length * mult
    return ThreadProfile(owner=x, counts=counts, t=t, has_thread_cycle=has_cycle)


def loosely_adjacent(g: Graph, x: int, l: int) -> frozenset[int]:
    """Vertices at thread-distance l+1 from x along a common thread."""
    if x not in g:
        raise UnknownVertex(f"vertex {x} not in graph")
    if l < 0:
        return frozenset()
    target = l + 1
    found = set()
    if g.degree(x) >= 3:
        incident = threads_at(g, x)
    elif g.degree(x) == 2:
        incident = [th for th in decompose(g) if x in th.interior]
    else:
        return frozenset()
    for th in incident:
        path = [th.endpoints[0], *th.interior, th.endpoints[1]]
        idxs = [i for i, v in enumerate(path) if v == x]
        for i in idxs:
            for j in (i - target, i + target):
                if 0 <= j < len(path) and path[j] != x:
                    found.add(path[j])
    return frozenset(found)


def _boundary(g: Graph, inside: set[int]) -> dict[int, tuple[int, ...]]:
    out = {}
    for v in sorted(inside):
        ext = tuple(sorted(g.neighbors(v) - inside))
        if ext:
            out[v] = ext
    return out


def star_subgraph(g: Graph, x: int) -> tuple[Graph, dict[int, tuple[int, ...]]]:
    """Subgraph on x plus all 2-vertices loosely adjacent to x, with boundary map."""
    ths = threads_at(g, x)
    if any(t.is_cycle for t in ths):
        raise ThreadCycle(f"vertex {x} carries an equal-endpoint thread")
    inside = {x}
    for th in ths:
        inside.update(th.interior)
    edges = [(u, v) for u, v in g.edges() if u in inside and v in inside]
    return Graph(inside, edges), _boundary(g, inside)


def pair_subgraph(g: Graph, x: int, y: int) -> tuple[Graph, dict[int, tuple[int, ...]]]:
    """Union of the stars rooted at x and y, joined by their 1-thread."""
    ths_x = threads_at(g, x)
    ths_y = threads_at(g, y)
    if any(t.is_cycle for t in ths_x + ths_y):
        raise ThreadCycle("a root carries an equal-endpoint thread")
    link = [t for t in ths_x if t.length == 1 and set(t.endpoints) == {x, y}]
    if not link:
        raise NotOneThreadPair(f"{x} and {y} are not joined by a 1-thread")
    inside = {x, y}
    for th in ths_x + ths_y:
        inside.update(th.interior)
    edges = [(u, v) for u, v in g.edges() if u in inside and v in inside]
    return Graph(inside, edges), _boundary(g, inside)
