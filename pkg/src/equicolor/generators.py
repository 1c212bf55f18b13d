"""Corpus construction: named families, random high-girth graphs, gadget hosts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import GenerationFailed, UnknownFamily
from .graphs import Graph, components, girth, mad_exact


def _theta(a: int, b: int, c: int) -> Graph:
    verts = [1, 2]
    edges = []
    nxt = 3
    for length in (a, b, c):
        prev = 1
        for _ in range(length - 1):
            verts.append(nxt)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 2))
    return Graph(verts, edges)


def _cycle(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])


def _complete_bipartite(a: int, b: int) -> Graph:
    left = range(1, a + 1)
    right = range(a + 1, a + b + 1)
    return Graph(range(1, a + b + 1), [(u, v) for u in left for v in right])


def _petersen() -> Graph:
    outer = [(i + 1, (i + 1) % 5 + 1) for i in range(5)]
    spokes = [(i + 1, i + 6) for i in range(5)]
    inner = [(i + 6, (i + 2) % 5 + 6) for i in range(5)]
    return Graph(range(1, 11), outer + spokes + inner)


def family(name: str, params: Sequence[int] = ()) -> Graph:
    """Named graph families: cycle(n), theta(a,b,c), k1n(n), k2n(n), k77, petersen."""
    name = name.lower()
    params = [int(p) for p in params]
    if name == "cycle":
        (n,) = params
        return _cycle(n)
    if name == "theta":
        a, b, c = params
        return _theta(a, b, c)
    if name == "k1n":
        (n,) = params
        return _complete_bipartite(1, n)
    if name == "k2n":
        (n,) = params
        return _complete_bipartite(2, n)
    if name == "k77":
        return _complete_bipartite(7, 7)
    if name == "petersen":
        return _petersen()
    raise UnknownFamily(f"unknown family {name!r}")


@dataclass(frozen=True)
class GenSpec:
    """Parameters of the random subdivided-cubic generator."""

    base_size: int
    q_min: int
    q_max: int
    girth_min: int
    mad_max: Fraction
    seed: int

    def __post_init__(self):
        if self.girth_min not in (10, 14):
            raise GenerationFailed(f"girth_min must be 10 or 14, got {self.girth_min}")
        if self.mad_max not in (Fraction(5, 2), Fraction(7, 3)):
            raise GenerationFailed(f"mad_max must be 5/2 or 7/3, got {self.mad_max}")
        if 3 * (self.q_min + 1) < self.girth_min:
            raise GenerationFailed(
                f"subdivision range too small: 3*({self.q_min}+1) < {self.girth_min}")
        if self.q_max < self.q_min:
            raise GenerationFailed("empty subdivision range")
        if self.base_size < 4:
            raise GenerationFailed("base graph needs at least 4 vertices")


def _random_cubic(rng: random.Random, n: int, tries: int = 200) -> Optional[list[tuple[int, int]]]:
    """Simple connected (near-)cubic graph on 1..n via stub pairing."""
    stubs = []
    for v in range(1, n + 1):
        stubs.extend([v] * 3)
    if len(stubs) % 2 == 1:
        stubs.pop()  # one degree-2 vertex when 3n is odd
    for _ in range(tries):
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if not ok:
            continue
        g = Graph(range(1, n + 1), edges)
        if len(components(g)) == 1:
            return sorted(edges)
    return None


def random_sparse(spec: GenSpec, tries: int = 50) -> Graph:
    """Random connected graph meeting the girth/density hypotheses.

    A random (near-)cubic base is built, every edge is subdivided q_e times
    with q_e drawn from the spec's range, and the result is verified exactly
    (girth, mad, min degree) and regenerated on failure. Fully seed-driven.
    """
    rng = random.Random(spec.seed)
    for _ in range(tries):
        base = _random_cubic(rng, spec.base_size)
        if base is None:
            continue
        verts = list(range(1, spec.base_size + 1))
        edges = []
        nxt = spec.base_size + 1
        for u, v in base:
            q = rng.randint(spec.q_min, spec.q_max)
            prev = u
            for _ in range(q):
                verts.append(nxt)
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
            edges.append((prev, v))
        g = Graph(verts, edges)
        if g.min_degree() < 2:
            continue
        if girth(g) < spec.girth_min:
            continue
        if mad_exact(g) >= spec.mad_max:
            continue
        return g
    raise GenerationFailed(f"could not satisfy {spec} in {tries} attempts")


# --- gadget hosts ------------------------------------------------------------
#
# Each gadget is a smallest-effort host that satisfies the relevant theorem's
# hypotheses (min degree, girth, density) and whose first detected reducible
# configuration is of the requested kind. They are assembled from a weighted
# skeleton: vertices are branch vertices, edge weights 1..5 are thread lengths
# plus one (weight w means w-1 interior 2-vertices).


def _from_skeleton(skeleton_edges: Sequence[tuple[int, int, int]],
                   n_skeleton: int) -> Graph:
    verts = list(range(1, n_skeleton + 1))
    edges = []
    nxt = n_skeleton + 1
    for u, v, w in skeleton_edges:
        prev = u
        for _ in range(w - 1):
            verts.append(nxt)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(verts, edges)


def _pendant_cycle_host() -> Graph:
    """Two branch vertices with pendant 11-cycles, joined by a 4-thread."""
    verts = [1, 2]
    edges = []
    nxt = 3
    for anchor in (1, 2):
        prev = anchor
        for _ in range(10):
            verts.append(nxt)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, anchor))
    prev = 1
    for _ in range(4):
        verts.append(nxt)
        edges.append((prev, nxt))
        prev = nxt
        nxt += 1
    edges.append((prev, 2))
    return Graph(verts, edges)


GADGET_SKELETONS: dict[str, tuple[int, tuple[tuple[int, int, int], ...]]] = {}


def gadget(kind: str) -> Graph:
    """A host graph containing the requested reducible configuration."""
    if kind == "LongThread":
        return _theta(5, 5, 5)
    if kind == "M3LongThread":
        return _theta(7, 7, 7)
    if kind == "EqualEndpointThread":
        return _pendant_cycle_host()
    if kind in GADGET_SKELETONS:
        n, edges = GADGET_SKELETONS[kind]
        return _from_skeleton(edges, n)
    raise UnknownFamily(f"no gadget for configuration kind {kind!r}")
