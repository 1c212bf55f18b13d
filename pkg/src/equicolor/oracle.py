"""Exact brute-force solvers used as ground truth at desk scale."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .coloring import Coloring, ListAssignment, target_sizes
from .errors import TooLarge
from .graphs import Graph

DEFAULT_CAP = 24


def _cap(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("EQUICOLOR_ORACLE_CAP")
    return int(env) if env else DEFAULT_CAP


def _reverse_degeneracy_order(g: Graph) -> list[int]:
    """Peel minimum-degree vertices; color in reverse peel order."""
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    peel = []
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        peel.append(v)
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    peel.reverse()
    return peel


def brute_equitable(g: Graph, m: int, cap: Optional[int] = None) -> Optional[Coloring]:
    """Backtracking search for an equitable m-coloring; None means proven infeasible.

    Vertices are tried in reverse degeneracy order; color classes are capped at
    ceil(n/m) with at most (n mod m) classes at the ceiling, and color symmetry
    is broken by canonical first-use ordering.
    """
    n = g.n
    if n > _cap(cap):
        raise TooLarge(f"|V| = {n} exceeds oracle cap {_cap(cap)}")
    if m < 1:
        return None
    if n == 0:
        return Coloring(m)
    lo, rem = divmod(n, m)
    hi = lo + 1 if rem else lo
    max_at_hi = rem if rem else m

    order = _reverse_degeneracy_order(g)
    pos = {v: i for i, v in enumerate(order)}
    colored_neighbors = [
        [w for w in g.neighbors(v) if pos[w] < pos[v]] for v in order
    ]
    color = {}
    sizes = [0] * (m + 1)
    state = {"at_hi": 0, "used": 0}

    def place(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        remaining = n - i
        deficit = sum(lo - s for s in sizes[1:state["used"] + 1] if s < lo)
        deficit += lo * (m - state["used"])
        if deficit > remaining:
            return False
        banned = {color[w] for w in colored_neighbors[i]}
        limit = min(state["used"] + 1, m)
        for c in range(1, limit + 1):
            if c in banned or sizes[c] >= hi:
                continue
            goes_hi = sizes[c] == lo and hi > lo
            if goes_hi and state["at_hi"] >= max_at_hi:
                continue
            fresh = c > state["used"]
            sizes[c] += 1
            color[v] = c
            if goes_hi:
                state["at_hi"] += 1
            if fresh:
                state["used"] += 1
            if place(i + 1):
                return True
            if fresh:
                state["used"] -= 1
            if goes_hi:
                state["at_hi"] -= 1
            del color[v]
            sizes[c] -= 1
        return False

    if place(0):
        return Coloring(m, color)
    return None


@dataclass(frozen=True)
class ThresholdResult:
    chi_eq: int
    chi_eq_star: int
    per_k: dict[int, bool]

    def to_json(self) -> dict:
        return {
            "chi_eq": self.chi_eq,
            "chi_eq_star": self.chi_eq_star,
            "per_k": {str(k): v for k, v in sorted(self.per_k.items())},
        }


def brute_threshold(g: Graph, cap: Optional[int] = None) -> ThresholdResult:
    """Feasibility of equitable k-coloring for every k in 1..|V|, plus thresholds."""
    n = g.n
    if n > _cap(cap):
        raise TooLarge(f"|V| = {n} exceeds oracle cap {_cap(cap)}")
    per_k = {k: brute_equitable(g, k, cap=cap) is not None for k in range(1, n + 1)}
    assert n == 0 or per_k[n], "the all-distinct coloring must always be feasible"
    feasible = [k for k, ok in per_k.items() if ok]
    chi_eq = min(feasible) if feasible else n
    infeasible = [k for k, ok in per_k.items() if not ok]
    chi_eq_star = max(infeasible) + 1 if infeasible else chi_eq
    return ThresholdResult(chi_eq=chi_eq, chi_eq_star=chi_eq_star, per_k=per_k)


def brute_descending_L(h: Graph, lists: ListAssignment, cap: Optional[int] = None) -> Optional[Coloring]:
    """Exhaustive search for a proper L-coloring with descending-equitable sizes.

    The size profile of such a coloring is forced: it is target_sizes(n, m)
    read off color by color (color 1 largest).
    """
    n = h.n
    if n > _cap(cap):
        raise TooLarge(f"|V| = {n} exceeds oracle cap {_cap(cap)}")
    m = lists.m
    quota = target_sizes(n, m)
    order = sorted(h.vertices, key=lambda v: (len(lists.lists.get(v, range(m))), v))
    pos = {v: i for i, v in enumerate(order)}
    colored_neighbors = [
        [w for w in h.neighbors(v) if pos[w] < pos[v]] for v in order
    ]
    full = frozenset(range(1, m + 1))
    color = {}
    sizes = [0] * (m + 1)

    def place(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        banned = {color[w] for w in colored_neighbors[i]}
        for c in sorted(lists.lists.get(v, full)):
            if c in banned or sizes[c] >= quota[c - 1]:
                continue
            sizes[c] += 1
            color[v] = c
            if place(i + 1):
                return True
            del color[v]
            sizes[c] -= 1
        return False

    if place(0):
        return Coloring(m, color)
    return None
