"""Colorings, equitability checking, class-size arithmetic and list assignments."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import (
    ColorCountMismatch,
    IncompleteColoring,
    InvalidColorCount,
    PreconditionViolated,
    VertexCollision,
)
from .graphs import Graph


class Coloring:
    """Partial map vertex -> color in {1..m} with incremental class sizes."""

    __slots__ = ("m", "assignment", "class_sizes")

    def __init__(self, m: int, assignment: Optional[Mapping[int, int]] = None):
        if m < 1:
            raise InvalidColorCount(f"m must be >= 1, got {m}")
        self.m = m
        self.assignment: dict[int, int] = {}
        self.class_sizes = [0] * m
        if assignment:
            for v, c in assignment.items():
                self.assign(v, c)

    def assign(self, v: int, c: int) -> None:
        if not (1 <= c <= self.m):
            raise InvalidColorCount(f"color {c} outside 1..{self.m}")
        if v in self.assignment:
            raise VertexCollision(f"vertex {v} already colored")
        self.assignment[v] = c
        self.class_sizes[c - 1] += 1

    def color_of(self, v: int) -> Optional[int]:
        return self.assignment.get(v)

    def copy(self) -> "Coloring":
        dup = Coloring(self.m)
        dup.assignment = dict(self.assignment)
        dup.class_sizes = list(self.class_sizes)
        return dup

    def sizes(self) -> tuple[int, ...]:
        return tuple(self.class_sizes)

    def __len__(self) -> int:
        return len(self.assignment)

    def __eq__(self, other):
        return (isinstance(other, Coloring) and self.m == other.m
                and self.assignment == other.assignment)

    def __repr__(self):
        return f"Coloring(m={self.m}, |dom|={len(self.assignment)}, sizes={self.class_sizes})"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "assignment": {str(v): c for v, c in sorted(self.assignment.items())},
            "class_sizes": list(self.class_sizes),
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "Coloring":
        return cls(int(doc["m"]), {int(v): int(c) for v, c in doc["assignment"].items()})


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex allowed color sets inside {1..m}."""

    m: int
    lists: dict[int, frozenset[int]]

    def __post_init__(self):
        for v, lv in self.lists.items():
            if not lv:
                raise PreconditionViolated(f"empty list at vertex {v}")
            if not lv <= frozenset(range(1, self.m + 1)):
                raise PreconditionViolated(f"list at {v} leaves 1..{self.m}")

    def allowed(self, v: int) -> frozenset[int]:
        return self.lists[v]


@dataclass(frozen=True)
class Report:
    valid: bool
    edge_violations: tuple[tuple[int, int], ...] = ()
    size_violation: Optional[tuple[int, ...]] = None
    list_violations: tuple[int, ...] = ()
    order_violation: bool = False

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "edge_violations": [list(e) for e in self.edge_violations],
            "size_violation": list(self.size_violation) if self.size_violation else None,
            "list_violations": list(self.list_violations),
            "order_violation": self.order_violation,
        }


def target_sizes(n: int, m: int) -> list[int]:
    """Class sizes of any equitable m-coloring of n items, descending."""
    if m < 1:
        raise InvalidColorCount(f"m must be >= 1, got {m}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    q, r = divmod(n, m)
    return [q + 1] * r + [q] * (m - r)


def verify_equitable(g: Graph, f: Coloring) -> Report:
    """VALID iff f is total, proper, and class sizes differ by at most one."""
    missing = [v for v in g.vertices if v not in f.assignment]
    if missing:
        raise IncompleteColoring(f"{len(missing)} uncolored vertices, e.g. {missing[:5]}")
    bad_edges = tuple((u, v) for u, v in g.edges()
                      if f.assignment[u] == f.assignment[v])
    sizes = f.sizes()
    size_bad = max(sizes) - min(sizes) > 1
    return Report(valid=not bad_edges and not size_bad,
                  edge_violations=bad_edges,
                  size_violation=sizes if size_bad else None)


def sort_relabel(f: Coloring, order: str = "ascending") -> tuple[Coloring, tuple[int, ...]]:
    """Permute colors so class sizes are sorted; returns (relabeled, perm).

    perm[old_color - 1] is the new color; ties keep the original color order.
    """
    if order not in ("ascending", "descending"):
        raise ValueError(f"order must be ascending or descending, got {order!r}")
    sign = 1 if order == "ascending" else -1
    ranked = sorted(range(1, f.m + 1), key=lambda c: (sign * f.class_sizes[c - 1], c))
    perm = [0] * f.m
    for new_c, old_c in enumerate(ranked, start=1):
        perm[old_c - 1] = new_c
    return apply_permutation(f, tuple(perm)), tuple(perm)


def apply_permutation(f: Coloring, perm: tuple[int, ...]) -> Coloring:
    out = Coloring(f.m)
    out.assignment = {v: perm[c - 1] for v, c in f.assignment.items()}
    for c in out.assignment.values():
        out.class_sizes[c - 1] += 1
    return out


def invert_permutation(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for old, new in enumerate(perm, start=1):
        inv[new - 1] = old
    return tuple(inv)


def merge_components(f: Coloring, g: Coloring) -> Coloring:
    """Union of colorings on disjoint vertex sets (f sorted descending, g ascending)."""
    if f.m != g.m:
        raise ColorCountMismatch(f"{f.m} != {g.m}")
    overlap = f.assignment.keys() & g.assignment.keys()
    if overlap:
        raise VertexCollision(f"vertices colored twice: {sorted(overlap)[:5]}")
    out = f.copy()
    for v, c in g.assignment.items():
        out.assign(v, c)
    return out


def lists_from_boundary(g: Graph, inside: Iterable[int], f: Coloring, m: int) -> ListAssignment:
    """For each v in `inside`, the colors not used by its neighbors outside."""
    inside = set(inside)
    full = frozenset(range(1, m + 1))
    lists = {}
    for v in sorted(inside):
        used = set()
        for w in g.neighbors(v) - inside:
            c = f.color_of(w)
            if c is None:
                raise IncompleteColoring(f"boundary neighbor {w} of {v} is uncolored")
            used.add(c)
        lists[v] = full - used
    return ListAssignment(m=m, lists=lists)


def verify_descending_L(h: Graph, lists: ListAssignment, f: Coloring) -> Report:
    """VALID iff f is proper, respects the lists, and sizes are descending-equitable."""
    missing = [v for v in h.vertices if v not in f.assignment]
    if missing:
        raise IncompleteColoring(f"{len(missing)} uncolored vertices")
    bad_edges = tuple((u, v) for u, v in h.edges()
                      if f.assignment[u] == f.assignment[v])
    bad_lists = tuple(v for v in h.vertices
                      if v in lists.lists and f.assignment[v] not in lists.lists[v])
    sizes = f.sizes()
    descending = all(sizes[i] >= sizes[i + 1] for i in range(len(sizes) - 1))
    order_bad = not descending or (sizes and sizes[-1] < sizes[0] - 1)
    return Report(valid=not bad_edges and not bad_lists and not order_bad,
                  edge_violations=bad_edges,
                  list_violations=bad_lists,
                  order_violation=order_bad,
                  size_violation=sizes if order_bad else None)
