"""Constructive coloring-extension procedures.

Each operation consumes an equitable (or descending-equitable) coloring of a
reduced graph and emits the extended coloring. All of them assume the incoming
coloring has been relabeled so class sizes ascend with the color index: new
vertices are poured into the low colors, which are the small classes. Every
nondeterministic choice is resolved by smallest-index tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Optional, Sequence

from .coloring import (
    Coloring,
    ListAssignment,
    apply_permutation,
    invert_permutation,
    sort_relabel,
    target_sizes,
    verify_descending_L,
)
from .errors import (
    ExceptionCase,
    ExtensionFailed,
    PreconditionViolated,
    ShapeMismatch,
)
from .graphs import Graph
from .threads import Thread


def ascending_step(f: Coloring, step) -> Coloring:
    """Run `step` on an ascending-relabeled copy, then restore the caller's labels."""
    asc, perm = sort_relabel(f, "ascending")
    out = step(asc)
    return apply_permutation(out, invert_permutation(perm))


def _is_ascending(f: Coloring) -> bool:
    return all(f.class_sizes[i] <= f.class_sizes[i + 1] for i in range(f.m - 1))


def _mod_color(i: int, m: int) -> int:
    """The color k in {1..m} with k = i (mod m)."""
    return ((i - 1) % m) + 1


def _cyclic_interior_colors(t: int, m: int) -> list[int]:
    return [_mod_color(i, m) for i in range(1, t + 1)]


def _path_proper(colors: Sequence[int], left: Optional[int], right: Optional[int]) -> bool:
    if left is not None and colors and colors[0] == left:
        return False
    if right is not None and colors and colors[-1] == right:
        return False
    return all(colors[i] != colors[i + 1] for i in range(len(colors) - 1))


def extend_long_thread(g: Graph, f: Coloring, thread: Thread, m: int) -> Coloring:
    """Color the interior of a t-thread (t >= 3; for m = 3, t = 3 or t >= 5).

    Covers the plain case (distinct endpoints, or an equal-endpoint thread at a
    vertex of degree >= 4) and both equal-endpoint cases at a degree-3 anchor,
    where the anchor itself (and possibly the thread hanging off it) was
    deleted along with the interior.
    """
    t = thread.length
    if not ((m >= 4 and t >= 3) or (m == 3 and (t == 3 or t >= 5))):
        raise PreconditionViolated(f"t = {t} not reducible for m = {m}")
    assert _is_ascending(f), "caller must relabel ascending first"
    e0, e1 = thread.endpoints
    if e0 != e1 or f.color_of(e0) is not None:
        if f.color_of(e0) is None or f.color_of(e1) is None:
            raise PreconditionViolated("thread endpoints must be colored")
        return _extend_plain(f, thread.interior, f.color_of(e0), f.color_of(e1))

    # equal endpoints with the anchor deleted: d(e0) = 3 in the host graph
    anchor = e0
    off = [w for w in g.neighbors(anchor) if w not in thread.interior]
    if len(off) != 1:
        raise PreconditionViolated("equal-endpoint anchor must have one off-thread edge")
    x = off[0]
    if f.color_of(x) is not None:
        return _extend_equal_endpoint(f, anchor, thread.interior, f.color_of(x), m)
    # x is a deleted 2-vertex: first recolor the thread Q leaving the anchor
    # through x, then proceed as if the anchor had been colored all along.
    q_interior = []
    prev, cur = anchor, x
    while g.degree(cur) == 2:
        q_interior.append(cur)
        a, b = g.neighbors(cur)
        nxt = b if a == prev else a
        prev, cur = cur, nxt
    far = cur
    if f.color_of(far) is None:
        raise PreconditionViolated("far endpoint of the anchor's thread must be colored")

    def stage1(h: Coloring) -> Coloring:
        out = h.copy()
        path = [anchor, *q_interior]
        for i, v in enumerate(path):
            out.assign(v, _mod_color(i + 1, m))
        if out.color_of(path[-1]) == h.color_of(far):
            a, b = path[-1], path[-2]
            ca, cb = out.assignment[a], out.assignment[b]
            out.assignment[a], out.assignment[b] = cb, ca
        return out

    def stage2(h: Coloring) -> Coloring:
        return _extend_plain(h, thread.interior, h.color_of(anchor), h.color_of(anchor))

    return ascending_step(ascending_step(f, stage1), stage2)


def _extend_plain(f: Coloring, interior: Sequence[int], c_left: int, c_right: int) -> Coloring:
    t = len(interior)
    m = f.m
    out = f.copy()
    colors = _cyclic_interior_colors(t, m)
    if colors[0] == c_left:
        colors[0], colors[1] = colors[1], colors[0]
    if colors[-1] == c_right:
        colors[-1], colors[-2] = colors[-2], colors[-1]
    if not _path_proper(colors, c_left, c_right):
        raise ExtensionFailed(f"thread recipe failed: {colors} between {c_left}, {c_right}")
    for v, c in zip(interior, colors):
        out.assign(v, c)
    return out


def _extend_equal_endpoint(f: Coloring, anchor: int, interior: Sequence[int],
                           c_x: int, m: int) -> Coloring:
    """Color the cycle anchor + interior; the anchor's third neighbor has color c_x."""
    t = len(interior)
    cyc = [anchor, *interior]
    colors = [_mod_color(i + 1, m) for i in range(t + 1)]
    if t % m == 0:
        colors[-1], colors[-2] = colors[-2], colors[-1]

    def ok(cols: Sequence[int]) -> bool:
        ring = all(cols[i] != cols[(i + 1) % len(cols)] for i in range(len(cols)))
        return ring and cols[0] != c_x

    if not ok(colors):
        fixed = False
        for i in (1, 2):
            cand = list(colors)
            cand[0], cand[i] = cand[i], cand[0]
            if ok(cand):
                colors, fixed = cand, True
                break
        if not fixed:
            # transpose two equally-used colors across the whole cycle
            n1, n2 = colors.count(1), colors.count(2)
            if n1 != n2:
                raise ExtensionFailed("no valid repair for equal-endpoint thread")
            swap = {1: 2, 2: 1}
            cand = [swap.get(c, c) for c in colors]
            if not ok(cand):
                raise ExtensionFailed("no valid repair for equal-endpoint thread")
            colors = cand
    out = f.copy()
    for v, c in zip(cyc, colors):
        out.assign(v, c)
    return out


def extend_45_thread(g: Graph, f: Coloring, interior: Sequence[int], m: int,
                     x: int, avoid, left: Optional[int] = None,
                     right: Optional[int] = None) -> Coloring:
    """Color a 4- or 5-thread so the designated interior vertex x dodges `avoid`.

    `left`/`right` are the colored endpoint vertices (None for a free end, as
    happens when the path's continuation was deleted too). The excluded case
    is m = 4, t = 5 with x second from either end.
    """
    t = len(interior)
    if t not in (4, 5) or m < 4:
        raise PreconditionViolated(f"need t in {{4,5}} and m >= 4, got t={t}, m={m}")
    if x not in interior:
        raise PreconditionViolated(f"{x} is not interior to the thread")
    assert _is_ascending(f)
    avoid = {a for a in avoid if a is not None}
    if len(avoid) > 2:
        raise PreconditionViolated("at most two colors can be avoided")
    c_left = f.color_of(left) if left is not None else None
    c_right = f.color_of(right) if right is not None else None
    idx = interior.index(x) + 1

    if m >= t:
        return _greedy_distinct(f, interior, x, avoid, c_left, c_right)

    # m = 4, t = 5
    if idx in (2, 4):
        raise ExceptionCase("m = 4, t = 5 with x second from an end")
    if idx > 3:
        interior = list(reversed(interior))
        c_left, c_right = c_right, c_left
        idx = 6 - idx
    y = [None, *interior]  # y[1]..y[5]
    out = f.copy()
    pool = {2, 3, 4}
    if 1 not in avoid and c_left != 1:
        out.assign(y[1], 1)
        out.assign(y[3], 1)
        c5 = min(pool - {c_right})
        rest = sorted(pool - {c5})
        out.assign(y[5], c5)
        out.assign(y[2], rest[0])
        out.assign(y[4], rest[1])
    else:
        xp = y[1] if idx == 3 else y[3]
        c2_opts = sorted(pool - avoid - {c_left})
        if not c2_opts:
            raise ExtensionFailed("no color available for the designated vertex")
        c2 = c2_opts[0]
        c3 = min(pool - {c2, c_left})
        c4 = (pool - {c2, c3}).pop()
        out.assign(y[2], 1)
        out.assign(y[4], 1)
        out.assign(y[idx], c2)
        out.assign(xp, c3)
        out.assign(y[5], c4)
        if c4 == c_right:
            out.assignment[y[5]], out.assignment[y[4]] = 1, c4
    cols = [out.assignment[v] for v in interior]
    if not _path_proper(cols, c_left, c_right) or out.assignment[x] in avoid:
        raise ExtensionFailed("4/5-thread recipe produced an invalid extension")
    return out


def _greedy_distinct(f: Coloring, interior: Sequence[int], x: int, avoid,
                     c_left: Optional[int], c_right: Optional[int]) -> Coloring:
    """Use colors 1..t once each, x first, a non-end vertex last."""
    t = len(interior)
    ends = {interior[0], interior[-1]}
    seq = [x] + [v for v in interior if v != x]
    if seq[-1] in ends:
        for j in range(len(seq) - 2, 0, -1):
            if seq[j] not in ends:
                seq[j], seq[-1] = seq[-1], seq[j]
                break
    out = f.copy()
    used = set()
    for v in seq:
        banned = set(used)
        if v == x:
            banned |= set(avoid)
        if v == interior[0] and c_left is not None:
            banned.add(c_left)
        if v == interior[-1] and c_right is not None:
            banned.add(c_right)
        choices = [c for c in range(1, t + 1) if c not in banned]
        if not choices:
            raise ExtensionFailed("greedy 4/5-thread ordering ran out of colors")
        out.assign(v, choices[0])
        used.add(choices[0])
    cols = [out.assignment[v] for v in interior]
    if not _path_proper(cols, c_left, c_right):
        raise ExtensionFailed("greedy 4/5-thread extension is improper")
    return out


def extend_2_thread(g: Graph, f: Coloring, x: int, y1: int, y2: int, y: int,
                    m: int) -> Coloring:
    """Color the interior of the 2-thread x-y1-y2-y with the two smallest classes."""
    if m < 4:
        raise PreconditionViolated("the 2-thread extension needs m >= 4")
    cx, cy = f.color_of(x), f.color_of(y)
    if cx is None or cy is None:
        raise PreconditionViolated("both thread endpoints must be colored")
    if cx == cy:
        raise PreconditionViolated("the endpoints of the 2-thread share a color")
    assert _is_ascending(f)
    out = f.copy()
    if cx != 1 and cy != 2:
        out.assign(y1, 1)
        out.assign(y2, 2)
    else:
        out.assign(y1, 2)
        out.assign(y2, 1)
    if out.assignment[y1] == cx or out.assignment[y2] == cy:
        raise ExtensionFailed("2-thread bijection failed")
    return out


def extend_2_1_thread(g: Graph, f: Coloring, x: int, two_thread: tuple[int, int, int],
                      one_thread: tuple[int, int], m: int) -> Coloring:
    """Color a 2-thread x-y1-y2-y and a 1-thread x-y3-z sharing the vertex x."""
    if m < 4:
        raise PreconditionViolated("the 2-1-thread extension needs m >= 4")
    y1, y2, y = two_thread
    y3, z = one_thread
    cx, cy, cz = f.color_of(x), f.color_of(y), f.color_of(z)
    if cx is None or cy is None or cz is None:
        raise PreconditionViolated("x, y and z must be colored")
    if cx in (cy, cz):
        raise PreconditionViolated("f(x) must avoid both far-end colors")
    assert _is_ascending(f)
    if cx in (1, 2, 3):
        a = cx
    else:
        a = min({1, 2, 3} - {cy})
    b = min({1, 2, 3} - {a, cz})
    c = ({1, 2, 3} - {a, b}).pop()
    out = f.copy()
    out.assign(y2, a)
    out.assign(y3, b)
    out.assign(y1, c)
    if a == cy or b == cz or b == cx or c == cx:
        raise ExtensionFailed("2-1-thread recipe failed")
    return out


@dataclass(frozen=True)
class StarInstance:
    """A subdivided star rooted at `root` with thread lengths in {1, 2, 4}.

    `threads` lists each thread's interior vertices ordered from the root.
    `d_x` is the root's degree in the host graph (threads plus 0-threads).
    """

    root: int
    threads: tuple[tuple[int, ...], ...]
    lists: ListAssignment
    d_x: int

    @property
    def counts(self) -> dict[int, int]:
        out = {0: self.d_x - len(self.threads), 1: 0, 2: 0, 4: 0}
        for th in self.threads:
            out[len(th)] = out.get(len(th), 0) + 1
        return out

    @property
    def s(self) -> int:
        return 1 + sum(len(th) for th in self.threads)

    @property
    def eps(self) -> int:
        return 3 * ceil(self.s / 3) - self.s

    def check_shape(self) -> None:
        cnt = self.counts
        if any(l not in (0, 1, 2, 4) for l in cnt):
            raise PreconditionViolated(f"thread lengths must lie in {{1,2,4}}, got {sorted(cnt)}")
        if cnt[0] < 0:
            raise PreconditionViolated("d_x smaller than the number of threads")
        if len(self.lists.allowed(self.root)) < 2:
            raise PreconditionViolated("root needs at least two allowed colors")
        for th in self.threads:
            for v in th[:-1]:
                if self.lists.allowed(v) != frozenset({1, 2, 3}):
                    raise PreconditionViolated(f"internal vertex {v} must have a full list")
            if len(self.lists.allowed(th[-1])) != 2:
                raise PreconditionViolated(f"leaf {th[-1]} must have a 2-list")


@dataclass(frozen=True)
class PairInstance:
    """Two subdivided stars whose roots x, y are joined by a 1-thread.

    Thread tuples exclude the connecting thread, whose interior is `connector`.
    x plays the full-list root; y may see one outside neighbor.
    """

    x: int
    y: int
    connector: int
    threads_x: tuple[tuple[int, ...], ...]
    threads_y: tuple[tuple[int, ...], ...]
    lists: ListAssignment
    d_x: int
    d_y: int

    def b(self, length: int) -> int:
        n = sum(1 for th in self.threads_x + self.threads_y if len(th) == length)
        return n + 1 if length == 1 else n

    @property
    def s(self) -> int:
        return 3 + sum(len(th) for th in self.threads_x + self.threads_y)

    @property
    def eps(self) -> int:
        return 3 * ceil(self.s / 3) - self.s

    def check_shape(self) -> None:
        for th in self.threads_x + self.threads_y:
            if len(th) not in (1, 2, 4):
                raise PreconditionViolated("thread lengths must lie in {1,2,4}")
            for v in th[:-1]:
                if self.lists.allowed(v) != frozenset({1, 2, 3}):
                    raise PreconditionViolated(f"internal vertex {v} must have a full list")
            if len(self.lists.allowed(th[-1])) != 2:
                raise PreconditionViolated(f"leaf {th[-1]} must have a 2-list")
        if self.lists.allowed(self.x) != frozenset({1, 2, 3}):
            raise PreconditionViolated("root x must have a full list")
        if len(self.lists.allowed(self.y)) < 2:
            raise PreconditionViolated("root y needs at least two allowed colors")
        if self.lists.allowed(self.connector) != frozenset({1, 2, 3}):
            raise PreconditionViolated("connector must have a full list")


def _star_assign(roots: list[int], threads: list[tuple[int, ...]], lists: ListAssignment,
                 p: Sequence[int], root_list: frozenset[int], extra_non_leaf: list[int],
                 s: int) -> dict[int, int]:
    """Shared class-construction core of the one- and two-root reductions.

    Builds the three classes: T_c around the roots and the distance-2 vertices
    of 4-threads, W_c' on the distance-1/3 layer, W_c'' on the rest, then
    repairs leaf/list conflicts by swapping each bad leaf with a partner that
    is only adjacent to c-colored vertices.
    """
    need = ceil(s / 3)
    four = [th for th in threads if len(th) == 4]
    two = [th for th in threads if len(th) == 2]
    one = [th for th in threads if len(th) == 1]

    def s_size(col: int) -> int:
        size = len(roots) + len(four)
        size += sum(1 for th in four if col in lists.allowed(th[-1]))
        size += sum(1 for th in two if col in lists.allowed(th[-1]))
        return size

    candidates = [col for col in sorted(root_list) if s_size(col) >= need]
    if not candidates:
        raise ExtensionFailed("no color admits a large enough independent set")
    c = candidates[0]
    others = sorted({1, 2, 3} - {c}, key=lambda col: (-p[col - 1], col))
    cp, cpp = others

    t_c = set(roots) | {th[1] for th in four}
    leaf_pool = [th[-1] for th in two if c in lists.allowed(th[-1])]
    leaf_pool += [th[-1] for th in four if c in lists.allowed(th[-1])]
    for leaf in leaf_pool:
        if len(t_c) >= p[c - 1]:
            break
        t_c.add(leaf)
    if len(t_c) != p[c - 1]:
        raise ExtensionFailed("could not reach the target size for the root class")

    w_cp = {th[2] for th in four}
    forced = [th[0] for th in two if th[-1] not in t_c]
    w_cp.update(forced)
    if len(w_cp) > p[cp - 1]:
        raise ExtensionFailed("middle class overflows its target size")
    fill_pool = [th[0] for th in four]
    fill_pool += [th[0] for th in two if th[-1] in t_c]
    fill_pool += extra_non_leaf
    for v in fill_pool:
        if len(w_cp) >= p[cp - 1]:
            break
        w_cp.add(v)
    if len(w_cp) != p[cp - 1]:
        raise ExtensionFailed("could not reach the target size for the middle class")

    everything = set()
    for th in threads:
        everything.update(th)
    everything.update(roots)
    everything.update(extra_non_leaf)
    w_cpp = everything - t_c - w_cp
    if len(w_cpp) != p[cpp - 1]:
        raise ExtensionFailed("class sizes do not add up")

    color = {}
    for v in t_c:
        color[v] = c
    for v in w_cp:
        color[v] = cp
    for v in w_cpp:
        color[v] = cpp

    # leaf repairs: swap (z, z*) whenever the last class is not on z's list
    pool = [th[0] for th in four if th[0] in w_cp]
    pool += [th[-2] for th in four if th[-1] in t_c]
    pool += [th[0] for th in two if th[-1] in t_c and th[0] in w_cp]
    for th in two + four:
        z = th[-1]
        if z in w_cpp and cpp not in lists.allowed(z):
            zs = th[-2] if len(th) >= 2 else None
            if zs is None or color.get(zs) != cp:
                raise ExtensionFailed("leaf repair partner missing")
            color[z], color[zs] = cp, cpp
            if zs in pool:
                pool.remove(zs)
    for th in one:
        z = th[0]
        if cpp not in lists.allowed(z):
            if not pool:
                raise ExtensionFailed("ran out of repair partners for 1-thread leaves")
            zs = pool.pop(0)
            color[z], color[zs] = cp, cpp
    return color


def reduce_star(inst: StarInstance, p: Optional[Sequence[int]] = None) -> Coloring:
    """Descending-equitable list coloring of a subdivided star.

    Succeeds exactly when 2*a4 + a2 >= a1 + 1 + eps and a4 >= d(x) - 4; the
    failing profiles are the "bad" vertices of the 3-color argument.
    """
    inst.check_shape()
    cnt = inst.counts
    a4, a2, a1 = cnt.get(4, 0), cnt.get(2, 0), cnt.get(1, 0)
    if inst.d_x > 6:
        raise PreconditionViolated(f"root degree {inst.d_x} exceeds 6")
    if 2 * a4 + a2 < a1 + 1 + inst.eps:
        raise PreconditionViolated("2*a4 + a2 >= a1 + 1 + eps fails")
    if a4 < inst.d_x - 4:
        raise PreconditionViolated("a4 >= d(x) - 4 fails")
    if p is None:
        p = target_sizes(inst.s, 3)
    if list(p) != target_sizes(inst.s, 3):
        raise PreconditionViolated("desired sizes must be the descending equitable profile")
    color = _star_assign([inst.root], list(inst.threads), inst.lists, p,
                         inst.lists.allowed(inst.root), [], inst.s)
    out = Coloring(3, color)
    _check_descending(inst_graph_star(inst), inst.lists, out)
    return out


def reduce_pair(inst: PairInstance, p: Optional[Sequence[int]] = None) -> Coloring:
    """Descending-equitable list coloring of two stars joined by a 1-thread."""
    inst.check_shape()
    b4, b2, b1 = inst.b(4), inst.b(2), inst.b(1)
    if inst.d_x + inst.d_y > 8:
        raise PreconditionViolated(f"d(x) + d(y) = {inst.d_x + inst.d_y} exceeds 8")
    if 2 * b4 + b2 < b1 - 1 + inst.eps:
        raise PreconditionViolated("2*b4 + b2 >= b1 - 1 + eps fails")
    if b4 < 1:
        raise PreconditionViolated("b4 >= 1 fails")
    if p is None:
        p = target_sizes(inst.s, 3)
    if list(p) != target_sizes(inst.s, 3):
        raise PreconditionViolated("desired sizes must be the descending equitable profile")
    color = _star_assign([inst.x, inst.y],
                         list(inst.threads_x) + list(inst.threads_y),
                         inst.lists, p, inst.lists.allowed(inst.y),
                         [inst.connector], inst.s)
    out = Coloring(3, color)
    _check_descending(inst_graph_pair(inst), inst.lists, out)
    return out


def inst_graph_star(inst: StarInstance) -> Graph:
    verts = [inst.root]
    edges = []
    for th in inst.threads:
        prev = inst.root
        for v in th:
            verts.append(v)
            edges.append((prev, v))
            prev = v
    return Graph(verts, edges)


def inst_graph_pair(inst: PairInstance) -> Graph:
    verts = [inst.x, inst.y, inst.connector]
    edges = [(inst.x, inst.connector), (inst.connector, inst.y)]
    for root, threads in ((inst.x, inst.threads_x), (inst.y, inst.threads_y)):
        for th in threads:
            prev = root
            for v in th:
                verts.append(v)
                edges.append((prev, v))
                prev = v
    return Graph(verts, edges)


def _check_descending(h: Graph, lists: ListAssignment, f: Coloring) -> None:
    report = verify_descending_L(h, lists, f)
    if not report.valid:
        raise ExtensionFailed(f"reduction produced an invalid coloring: {report}")


@dataclass(frozen=True)
class DoubleBadShape:
    """The two-bad-vertices-around-y configuration of the 3-color argument.

    The spine is the path v1 w1 x w2 y w3 z w4 v2; x and z each carry a
    4-thread (xs, zs, interiors ordered from x resp. z); y1, when present, is
    the interior of a third 1-thread at y.
    """

    x: int
    y: int
    z: int
    w: tuple[int, int, int, int]
    xs: tuple[int, int, int, int]
    zs: tuple[int, int, int, int]
    y1: Optional[int] = None

    def vertex_list(self) -> list[int]:
        out = [self.x, self.y, self.z, *self.w, *self.xs, *self.zs]
        if self.y1 is not None:
            out.append(self.y1)
        return out


def color_bad_pair_m3(h: Graph, shape: DoubleBadShape, lists: ListAssignment) -> Coloring:
    """The explicit good coloring for two bad vertices around a common neighbor.

    Three pattern classes are laid down along the labeled spine and 4-threads,
    then mapped onto actual colors so y avoids its outside constraint, and
    finally patched by the four (or five) swappable pairs.
    """
    _check_double_bad_shape(h, shape)
    w1, w2, w3, w4 = shape.w
    x1, x2, x3, x4 = shape.xs
    z1, z2, z3, z4 = shape.zs
    u1 = {w1, w4, x1, x3, z3}
    u2 = {w2, w3, x4, z1, z4}
    u3 = {shape.x, shape.y, shape.z, x2, z2}
    ly = lists.allowed(shape.y)
    if shape.y1 is not None:
        u1 = u1 | {shape.y1}
        c1 = 1
        c3 = min(ly & {2, 3})
        c2 = ({2, 3} - {c3}).pop()
    else:
        c3 = min(ly)
        rest = sorted({1, 2, 3} - {c3})
        c1, c2 = rest
    color = {}
    for v in u1:
        color[v] = c1
    for v in u2:
        color[v] = c2
    for v in u3:
        color[v] = c3

    def maybe_swap(leaf, partner):
        if color[leaf] not in lists.allowed(leaf):
            color[leaf], color[partner] = color[partner], color[leaf]

    maybe_swap(w1, w2)
    maybe_swap(w4, w3)
    maybe_swap(x4, x3)
    maybe_swap(z4, z3)
    if shape.y1 is not None:
        maybe_swap(shape.y1, z1)
    out = Coloring(3, color)
    report = verify_descending_L(h, lists, out)
    if not report.valid:
        raise ExtensionFailed(f"double-bad recipe produced an invalid coloring: {report}")
    return out


def _check_double_bad_shape(h: Graph, shape: DoubleBadShape) -> None:
    verts = shape.vertex_list()
    if len(set(verts)) != len(verts):
        raise ShapeMismatch("labeled vertices must be distinct")
    if set(verts) != set(h.vertices):
        raise ShapeMismatch("labels do not cover the subgraph")
    w1, w2, w3, w4 = shape.w
    spine = [(w1, shape.x), (shape.x, w2), (w2, shape.y), (shape.y, w3),
             (w3, shape.z), (shape.z, w4)]
    for root, chain in ((shape.x, shape.xs), (shape.z, shape.zs)):
        prev = root
        for v in chain:
            spine.append((prev, v))
            prev = v
    if shape.y1 is not None:
        spine.append((shape.y, shape.y1))
    for u, v in spine:
        if not h.has_edge(u, v):
            raise ShapeMismatch(f"expected edge ({u}, {v}) missing")
    if h.edge_count != len(spine):
        raise ShapeMismatch("subgraph has extra edges beyond the configuration")
