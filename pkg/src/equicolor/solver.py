"""Recursive reduction solver: find a reducible configuration, delete, recurse, extend."""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .coloring import Coloring, lists_from_boundary, merge_components, sort_relabel, target_sizes, verify_equitable
from .errors import (
    ExtensionFailed,
    HypothesisViolation,
    Infeasible,
    NoConfigFound,
    PreconditionViolated,
)
from .graphs import Graph, INFINITE, components, delete_vertices, girth, mad_exact
from .lemmas import (
    DoubleBadShape,
    PairInstance,
    StarInstance,
    ascending_step,
    color_bad_pair_m3,
    extend_2_1_thread,
    extend_2_thread,
    extend_45_thread,
    extend_long_thread,
    reduce_star,
    reduce_pair,
)
from .threads import Thread, decompose, threads_at

LONG_THREAD = "LongThread"
EQUAL_ENDPOINT = "EqualEndpointThread"
FOUR_OVERLOAD = "FourVertexOverload"
THREE_OVERLOAD = "ThreeVertexOverload"
BAD_NEIGHBORHOOD = "BadNeighborhood"
M3_LONG_THREAD = "M3LongThread"
M3_STAR = "M3StarViolation"
M3_BAD_PAIR = "M3BadPairThread"
M3_DOUBLE_BAD = "M3DoubleBad"

KINDS = (LONG_THREAD, EQUAL_ENDPOINT, FOUR_OVERLOAD, THREE_OVERLOAD, BAD_NEIGHBORHOOD,
         M3_LONG_THREAD, M3_STAR, M3_BAD_PAIR, M3_DOUBLE_BAD)


@dataclass(frozen=True)
class Config:
    kind: str
    deletion_set: frozenset[int]
    anchors: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "deletion_set": sorted(self.deletion_set)}
        for key, val in sorted(self.anchors.items()):
            if isinstance(val, Thread):
                doc[key] = {"endpoints": list(val.endpoints), "interior": list(val.interior)}
            else:
                doc[key] = val
        return doc


def _oriented(th: Thread, x: int) -> tuple[tuple[int, ...], int]:
    """Interior of `th` ordered away from x, and the far endpoint."""
    if th.endpoints[0] == x:
        return th.interior, th.endpoints[1]
    if th.endpoints[1] == x:
        return tuple(reversed(th.interior)), th.endpoints[0]
    raise ValueError(f"{x} is not an endpoint of {th}")


def _star_vertices(g: Graph, x: int) -> set[int]:
    out = {x}
    for th in threads_at(g, x):
        out.update(th.interior)
    return out


def _thread_deletion(g: Graph, th: Thread) -> frozenset[int]:
    v0 = th.endpoints[0]
    if not th.is_cycle or g.degree(v0) >= 4:
        return frozenset(th.interior)
    off = [w for w in g.neighbors(v0) if w not in th.interior]
    assert len(off) == 1
    x = off[0]
    if g.degree(x) >= 3:
        return frozenset(th.interior) | {v0}
    dropped = {v0, *th.interior}
    prev, cur = v0, x
    while g.degree(cur) == 2:
        dropped.add(cur)
        a, b = g.neighbors(cur)
        nxt = b if a == prev else a
        prev, cur = cur, nxt
    return frozenset(dropped)


def _counts(ths: list[Thread]) -> dict[int, int]:
    out: dict[int, int] = {}
    for th in ths:
        mult = 2 if th.is_cycle else 1
        out[th.length] = out.get(th.length, 0) + mult
    return out


def iter_configs(g: Graph, m: int) -> Iterator[Config]:
    """All detectable reducible configurations, in the fixed priority order.

    Threads first, then vertex overloads by ascending id, then bad-vertex
    neighborhoods. find_config takes the first one.
    """
    m3 = m == 3
    threads = decompose(g)
    for th in threads:
        if th.is_cycle:
            kind = M3_LONG_THREAD if m3 else EQUAL_ENDPOINT
            yield Config(kind, _thread_deletion(g, th), {"thread": th})
        elif (m3 and (th.length == 3 or th.length >= 5)) or (not m3 and th.length >= 3):
            kind = M3_LONG_THREAD if m3 else LONG_THREAD
            yield Config(kind, _thread_deletion(g, th), {"thread": th})

    incident: dict[int, list[Thread]] = {}
    for th in threads:
        for e in set(th.endpoints):
            incident.setdefault(e, []).append(th)

    branch = sorted(incident)
    for x in branch:
        ths = incident[x]
        cnt = _counts(ths)
        d = g.degree(x)
        t = sum(l * n for l, n in cnt.items())
        if m3:
            a4, a2, a1, a0 = (cnt.get(k, 0) for k in (4, 2, 1, 0))
            if d == 3 and t >= 5 and (a4, a2, a1, a0) != (1, 0, 2, 0):
                yield Config(M3_STAR, frozenset(_star_vertices(g, x)), {"x": x})
            elif d == 4 and t >= 8 and (a4, a2, a1, a0) != (2, 0, 0, 2):
                yield Config(M3_STAR, frozenset(_star_vertices(g, x)), {"x": x})
            elif d in (5, 6) and a4 >= d - 1:
                yield Config(M3_STAR, frozenset(_star_vertices(g, x)), {"x": x})
        else:
            a2, a1, a0 = (cnt.get(k, 0) for k in (2, 1, 0))
            if d == 4 and t >= 6:
                yield Config(FOUR_OVERLOAD, frozenset(_star_vertices(g, x)), {"x": x})
            elif d == 3 and t >= 3 and (m >= 5 or (a2, a1, a0) != (1, 2, 0)):
                yield Config(THREE_OVERLOAD, frozenset(_star_vertices(g, x)), {"x": x})

    def is_bad(v: int) -> bool:
        if g.degree(v) != 3 or v not in incident:
            return False
        cnt = _counts(incident[v])
        if m3:
            return (cnt.get(4, 0), cnt.get(2, 0), cnt.get(1, 0), cnt.get(0, 0)) == (1, 0, 2, 0)
        return (cnt.get(2, 0), cnt.get(1, 0), cnt.get(0, 0)) == (1, 2, 0)

    if m != 4 and not m3:
        return
    for x in branch:
        if not is_bad(x):
            continue
        for th in incident[x]:
            if th.length != 1:
                continue
            _, y = _oriented(th, x)
            if m3:
                if g.degree(y) != 3:
                    continue
                if any(t2.length >= 2 for t2 in incident.get(y, ())):
                    dele = _star_vertices(g, x) | _star_vertices(g, y)
                    yield Config(M3_BAD_PAIR, frozenset(dele), {"x": x, "y": y})
                    continue
                others = [z for t2 in incident.get(y, ()) if t2.length == 1
                          for z in [_oriented(t2, y)[1]] if z != x and is_bad(z)]
                if others:
                    z = min(others)
                    dele = (_star_vertices(g, x) | _star_vertices(g, y)
                            | _star_vertices(g, z))
                    yield Config(M3_DOUBLE_BAD, frozenset(dele), {"x": x, "y": y, "z": z})
            else:
                if g.degree(y) == 3:
                    t_y = sum(l * n for l, n in _counts(incident[y]).items())
                    if t_y >= 2:
                        dele = _star_vertices(g, x) | _star_vertices(g, y)
                        yield Config(BAD_NEIGHBORHOOD, frozenset(dele),
                                     {"x": x, "y": y, "case": 1})
                elif g.degree(y) == 4:
                    others = [z for t2 in incident.get(y, ()) if t2.length == 1
                              for z in [_oriented(t2, y)[1]] if z != x and is_bad(z)]
                    if others:
                        z = min(others)
                        dele = (_star_vertices(g, x) | _star_vertices(g, y)
                                | _star_vertices(g, z))
                        yield Config(BAD_NEIGHBORHOOD, frozenset(dele),
                                     {"x": x, "y": y, "z": z, "case": 2})


def find_config(g: Graph, m: int) -> Config:
    """First reducible configuration in the fixed scan order."""
    for cfg in iter_configs(g, m):
        deg_ok = all(
            len(g.neighbors(v) - cfg.deletion_set) >= 2
            for v in g.vertices if v not in cfg.deletion_set
        )
        if not deg_ok:
            raise ExtensionFailed(f"deletion for {cfg.kind} breaks the degree condition")
        return cfg
    raise NoConfigFound(
        "no reducible configuration found; the graph violates the hypotheses "
        "or this is an implementation bug"
    )


# --- extension glue ---------------------------------------------------------


def _pour(host: Coloring, sub: Coloring) -> Coloring:
    out = host.copy()
    for v, c in sorted(sub.assignment.items()):
        out.assign(v, c)
    return out


def _pair_fill(f: Coloring, near: int, far: int, far_block: Optional[int]) -> Coloring:
    """Give two fresh path vertices the two smallest classes; `far` dodges far_block."""
    out = f.copy()
    c_far = 1 if far_block != 1 else 2
    out.assign(far, c_far)
    out.assign(near, 2 if c_far == 1 else 1)
    return out


def _extend_four_overload(g: Graph, f: Coloring, x: int, m: int) -> Coloring:
    ths = [th for th in threads_at(g, x)]
    assert all(not th.is_cycle and th.length <= 2 for th in ths)
    twos = [th for th in ths if th.length == 2]
    ones = [th for th in ths if th.length == 1]
    zeros = [th for th in ths if th.length == 0]
    labeled = [(_oriented(th, x)) for th in twos]

    if len(twos) >= 3:
        (i1, f1), (i2, f2), (i3, f3) = labeled[0], labeled[1], labeled[2]
        fourth = (twos[3:] + ones + zeros)[0]
        i4, f4 = _oriented(fourth, x)
        if fourth.length == 0:
            path = [*reversed(i2), x, *i3]

            def s1(h):
                return extend_45_thread(g, h, path, m, x,
                                        {h.color_of(f1), h.color_of(f4)},
                                        left=f2, right=f3)

            out = ascending_step(f, s1)
            out = ascending_step(out, lambda h: extend_2_thread(g, h, x, i1[0], i1[1], f1, m))
            return out
        path = [*reversed(i3), x, *i4]

        def s1(h):
            return extend_45_thread(g, h, path, m, x,
                                    {h.color_of(f1), h.color_of(f2)},
                                    left=f3, right=f4)

        out = ascending_step(f, s1)
        out = ascending_step(out, lambda h: extend_2_thread(g, h, x, i2[0], i2[1], f2, m))
        out = ascending_step(out, lambda h: extend_2_thread(g, h, x, i1[0], i1[1], f1, m))
        return out

    # exactly two 2-threads and two 1-threads
    assert len(twos) == 2 and len(ones) == 2
    (i1, f1), (i2, f2) = labeled
    (j3, h3), (j4, h4) = _oriented(ones[0], x), _oriented(ones[1], x)
    path = [j3[0], x, *i2]

    def s1(h):
        return extend_45_thread(g, h, path, m, x,
                                {h.color_of(f1), h.color_of(h4)},
                                left=h3, right=f2)

    out = ascending_step(f, s1)
    out = ascending_step(
        out, lambda h: extend_2_1_thread(g, h, x, (i1[0], i1[1], f1), (j4[0], h4), m))
    return out


def _extend_three_overload(g: Graph, f: Coloring, x: int, m: int) -> Coloring:
    ths = threads_at(g, x)
    assert all(not th.is_cycle and th.length <= 2 for th in ths)
    cnt = _counts(ths)
    a2, a1, a0 = (cnt.get(k, 0) for k in (2, 1, 0))
    t = 2 * a2 + a1
    twos = [_oriented(th, x) for th in ths if th.length == 2]
    ones = [_oriented(th, x) for th in ths if th.length == 1]
    zeros = [_oriented(th, x) for th in ths if th.length == 0]

    if (a2, a1, a0) == (1, 2, 0) and m >= 5:
        (i3, y3), = twos
        (i1, y1), (i2, y2) = ones

        def step(h):
            out = h.copy()
            taken: set[int] = set()

            def pick(*banned):
                c = min(c for c in range(1, 6) if c not in taken and c not in banned)
                taken.add(c)
                return c

            a = pick(h.color_of(y1))
            b = pick(h.color_of(y2))
            cc = pick(h.color_of(y3))
            d = pick()
            e = pick()
            out.assign(i1[0], a)
            out.assign(i2[0], b)
            out.assign(i3[1], cc)
            out.assign(x, d)
            out.assign(i3[0], e)
            return out

        return ascending_step(f, step)

    if (a2, a1, a0) == (0, 3, 0):
        def step(h):
            far = [yi for _, yi in ones]
            interiors = [i[0] for i, _ in ones]
            far_colors = [h.color_of(v) for v in far]
            if far_colors[0] == far_colors[1] == far_colors[2]:
                d = far_colors[0]
            else:
                d = 4
            abc = [c for c in (1, 2, 3, 4) if c != d]
            for perm in itertools.permutations(abc):
                if all(perm[i] != far_colors[i] for i in range(3)):
                    out = h.copy()
                    for v, c in zip(interiors, perm):
                        out.assign(v, c)
                    out.assign(x, d)
                    return out
            raise ExtensionFailed("no conflict-free matching for the three 1-threads")

        return ascending_step(f, step)

    if a2 >= 1 and t >= 5:
        (i1, y1) = twos[0]
        rest = twos[1:] + ones
        (ia, ya), (ib, yb) = rest[0], rest[1]
        path = [*reversed(ia), x, *ib]

        def s1(h):
            return extend_45_thread(g, h, path, m, x,
                                    {h.color_of(y1)}, left=ya, right=yb)

        out = ascending_step(f, s1)
        return ascending_step(out, lambda h: extend_2_thread(g, h, x, i1[0], i1[1], y1, m))

    # t in {3, 4} with a 2-thread forces exactly one 0-thread
    assert a2 >= 1 and a0 == 1, f"unexpected overload profile {(a2, a1, a0)}"
    (_, u) = zeros[0]
    rest = twos + ones
    (ia, ya), (ib, yb) = rest[0], rest[1]
    path = [*reversed(ia), x, *ib]

    def s1(h):
        return extend_45_thread(g, h, path, m, x, {h.color_of(u)}, left=ya, right=yb)

    return ascending_step(f, s1)


def _bad_labels(g: Graph, x: int):
    """Label a bad 3-vertex's threads: the 2-thread and the two 1-threads."""
    ths = threads_at(g, x)
    twos = [_oriented(th, x) for th in ths if th.length == 2]
    ones = [_oriented(th, x) for th in ths if th.length == 1]
    assert len(twos) == 1 and len(ones) == 2
    return twos[0], ones


def _extend_bad_neighborhood(g: Graph, f: Coloring, cfg: Config, m: int) -> Coloring:
    x, y = cfg.anchors["x"], cfg.anchors["y"]
    (ix, u1), ones_x = _bad_labels(g, x)
    to_y = [(i, far) for i, far in ones_x if far == y]
    other = [(i, far) for i, far in ones_x if far != y]
    assert len(to_y) == 1 and len(other) == 1
    (x4_i, _), (x3_i, u2) = to_y[0], other[0]
    x4, x3 = x4_i[0], x3_i[0]

    if cfg.anchors["case"] == 1:
        return _extend_bad_case1(g, f, x, y, ix, u1, x3, u2, x4, m)
    return _extend_bad_case2(g, f, cfg, x, y, ix, u1, x3, u2, x4, m)


def _extend_bad_case1(g, f, x, y, ix, u1, x3, u2, x4, m):
    ths_y = threads_at(g, y)
    one_other = [_oriented(th, y) for th in ths_y if th.length == 1
                 and x not in th.vertex_set()]
    assert len(one_other) == 1
    (y1_i, z_far) = one_other[0]
    y1 = y1_i[0]
    third = [th for th in ths_y if th.length in (0, 2) and x not in th.vertex_set()]
    assert len(third) == 1
    b_int, u0 = _oriented(third[0], y)

    out = f
    if third[0].length == 2:
        out = ascending_step(out, lambda h: _pair_fill(h, b_int[0], b_int[1], h.color_of(u0)))
        y_side_block = b_int[0]
    else:
        y_side_block = u0

    def greedy(h):
        res = h.copy()
        taken: set[int] = set()

        def pick(*banned):
            c = min(c for c in range(1, 5) if c not in taken and c not in banned)
            taken.add(c)
            return c

        c1 = pick(h.color_of(u1), h.color_of(u2))
        pick2 = pick(h.color_of(y_side_block))
        c3 = pick(h.color_of(z_far))
        c4 = pick()
        res.assign(x, c1)
        res.assign(y, pick2)
        res.assign(y1, c3)
        res.assign(x4, c4)
        return res

    out = ascending_step(out, greedy)
    return ascending_step(
        out, lambda h: extend_2_1_thread(g, h, x, (ix[0], ix[1], u1), (x3, u2), m))


def _extend_bad_case2(g, f, cfg, x, y, ix, u1, x3, u2, x4, m):
    z = cfg.anchors["z"]
    (iz, u3), ones_z = _bad_labels(g, z)
    to_y = [(i, far) for i, far in ones_z if far == y]
    other = [(i, far) for i, far in ones_z if far != y]
    assert len(to_y) == 1 and len(other) == 1
    (y1_i, _), (z3_i, u4) = to_y[0], other[0]
    y1, z3 = y1_i[0], z3_i[0]

    ths_y = [th for th in threads_at(g, y)
             if x not in th.vertex_set() and z not in th.vertex_set()]
    assert len(ths_y) == 2
    out = f
    colored_side = []   # colored neighbor of y per side
    open_ones = []      # (interior, far endpoint) of still-uncolored 1-threads
    for th in sorted(ths_y, key=lambda t: (t.length, t.endpoints, t.interior)):
        b_int, far = _oriented(th, y)
        if th.length == 2:
            out = ascending_step(out, lambda h, b=b_int, fr=far:
                                 _pair_fill(h, b[0], b[1], h.color_of(fr)))
            colored_side.append(b_int[0])
        elif th.length == 0:
            colored_side.append(far)
        else:
            open_ones.append((b_int[0], far))

    if not open_ones:
        s5, s6 = colored_side

        def middle(h):
            res = h.copy()
            taken: set[int] = set()

            def pick(*banned):
                c = min(c for c in range(1, 5) if c not in taken and c not in banned)
                taken.add(c)
                return c

            cy = pick(h.color_of(s5), h.color_of(s6))
            cy1 = pick()
            cx4 = pick()
            cx = pick()
            res.assign(y, cy)
            res.assign(y1, cy1)
            res.assign(x4, cx4)
            res.assign(x, cx)
            bad = {h.color_of(u1), h.color_of(u2)}
            if res.assignment[x] in bad:
                if res.assignment[x4] not in bad:
                    res.assignment[x], res.assignment[x4] = res.assignment[x4], res.assignment[x]
                elif res.assignment[y1] not in bad:
                    res.assignment[x], res.assignment[y1] = res.assignment[y1], res.assignment[x]
                else:
                    raise ExtensionFailed("cannot steer x away from its far-end colors")
            return res

        out = ascending_step(out, middle)
        out = ascending_step(
            out, lambda h: extend_2_1_thread(g, h, x, (ix[0], ix[1], u1), (x3, u2), m))
        zpath = [z3, z, iz[0], iz[1]]
        out = ascending_step(
            out, lambda h: extend_45_thread(g, h, zpath, m, z, {h.color_of(y1)},
                                            left=u4, right=u3))
        return out

    def middle(h):
        ends = [h.color_of(far) for _, far in open_ones]
        ends += [h.color_of(v) for v in colored_side]
        avoid = set(ends)
        free = [c for c in (1, 2, 3, 4) if c not in avoid]
        rest_verts = [x4, y, y1]
        quota = {c: 1 for c in (1, 2, 3, 4)}
        if len(open_ones) == 2:
            quota[1] = 2
        pairs = [(a, b) for a in free for b in free if a != b]
        for a, b in pairs:
            res = h.copy()
            used = {c: 0 for c in (1, 2, 3, 4)}
            res.assign(open_ones[0][0], a)
            used[a] += 1
            if len(open_ones) == 2:
                res.assign(open_ones[1][0], b)
            else:
                res.assign(y1, b)
            used[b] += 1
            order = rest_verts if len(open_ones) == 2 else [x4, y]
            if _fill_rest(g, h, res, order, used, quota, colored_side, y):
                return res
        raise ExtensionFailed("middle assignment around y is infeasible")

    out = ascending_step(out, middle)
    xpath = [x3, x, ix[0], ix[1]]
    out = ascending_step(
        out, lambda h: extend_45_thread(g, h, xpath, m, x, {h.color_of(x4)},
                                        left=u2, right=u1))
    zpath = [z3, z, iz[0], iz[1]]
    out = ascending_step(
        out, lambda h: extend_45_thread(g, h, zpath, m, z, {h.color_of(y1)},
                                        left=u4, right=u3))
    return out


def _fill_rest(g, base, res, order, used, quota, colored_side, y):
    """Lexicographic completion of the middle assignment around y."""
    if not order:
        return True
    v = order[0]
    for c in (1, 2, 3, 4):
        if used[c] >= quota[c]:
            continue
        conflict = False
        for w in g.neighbors(v):
            cw = res.color_of(w)
            if cw is None:
                cw = base.color_of(w)
            if cw == c:
                conflict = True
                break
        if conflict:
            continue
        res.assign(v, c)
        used[c] += 1
        if _fill_rest(g, base, res, order[1:], used, quota, colored_side, y):
            return True
        used[c] -= 1
        del res.assignment[v]
        res.class_sizes[c - 1] -= 1
    return False


def _extend_m3_star(g: Graph, f: Coloring, x: int) -> Coloring:
    ths = [_oriented(th, x) for th in threads_at(g, x) if th.length > 0]
    star = _star_vertices(g, x)

    def step(h):
        lists = lists_from_boundary(g, star, h, 3)
        inst = StarInstance(root=x, threads=tuple(i for i, _ in ths),
                            lists=lists, d_x=g.degree(x))
        sub = reduce_star(inst, target_sizes(inst.s, 3))
        return _pour(h, sub)

    return ascending_step(f, step)


def _extend_m3_bad_pair(g: Graph, f: Coloring, x: int, y: int) -> Coloring:
    ths_x = threads_at(g, x)
    link = [th for th in ths_x if th.length == 1 and set(th.endpoints) == {x, y}]
    assert link
    connector = link[0].interior[0]
    tx = [_oriented(th, x)[0] for th in ths_x if th.length > 0 and th != link[0]]
    ty = [_oriented(th, y)[0] for th in threads_at(g, y)
          if th.length > 0 and th != link[0]]
    inside = _star_vertices(g, x) | _star_vertices(g, y)

    def step(h):
        lists = lists_from_boundary(g, inside, h, 3)
        inst = PairInstance(x=x, y=y, connector=connector,
                            threads_x=tuple(tx), threads_y=tuple(ty),
                            lists=lists, d_x=g.degree(x), d_y=g.degree(y))
        sub = reduce_pair(inst, target_sizes(inst.s, 3))
        return _pour(h, sub)

    return ascending_step(f, step)


def _extend_m3_double_bad(g: Graph, f: Coloring, x: int, y: int, z: int) -> Coloring:
    def arms(v):
        ths = threads_at(g, v)
        four = [_oriented(th, v) for th in ths if th.length == 4]
        ones = [_oriented(th, v) for th in ths if th.length == 1]
        assert len(four) == 1 and len(ones) == 2
        to_y = [i for i, far in ones if far == y]
        other = [i for i, far in ones if far != y]
        assert len(to_y) == 1 and len(other) == 1
        return four[0][0], to_y[0][0], other[0][0]

    xs, w2, w1 = arms(x)
    zs, w3, w4 = arms(z)
    extra = [th for th in threads_at(g, y)
             if x not in th.vertex_set() and z not in th.vertex_set()]
    assert len(extra) == 1
    y1 = extra[0].interior[0] if extra[0].length == 1 else None
    shape = DoubleBadShape(x=x, y=y, z=z, w=(w1, w2, w3, w4),
                           xs=tuple(xs), zs=tuple(zs), y1=y1)
    inside = set(shape.vertex_list())
    edges = [(u, v) for u, v in g.edges() if u in inside and v in inside]
    h_sub = Graph(inside, edges)

    def step(h):
        lists = lists_from_boundary(g, inside, h, 3)
        sub = color_bad_pair_m3(h_sub, shape, lists)
        return _pour(h, sub)

    return ascending_step(f, step)


def extend_config(g: Graph, cfg: Config, f: Coloring, m: int) -> Coloring:
    """Extend an equitable coloring of g minus the configuration to all of g."""
    if cfg.kind in (LONG_THREAD, EQUAL_ENDPOINT, M3_LONG_THREAD):
        th = cfg.anchors["thread"]
        return ascending_step(f, lambda h: extend_long_thread(g, h, th, m))
    if cfg.kind == FOUR_OVERLOAD:
        return _extend_four_overload(g, f, cfg.anchors["x"], m)
    if cfg.kind == THREE_OVERLOAD:
        return _extend_three_overload(g, f, cfg.anchors["x"], m)
    if cfg.kind == BAD_NEIGHBORHOOD:
        return _extend_bad_neighborhood(g, f, cfg, m)
    if cfg.kind == M3_STAR:
        return _extend_m3_star(g, f, cfg.anchors["x"])
    if cfg.kind == M3_BAD_PAIR:
        return _extend_m3_bad_pair(g, f, cfg.anchors["x"], cfg.anchors["y"])
    if cfg.kind == M3_DOUBLE_BAD:
        return _extend_m3_double_bad(g, f, cfg.anchors["x"], cfg.anchors["y"],
                                     cfg.anchors["z"])
    raise ValueError(f"unknown configuration kind {cfg.kind!r}")


# --- cycles and the top-level driver ----------------------------------------


def color_cycle(n: int, m: int) -> Coloring:
    """Equitable proper m-coloring of C_n, as colors for positions 0..n-1."""
    if n < 3:
        raise PreconditionViolated(f"a cycle needs n >= 3, got {n}")
    if m < 2 or (m == 2 and n % 2 == 1):
        raise Infeasible(f"C_{n} has no proper equitable {m}-coloring")
    quotas = target_sizes(n, m)
    expansion = []
    for c, q in enumerate(quotas, start=1):
        expansion.extend([c] * q)
    positions = list(range(0, n, 2)) + list(range(1, n, 2))
    colors = [0] * n
    for pos, c in zip(positions, expansion):
        colors[pos] = c
    if any(colors[i] == colors[(i + 1) % n] for i in range(n)):
        raise ExtensionFailed("cycle layout produced adjacent repeats")
    return Coloring(m, {i: colors[i] for i in range(n)})


def _cycle_order(g: Graph) -> list[int]:
    start = min(g.vertices)
    order = [start]
    prev, cur = None, start
    while True:
        nbrs = sorted(g.neighbors(cur))
        nxt = nbrs[0] if nbrs[0] != prev else nbrs[1]
        if nxt == start:
            return order
        order.append(nxt)
        prev, cur = cur, nxt


def upper_threshold(g: Graph) -> Optional[int]:
    """3 or 4 when the girth/density hypotheses apply, else None."""
    if g.n == 0 or g.min_degree() < 2:
        raise PreconditionViolated("threshold bounds require min degree >= 2")
    gg = girth(g)
    if gg == INFINITE:
        return None
    density = mad_exact(g)
    if gg >= 14 and density < Fraction(7, 3):
        return 3
    if gg >= 10 and density < Fraction(5, 2):
        return 4
    return None


def check_hypotheses(g: Graph, m: int) -> None:
    if m < 3:
        raise HypothesisViolation(f"m must be at least 3, got {m}")
    if g.n == 0:
        return
    if g.min_degree() < 2:
        raise HypothesisViolation(f"minimum degree {g.min_degree()} < 2")
    gg = girth(g)
    need_girth = 14 if m == 3 else 10
    if gg < need_girth:
        raise HypothesisViolation(f"girth {gg} < {need_girth}")
    density = mad_exact(g)
    bound = Fraction(7, 3) if m == 3 else Fraction(5, 2)
    if density >= bound:
        raise HypothesisViolation(f"mad {density} >= {bound}")


def equitable_color(g: Graph, m: int, check: bool = True,
                    trace: Optional[list] = None,
                    validate: bool = False) -> Coloring:
    """Equitable proper m-coloring via the reduction pipeline.

    With `check` the girth/mad/degree hypotheses are verified up front; with
    `validate` every intermediate extension is re-checked (slow, for tests).
    """
    if check:
        check_hypotheses(g, m)
    elif m < 3:
        raise HypothesisViolation(f"m must be at least 3, got {m}")
    base_girth = girth(g) if validate and g.n else None

    def solve(h: Graph) -> Coloring:
        if h.n == 0:
            return Coloring(m)
        comps = components(h)
        if len(comps) > 1:
            acc = None
            for comp in comps:
                sub = delete_vertices(h, set(h.vertices) - set(comp))
                part = solve(sub)
                if acc is None:
                    acc = part
                else:
                    acc = merge_components(sort_relabel(acc, "descending")[0],
                                           sort_relabel(part, "ascending")[0])
            return acc
        if m >= h.n:
            return Coloring(m, {v: i + 1 for i, v in enumerate(h.vertices)})
        if h.max_degree() <= 2:
            order = _cycle_order(h)
            cyc = color_cycle(len(order), m)
            return Coloring(m, {v: cyc.assignment[i] for i, v in enumerate(order)})
        cfg = find_config(h, m)
        if trace is not None:
            trace.append(cfg)
        sub = delete_vertices(h, cfg.deletion_set)
        if validate:
            assert sub.n == 0 or sub.min_degree() >= 2
            assert sub.n == 0 or girth(sub) >= base_girth
        f = solve(sub)
        out = extend_config(h, cfg, f, m)
        if validate:
            report = verify_equitable(h, out)
            if not report.valid:
                raise ExtensionFailed(f"{cfg.kind} extension invalid: {report}")
        return out

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * g.n + 1000))
    try:
        result = solve(g)
    finally:
        sys.setrecursionlimit(old_limit)
    report = verify_equitable(g, result)
    if not report.valid:
        raise ExtensionFailed(f"final coloring invalid: {report}")
    return result
