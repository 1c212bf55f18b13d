"""Scratch: design and verify gadget skeletons (not part of the package)."""
import sys
sys.path.insert(0, "src")
from fractions import Fraction
from equicolor.graphs import Graph, girth, mad_exact
from equicolor.generators import _from_skeleton
from equicolor.solver import find_config, iter_configs, equitable_color
from equicolor.coloring import verify_equitable


def check(name, n_skel, edges, expect_kind, m, girth_min, mad_max):
    g = _from_skeleton(edges, n_skel)
    gg = girth(g)
    mu = mad_exact(g)
    ok = True
    if g.min_degree() < 2:
        print(f"{name}: FAIL min degree {g.min_degree()}")
        ok = False
    if gg < girth_min:
        print(f"{name}: FAIL girth {gg} < {girth_min}")
        ok = False
    if mu >= mad_max:
        print(f"{name}: FAIL mad {mu} >= {mad_max}")
        ok = False
    if not ok:
        return None
    cfg = find_config(g, m)
    if cfg.kind != expect_kind:
        print(f"{name}: FAIL first config {cfg.kind} (want {expect_kind}) anchors={cfg.anchors}")
        return None
    f = equitable_color(g, m, validate=True)
    assert verify_equitable(g, f).valid
    kinds = sorted({c.kind for c in iter_configs(g, m)})
    print(f"{name}: OK n={g.n} m_edges={g.edge_count} girth={gg} mad={mu} kinds={kinds}")
    return g


# ---- FourVertexOverload: x with four 2-threads into two plain rings ----------
def four_overload():
    # skeleton ids: x=1; ring A: 2..17 (16); ring B: 18..29 (12)
    x = 1
    A = list(range(2, 18))
    B = list(range(18, 30))
    edges = []
    for i in range(16):
        edges.append((A[i], A[(i + 1) % 16], 1))
    for i in range(12):
        edges.append((B[i], B[(i + 1) % 12], 1))
    for pos in (0, 4, 8, 12):
        edges.append((x, A[pos], 3))
    free = [1, 2, 3, 5, 6, 7, 9, 10, 11, 13, 14, 15]
    for rank, pos in enumerate(free):
        edges.append((A[pos], B[(5 * rank) % 12], 3))
    return check("FourVertexOverload", 29, edges, "FourVertexOverload", 4, 10, Fraction(5, 2))


# ---- ThreeVertexOverload: mirrored (2,0,1) pair over the same fabric --------
def three_overload():
    x, xp = 1, 2
    A = list(range(3, 19))
    B = list(range(19, 31))
    edges = [(x, xp, 1)]
    for i in range(16):
        edges.append((A[i], A[(i + 1) % 16], 1))
    for i in range(12):
        edges.append((B[i], B[(i + 1) % 12], 1))
    edges += [(x, A[0], 3), (x, A[8], 3), (xp, A[4], 3), (xp, A[12], 3)]
    free = [1, 2, 3, 5, 6, 7, 9, 10, 11, 13, 14, 15]
    for rank, pos in enumerate(free):
        edges.append((A[pos], B[(5 * rank) % 12], 3))
    return check("ThreeVertexOverload", 30, edges, "ThreeVertexOverload", 4, 10, Fraction(5, 2))


# ---- M3BadPairThread: alternating ring of bads and (0,1,2,0)-vertices -------
def m3_bad_pair():
    # 12-cycle of 1-threads alternating bad x_i and y_i; bads carry 4-threads
    # matched across; ys carry 2-threads matched across.
    xs = [1, 3, 5, 7, 9, 11]
    ys = [2, 4, 6, 8, 10, 12]
    ring = list(range(1, 13))
    edges = []
    for i in range(12):
        edges.append((ring[i], ring[(i + 1) % 12], 2))
    edges += [(1, 7, 5), (3, 9, 5), (5, 11, 5)]
    edges += [(2, 8, 3), (4, 10, 3), (6, 12, 3)]
    return check("M3BadPairThread", 12, edges, "M3BadPairThread", 3, 14, Fraction(7, 3))


if __name__ == "__main__":
    four_overload()
    three_overload()
    m3_bad_pair()
