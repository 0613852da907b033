"""Named constructions: the dodecahedron, the 440-vertex geometric graph with
cop number three, and the knot-based construction for higher degree."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Drawing, rotation
from .graph import Graph, GraphError, clique_substitute, dodecahedron_graph, subdivide

# ring radii and angular offsets (radians) of the C5-symmetric plane embedding:
# outer pentagon, decagon vertices next to it, decagon vertices next to the
# inner pentagon, inner pentagon
DODECAHEDRON_LAYOUT = dict(outer=10.8, mid_a=6.48, mid_a_turn=0.0, mid_b=8.0, mid_b_turn=0.674,
                           inner=3.68, inner_turn=0.674)


def _ring_point(radius: float, j: int, turn: float) -> np.ndarray:
    t = math.pi / 2 + 2 * math.pi * j / 5 + turn
    return radius * np.array([math.cos(t), math.sin(t)])


def dodecahedron() -> tuple[Graph, Drawing]:
    """The dodecahedron with a straight-line plane embedding.

    The drawing's parameter is set to the longest edge; it is a plane
    embedding, not a geometric representation.
    """
    g = dodecahedron_graph()
    p = DODECAHEDRON_LAYOUT
    X = np.zeros((20, 2))
    for j in range(5):
        X[j] = _ring_point(p["outer"], j, 0.0)
        X[5 + 2 * j] = _ring_point(p["mid_a"], j, p["mid_a_turn"])
        X[6 + 2 * j] = _ring_point(p["mid_b"], j, p["mid_b_turn"])
        X[15 + j] = _ring_point(p["inner"], j, p["inner_turn"])
    longest = max(float(np.linalg.norm(X[u] - X[v])) for u, v in g.edges())
    return g, Drawing(g, X, longest, provenance={"construction": "dodecahedron"})


# The 440-vertex drawing is C5-symmetric. Stored: the four vertices of orbit 0
# (ids 0, 5, 6, 15) followed by the 14 interior points of the six edges of
# orbit 0, in the order of dodecahedron_edges(), each listed from its first
# endpoint. Everything else is a rotation by a multiple of 2pi/5.
# Edges are 1.2 to 1.8 long and non-adjacent pairs at least 2.2 apart, so
# halving every edge still leaves a geometric graph with r = 1.
_DODEC440_ORBIT = np.array([
    (-0.0824, 20.9551),
    (0.3198, 9.9211),
    (-11.7860, 15.6854),
    (-5.4442, 7.4273),
    (-1.8751, 21.1162),
    (-3.6447, 20.7867),
    (-5.4060, 20.4157),
    (-7.1378, 19.9250),
    (-8.8332, 19.3206),
    (-10.4960, 18.6316),
    (-12.1627, 17.9519),
    (-13.7946, 17.1926),
    (-15.1715, 16.0357),
    (-16.2070, 14.5634),
    (-16.9931, 12.9442),
    (-17.8679, 11.3711),
    (-18.6669, 9.7582),
    (-19.3097, 8.0771),
    (-0.3251, 19.4152),
    (-1.5151, 18.9457),
    (-2.6261, 18.3724),
    (-1.9714, 16.7886),
    (-0.7495, 16.8832),
    (0.9083, 17.5751),
    (2.0959, 17.0832),
    (2.0049, 15.4814),
    (0.7889, 15.3086),
    (-0.4272, 14.7063),
    (-0.2873, 13.3771),
    (1.3684, 13.1862),
    (1.4189, 11.9863),
    (0.3034, 11.2544),
    (-1.4452, 9.9145),
    (-1.9082, 11.2916),
    (-2.5907, 12.3448),
    (-2.5628, 13.6018),
    (-2.9821, 14.8027),
    (-4.1153, 15.3390),
    (-4.1948, 16.7150),
    (-4.7942, 17.7689),
    (-6.2936, 17.6720),
    (-6.3246, 16.1626),
    (-7.3786, 15.5723),
    (-8.5578, 16.7520),
    (-9.5611, 15.9171),
    (-10.7255, 16.2700),
    (-12.8832, 15.1893),
    (-13.7418, 14.3508),
    (-14.3803, 13.3340),
    (-13.7574, 12.1501),
    (-14.4538, 11.1335),
    (-15.6200, 10.8264),
    (-15.8963, 9.4715),
    (-14.1743, 8.9499),
    (-12.6411, 9.8863),
    (-11.7235, 8.6513),
    (-11.2649, 7.4390),
    (-9.7310, 7.6922),
    (-8.9955, 6.0506),
    (-8.4825, 4.3282),
    (-10.9829, 14.0799),
    (-11.8098, 13.2091),
    (-11.1333, 11.5706),
    (-9.9604, 11.9728),
    (-8.8382, 12.4762),
    (-8.0652, 10.8551),
    (-6.9077, 11.3329),
    (-6.7009, 13.0264),
    (-5.4753, 13.0783),
    (-4.7672, 11.9740),
    (-4.7737, 10.7395),
    (-3.7248, 10.0125),
    (-3.7247, 8.8056),
    (-5.5009, 8.6499),
    (-6.9726, 6.9907),
    (-6.6851, 5.6096),
    (-5.7913, 4.8075),
    (-5.2683, 3.7077),
    (-5.7509, 2.6075),
    (-7.0901, 2.4637),
    (-7.6868, 1.4142),
    (-7.1133, 0.2572),
    (-5.5826, 0.4139),
    (-4.3274, 0.8443),
    (-3.3302, -0.4054),
    (-4.5648, -1.6702),
    (-5.9055, -1.7856),
    (-7.1971, -1.9675),
])
_SUBDIVISION = 15


def build_dodec440() -> Drawing:
    """The dodecahedron with every edge replaced by a 15-edge path, drawn as a
    geometric graph with parameter r = 2."""
    g = dodecahedron_graph()
    sub = subdivide(g, _SUBDIVISION)
    F = _DODEC440_ORBIT
    X = np.zeros((sub.n, 2))
    base_ids = [0, 5, 6, 15]
    orbit_edges = g.edges()
    index = {e: i for i, e in enumerate(orbit_edges)}
    per = _SUBDIVISION - 1
    for j in range(5):
        R = rotation(2 * math.pi * j / 5)
        for i, v in enumerate(base_ids):
            X[{0: j, 5: 5 + 2 * j, 6: 6 + 2 * j, 15: 15 + j}[v]] = R @ F[i]
        for c, (u, v) in enumerate(_orbit_edges(j)):
            pts = F[4 + c * per: 4 + (c + 1) * per] @ R.T
            if u > v:
                u, v, pts = v, u, pts[::-1]
            e = index[(u, v)]
            X[g.n + e * per: g.n + (e + 1) * per] = pts
    return Drawing(sub, X, 2.0, provenance={"construction": "dodec440", "subdivision": _SUBDIVISION})


def _orbit_edges(j: int) -> list[tuple[int, int]]:
    return [
        (j, (j + 1) % 5),
        (j, 5 + 2 * j),
        (5 + 2 * j, 6 + 2 * j),
        (6 + 2 * j, 5 + (2 * j + 2) % 10),
        (6 + 2 * j, 15 + j),
        (15 + j, 15 + (j + 1) % 5),
    ]


@dataclass(frozen=True)
class KnotRingCheck:
    r: float
    n: int
    feasible: bool
    limit: float


def knot_ring_limit() -> float:
    """Largest knot size bound: pi / arcsin(1/3)."""
    return math.pi / math.asin(1 / 3)


def knot_ring_feasible(n: int, r: float = 1.0) -> KnotRingCheck:
    """Can n knot vertices sit around a ring so that the far ends of their
    r-long endings stay more than r apart?  Holds exactly when n < pi/arcsin(1/3)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lim = knot_ring_limit()
    return KnotRingCheck(r, n, n < lim, lim)


@dataclass
class TheoremBOutput:
    graph: Graph
    knot_map: dict[int, list[int]]
    l_out: int
    clique_graph: Graph


def theorem_b_combinatorial(g: Graph, l_out: int) -> TheoremBOutput:
    """K(g) with every edge between two knots replaced by a path of length l_out.

    Edges inside a knot stay as they are.  New path vertices are labelled
    ("e", j, pos) for the j-th edge of g, counted from the lower endpoint.
    """
    if l_out < 1:
        raise GraphError("l_out must be >= 1")
    if g.max_degree() > 9:
        chk = knot_ring_feasible(g.max_degree())
        raise GraphError(f"maximum degree {g.max_degree()} exceeds 9: knot ring infeasible "
                         f"(needs n < pi/arcsin(1/3) = {chk.limit:.4f})")
    K = clique_substitute(g)
    port = {}
    for p in range(K.n):
        _, v, i = K.label(p)
        port[(v, g.adj[v][i])] = p
    inter = {tuple(sorted((port[(u, v)], port[(v, u)]))) for u, v in g.edges()}
    edges = [e for e in K.edges() if e not in inter]
    labels = [K.label(p) for p in range(K.n)]
    nxt = K.n
    for j, (u, v) in enumerate(g.edges()):
        prev = port[(u, v)]
        for pos in range(1, l_out):
            labels.append(("e", j, pos))
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, port[(v, u)]))
    out = Graph.from_edges(nxt, edges, labels)
    kmap: dict[int, list[int]] = {}
    for (v, _), p in sorted(port.items()):
        kmap.setdefault(v, []).append(p)
    return TheoremBOutput(out, {v: sorted(ps) for v, ps in kmap.items()}, l_out, K)
