"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
import math
import random

import mpmath
import networkx as nx
import numpy as np

from copgeom.bender import S_COEFF, SIXTH, find_safe_orientation, hexagon_corners
from copgeom.geometry import angle_between, segment_distance
from copgeom.graph import Graph


def naive_copwin(g: Graph, k: int) -> bool:
    """Repeated-sweep fixed point over *ordered* cop tuples, pure Python."""
    closed = [(v,) + g.adj[v] for v in range(g.n)]
    configs = list(itertools.product(range(g.n), repeat=k))
    win_cop = {(c, r): r in c for c in configs for r in range(g.n)}
    win_rob = dict(win_cop)
    changed = True
    while changed:
        changed = False
        for c in configs:
            moves = list(itertools.product(*(closed[x] for x in c)))
            for r in range(g.n):
                if not win_cop[(c, r)] and any(win_rob[(m, r)] for m in moves):
                    win_cop[(c, r)] = True
                    changed = True
                if not win_rob[(c, r)] and all(win_cop[(c, r2)] for r2 in closed[r]):
                    win_rob[(c, r)] = True
                    changed = True
    return any(all(win_cop[(c, r)] for r in range(g.n)) for c in configs)


def naive_cop_number(g: Graph, k_max: int = 3) -> int | None:
    for k in range(1, k_max + 1):
        if naive_copwin(g, k):
            return k
    return None


def from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def small_connected_graphs(max_n: int = 7):
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            yield from_nx(h)


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus independent extra edges."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def brute_girth(g: Graph) -> float:
    h = nx.Graph(g.edges())
    h.add_nodes_from(range(g.n))
    cycles = nx.minimum_cycle_basis(h)
    return min((len(c) for c in cycles), default=math.inf)


def hp(expr: str, dps: int = 50):
    """Evaluate an expression with mpmath at high precision."""
    with mpmath.workdps(dps):
        return eval(expr, {"mp": mpmath, "sqrt": mpmath.sqrt, "asin": mpmath.asin,
                           "tan": mpmath.tan, "cos": mpmath.cos, "pi": mpmath.pi})


# bend plans ------------------------------------------------------------


def _polyline_min_dist(P, Q):
    return min(segment_distance(P[i], P[i + 1], Q[j], Q[j + 1])
               for i in range(len(P) - 1) for j in range(len(Q) - 1))


def recheck_bend_plan(plan, reach):
    """Assert segment lengths, angles and clearance of a bend plan from first principles."""
    l = {1: plan.l1, 2: plan.l2}
    s1 = S_COEFF * plan.l1
    curves = []
    for i, e in enumerate(plan.endings):
        P = plan.curve(i, reach)
        assert np.allclose(P[0], plan.apex)
        if e.bent:
            assert len(e.arc) - 1 <= 4
            for a, b in zip(P[:-1], P[1:]):
                assert np.linalg.norm(b - a) > S_COEFF * l[e.hexagon]
            # Q and C sit on the boundary of the chosen hexagon
            corners = hexagon_corners(plan.apex, plan.orientation.theta0, l[e.hexagon])
            for pt in (e.Q, e.C):
                on = min(segment_distance(pt, pt, corners[j], corners[(j + 1) % 6]) for j in range(6))
                assert on < 1e-12
        for j in range(1, len(P) - 1):
            assert angle_between(P[j - 1] - P[j], P[j + 1] - P[j]) > SIXTH + 1e-9
        u = (P[1] - P[0]) / np.linalg.norm(P[1] - P[0])
        curves.append(np.vstack([P[0] + s1 * u, P[1:]]))
    sp = sorted(e.spoke_angle for e in plan.endings)
    for a, b in zip(sp, sp[1:] + [sp[0] + 2 * math.pi]):
        if len(sp) > 1:
            assert b - a > SIXTH + 1e-9
    # the bound itself, from the original straight edges
    delta = math.inf
    units = [np.array([math.cos(e.direction), math.sin(e.direction)]) for e in plan.endings]
    starts = [_on_inner_hexagon(plan, e.direction) for e in plan.endings]
    for a, b in itertools.permutations(range(len(units)), 2):
        # part of edge a outside the inner hexagon versus all of edge b beyond s1
        start = starts[a]
        delta = min(delta, segment_distance(start, plan.apex + reach * units[a],
                                            plan.apex + s1 * units[b], plan.apex + reach * units[b]))
    bound = min(math.sqrt(3) / 2 * (plan.l1 - plan.l2), plan.l2, math.sqrt(3) / 2 * s1, delta)
    for P, Q in itertools.combinations(curves, 2):
        assert _polyline_min_dist(P, Q) >= bound * (1 - 1e-12)


def _on_inner_hexagon(plan, direction):
    # ray/hexagon intersection by bisection, independent of the library helper
    corners = hexagon_corners(plan.apex, plan.orientation.theta0, plan.l2)
    u = np.array([math.cos(direction), math.sin(direction)])
    edges = np.roll(corners, -1, axis=0) - corners
    lo, hi = 0.0, plan.l2 * 1.01
    for _ in range(60):
        mid = (lo + hi) / 2
        rel = plan.apex + mid * u - corners
        inside = np.all(edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0] >= 0)
        lo, hi = (mid, hi) if inside else (lo, mid)
    return plan.apex + lo * u


def case_one_dirs():
    rs = find_safe_orientation((0, 0), [0.0])
    base = rs.theta0
    return [base + 0.12 + 0.08 * i for i in range(5)]


def case_two_dirs():
    rs = find_safe_orientation((0, 0), [0.0])
    return [rs.theta0 + math.radians(30 + 60 * i) for i in range(5)]
