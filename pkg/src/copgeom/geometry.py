"""Plane geometry: drawings of graphs and the two drawing validators.

Tolerance policy: double precision throughout.  A pair of vertices is a
violation only when it is on the wrong side of ``r`` by more than
``REL_TOL * r``.  Pairs within that band are reported as *boundary* pairs;
they are accepted for edges and rejected for non-edges, because a non-edge
that close to ``r`` cannot be certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .graph import Graph

REL_TOL = 1e-9

Point = tuple[float, float]


@dataclass
class Drawing:
    graph: Graph
    coords: np.ndarray
    r: float
    edge_geometry: dict[tuple[int, int], np.ndarray] | None = None
    provenance: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.coords = np.asarray(self.coords, dtype=float).reshape(-1, 2)
        if len(self.coords) != self.graph.n:
            raise ValueError(f"{len(self.coords)} coordinates for {self.graph.n} vertices")
        if not self.r > 0:
            raise ValueError("parameter r must be positive")

    def polyline(self, u: int, v: int) -> np.ndarray:
        """Geometry of edge ``uv`` oriented from ``u`` to ``v``."""
        if self.edge_geometry:
            if (u, v) in self.edge_geometry:
                return self.edge_geometry[(u, v)]
            if (v, u) in self.edge_geometry:
                return self.edge_geometry[(v, u)][::-1]
        return self.coords[[u, v]]


@dataclass
class ValidationReport:
    kind: str
    ok: bool
    violations: list[tuple] = field(default_factory=list)
    boundary: list[tuple[int, int, float]] = field(default_factory=list)
    max_edge: float = 0.0
    min_nonedge: float = math.inf
    r: float | None = None

    def summary(self) -> str:
        head = "PASS" if self.ok else "FAIL"
        parts = [f"{self.kind}: {head}"]
        if self.r is not None:
            parts.append(f"r={self.r:.17g} max_edge={self.max_edge:.17g} min_nonedge={self.min_nonedge:.17g}")
            parts.append(f"boundary={len(self.boundary)}")
        parts.append(f"violations={len(self.violations)}")
        return " ".join(parts)


def dist(p, q) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def path_drawing(points: Sequence[Point] | np.ndarray, r: float, **prov) -> Drawing:
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    return Drawing(g, pts, r, provenance=dict(prov))


def validate_geometric(d: Drawing, r: float | None = None, rel_tol: float = REL_TOL) -> ValidationReport:
    """Check that the edges of ``d`` are exactly the pairs within distance r."""
    r = d.r if r is None else r
    eps = rel_tol * r
    X = d.coords
    g = d.graph
    rep = ValidationReport(kind="geometric", ok=True, r=r)
    if g.n < 2:
        return rep
    edges = np.asarray(g.edges(), dtype=np.int64).reshape(-1, 2)
    if len(edges):
        el = np.hypot(*(X[edges[:, 1]] - X[edges[:, 0]]).T)
        rep.max_edge = float(el.max())
        for (u, v), L in zip(edges.tolist(), el.tolist()):
            if L > r + eps:
                rep.violations.append(("long-edge", u, v, L))
            elif L >= r - eps:
                rep.boundary.append((u, v, L))
    tree = cKDTree(X)
    close = tree.query_pairs(r + eps, output_type="ndarray")
    if len(close):
        dl = np.hypot(*(X[close[:, 1]] - X[close[:, 0]]).T)
        for (u, v), L in zip(close.tolist(), dl.tolist()):
            u, v = min(u, v), max(u, v)
            if g.has_edge(u, v):
                continue
            if L < r - eps:
                rep.violations.append(("close-nonedge", u, v, L))
            else:
                rep.boundary.append((u, v, L))
                rep.violations.append(("boundary-nonedge", u, v, L))
    # nearest non-neighbor per vertex lies among the deg+2 nearest points
    kq = min(g.n, g.max_degree() + 2)
    dd, ii = tree.query(X, k=kq)
    dd = dd.reshape(g.n, -1)
    ii = ii.reshape(g.n, -1)
    best = math.inf
    for v in range(g.n):
        nb = set(g.adj[v])
        for L, u in zip(dd[v], ii[v]):
            if u != v and u not in nb:
                best = min(best, float(L))
                break
    rep.min_nonedge = best
    rep.violations.sort(key=lambda t: (t[1], t[2], t[0]))
    rep.boundary.sort()
    rep.ok = not rep.violations
    return rep


def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def segments_intersect(p1, p2, p3, p4, eps: float = 0.0) -> bool:
    """Closed segments p1p2 and p3p4 share a point (within ``eps`` area units)."""
    o1 = _orient(*p1, *p2, *p3)
    o2 = _orient(*p1, *p2, *p4)
    o3 = _orient(*p3, *p4, *p1)
    o4 = _orient(*p3, *p4, *p2)

    def on_seg(a, b, c, o):
        return abs(o) <= eps and min(a[0], b[0]) - 1e-12 <= c[0] <= max(a[0], b[0]) + 1e-12 \
            and min(a[1], b[1]) - 1e-12 <= c[1] <= max(a[1], b[1]) + 1e-12

    if ((o1 > eps and o2 < -eps) or (o1 < -eps and o2 > eps)) and \
            ((o3 > eps and o4 < -eps) or (o3 < -eps and o4 > eps)):
        return True
    return on_seg(p1, p2, p3, o1) or on_seg(p1, p2, p4, o2) or \
        on_seg(p3, p4, p1, o3) or on_seg(p3, p4, p2, o4)


def _collect_segments(d: Drawing, edge_geometry: Mapping | None):
    """Segments as (a_id, b_id, edge) with point ids shared at graph vertices."""
    pts: list[np.ndarray] = [p for p in d.coords]
    segs: list[tuple[int, int, tuple[int, int]]] = []
    for u, v in d.graph.edges():
        if edge_geometry is not None and ((u, v) in edge_geometry or (v, u) in edge_geometry):
            pl = edge_geometry[(u, v)] if (u, v) in edge_geometry else edge_geometry[(v, u)][::-1]
        elif edge_geometry is None:
            pl = d.polyline(u, v)
        else:
            pl = d.coords[[u, v]]
        pl = np.asarray(pl, dtype=float)
        ids = [u]
        for p in pl[1:-1]:
            ids.append(len(pts))
            pts.append(p)
        ids.append(v)
        segs.extend((ids[i], ids[i + 1], (u, v)) for i in range(len(ids) - 1))
    return np.asarray(pts, dtype=float).reshape(-1, 2), segs


def validate_planar_drawing(d: Drawing, edge_geometry: Mapping | None = None,
                            rel_tol: float = REL_TOL) -> ValidationReport:
    """No two edge curves meet except at a common endpoint."""
    P, segs = _collect_segments(d, edge_geometry)
    rep = ValidationReport(kind="planar", ok=True)
    if len(segs) < 2:
        return rep
    A = np.array([s[0] for s in segs])
    B = np.array([s[1] for s in segs])
    mid = (P[A] + P[B]) / 2
    half = np.hypot(*(P[B] - P[A]).T) / 2
    scale = float(np.abs(P).max()) or 1.0
    eps = rel_tol * scale * scale
    tree = cKDTree(mid)
    cand = tree.query_pairs(2 * float(half.max()) + rel_tol * scale, output_type="ndarray")
    for i, j in cand.tolist():
        if np.hypot(*(mid[i] - mid[j])) > half[i] + half[j] + rel_tol * scale:
            continue
        a, b, c, e = A[i], B[i], A[j], B[j]
        shared = {a, b} & {c, e}
        p1, p2, p3, p4 = P[a], P[b], P[c], P[e]
        if not shared:
            if segments_intersect(p1, p2, p3, p4, eps):
                rep.violations.append(("crossing", segs[i][2], segs[j][2]))
            continue
        if len(shared) == 2:
            rep.violations.append(("overlap", segs[i][2], segs[j][2]))
            continue
        # common endpoint: the far ends must not lie on the other segment
        s = shared.pop()
        far_i = p2 if a == s else p1
        far_j = p4 if c == s else p3
        q = P[s]
        if abs(_orient(*q, *far_i, *far_j)) <= eps and \
                np.dot(far_i - q, far_j - q) > 0:
            rep.violations.append(("overlap", segs[i][2], segs[j][2]))
    rep.violations = sorted(set(rep.violations), key=repr)
    rep.ok = not rep.violations
    return rep


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def similarity_to(A: Point, B: Point) -> tuple[np.ndarray, np.ndarray]:
    """Linear part and offset mapping (0,0)->A and (1,0)->B."""
    A = np.asarray(A, float)
    B = np.asarray(B, float)
    v = B - A
    M = np.array([[v[0], -v[1]], [v[1], v[0]]])
    return M, A


def angle_between(u, v) -> float:
    """Unsigned angle in [0, pi] between two direction vectors."""
    return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])


def segment_distance(p1, p2, q1, q2) -> float:
    """Euclidean distance between closed segments p1p2 and q1q2."""
    p1, p2, q1, q2 = (np.asarray(x, float) for x in (p1, p2, q1, q2))
    if segments_intersect(p1, p2, q1, q2):
        return 0.0
    return min(_pt_seg(p1, q1, q2), _pt_seg(p2, q1, q2), _pt_seg(q1, p1, p2), _pt_seg(q2, p1, p2))


def _pt_seg(p, a, b) -> float:
    ab = b - a
    L2 = float(ab @ ab)
    t = 0.0 if L2 == 0 else min(1.0, max(0.0, float((p - a) @ ab) / L2))
    return float(np.hypot(*(a + t * ab - p)))


def polyline_distance(P: np.ndarray, Q: np.ndarray) -> float:
    return min(segment_distance(P[i], P[i + 1], Q[j], Q[j + 1])
               for i in range(len(P) - 1) for j in range(len(Q) - 1))


def polyline_length(P: np.ndarray) -> float:
    P = np.asarray(P, float)
    return float(np.hypot(*np.diff(P, axis=0).T).sum())
