"""Rerouting edge endings around hexagons so every corner is wider than pi/3.

At a vertex O of degree <= 5 we pick six rays at pi/3 spacing that stay more
than pi/37 away from every incident edge, build two concentric regular
hexagons with corners on those rays, and replace the start of each edge by a
*spoke* from O to a point Q on one hexagon followed by a walk along that
hexagon's boundary to where the edge crosses it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import angle_between, segment_distance

TAU = 2 * math.pi
SIXTH = math.pi / 3
CLEARANCE = math.pi / 37
S_COEFF = 0.5 - math.sqrt(3) / 2 * math.tan(31 * math.pi / 222)


class BendError(ValueError):
    pass


def _wrap(a: float) -> float:
    return a % TAU


def _ccw(a: float, b: float) -> float:
    """Counterclockwise angle from a to b in [0, 2pi)."""
    return (b - a) % TAU


def ray_distance(direction: float, theta0: float) -> float:
    """Angular distance from a direction to the nearest of the six rays."""
    x = (direction - theta0) % SIXTH
    return min(x, SIXTH - x)


@dataclass(frozen=True)
class RaySystem:
    apex: tuple[float, float]
    theta0: float

    @property
    def rays(self) -> list[float]:
        return [_wrap(self.theta0 + j * SIXTH) for j in range(6)]

    def clearance(self, directions) -> float:
        return min((ray_distance(d, self.theta0) for d in directions), default=math.pi / 6)


def find_safe_orientation(apex, directions, clearance: float = CLEARANCE) -> RaySystem:
    """Ray system whose rays all stay more than ``clearance`` from ``directions``.

    Works modulo pi/3: each direction forbids an arc of width 2*clearance for
    theta0; the answer is the midpoint of the widest free gap.
    """
    dirs = [d % SIXTH for d in directions]
    if len(dirs) > 5:
        raise BendError(f"{len(dirs)} directions: at most 5 are supported")
    if not dirs:
        return RaySystem(tuple(apex), 0.0)
    if len(dirs) * 2 * clearance >= SIXTH:
        raise BendError(f"{len(dirs)} directions forbid {len(dirs) * 2 * clearance:.6f} >= pi/3 of rotations")
    # forbidden arcs on the circle of circumference pi/3, as (start, end)
    arcs = sorted(((d - clearance) % SIXTH, 2 * clearance) for d in dirs)
    best_gap, best_mid = -1.0, 0.0
    for i, (start, width) in enumerate(arcs):
        end = start + width
        # coverage can chain through overlapping arcs
        nxt_start = arcs[(i + 1) % len(arcs)][0]
        if i + 1 == len(arcs):
            nxt_start += SIXTH
        gap = nxt_start - end
        if gap > best_gap:
            best_gap, best_mid = gap, (end + gap / 2) % SIXTH
    if best_gap <= 0:
        raise BendError("forbidden arcs cover every rotation")
    rs = RaySystem(tuple(map(float, apex)), best_mid)
    assert rs.clearance(directions) > clearance
    return rs


def hexagon_corners(apex, theta0: float, side: float) -> np.ndarray:
    a = theta0 + SIXTH * np.arange(6)
    return np.asarray(apex, float) + side * np.column_stack([np.cos(a), np.sin(a)])


def hexagon_point(apex, theta0: float, side: float, angle: float) -> np.ndarray:
    """Where the ray from the center at ``angle`` meets the hexagon boundary."""
    off = (angle - theta0) % SIXTH - SIXTH / 2
    rho = side * math.sqrt(3) / 2 / math.cos(off)
    return np.asarray(apex, float) + rho * np.array([math.cos(angle), math.sin(angle)])


def side_length_limit(side: float) -> float:
    """Every segment of a rerouted ending must be longer than this."""
    return S_COEFF * side


@dataclass
class Ending:
    direction: float
    hexagon: int              # 1 = outer (side l1), 2 = inner (side l2)
    spoke_angle: float
    Q: np.ndarray
    C: np.ndarray
    arc: np.ndarray           # boundary walk Q .. C (Q alone if the spoke follows the edge)
    turn: str | None          # "ccw" / "cw" walking from Q to C

    @property
    def bent(self) -> bool:
        return self.turn is not None


@dataclass
class BendPlan:
    vertex: int | None
    apex: np.ndarray
    orientation: RaySystem
    l1: float
    l2: float
    endings: list[Ending]
    margins: dict[str, float] = field(default_factory=dict)

    def side(self, which: int) -> float:
        return self.l1 if which == 1 else self.l2

    def curve(self, i: int, reach: float) -> np.ndarray:
        """Polyline of ending ``i`` from the apex out to distance ``reach`` along the edge."""
        e = self.endings[i]
        end = self.apex + reach * np.array([math.cos(e.direction), math.sin(e.direction)])
        if not e.bent:
            return np.array([self.apex, end])
        return np.vstack([self.apex[None, :], e.arc, end[None, :]])


def _arc_points(apex, theta0, side, start: float, stop: float) -> tuple[np.ndarray, str | None]:
    """Boundary walk on a hexagon from angle ``start`` to ``stop`` the short way."""
    if abs(((stop - start + math.pi) % TAU) - math.pi) < 1e-15:
        return hexagon_point(apex, theta0, side, start)[None, :], None
    ccw = _ccw(start, stop) <= math.pi
    pts = [hexagon_point(apex, theta0, side, start)]
    span = _ccw(start, stop) if ccw else _ccw(stop, start)
    first = (start - theta0) % SIXTH
    if min(first, SIXTH - first) < 1e-12:
        first = 0.0
    # corners passed strictly between start and stop
    step = (SIXTH - first) if ccw else first
    if step == 0:
        step = SIXTH
    t = step
    while t < span - 1e-12:
        ang = start + t if ccw else start - t
        pts.append(hexagon_point(apex, theta0, side, ang))
        t += SIXTH
    pts.append(hexagon_point(apex, theta0, side, stop))
    return np.array(pts), ("ccw" if ccw else "cw")


def make_plan(apex, directions, l1, l2, spokes, hexagons, orientation: RaySystem,
              vertex: int | None = None) -> BendPlan:
    apex = np.asarray(apex, float)
    endings = []
    for phi, th, h in zip(directions, spokes, hexagons):
        side = l1 if h == 1 else l2
        arc, turn = _arc_points(apex, orientation.theta0, side, th, phi)
        endings.append(Ending(phi, h, _wrap(th), arc[0], arc[-1], arc, turn))
    return BendPlan(vertex, apex, orientation, l1, l2, endings)


def _interior_angles(P: np.ndarray) -> list[float]:
    out = []
    for i in range(1, len(P) - 1):
        out.append(angle_between(P[i - 1] - P[i], P[i + 1] - P[i]))
    return out


def _clip_from_apex(P: np.ndarray, rho: float) -> np.ndarray:
    """Drop the part of a polyline that lies within ``rho`` of its first point."""
    apex = P[0]
    d1 = np.linalg.norm(P[1] - apex)
    if d1 <= rho:
        return P[1:]
    u = (P[1] - apex) / d1
    return np.vstack([apex + rho * u, P[1:]])


def check_plan(plan: BendPlan, reach: float) -> dict[str, float]:
    """Slack of the three ending properties (all positive iff they hold).

    * ``segments``: min over ending segments of length / s_pi(e) - 1;
    * ``angles``: min interior angle along each rerouted curve minus pi/3;
    * ``spokes``: min angle between two spokes minus pi/3;
    * ``clearance``: min distance between distinct rerouted curves (outside the
      disk of radius s_1 around the apex) minus the required bound
      min{(sqrt3/2)(l1-l2), l2, (sqrt3/2) s_1, delta}.
    """
    s1 = side_length_limit(plan.l1)
    m_seg = math.inf
    m_ang = math.inf
    curves = []
    for i, e in enumerate(plan.endings):
        s = side_length_limit(plan.side(e.hexagon))
        P = plan.curve(i, reach)
        lim = len(P) - 1 if e.bent else 1
        for j in range(lim):
            m_seg = min(m_seg, np.linalg.norm(P[j + 1] - P[j]) / s - 1)
        for a in _interior_angles(P):
            m_ang = min(m_ang, a - SIXTH)
        curves.append(_clip_from_apex(P, s1))
    sp = sorted(e.spoke_angle for e in plan.endings)
    if len(sp) > 1:
        m_spoke = min(_ccw(sp[i], sp[(i + 1) % len(sp)]) for i in range(len(sp))) - SIXTH
    else:
        m_spoke = math.pi
    delta = _outside_distance(plan, reach)
    bound = min(math.sqrt(3) / 2 * (plan.l1 - plan.l2), plan.l2, math.sqrt(3) / 2 * s1, delta)
    dmin = math.inf
    for a, b in itertools.combinations(range(len(curves)), 2):
        P, Q = curves[a], curves[b]
        for i in range(len(P) - 1):
            for j in range(len(Q) - 1):
                dmin = min(dmin, segment_distance(P[i], P[i + 1], Q[j], Q[j + 1]))
    m = {
        "segments": m_seg,
        "angles": m_ang if m_ang < math.inf else math.pi,
        "spokes": m_spoke,
        "clearance": dmin - bound,
        "clearance_bound": bound,
        "clearance_value": dmin,
        "delta": delta,
    }
    plan.margins = m
    return m


def _outside_distance(plan: BendPlan, reach: float) -> float:
    """Min distance from the part of one original edge outside the inner
    hexagon to another original edge (taken outside the disk of radius s_1)."""
    s1 = side_length_limit(plan.l1)
    outer, full = [], []
    for e in plan.endings:
        u = np.array([math.cos(e.direction), math.sin(e.direction)])
        far = plan.apex + reach * u
        outer.append((hexagon_point(plan.apex, plan.orientation.theta0, plan.l2, e.direction), far))
        full.append((plan.apex + s1 * u, far))
    best = math.inf
    for i, j in itertools.permutations(range(len(outer)), 2):
        best = min(best, segment_distance(*outer[i], *full[j]))
    return best


def plan_ok(m: dict[str, float], tol: float = 1e-9) -> bool:
    # the clearance bound is attained by the untouched edge tails, hence the relative slack
    return (m["segments"] > 0 and m["angles"] > tol and m["spokes"] > tol
            and m["clearance"] >= -1e-12 * m["clearance_bound"])


# spoke search -------------------------------------------------------------


def _in_arc(x: float, a: float, b: float, pad: float) -> bool:
    """x within the short arc between a and b, widened by ``pad``."""
    if _ccw(a, b) > math.pi:
        a, b = b, a
    return _ccw(a - pad, x) <= _ccw(a - pad, b + pad)


def _arcs_overlap(a1, b1, a2, b2, pad) -> bool:
    return (_in_arc(a2, a1, b1, pad) or _in_arc(b2, a1, b1, pad)
            or _in_arc(a1, a2, b2, pad) or _in_arc(b1, a2, b2, pad))


def _hexagon_assignments(dirs, spokes, pad):
    """Hexagon choices for which no two rerouted endings can cross."""
    d = len(dirs)
    out = []
    for hs in itertools.product((1, 2), repeat=d):
        ok = True
        for i, j in itertools.permutations(range(d), 2):
            if hs[i] == hs[j] and i < j and _arcs_overlap(spokes[i], dirs[i], spokes[j], dirs[j], pad):
                ok = False
            elif hs[i] == 1 and hs[j] == 2:
                # an outer arc may not pass where an inner-routed edge leaves,
                # and an inner arc may not pass under an outer spoke
                if _in_arc(dirs[j], spokes[i], dirs[i], pad) or _in_arc(spokes[i], spokes[j], dirs[j], pad):
                    ok = False
            if not ok:
                break
        if ok:
            out.append(hs)
    # alternating patterns first, then fewer inner hexagons
    out.sort(key=lambda hs: (-sum(hs[i] != hs[(i + 1) % d] for i in range(d)) if d > 1 else 0,
                             sum(h == 2 for h in hs)))
    return out


def _spoke_candidates(dirs, theta0, spoke_margin, corner_margin, grid):
    """Order-preserving spoke angle choices, cheapest (least rerouting) first.

    Angles are kept unwrapped near their edge direction so that cyclic order
    becomes plain monotonicity; a min-plus pass over the chain (one per choice
    for the first edge) yields one candidate per starting choice.
    """
    d = len(dirs)
    if d == 1:
        return [(0.0, list(dirs))]
    lo = CLEARANCE + corner_margin
    hi = SIXTH - CLEARANCE - corner_margin
    offsets = lo + (hi - lo) * np.arange(grid) / (grid - 1)
    theta, cost = [], []
    for phi in dirs:
        sec = math.floor(((phi - theta0) % TAU) / SIXTH)
        base = theta0 + (sec + np.arange(-2, 3)) * SIXTH
        th = (base[:, None] + offsets[None, :]).ravel()
        th = phi + (th - phi + math.pi) % TAU - math.pi
        th = th[np.abs(th - phi) > 1e-12]
        # a shift inside the edge's own side must leave a segment QC longer than s
        x = (phi - theta0) % SIXTH - SIXTH / 2
        same = np.floor((th - theta0) / SIXTH) % 6 == sec
        y = (th - theta0) % SIXTH - SIXTH / 2
        short = same & (np.abs(np.tan(y) - np.tan(x)) <= 1.1 * S_COEFF * 2 / math.sqrt(3))
        th = th[~short]
        th = np.concatenate([[phi], th])
        theta.append(th)
        cost.append(np.abs(th - phi))
    gap = SIXTH + spoke_margin
    K0 = len(theta[0])
    acc = np.full((K0, K0), np.inf)
    acc[np.arange(K0), np.arange(K0)] = cost[0]
    back = []
    for i in range(1, d):
        ok = (theta[i][None, :] - theta[i - 1][:, None]) > gap
        tot = acc[:, :, None] + np.where(ok, 0.0, np.inf)[None, :, :]
        arg = np.argmin(tot, axis=1)
        acc = np.take_along_axis(tot, arg[:, None, :], axis=1)[:, 0, :] + cost[i][None, :]
        back.append(arg)
    close = (theta[0][:, None] + TAU - theta[-1][None, :]) > gap
    acc = np.where(close, acc, np.inf)
    out = []
    for c0, c in zip(*np.nonzero(np.isfinite(acc))):
        idx = [int(c)]
        for arg in reversed(back):
            idx.append(int(arg[c0, idx[-1]]))
        idx.reverse()
        out.append((float(acc[c0, c]), [float(theta[i][j]) for i, j in enumerate(idx)]))
    out.sort(key=lambda t: t[0])
    return out


def bend_endings(apex, directions, l1: float, l2: float, *, reach: float | None = None,
                 vertex: int | None = None, spoke_margin: float = math.radians(5),
                 corner_margin: float = math.radians(2), max_candidates: int = 60) -> BendPlan:
    """Reroute the endings of the edges leaving ``apex`` in ``directions``.

    Returns the first plan (least total rerouting) meeting the segment,
    angle, spoke and clearance properties; ``reach`` is how far the edges
    extend (default ``4/3 * l1``).
    """
    if not l1 > l2 > 0:
        raise BendError("need l1 > l2 > 0")
    dirs = [_wrap(d) for d in directions]
    if len(dirs) > 5:
        raise BendError("degree above 5")
    if len(set(np.round(dirs, 12))) < len(dirs):
        raise BendError("two edges leave in the same direction")
    reach = 4 / 3 * l1 if reach is None else reach
    order = sorted(range(len(dirs)), key=lambda i: dirs[i])
    sdirs = [dirs[i] for i in order]
    rs = find_safe_orientation(apex, sdirs)
    best = None
    for sm in (spoke_margin, spoke_margin / 2, 1e-6):
        for _, spokes in _spoke_candidates(sdirs, rs.theta0, sm, corner_margin, 9)[:max_candidates]:
            for hs in _hexagon_assignments(sdirs, spokes, 0.0):
                plan = make_plan(apex, sdirs, l1, l2, spokes, hs, rs, vertex)
                if plan_ok(check_plan(plan, reach)):
                    best = plan
                    break
            if best:
                break
        if best:
            break
    if best is None:
        raise BendError(f"no admissible rerouting for directions {directions}")
    inv = [0] * len(order)
    for pos, i in enumerate(order):
        inv[i] = pos
    best.endings = [best.endings[inv[i]] for i in range(len(dirs))]
    return best


def printed_case_one(apex, directions, l1: float, l2: float) -> BendPlan:
    """The hand-made rerouting for five edges crossing one hexagon side.

    ``directions`` must all lie between two consecutive safe rays.  Spokes and
    hexagons follow the printed recipe: e1 to the corner A_5 of the outer
    hexagon, e2 pi/37 short of A_6 on the inner one, e3 straight, e4 pi/37 past
    A_3 (inner), e5 pi/38 past A_4 (outer), hexagons 1,2,1,2,1.
    """
    dirs = sorted((_wrap(d) for d in directions), reverse=True)
    if len(dirs) != 5:
        raise BendError("case one needs five edges")
    rs = find_safe_orientation(apex, dirs)
    # label corners clockwise starting at the ray just counterclockwise of the edges
    secs = {math.floor(((d - rs.theta0) % TAU) / SIXTH) for d in dirs}
    if len(secs) != 1:
        raise BendError("edges do not share a hexagon side")
    a1 = rs.theta0 + (secs.pop() + 1) * SIXTH

    def A(j):  # corner j, clockwise numbering
        return a1 - (j - 1) * SIXTH

    spokes = [A(5), A(6) - CLEARANCE, dirs[2], A(3) + CLEARANCE, A(4) + math.pi / 38]
    return make_plan(apex, dirs, l1, l2, [_wrap(s) for s in spokes], [1, 2, 1, 2, 1], rs)


# Theorem A pipeline -------------------------------------------------------

import logging  # noqa: E402

from .gamma import adjust_gamma_length, build_gamma, gamma_params  # noqa: E402
from .geometry import Drawing, validate_geometric, validate_planar_drawing  # noqa: E402
from .graph import subdivide  # noqa: E402

log = logging.getLogger(__name__)


class PipelineError(RuntimeError):
    pass


@dataclass
class PipelineConfig:
    a: float
    k: int
    r: float
    L: int
    alpha: float
    lambdas: list[int]
    initial: list[float]
    terminal: list[float]
    endings: list[int]          # E_i: segments used by both endings of edge i
    middles: list[int]          # L - E_i, realized by the gamma chain
    ending_bound: int
    plans: dict[int, BendPlan] = field(default_factory=dict, repr=False)
    attempts: list[str] = field(default_factory=list)

    @property
    def r_k(self) -> float:
        return self.r / self.a

    def check(self) -> None:
        k, lam1, lamm = self.k, min(self.lambdas), max(self.lambdas)
        assert lam1 * k * k >= 10 + 60 * k
        assert lam1 * (3 * k * k + 6 * k + 1) >= lamm * (5 * k + 1)
        assert self.r_k <= min(2 * math.sin(self.alpha / 2), math.sqrt(3) / 2 * 0.093)
        full = 4 * k * k + 6 * k + 1
        for lam, mid in zip(self.lambdas, self.middles):
            assert lam * (5 * k + 1) <= mid <= lam * full
        assert max(self.endings) <= 10 + 60 * k


def min_incident_angle(d: Drawing) -> float:
    best = math.pi
    for v in range(d.graph.n):
        nb = d.graph.adj[v]
        for a, b in itertools.combinations(nb, 2):
            best = min(best, angle_between(d.coords[a] - d.coords[v], d.coords[b] - d.coords[v]))
    return best


def max_scale(d: Drawing) -> float:
    """Largest a with non-incident features more than 3a apart and vertices more than 6a apart."""
    X, g = d.coords, d.graph
    edges = g.edges()
    gap = math.inf
    for (a, b), (c, e) in itertools.combinations(edges, 2):
        if {a, b} & {c, e}:
            continue
        gap = min(gap, segment_distance(X[a], X[b], X[c], X[e]))
    for v in range(g.n):
        for a, b in edges:
            if v not in (a, b):
                gap = min(gap, segment_distance(X[v], X[v], X[a], X[b]))
    vgap = min((np.linalg.norm(X[u] - X[v]) for u, v in itertools.combinations(range(g.n), 2)),
               default=math.inf)
    return min(gap / 3, vgap / 6)


def _walk(P: np.ndarray, s: float, steps: int):
    """Divider walk: up to ``steps`` points along P, each at distance s from the last.

    Returns the points and the arc-length position reached (inf when the walk
    falls off the end early).
    """
    cum = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(P, axis=0).T))])
    out = [P[0]]
    cur = P[0]
    seg, t0 = 0, 0.0
    for _ in range(steps):
        found = False
        while seg < len(P) - 1:
            a, dvec = P[seg], P[seg + 1] - P[seg]
            f = a - cur
            A = dvec @ dvec
            B = 2 * f @ dvec
            C = f @ f - s * s
            disc = B * B - 4 * A * C
            if disc >= 0:
                t = (-B + math.sqrt(disc)) / (2 * A)
                if t0 <= t <= 1:
                    cur = a + t * dvec
                    t0 = t
                    found = True
                    break
            seg, t0 = seg + 1, 0.0
        if not found:
            return out, math.inf
        out.append(cur)
    pos = cum[seg] + t0 * (cum[seg + 1] - cum[seg]) if seg < len(P) - 1 else cum[-1]
    return out, pos


def subdivide_polyline(P: np.ndarray, r: float) -> np.ndarray:
    """Points along P from P[0] to P[-1], consecutive ones at a common distance s <= r.

    Uses the fewest steps possible; s is found by bisection so the last step
    lands on the end point.
    """
    P = np.asarray(P, float)
    total = float(np.sum(np.hypot(*np.diff(P, axis=0).T)))
    smax = r * (1 - 1e-10)
    steps = max(1, math.ceil(np.linalg.norm(P[-1] - P[0]) / smax))
    while True:
        _, pos = _walk(P, smax, steps)
        if pos >= total - 1e-12 * total:
            break
        steps += 1
    lo, hi = 0.0, smax
    for _ in range(200):
        mid = (lo + hi) / 2
        _, pos = _walk(P, mid, steps)
        if pos >= total:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-15 * r:
            break
    pts, _ = _walk(P, lo, steps)
    pts[-1] = P[-1]
    out = np.array(pts)
    assert np.hypot(*np.diff(out, axis=0).T).max() <= r * (1 + 1e-12)
    return out


def _edge_parts(d: Drawing, a: float):
    """Per edge (u < v): lambda, terminal length, and unit direction u -> v."""
    rows = []
    for u, v in d.graph.edges():
        vec = d.coords[v] - d.coords[u]
        l = float(np.linalg.norm(vec))
        lam = math.ceil(l / a - 1e-12) - 5
        term = l - 2 * a - lam * a
        rows.append((lam, term, vec / l))
    return rows


def _vertex_plans(d: Drawing, a: float) -> dict[int, BendPlan]:
    plans = {}
    for v in range(d.graph.n):
        nb = d.graph.adj[v]
        if not nb:
            continue
        dirs = [math.atan2(*(d.coords[w] - d.coords[v])[::-1]) for w in nb]
        plans[v] = bend_endings(d.coords[v], dirs, 1.5 * a, a, reach=2 * a, vertex=v)
    return plans


def _assemble(d: Drawing, a: float, k: int, plans, parts, L: int, endings_pts) -> Drawing:
    g = d.graph
    sub = subdivide(g, L)
    X = np.zeros((sub.n, 2))
    X[:g.n] = d.coords
    for j, ((u, v), (lam, term, unit)) in enumerate(zip(g.edges(), parts)):
        head, tail = endings_pts[j]
        M0, M1 = head[-1], tail[-1]
        mid_total = L - (len(head) - 1) - (len(tail) - 1)
        base, extra = divmod(mid_total, lam)
        chain = [head]
        for i in range(lam):
            A = M0 + (M1 - M0) * (i / lam)
            B = M0 + (M1 - M0) * ((i + 1) / lam) if i + 1 < lam else M1
            gp = adjust_gamma_length(build_gamma(k, A, B), base + (1 if i < extra else 0))
            w = gp.world_points()
            w[-1] = B
            chain.append(w[1:])
        chain.append(tail[::-1][1:])
        pts = np.vstack(chain)
        assert len(pts) == L + 1, (len(pts), L)
        X[g.n + j * (L - 1): g.n + (j + 1) * (L - 1)] = pts[1:-1]
    return Drawing(sub, X, gamma_params(k).r * a,
                   provenance={"construction": "theorem-a", "L": L, "k": k, "a": a})


def theorem_a_pipeline(d: Drawing, *, k: int | None = None, k_max: int = 30, shrink_steps: int = 8,
                       validate: bool = True) -> tuple[Drawing, PipelineConfig]:
    """Equal-length subdivision of a planar straight-line drawing, drawn geometrically.

    Every edge becomes a path of the same length L whose consecutive vertices
    are within r of each other and whose other vertex pairs are farther apart.
    """
    g = d.graph
    if g.max_degree() > 5:
        raise PipelineError("maximum degree above 5")
    if g.m == 0:
        raise PipelineError("no edges")
    if d.edge_geometry:
        raise PipelineError("input must be a straight-line drawing")
    planar = validate_planar_drawing(d)
    if not planar.ok:
        raise PipelineError(f"input drawing is not planar: {planar.violations[:3]}")
    alpha = min_incident_angle(d)
    a_max = max_scale(d) * 0.95
    lengths = [float(np.linalg.norm(d.coords[v] - d.coords[u])) for u, v in g.edges()]
    l_min = min(lengths)
    attempts: list[str] = []
    ks = [k] if k is not None else range(1, k_max + 1)
    for k in ks:
        p = gamma_params(k)
        if p.r > min(2 * math.sin(alpha / 2), math.sqrt(3) / 2 * 0.093):
            attempts.append(f"k={k}: r_k={p.r:.4g} too large for alpha={alpha:.4g}")
            continue
        lam_req = math.ceil((10 + 60 * k) / (k * k))
        a0 = min(a_max, l_min / (lam_req + 5))
        full = 4 * k * k + 6 * k + 1
        for step in range(shrink_steps):
            a = a0 * 0.85 ** step
            parts = _edge_parts(d, a)
            lams = [row[0] for row in parts]
            lam1, lamm = min(lams), max(lams)
            if lam1 * k * k < 10 + 60 * k or lam1 * (3 * k * k + 6 * k + 1) < lamm * (5 * k + 1):
                attempts.append(f"k={k} a={a:.4g}: lambda range {lam1}..{lamm} fails the k inequalities")
                continue
            try:
                plans = _vertex_plans(d, a)
            except BendError as exc:
                attempts.append(f"k={k} a={a:.4g}: {exc}")
                continue
            r = p.r * a
            ends, E = [], []
            for j, (u, v) in enumerate(g.edges()):
                iu = g.adj[u].index(v)
                iv = g.adj[v].index(u)
                head = subdivide_polyline(plans[u].curve(iu, 2 * a), r)
                tail = subdivide_polyline(plans[v].curve(iv, parts[j][1]), r)
                ends.append((head, tail))
                E.append(len(head) + len(tail) - 2)
            L = max(e + lam * (5 * k + 1) for e, lam in zip(E, lams))
            if any(L > e + lam * full for e, lam in zip(E, lams)):
                attempts.append(f"k={k} a={a:.4g}: no common length")
                continue
            cfg = PipelineConfig(a, k, r, L, alpha, lams, [2 * a] * g.m, [row[1] for row in parts],
                                 E, [L - e for e in E], 10 + 15 * math.ceil(1 / p.r), plans, attempts)
            cfg.check()
            out = _assemble(d, a, k, plans, parts, L, ends)
            if validate:
                geo = validate_geometric(out)
                pl = validate_planar_drawing(out) if geo.ok else None
                if not geo.ok or not pl.ok:
                    bad = geo.violations[:3] if not geo.ok else pl.violations[:3]
                    attempts.append(f"k={k} a={a:.4g}: output failed validation {bad}")
                    continue
            log.info("theorem A: k=%d a=%.6g L=%d n=%d", k, a, L, out.graph.n)
            return out, cfg
    raise PipelineError("no admissible (k, a):\n" + "\n".join(attempts[-10:]))


def refine(d: Drawing, m: int) -> Drawing:
    """Split every straight edge into ``m`` equal pieces; the parameter becomes r/m."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return d
    if d.edge_geometry:
        raise ValueError("refine needs a straight-line drawing")
    g = d.graph
    # the old endpoints of an edge become non-adjacent at distance |e|
    E = np.asarray(g.edges(), dtype=np.int64).reshape(-1, 2)
    lengths = np.hypot(*(d.coords[E[:, 1]] - d.coords[E[:, 0]]).T)
    if len(E) and lengths.min() <= d.r / 2:
        j = int(np.argmin(lengths))
        raise ValueError(f"edge {tuple(E[j])} has length {lengths[j]:.6g} <= r/2; "
                         "its endpoints would be too close after refinement")
    sub = subdivide(g, m)
    X = np.zeros((sub.n, 2))
    X[:g.n] = d.coords
    t = np.arange(1, m)[:, None] / m
    for j, (u, v) in enumerate(g.edges()):
        X[g.n + j * (m - 1): g.n + (j + 1) * (m - 1)] = d.coords[u] + t * (d.coords[v] - d.coords[u])
    prov = dict(d.provenance)
    prov.update(refined=m)
    return Drawing(sub, X, d.r / m, provenance=prov)
