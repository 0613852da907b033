"""The zigzag geometric path between two points and its length adjustment.

In the unit frame A=(0,0), B=(1,0) the path stays in the square S with
diagonal AB, bouncing between the sides AD (x+y=0) and BC (x+y=1).  It is
made of k+1 X-slants, k Y-slants and 2k flats of length r_k; X-slant, flat,
Y-slant triples are the *dents*.  Cutting dents short (and bridging the cut
with one or two new vertices) shortens the path one edge at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import Drawing, path_drawing, similarity_to

SLANT_X, SLANT_Y, FLAT = "X", "Y", "F"


@dataclass(frozen=True)
class GammaParams:
    k: int
    alpha: float
    r: float
    slant_len: float
    x_dir: tuple[float, float]
    y_dir: tuple[float, float]

    @property
    def flat_dir(self) -> tuple[float, float]:
        s = math.sqrt(0.5)
        return (s, -s)

    @property
    def full_length(self) -> int:
        return 4 * self.k * self.k + 6 * self.k + 1

    @property
    def min_length(self) -> int:
        return 5 * self.k + 1

    def check(self) -> None:
        k, r, l = self.k, self.r, self.slant_len
        assert r > math.sqrt(2) / (4 * k + 1)
        assert 2 * r * k < math.sqrt(2) / 2 < l < (2 * k + 1) * r
        assert math.cos(self.alpha) > (4 * k + 1) / (4 * k + 2)
        assert (2 * k + 1) * math.tan(self.alpha) < 1 / (4 * k + 1)


def gamma_params(k: int) -> GammaParams:
    if k < 1:
        raise ValueError("k must be >= 1")
    alpha = math.asin(1 / (2 * (2 * k + 1) ** 2))
    r = math.sqrt(2) / (4 * k) * (1 - (2 * k + 1) * math.tan(alpha))
    slant = math.sqrt(2) / (2 * math.cos(alpha))
    xd = (math.cos(math.pi / 4 - alpha), math.sin(math.pi / 4 - alpha))
    yd = (-math.cos(math.pi / 4 + alpha), -math.sin(math.pi / 4 + alpha))
    p = GammaParams(k, alpha, r, slant, xd, yd)
    p.check()
    return p


@dataclass
class GammaPath:
    params: GammaParams
    A: tuple[float, float]
    B: tuple[float, float]
    points: np.ndarray          # unit-frame vertices, A first, B last
    roles: list[tuple[str, int, int]]   # (role, first vertex, last vertex) per straight piece
    dents: list[tuple[int, int]]        # vertex index range [p_0, q_0] per dent
    dent_lengths: list[int] = field(default_factory=list)

    @property
    def scale(self) -> float:
        return math.dist(self.A, self.B)

    @property
    def r(self) -> float:
        return self.params.r * self.scale

    @property
    def length(self) -> int:
        return len(self.points) - 1

    def world_points(self) -> np.ndarray:
        M, off = similarity_to(self.A, self.B)
        return self.points @ M.T + off

    def drawing(self) -> Drawing:
        return path_drawing(self.world_points(), self.r, construction="gamma", k=self.params.k,
                            length=self.length)


def _unit_gamma(p: GammaParams):
    k = p.k
    X = np.array(p.x_dir) * p.slant_len
    Y = np.array(p.y_dir) * p.slant_len
    F = np.array(p.flat_dir) * p.r
    m = 2 * k + 1
    pts = [np.zeros(2)]
    roles = []
    dents = []

    def slant(vec, role):
        start = len(pts) - 1
        base = pts[-1]
        for i in range(1, m + 1):
            pts.append(base + vec * (i / m))
        roles.append((role, start, len(pts) - 1))

    def flat():
        pts.append(pts[-1] + F)
        roles.append((FLAT, len(pts) - 2, len(pts) - 1))

    for j in range(k):
        p0 = len(pts) - 1
        slant(X, SLANT_X)
        flat()
        slant(Y, SLANT_Y)
        dents.append((p0, len(pts) - 1))
        flat()
    slant(X, SLANT_X)
    pts = np.array(pts)
    # the closing point is B up to rounding; pin it
    assert np.allclose(pts[-1], (1.0, 0.0), atol=1e-12), pts[-1]
    pts[-1] = (1.0, 0.0)
    return pts, roles, dents


def build_gamma(k: int, A=(0.0, 0.0), B=(1.0, 0.0)) -> GammaPath:
    """Fully subdivided zigzag path of length 4k^2 + 6k + 1 from A to B."""
    if math.dist(A, B) == 0:
        raise ValueError("A and B must differ")
    p = gamma_params(k)
    pts, roles, dents = _unit_gamma(p)
    return GammaPath(p, tuple(map(float, A)), tuple(map(float, B)), pts, roles, dents,
                     [4 * k + 3] * k)


def _cross_point(a, b, c, d) -> np.ndarray:
    """Intersection of lines ab and cd."""
    M = np.column_stack([b - a, c - d])
    s, _ = np.linalg.solve(M, c - a)
    return a + s * (b - a)


def _bridge_pair(pt, qt, pn, qn, w, r):
    """Points p' on pn-w and q' on qn-w with |p'q'| <= r < |pt q'| = |qt p'|.

    Bisection on the common offset gives |p'q'| = rho*r; rho is scanned over
    [0.9, 1) and the choice with the largest relative slack wins.
    """
    best = None
    for rho in np.linspace(0.999, 0.9, 34):
        lo, hi = 0.0, 1.0
        for _ in range(80):
            lam = (lo + hi) / 2
            pp = pn + lam * (w - pn)
            qq = qn + lam * (w - qn)
            if np.linalg.norm(pp - qq) > rho * r:
                lo = lam
            else:
                hi = lam
        pp = pn + hi * (w - pn)
        qq = qn + hi * (w - qn)
        far = min(np.linalg.norm(pt - qq), np.linalg.norm(qt - pp))
        slack = min(r - np.linalg.norm(pp - qq), far - r * (1 + 1e-6)) / r
        if best is None or slack > best[0]:
            best = (slack, pp, qq)
    if best[0] <= 0:
        raise RuntimeError("no admissible p', q' for this dent")
    return best[1], best[2]


def dent_replacement(points: np.ndarray, p0: int, k: int, s: int, r: float) -> list[np.ndarray]:
    """New interior vertices of a dent shortened to ``s`` edges (2 <= s <= 4k+2).

    Even ``s`` keeps p_0..p_t and q_t..q_0 with t=(s-2)/2 and bridges them by
    the crossing point w of p_t q_{t+1} and q_t p_{t+1}; odd ``s`` uses
    t=(s-3)/2 and a pair p', q' instead.
    """
    if not 2 <= s <= 4 * k + 2:
        raise ValueError(f"dent length {s} outside 2..{4 * k + 2}")

    def P(i):
        return points[p0 + i]

    def Q(i):
        return points[p0 + 4 * k + 3 - i]

    t = (s - 2) // 2 if s % 2 == 0 else (s - 3) // 2
    w = _cross_point(P(t), Q(t + 1), Q(t), P(t + 1))
    if s % 2 == 0:
        return [w]
    return list(_bridge_pair(P(t), Q(t), P(t + 1), Q(t + 1), w, r))


def dent_plan(k: int, target: int) -> list[int]:
    """Per-dent lengths hitting ``target``, shrinking the last dents first."""
    full = 4 * k * k + 6 * k + 1
    lo = 5 * k + 1
    if not lo <= target <= full:
        raise ValueError(f"target {target} outside [{lo}, {full}] for k={k}")
    deficit = full - target
    lengths = [4 * k + 3] * k
    for j in reversed(range(k)):
        cut = min(deficit, 4 * k + 1)
        lengths[j] -= cut
        deficit -= cut
    return lengths


def adjust_gamma_length(gp: GammaPath, target: int) -> GammaPath:
    """Geometric path from A to B with exactly ``target`` edges."""
    k = gp.params.k
    base = build_gamma(k, gp.A, gp.B)
    lengths = dent_plan(k, target)
    r = gp.params.r
    out: list[np.ndarray] = []
    roles: list[tuple[str, int, int]] = []
    dents: list[tuple[int, int]] = []
    cursor = 0
    pts = base.points
    for (p0, q0), s in zip(base.dents, lengths):
        out.extend(pts[cursor:p0])
        start = len(out)
        if s == 4 * k + 3:
            out.extend(pts[p0:q0 + 1])
        else:
            t = (s - 2) // 2 if s % 2 == 0 else (s - 3) // 2
            out.extend(pts[p0:p0 + t + 1])
            out.extend(dent_replacement(pts, p0, k, s, r))
            out.extend(pts[q0 - t:q0 + 1])
        dents.append((start, len(out) - 1))
        cursor = q0 + 1
    out.extend(pts[cursor:])
    new = np.array(out)
    assert len(new) - 1 == target
    if target == base.length:
        roles = base.roles
    return replace(base, points=new, roles=roles, dents=dents, dent_lengths=lengths)


def in_square(points: np.ndarray, tol: float = 1e-12) -> bool:
    """Unit-frame containment in the square with diagonal (0,0)-(1,0)."""
    x, y = points[:, 0], points[:, 1]
    return bool(np.all((x + y >= -tol) & (x + y <= 1 + tol) & (y - x <= tol) & (y - x >= -1 - tol)))
