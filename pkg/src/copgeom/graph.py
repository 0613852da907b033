"""Simple undirected graphs and the operators used by the constructions.

Vertices are the contiguous ids ``0..n-1``.  Every graph may carry a label per
vertex recording where it came from, so results computed on a derived graph
can be traced back to the graph it was built from:

* ``("v", i)``          an original vertex ``i``
* ``("e", j, pos)``     the ``pos``-th interior vertex on the path replacing edge ``j``
* ``("k", i, port)``    the port of knot ``i`` (vertex ``i`` of the source) for
                        its ``port``-th incident edge
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

log = logging.getLogger(__name__)

Label = Hashable


class GraphError(ValueError):
    """Raised for malformed graphs or invalid operator arguments."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[Label, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"neighbors of {v} not sorted/distinct")
            for u in nbrs:
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise GraphError(f"edge {v}-{u} not symmetric")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels length differs from n")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[Label] | None = None
    ) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs),
                   tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``, lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def label(self, v: int) -> Label:
        return self.labels[v] if self.labels is not None else ("v", v)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == self.n

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])


def subdivide(g: Graph, l: int) -> Graph:
    """Replace every edge by a path of length ``l``.

    Original vertices keep their ids; the ``l - 1`` interior vertices of edge
    ``j`` (in :meth:`Graph.edges` order) get the ids
    ``n + j*(l-1) .. n + (j+1)*(l-1) - 1`` running from the lower endpoint.
    """
    if l < 1:
        raise GraphError(f"subdivision length must be >= 1, got {l}")
    labels: list[Label] = [g.label(v) for v in range(g.n)]
    new_edges: list[tuple[int, int]] = []
    nxt = g.n
    for j, (u, v) in enumerate(g.edges()):
        prev = u
        for pos in range(1, l):
            labels.append(("e", j, pos))
            new_edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        new_edges.append((prev, v))
    return Graph.from_edges(nxt, new_edges, labels)


def clique_substitute(g: Graph) -> Graph:
    """The clique substitution K(g).

    Vertex ``v`` becomes a knot of ``deg(v)`` ports, one per incident edge in
    sorted neighbor order; the two ports belonging to an edge are joined.
    Isolated vertices vanish.
    """
    port: dict[tuple[int, int], int] = {}
    labels: list[Label] = []
    for v in range(g.n):
        if not g.adj[v]:
            log.warning("dropping isolated vertex %d in clique substitution", v)
        for i, u in enumerate(g.adj[v]):
            port[(v, u)] = len(labels)
            labels.append(("k", v, i))
    edges: list[tuple[int, int]] = []
    for v in range(g.n):
        ids = [port[(v, u)] for u in g.adj[v]]
        edges.extend((ids[i], ids[j]) for i in range(len(ids)) for j in range(i + 1, len(ids)))
    for u, v in g.edges():
        edges.append((port[(u, v)], port[(v, u)]))
    return Graph.from_edges(len(labels), edges, labels)


def knots(k: Graph) -> dict[Label, list[int]]:
    """Group the vertices of a clique-substituted graph by their knot."""
    out: dict[Label, list[int]] = {}
    for v in range(k.n):
        lab = k.label(v)
        if not (isinstance(lab, tuple) and lab[0] == "k"):
            continue
        out.setdefault(lab[1], []).append(v)
    return out


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests.

    BFS from every vertex; a non-tree edge ``(x, y)`` met from root ``s`` closes
    a walk of length ``d(x) + d(y) + 1`` that contains a cycle no longer than it,
    and the minimum over all roots is exact.
    """
    best = math.inf
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in g.adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def girth_lower_bound(g: Graph) -> int:
    """Lower bound on the cop number: min degree when the girth is at least 5.

    Graphs of girth >= 5 need at least ``min_degree`` cops; otherwise only the
    trivial bound 1 is certified.
    """
    if not g.is_connected():
        raise GraphError("girth_lower_bound needs a connected graph")
    if g.n == 0:
        return 0
    if girth(g) >= 5:
        return max(1, g.min_degree())
    return 1


def is_dismantlable(g: Graph) -> bool:
    """True iff repeatedly deleting dominated vertices reduces g to one vertex.

    A vertex ``u`` is dominated by ``w != u`` when N[u] is a subset of N[w].
    For connected graphs this is exactly the one-cop-win property.
    """
    alive = set(range(g.n))
    closed = [set(g.adj[v]) | {v} for v in range(g.n)]
    changed = True
    while len(alive) > 1 and changed:
        changed = False
        for u in sorted(alive):
            nu = closed[u] & alive
            if any(w != u and nu <= (closed[w] & alive) for w in nu):
                alive.discard(u)
                changed = True
                break
    return len(alive) <= 1


# small named graphs used throughout the tests and CLI


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def dodecahedron_graph() -> Graph:
    """The dodecahedron in Schlegel order.

    Ids 0-4 outer pentagon, 5-14 middle decagon (odd ids hang off the outer
    pentagon, even ids off the inner one), 15-19 inner pentagon.
    """
    return Graph.from_edges(20, dodecahedron_edges())


def dodecahedron_edges() -> list[tuple[int, int]]:
    edges = []
    for j in range(5):
        edges += [
            (j, (j + 1) % 5),
            (j, 5 + 2 * j),
            (5 + 2 * j, 6 + 2 * j),
            (6 + 2 * j, 5 + (2 * j + 2) % 10),
            (6 + 2 * j, 15 + j),
            (15 + j, 15 + (j + 1) % 5),
        ]
    return edges
