import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from copgeom.graph import (
    Graph,
    GraphError,
    clique_substitute,
    complete_graph,
    cycle_graph,
    dodecahedron_graph,
    girth,
    girth_lower_bound,
    is_dismantlable,
    knots,
    path_graph,
    petersen_graph,
    star_graph,
    subdivide,
)

from oracles import brute_girth, random_connected_graph


@st.composite
def graphs(draw, max_n=9, connected=False):
    n = draw(st.integers(1 if not connected else 2, max_n))
    rng = random.Random(draw(st.integers(0, 10**6)))
    if connected:
        return random_connected_graph(rng, n, draw(st.floats(0, 0.6)))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph.from_edges(n, [e for e in pairs if rng.random() < 0.4])


def test_invariants_rejected():
    with pytest.raises(GraphError, match="self-loop"):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError, match="duplicate"):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()))


def test_subdivide_examples():
    k2 = complete_graph(2)
    assert subdivide(k2, 1) == k2
    c6 = subdivide(cycle_graph(3), 2)
    assert c6.n == 6 and c6.m == 6 and all(c6.degree(v) == 2 for v in range(6))
    assert girth(c6) == 6
    d = subdivide(dodecahedron_graph(), 15)
    assert (d.n, d.m) == (440, 450)


def test_subdivide_rejects_zero():
    with pytest.raises(GraphError):
        subdivide(complete_graph(2), 0)


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(1, 4))
def test_subdivide_counts_and_labels(g, l):
    s = subdivide(g, l)
    assert s.n == g.n + g.m * (l - 1)
    assert s.m == g.m * l
    for v in range(g.n, s.n):
        assert s.label(v)[0] == "e" and s.degree(v) == 2
    if math.isfinite(girth(g)):
        assert girth(s) == l * girth(g)


def test_clique_substitute_examples():
    p3 = clique_substitute(path_graph(3))
    assert p3 == path_graph(4).relabel([0, 1, 2, 3]) or (p3.n, p3.m) == (4, 3)
    assert sorted(p3.degree(v) for v in range(4)) == [1, 1, 2, 2]
    kk4 = clique_substitute(complete_graph(4))
    assert (kk4.n, kk4.m) == (12, 18)
    c10 = clique_substitute(cycle_graph(5))
    assert (c10.n, c10.m) == (10, 10) and girth(c10) == 10


def test_clique_substitute_drops_isolated(caplog):
    g = Graph.from_edges(3, [(0, 1)])
    k = clique_substitute(g)
    assert (k.n, k.m) == (2, 1)
    assert "isolated" in caplog.text


def _k4_oracle():
    # ports: (v, u) for each ordered adjacent pair; knot edges + matching edges
    ports = [(v, u) for v in range(4) for u in range(4) if u != v]
    knot = [(a, b) for a in ports for b in ports if a < b and a[0] == b[0]]
    match = [(a, b) for a in ports for b in ports if a < b and a == (b[1], b[0])]
    return len(ports), len(knot) + len(match)


def test_clique_substitute_k4_matches_hand_count():
    k = clique_substitute(complete_graph(4))
    assert (k.n, k.m) == _k4_oracle()


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_clique_substitute_structure(g):
    k = clique_substitute(g)
    assert k.n == 2 * g.m
    assert k.m == g.m + sum(math.comb(g.degree(v), 2) for v in range(g.n))
    groups = knots(k)
    owner = {v: key for key, vs in groups.items() for v in vs}
    for key, vs in groups.items():
        assert len(vs) == g.degree(key)
        for a in vs:
            assert all(k.has_edge(a, b) for b in vs if b != a)
            assert sum(owner[b] != key for b in k.adj[a]) == 1


def test_girth_examples():
    tree = Graph.from_edges(5, [(0, 1), (0, 2), (2, 3), (2, 4)])
    assert girth(tree) == math.inf
    assert girth(dodecahedron_graph()) == 5
    assert girth(subdivide(dodecahedron_graph(), 15)) == 75
    assert girth(petersen_graph()) == 5
    assert girth(complete_graph(4)) == 3


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_girth_matches_cycle_basis(g):
    assert girth(g) == brute_girth(g)


def test_girth_lower_bound():
    assert girth_lower_bound(dodecahedron_graph()) == 3
    assert girth_lower_bound(petersen_graph()) == 3
    assert girth_lower_bound(complete_graph(4)) == 1
    with pytest.raises(GraphError):
        girth_lower_bound(Graph.from_edges(3, [(0, 1)]))


def test_dodecahedron_shape():
    d = dodecahedron_graph()
    assert (d.n, d.m) == (20, 30)
    assert all(d.degree(v) == 3 for v in range(20))
    assert d.is_connected()


def test_dismantlable_examples():
    assert is_dismantlable(star_graph(4))
    assert is_dismantlable(complete_graph(5))
    assert not is_dismantlable(cycle_graph(4))
    assert not is_dismantlable(petersen_graph())
