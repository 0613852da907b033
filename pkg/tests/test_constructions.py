import itertools

import numpy as np
import pytest

from copgeom.constructions import (
    build_dodec440,
    dodecahedron,
    knot_ring_feasible,
    knot_ring_limit,
    theorem_b_combinatorial,
)
from copgeom.geometry import validate_geometric, validate_planar_drawing
from copgeom.graph import (
    GraphError,
    clique_substitute,
    complete_graph,
    cycle_graph,
    dodecahedron_graph,
    girth,
    path_graph,
    star_graph,
    subdivide,
)
from copgeom.solver import cop_number

from oracles import hp, small_connected_graphs


def test_dodecahedron_embedding():
    g, d = dodecahedron()
    assert (g.n, g.m) == (20, 30)
    assert all(g.degree(v) == 3 for v in range(20))
    assert girth(g) == 5
    assert validate_planar_drawing(d).ok


def test_dodec440_counts_and_validity():
    d = build_dodec440()
    assert (d.graph.n, d.graph.m) == (440, 450)
    assert d.graph == subdivide(dodecahedron_graph(), 15)
    rep = validate_geometric(d, 2.0)
    assert rep.ok and rep.max_edge <= 2 and rep.min_nonedge > 2
    assert validate_planar_drawing(d).ok


def test_dodec440_edge_curves():
    d = build_dodec440()
    g = dodecahedron_graph()
    for j, (u, v) in enumerate(g.edges()):
        ids = [u] + list(range(20 + 14 * j, 20 + 14 * (j + 1))) + [v]
        P = d.coords[ids]
        assert len(P) - 1 == 15
        assert np.hypot(*np.diff(P, axis=0).T).max() <= 2
        assert all(d.graph.label(i) == ("e", j, pos) for pos, i in enumerate(ids[1:-1], 1))


def test_dodec440_is_c5_symmetric():
    d = build_dodec440()
    t = 2 * np.pi / 5
    R = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
    # vertex 0 maps to vertex 1 and the inner pentagon rotates with it
    assert np.allclose(R @ d.coords[0], d.coords[1])
    assert np.allclose(R @ d.coords[15], d.coords[16])


def test_knot_ring_boundary():
    lim = float(hp("pi / asin(mp.mpf(1)/3)"))
    assert knot_ring_limit() == pytest.approx(lim, rel=1e-15)
    assert lim == pytest.approx(9.24441, abs=1e-5)
    assert knot_ring_feasible(9).feasible
    assert not knot_ring_feasible(10).feasible
    assert knot_ring_feasible(1).feasible
    with pytest.raises(ValueError):
        knot_ring_feasible(0)


def test_theorem_b_examples():
    out = theorem_b_combinatorial(cycle_graph(5), 2)
    assert (out.graph.n, out.graph.m) == (15, 15)
    assert out.graph.is_connected() and all(out.graph.degree(v) == 2 for v in range(15))
    assert theorem_b_combinatorial(complete_graph(4), 1).graph.n == 12
    assert theorem_b_combinatorial(complete_graph(4), 1).graph == clique_substitute(complete_graph(4))
    p = theorem_b_combinatorial(path_graph(2), 1)
    assert (p.graph.n, p.graph.m) == (2, 1)


def test_theorem_b_structure():
    g = complete_graph(5)
    out = theorem_b_combinatorial(g, 3)
    for v, ports in out.knot_map.items():
        assert len(ports) == g.degree(v)
        for a, b in itertools.combinations(ports, 2):
            assert out.graph.has_edge(a, b)
    # every new vertex lies on a knot-to-knot path of length 3
    new = range(out.clique_graph.n, out.graph.n)
    assert len(new) == 2 * g.m
    assert all(out.graph.degree(v) == 2 for v in new)


def test_theorem_b_rejects_high_degree():
    with pytest.raises(GraphError, match="9.2444"):
        theorem_b_combinatorial(star_graph(10), 1)
    with pytest.raises(GraphError):
        theorem_b_combinatorial(path_graph(3), 0)


def test_theorem_b_certificate_chain():
    for g in small_connected_graphs(6):
        if g.m == 0:
            continue
        c = cop_number(g, 3).value
        ck = cop_number(clique_substitute(g), 4).value
        assert ck >= c
        for l_out in (1, 2):
            co = cop_number(theorem_b_combinatorial(g, l_out).graph, 5).value
            assert co >= c or co == ck + 1
            assert co in (ck, ck + 1)
