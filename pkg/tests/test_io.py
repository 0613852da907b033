import random

import numpy as np
import pytest

from copgeom import io
from copgeom.constructions import build_dodec440
from copgeom.gamma import build_gamma
from copgeom.geometry import Drawing, validate_geometric, validate_planar_drawing
from copgeom.graph import Graph, cycle_graph, path_graph

from oracles import random_connected_graph


def test_graph_round_trip_fuzz():
    rng = random.Random(11)
    for _ in range(100):
        g = random_connected_graph(rng, rng.randint(1, 15), rng.uniform(0.1, 0.8))
        text = io.emit_graph(g)
        h = io.parse_graph(text)
        assert h.n == g.n and sorted(h.edges()) == sorted(g.edges())
        assert io.emit_graph(h) == text


def test_graph_output_is_sorted_and_ignores_comments():
    g = io.parse_graph("# a triangle\np 3 3\n\ne 2 1\ne 0 2\n  e 1 0\n")
    assert io.emit_graph(g) == "p 3 3\ne 0 1\ne 0 2\ne 1 2\n"


@pytest.mark.parametrize("text, fragment", [
    ("p 3 1\ne 1 1\n", "self-loop"),
    ("p 3 2\ne 0 1\ne 1 0\n", "duplicate edge"),
    ("p 3 1\ne 0 3\n", "out of range"),
    ("p 3 2\ne 0 1\n", "announces 2 edges"),
    ("p 3 1\nx 0 1\n", "unknown record"),
    ("e 0 1\n", "expected header"),
    ("", "missing header"),
    ("p 3 1\ne 0 one\n", "integer"),
])
def test_graph_errors(text, fragment):
    with pytest.raises(io.FormatError, match=fragment):
        io.parse_graph(text)


def test_error_carries_line_number():
    with pytest.raises(io.FormatError) as exc:
        io.parse_graph("p 3 2\ne 0 1\n# note\ne 2 2\n")
    assert exc.value.line == 4
    assert str(exc.value).startswith("line 4:")


def test_drawing_round_trip_is_exact():
    d = build_gamma(2).drawing()
    e = io.parse_drawing(io.emit_drawing(d))
    assert e.r == d.r
    assert np.array_equal(e.coords, d.coords)
    assert io.emit_drawing(e) == io.emit_drawing(d)


def test_polyline_round_trip():
    g = path_graph(2)
    geom = {(0, 1): np.array([[0.0, 0.0], [0.5, 0.3], [1.0, 0.0]])}
    d = Drawing(g, [[0, 0], [1, 0]], 2.0, geom)
    e = io.parse_drawing(io.emit_drawing(d))
    assert np.array_equal(e.polyline(0, 1), geom[(0, 1)])
    assert np.array_equal(e.polyline(1, 0), geom[(0, 1)][::-1])


@pytest.mark.parametrize("text, fragment", [
    ("d 2 1 0\nv 0 0 0\nv 1 1 0\ne 0 1\n", "positive"),
    ("d 2 1 -1\nv 0 0 0\nv 1 1 0\ne 0 1\n", "positive"),
    ("d 2 1 1\nv 0 0 0\nv 0 1 0\ne 0 1\n", "duplicate vertex id"),
    ("d 2 1 1\nv 0 0 0\ne 0 1\n", "missing coordinates"),
    ("d 2 1 1\nv 0 0 0\nv 1 nan 0\ne 0 1\n", "finite"),
    ("d 3 1 1\nv 0 0 0\nv 1 1 0\nv 2 2 0\ne 0 1\npl 1 2 0 0 1 1\n", "non-edge"),
])
def test_drawing_errors(text, fragment):
    with pytest.raises(io.FormatError, match=fragment):
        io.parse_drawing(text)


def test_dodec440_survives_a_round_trip(tmp_path):
    d = build_dodec440()
    path = tmp_path / "d440.txt"
    io.save(str(path), d)
    e = io.load_drawing(str(path))
    assert (e.graph.n, e.graph.m) == (440, 450)
    assert validate_geometric(e, 2.0).ok
    assert validate_planar_drawing(e).ok
    # emitting twice yields identical bytes
    io.save(str(tmp_path / "again.txt"), e)
    assert (tmp_path / "again.txt").read_bytes() == path.read_bytes()


def test_load_dispatches_on_header(tmp_path):
    gp = tmp_path / "g.txt"
    io.save(str(gp), cycle_graph(5))
    assert isinstance(io.load(str(gp)), Graph)
    with pytest.raises(io.FormatError, match="expected a drawing"):
        io.load_drawing(str(gp))
    dp = tmp_path / "d.txt"
    io.save(str(dp), build_gamma(1).drawing())
    assert io.load_graph(str(dp)).m == build_gamma(1).length
