"""Plain-text graph and drawing formats.

Graph::

    p <n> <m>
    e <u> <v>          (m lines, emitted sorted with u < v)

Drawing::

    d <n> <m> <r>
    v <id> <x> <y>     (n lines)
    e <u> <v>          (m lines)
    pl <u> <v> <x1> <y1> ...   (optional polyline geometry of a bent edge)

Lines starting with ``#`` and blank lines are ignored.  Reals are written
with 17 significant digits so that doubles survive a round trip.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import Drawing
from .graph import Graph, GraphError


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _records(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield no, s.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", no) from None


def _float(tok: str, no: int, what: str) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise FormatError(f"{what} must be a number, got {tok!r}", no) from None
    if not math.isfinite(x):
        raise FormatError(f"{what} must be finite", no)
    return x


def _edge(parts, no, n, seen):
    if len(parts) != 3:
        raise FormatError("edge record needs 'e <u> <v>'", no)
    u, v = _int(parts[1], no, "vertex id"), _int(parts[2], no, "vertex id")
    if u == v:
        raise FormatError(f"self-loop at vertex {u}", no)
    for x in (u, v):
        if not 0 <= x < n:
            raise FormatError(f"vertex id {x} out of range 0..{n - 1}", no)
    key = (min(u, v), max(u, v))
    if key in seen:
        raise FormatError(f"duplicate edge {key}", no)
    seen.add(key)
    return key


def parse_graph(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for no, parts in _records(text):
        tag = parts[0]
        if header is None:
            if tag != "p" or len(parts) != 3:
                raise FormatError("expected header 'p <n> <m>'", no)
            header = (_int(parts[1], no, "n"), _int(parts[2], no, "m"))
            if header[0] < 0 or header[1] < 0:
                raise FormatError("negative count in header", no)
            continue
        if tag != "e":
            raise FormatError(f"unknown record {tag!r}", no)
        edges.append(_edge(parts, no, header[0], seen))
    if header is None:
        raise FormatError("missing header 'p <n> <m>'")
    if len(edges) != header[1]:
        raise FormatError(f"header announces {header[1]} edges, found {len(edges)}")
    try:
        return Graph.from_edges(header[0], edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def emit_graph(g: Graph) -> str:
    out = [f"p {g.n} {g.m}"]
    out += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def parse_drawing(text: str) -> Drawing:
    header = None
    coords: dict[int, tuple[float, float]] = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    geometry: dict[tuple[int, int], np.ndarray] = {}
    for no, parts in _records(text):
        tag = parts[0]
        if header is None:
            if tag != "d" or len(parts) != 4:
                raise FormatError("expected header 'd <n> <m> <r>'", no)
            n, m = _int(parts[1], no, "n"), _int(parts[2], no, "m")
            r = _float(parts[3], no, "r")
            if not r > 0:
                raise FormatError(f"parameter r must be positive, got {parts[3]}", no)
            if n < 0 or m < 0:
                raise FormatError("negative count in header", no)
            header = (n, m, r)
            continue
        n = header[0]
        if tag == "v":
            if len(parts) != 4:
                raise FormatError("vertex record needs 'v <id> <x> <y>'", no)
            i = _int(parts[1], no, "vertex id")
            if not 0 <= i < n:
                raise FormatError(f"vertex id {i} out of range 0..{n - 1}", no)
            if i in coords:
                raise FormatError(f"duplicate vertex id {i}", no)
            coords[i] = (_float(parts[2], no, "x"), _float(parts[3], no, "y"))
        elif tag == "e":
            edges.append(_edge(parts, no, n, seen))
        elif tag == "pl":
            if len(parts) < 7 or len(parts) % 2 == 0:
                raise FormatError("polyline record needs 'pl <u> <v>' and at least two points", no)
            u, v = _int(parts[1], no, "vertex id"), _int(parts[2], no, "vertex id")
            pts = np.array([_float(t, no, "coordinate") for t in parts[3:]]).reshape(-1, 2)
            geometry[(u, v)] = pts
        else:
            raise FormatError(f"unknown record {tag!r}", no)
    if header is None:
        raise FormatError("missing header 'd <n> <m> <r>'")
    n, m, r = header
    if len(coords) != n:
        missing = sorted(set(range(n)) - set(coords))[:5]
        raise FormatError(f"missing coordinates for vertices {missing}")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    for (u, v) in geometry:
        if (min(u, v), max(u, v)) not in seen:
            raise FormatError(f"polyline for non-edge ({u}, {v})")
    g = Graph.from_edges(n, edges)
    X = np.array([coords[i] for i in range(n)], dtype=float).reshape(-1, 2)
    return Drawing(g, X, r, geometry or None)


def emit_drawing(d: Drawing) -> str:
    g = d.graph
    out = [f"d {g.n} {g.m} {_fmt(d.r)}"]
    out += [f"v {i} {_fmt(x)} {_fmt(y)}" for i, (x, y) in enumerate(d.coords)]
    out += [f"e {u} {v}" for u, v in g.edges()]
    if d.edge_geometry:
        for (u, v) in sorted(d.edge_geometry):
            pts = " ".join(_fmt(c) for c in np.asarray(d.edge_geometry[(u, v)]).ravel())
            out.append(f"pl {u} {v} {pts}")
    return "\n".join(out) + "\n"


def load(path: str) -> Graph | Drawing:
    """Read a graph or drawing file, telling them apart by the header."""
    with open(path) as fh:
        text = fh.read()
    for _, parts in _records(text):
        return parse_drawing(text) if parts[0] == "d" else parse_graph(text)
    raise FormatError(f"{path}: empty file")


def load_graph(path: str) -> Graph:
    obj = load(path)
    return obj.graph if isinstance(obj, Drawing) else obj


def load_drawing(path: str) -> Drawing:
    obj = load(path)
    if not isinstance(obj, Drawing):
        raise FormatError(f"{path}: expected a drawing ('d' header)")
    return obj


def save(path: str, obj: Graph | Drawing) -> None:
    text = emit_drawing(obj) if isinstance(obj, Drawing) else emit_graph(obj)
    with open(path, "w") as fh:
        fh.write(text)
