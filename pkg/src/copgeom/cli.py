"""Command-line entry point: ``copgeom <command> ...``.

Exit codes: 0 success, 1 a validation or property check failed, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import os
import random
import resource
import sys
import time
import warnings
from dataclasses import asdict, dataclass, field
from typing import Any

from . import io
from .bender import BendError, PipelineError, find_safe_orientation, theorem_a_pipeline
from .constructions import build_dodec440, dodecahedron, theorem_b_combinatorial
from .gamma import adjust_gamma_length, build_gamma, in_square
from .geometry import Drawing, validate_geometric, validate_planar_drawing
from .graph import (
    Graph,
    GraphError,
    clique_substitute,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    star_graph,
    subdivide,
)
from .solver import MemoryLimitExceeded, cop_number, is_k_copwin, verify_clique_lemma, verify_subdivision_lemma

log = logging.getLogger("copgeom")

THREADS_ENV = "COPGEOM_THREADS"


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)        # path -> sha256
    parameters: dict[str, Any] = field(default_factory=dict)
    validators: list[str] = field(default_factory=list)
    solver: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0
    peak_memory_kb: int = 0

    def add_input(self, path: str) -> None:
        with open(path, "rb") as fh:
            self.inputs[path] = hashlib.sha256(fh.read()).hexdigest()

    def finish(self, t0: float) -> None:
        self.wall_time = time.perf_counter() - t0
        self.peak_memory_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, default=str)


class UsageError(Exception):
    pass


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _validate(d: Drawing, report: RunReport, planar: bool = True, r: float | None = None) -> bool:
    geo = validate_geometric(d, r)
    report.validators.append(geo.summary())
    print(geo.summary())
    ok = geo.ok
    if planar:
        pl = validate_planar_drawing(d)
        report.validators.append(pl.summary())
        print(pl.summary())
        ok = ok and pl.ok
    for v in geo.violations[:10]:
        print("  ", v, file=sys.stderr)
    return ok


def _set_threads(n: int | None) -> None:
    n = n or int(os.environ.get(THREADS_ENV, "0") or 0)
    if n > 0:
        import numba
        with warnings.catch_warnings():
            # numba probes every threading layer; an old TBB only produces noise
            warnings.simplefilter("ignore", numba.NumbaWarning)
            numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


# commands -----------------------------------------------------------------


def cmd_copnumber(a, rep: RunReport) -> int:
    _set_threads(a.threads)
    g = io.load_graph(a.graph)
    rep.add_input(a.graph)
    rep.parameters.update(kmax=a.kmax)
    try:
        cn = cop_number(g, a.kmax, mem_limit=a.mem_limit)
    except MemoryLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rep.solver = dict(value=cn.value, k_max=cn.k_max, lower_bound=cn.lower_bound)
    print(str(cn))
    if a.strategy and cn.value is not None:
        res = is_k_copwin(g, cn.value, want_strategy=True, mem_limit=a.mem_limit)
        _write(a.strategy, "\n".join(sorted(res.strategy_lines())) + "\n")
    return 0


def cmd_subdivide(a, rep: RunReport) -> int:
    g = io.load_graph(a.graph)
    rep.add_input(a.graph)
    io.save(a.out, subdivide(g, a.l))
    return 0


def cmd_cliquesub(a, rep: RunReport) -> int:
    g = io.load_graph(a.graph)
    rep.add_input(a.graph)
    io.save(a.out, clique_substitute(g))
    return 0


def cmd_gamma(a, rep: RunReport) -> int:
    gp = build_gamma(a.k, tuple(a.A), tuple(a.B))
    if a.target is not None:
        gp = adjust_gamma_length(gp, a.target)
    d = gp.drawing()
    rep.parameters.update(k=a.k, length=gp.length, r=d.r)
    io.save(a.out, d)
    ok = _validate(d, rep, planar=False) and in_square(gp.points)
    print(f"length={gp.length} r={d.r:.17g} in_square={in_square(gp.points)}")
    return 0 if ok else 1


def cmd_bend(a, rep: RunReport) -> int:
    d = io.load_drawing(a.embedding)
    rep.add_input(a.embedding)
    try:
        out, cfg = theorem_a_pipeline(d, k=a.k)
    except (PipelineError, BendError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rep.parameters.update(a=cfg.a, k=cfg.k, L=cfg.L, r=cfg.r, E=cfg.endings, lambdas=cfg.lambdas,
                          terminal=cfg.terminal)
    rep.validators.append(f"output vertices={out.graph.n} edges={out.graph.m}")
    io.save(a.out, out)
    print(f"k={cfg.k} a={cfg.a:.17g} L={cfg.L} r={cfg.r:.17g} vertices={out.graph.n}")
    return 0


def cmd_construct(a, rep: RunReport) -> int:
    if a.what == "dodec440":
        d = build_dodec440()
        io.save(a.out, d)
        if a.svg:
            from .svg import emit_svg
            _write(a.svg, emit_svg(d))
        return 0 if _validate(d, rep) else 1
    if a.what == "dodecahedron":
        _, d = dodecahedron()
        io.save(a.out, d)
        return 0
    if a.what == "kgraph":
        if not a.graph or a.lout is None:
            raise UsageError("construct kgraph needs --graph and --lout")
        g = io.load_graph(a.graph)
        rep.add_input(a.graph)
        out = theorem_b_combinatorial(g, a.lout)
        rep.parameters.update(l_out=a.lout, n=out.graph.n, m=out.graph.m)
        io.save(a.out, out.graph)
        return 0
    raise UsageError(f"unknown construction {a.what}")


def cmd_validate(a, rep: RunReport) -> int:
    d = io.load_drawing(a.drawing)
    rep.add_input(a.drawing)
    return 0 if _validate(d, rep, planar=not a.no_planar, r=a.r) else 1


def cmd_svg(a, rep: RunReport) -> int:
    from .svg import emit_svg
    d = io.load_drawing(a.drawing)
    rep.add_input(a.drawing)
    _write(a.out, emit_svg(d, show_disks=a.disks, vertex_radius=a.vertex_radius))
    return 0


def lemma_corpus(seed: int = 0, count: int = 20, n_max: int = 8) -> list[Graph]:
    """Small connected graphs: named ones plus seeded random ones."""
    rng = random.Random(seed)
    out = [path_graph(4), cycle_graph(4), cycle_graph(5), complete_graph(4), star_graph(4), petersen_graph()]
    while len(out) < 6 + count:
        n = rng.randint(3, n_max)
        p = rng.uniform(0.25, 0.7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            out.append(g)
    return out


def cmd_verify_lemmas(a, rep: RunReport) -> int:
    corpus = lemma_corpus(a.seed, a.count)
    bad = 0
    sub_ok = sum(verify_subdivision_lemma(g, l, 4) for g in corpus for l in (2, 3))
    print(f"subdivision lemma: {sub_ok}/{2 * len(corpus)} pass")
    bad += 2 * len(corpus) - sub_ok
    small = [g for g in corpus if g.n <= 8 and g.m <= 14]
    cl_ok = sum(verify_clique_lemma(g, 4) for g in small)
    print(f"clique lemma: {cl_ok}/{len(small)} pass")
    bad += len(small) - cl_ok
    rng = random.Random(a.seed)
    orient_ok = 0
    for _ in range(a.directions):
        dirs = [rng.uniform(0, 2 * math.pi) for _ in range(rng.randint(1, 5))]
        rs = find_safe_orientation((0.0, 0.0), dirs)
        orient_ok += rs.clearance(dirs) > math.pi / 37
    print(f"orientation lemma: {orient_ok}/{a.directions} pass")
    bad += a.directions - orient_ok
    rep.solver = dict(subdivision=sub_ok, clique=cl_ok, orientation=orient_ok)
    return 0 if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="copgeom", description="cops and robbers on geometric graphs")
    p.add_argument("--report", help="write a JSON run report here")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("copnumber", help="cop number of a graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--kmax", type=int, required=True)
    s.add_argument("--strategy")
    s.add_argument("--threads", type=int)
    s.add_argument("--mem-limit", type=int)
    s.set_defaults(func=cmd_copnumber)

    s = sub.add_parser("subdivide", help="replace every edge by a path")
    s.add_argument("--graph", required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("cliquesub", help="clique substitution")
    s.add_argument("--graph", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_cliquesub)

    s = sub.add_parser("gamma", help="zigzag geometric path")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--target", type=int)
    s.add_argument("--A", type=float, nargs=2, default=(0.0, 0.0))
    s.add_argument("--B", type=float, nargs=2, default=(1.0, 0.0))
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("bend", help="equal-length geometric subdivision of a plane embedding")
    s.add_argument("--embedding", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_bend)

    s = sub.add_parser("construct", help="built-in constructions")
    s.add_argument("what", choices=["dodec440", "dodecahedron", "kgraph"])
    s.add_argument("--out", required=True)
    s.add_argument("--svg")
    s.add_argument("--graph")
    s.add_argument("--lout", type=int)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("validate", help="check a drawing")
    s.add_argument("--drawing", required=True)
    s.add_argument("--r", type=float)
    s.add_argument("--no-planar", action="store_true")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("svg", help="render a drawing")
    s.add_argument("--drawing", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--disks", action="store_true")
    s.add_argument("--vertex-radius", type=float)
    s.set_defaults(func=cmd_svg)

    s = sub.add_parser("verify-lemmas", help="property suites on a bundled corpus")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--directions", type=int, default=10_000)
    s.set_defaults(func=cmd_verify_lemmas)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    rep = RunReport(command=a.command)
    t0 = time.perf_counter()
    try:
        code = a.func(a, rep)
    except (io.FormatError, GraphError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 2
    rep.finish(t0)
    if a.report:
        _write(a.report, rep.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
