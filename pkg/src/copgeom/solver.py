"""Exact solver for the cops-and-robber game.

Rules: the cops are placed first, then the robber (knowing where the cops
are); afterwards the cops move (each to a vertex of its closed neighborhood),
then the robber, and so on.  The cops win once a cop shares the robber's
vertex.  Cops are interchangeable, so configurations are multisets.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels as K
from .graph import Graph, GraphError, clique_substitute, girth_lower_bound, subdivide

log = logging.getLogger(__name__)

DEFAULT_STRATEGY_LIMIT = 10**7


class SolverError(RuntimeError):
    pass


class MemoryLimitExceeded(SolverError):
    pass


@dataclass
class SolveResult:
    k: int
    copwin: bool
    n: int
    state_count: int = 0
    trivial: bool = False
    rounds: int = 0
    winning_placements: list[tuple[int, ...]] = field(default_factory=list)
    capture_time: int | None = None
    best_placement: tuple[int, ...] | None = None
    strategy: dict[tuple[tuple[int, ...], int], tuple[int, ...]] | None = None
    cop_turn_win: np.ndarray | None = field(default=None, repr=False)
    robber_turn_win: np.ndarray | None = field(default=None, repr=False)
    configs: np.ndarray | None = field(default=None, repr=False)
    seconds: float = 0.0

    def is_win(self, cops, robber: int, cops_to_move: bool = True) -> bool:
        """Look up whether a state is won by the cops."""
        if self.cop_turn_win is None:
            raise SolverError("state tables were not kept")
        cops = np.sort(np.asarray(cops, dtype=np.int64))
        binom = K.binomial_table(self.n, self.k)
        s = K.rank_multiset(cops, binom) * self.n + robber
        table = self.cop_turn_win if cops_to_move else self.robber_turn_win
        return bool(table[s])

    def strategy_lines(self) -> Iterator[str]:
        if self.strategy is None:
            return
        for (cops, r), nxt in sorted(self.strategy.items()):
            yield f"S {' '.join(map(str, cops))} {r} -> {' '.join(map(str, nxt))}"


def state_count(n: int, k: int) -> int:
    """Number of game states with anonymous cops, both turns."""
    return math.comb(n + k - 1, k) * n * 2


def estimate_memory(n: int, k: int, want_strategy: bool = False, want_capture_time: bool = False) -> int:
    cop_states = math.comb(n + k - 1, k) * n
    qbytes = 4 if cop_states < 2**31 else 8
    per = 1 + 1 + 2 * qbytes
    per += 2 if want_capture_time else 0
    per += 4 if want_strategy else 0
    return cop_states * per + math.comb(n + k - 1, k) * k * 4


def _closed_csr(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(g.n + 1, dtype=np.int64)
    idx: list[int] = []
    for v in range(g.n):
        idx.append(v)
        idx.extend(g.adj[v])
        ptr[v + 1] = len(idx)
    return ptr, np.asarray(idx, dtype=np.int64)


def is_k_copwin(
    g: Graph,
    k: int,
    want_strategy: bool = False,
    *,
    want_capture_time: bool = False,
    keep_tables: bool = True,
    strategy_limit: int = DEFAULT_STRATEGY_LIMIT,
    mem_limit: int | None = None,
) -> SolveResult:
    """Decide whether ``k`` cops catch the robber on ``g``."""
    if k < 1:
        raise SolverError("k must be positive")
    if g.n < 1:
        raise GraphError("empty graph")
    if not g.is_connected():
        raise GraphError("the solver needs a connected graph")
    if k > g.n:
        log.info("k=%d exceeds n=%d: cops occupy every vertex", k, g.n)
        return SolveResult(k=k, copwin=True, n=g.n, trivial=True, capture_time=0)

    n = g.n
    ncfg = math.comb(n + k - 1, k)
    total = ncfg * n
    if want_strategy and total > strategy_limit:
        log.warning("strategy table for %d states exceeds limit %d; not emitted", total, strategy_limit)
        want_strategy = False
    need = estimate_memory(n, k, want_strategy, want_capture_time)
    if mem_limit is not None and need > mem_limit:
        raise MemoryLimitExceeded(f"solver needs ~{need} bytes, limit is {mem_limit}")

    t0 = time.perf_counter()
    ptr, idx = _closed_csr(g)
    binom = K.binomial_table(n, k)
    cfgs = K.enumerate_configs(n, k, ncfg)
    cnt_dtype = np.uint8 if g.max_degree() + 1 < 256 else np.uint16
    qdtype = np.int32 if total < 2**31 else np.int64
    cop_win = np.zeros(total, dtype=np.uint8)
    rob_cnt = np.zeros(total, dtype=cnt_dtype)
    robq = np.empty(total, dtype=qdtype)
    copq = np.empty(total, dtype=qdtype)
    level = np.zeros(total if want_capture_time else 1, dtype=np.uint16)
    strat = np.zeros(total if want_strategy else 1, dtype=np.int64)
    tail = K.init_states(n, cfgs, ptr, idx, cop_win, rob_cnt, robq)
    rounds = K.propagate(n, k, cfgs, ptr, idx, binom, cop_win, rob_cnt, robq, tail, copq,
                         level, want_capture_time, strat, want_strategy)
    del robq, copq
    good = K.winning_configs(n, ncfg, cop_win)
    copwin = bool(good.any())

    res = SolveResult(k=k, copwin=copwin, n=n, state_count=2 * total, rounds=int(rounds))
    res.winning_placements = [tuple(int(x) for x in cfgs[c]) for c in np.flatnonzero(good)[:1000]]
    if want_capture_time and copwin:
        if rounds >= np.iinfo(np.uint16).max:
            raise SolverError("capture levels overflow")
        worst = K.worst_levels(n, ncfg, level, good)
        wins = np.flatnonzero(good)
        best = wins[np.argmin(worst[wins])]
        res.capture_time = int(worst[best])
        res.best_placement = tuple(int(x) for x in cfgs[best])
    if want_strategy:
        res.strategy = {}
        for s in np.flatnonzero(cop_win):
            c, r = divmod(int(s), n)
            cops = tuple(int(x) for x in cfgs[c])
            target = c if r in cops else int(strat[s])
            res.strategy[(cops, r)] = tuple(int(x) for x in cfgs[target])
    if keep_tables:
        res.cop_turn_win = cop_win.view(bool)
        res.robber_turn_win = rob_cnt == 0
        res.configs = cfgs
    res.seconds = time.perf_counter() - t0
    log.info("k=%d n=%d states=%d copwin=%s rounds=%d in %.1fs",
             k, n, 2 * total, copwin, rounds, res.seconds)
    return res


@dataclass(frozen=True)
class CopNumber:
    value: int | None
    k_max: int
    lower_bound: int

    @property
    def certified_by_girth(self) -> bool:
        return self.value is not None and self.value == self.lower_bound

    def __str__(self) -> str:
        return str(self.value) if self.value is not None else f"> {self.k_max}"


def cop_number(g: Graph, k_max: int, **kw) -> CopNumber:
    """Smallest k <= k_max for which k cops win, else ``value=None``."""
    lb = girth_lower_bound(g)
    for k in range(1, k_max + 1):
        if is_k_copwin(g, k, keep_tables=False, **kw).copwin:
            assert lb <= k, f"girth bound {lb} exceeds solver answer {k}"
            return CopNumber(k, k_max, lb)
    return CopNumber(None, k_max, lb)


def _cn(g: Graph, k_max: int) -> int:
    c = cop_number(g, k_max)
    if c.value is None:
        raise SolverError(f"cop number exceeds k_max={k_max}")
    return c.value


def verify_subdivision_lemma(g: Graph, l: int, k_max: int) -> bool:
    """C(subdivide(g, l)) is C(g) or C(g) + 1."""
    c = _cn(g, k_max)
    c2 = _cn(subdivide(g, l), k_max)
    return c2 in (c, c + 1)


def verify_clique_lemma(g: Graph, k_max: int) -> bool:
    """Clique substitution does not lower the cop number."""
    return _cn(clique_substitute(g), k_max) >= _cn(g, k_max)
