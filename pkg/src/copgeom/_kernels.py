"""Numba kernels for the cops-and-robber fixed point.

State layout: cop configurations are nondecreasing k-tuples ranked in colex
order of the strictly increasing tuple ``b_i = c_i + i`` (a combination of
``n + k - 1``), so ``rank = sum_i C(b_i, i + 1)``.  A state is
``cfg * n + robber``; the two turns live in separate arrays.
"""

from __future__ import annotations

import numba as nb
import numpy as np


def binomial_table(n: int, k: int) -> np.ndarray:
    t = np.zeros((n + k + 1, k + 2), dtype=np.int64)
    for a in range(n + k + 1):
        t[a, 0] = 1
        for b in range(1, min(a, k + 1) + 1):
            t[a, b] = t[a - 1, b - 1] + (t[a - 1, b] if b <= a - 1 else 0)
    return t


@nb.njit(cache=True)
def rank_multiset(c, binom):
    r = 0
    for i in range(c.shape[0]):
        r += binom[c[i] + i, i + 1]
    return r


@nb.njit(cache=True)
def enumerate_configs(n, k, ncfg):
    """All nondecreasing k-tuples over 0..n-1 in rank order."""
    out = np.empty((ncfg, k), dtype=np.int32)
    b = np.arange(k).astype(np.int64)
    top = n + k - 1
    for idx in range(ncfg):
        for i in range(k):
            out[idx, i] = b[i] - i
        # colex successor
        i = 0
        while i < k:
            limit = b[i + 1] if i + 1 < k else top
            if b[i] + 1 < limit:
                b[i] += 1
                for j in range(i):
                    b[j] = j
                break
            i += 1
    return out


@nb.njit(cache=True)
def _contains(cfgs, c, v):
    for i in range(cfgs.shape[1]):
        if cfgs[c, i] == v:
            return True
    return False


@nb.njit(cache=True)
def init_states(n, cfgs, ptr, idx, cop_win, rob_cnt, robq):
    """Mark captured states, count robber escapes; returns robq fill."""
    ncfg = cfgs.shape[0]
    tail = 0
    for c in range(ncfg):
        base = c * n
        for r in range(n):
            s = base + r
            if _contains(cfgs, c, r):
                cop_win[s] = 1
                rob_cnt[s] = 0
                robq[tail] = s
                tail += 1
            else:
                cnt = 0
                for j in range(ptr[r], ptr[r + 1]):
                    if not _contains(cfgs, c, idx[j]):
                        cnt += 1
                rob_cnt[s] = cnt
    return tail


@nb.njit(cache=True)
def propagate(n, k, cfgs, ptr, idx, binom, cop_win, rob_cnt, robq, rob_tail, copq,
              level, want_level, strat, want_strat):
    """Backward induction in rounds.

    Round t turns the robber-to-move wins found so far into cop-to-move wins
    one cop move further from capture, then decrements the escape counters of
    their robber-to-move predecessors.  Returns the number of rounds.
    """
    rob_head = 0
    cop_head = 0
    cop_tail = 0
    lvl = 0
    choice = np.zeros(k, dtype=np.int64)
    cur = np.zeros(k, dtype=np.int64)
    srt = np.zeros(k, dtype=np.int64)
    while rob_head < rob_tail:
        lvl += 1
        end = rob_tail
        while rob_head < end:
            s = robq[rob_head]
            rob_head += 1
            c = s // n
            r = s - c * n
            # odometer over joint cop moves (moves are symmetric, so these
            # are also the predecessors)
            for i in range(k):
                choice[i] = ptr[cfgs[c, i]]
            while True:
                for i in range(k):
                    cur[i] = idx[choice[i]]
                # insertion sort into canonical order
                for i in range(k):
                    v = cur[i]
                    j = i - 1
                    while j >= 0 and srt[j] > v:
                        srt[j + 1] = srt[j]
                        j -= 1
                    srt[j + 1] = v
                c2 = rank_multiset(srt, binom)
                s2 = c2 * n + r
                if cop_win[s2] == 0:
                    cop_win[s2] = 1
                    if want_level:
                        level[s2] = lvl
                    if want_strat:
                        strat[s2] = c
                    copq[cop_tail] = s2
                    cop_tail += 1
                # advance odometer
                i = 0
                while i < k:
                    choice[i] += 1
                    if choice[i] < ptr[cfgs[c, i] + 1]:
                        break
                    choice[i] = ptr[cfgs[c, i]]
                    i += 1
                if i == k:
                    break
        end = cop_tail
        while cop_head < end:
            s = copq[cop_head]
            cop_head += 1
            c = s // n
            r = s - c * n
            base = c * n
            for j in range(ptr[r], ptr[r + 1]):
                r2 = idx[j]
                s2 = base + r2
                if rob_cnt[s2] > 0:
                    rob_cnt[s2] -= 1
                    if rob_cnt[s2] == 0:
                        robq[rob_tail] = s2
                        rob_tail += 1
    return lvl


@nb.njit(cache=True)
def winning_configs(n, ncfg, cop_win):
    out = np.zeros(ncfg, dtype=np.uint8)
    for c in range(ncfg):
        ok = 1
        base = c * n
        for r in range(n):
            if cop_win[base + r] == 0:
                ok = 0
                break
        out[c] = ok
    return out


@nb.njit(cache=True)
def worst_levels(n, ncfg, level, good):
    """Per winning configuration, the slowest capture over robber placements."""
    out = np.full(ncfg, -1, dtype=np.int64)
    for c in range(ncfg):
        if good[c]:
            m = 0
            base = c * n
            for r in range(n):
                if level[base + r] > m:
                    m = level[base + r]
            out[c] = m
    return out
