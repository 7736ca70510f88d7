"""Backtracking kernels: homomorphism search and bounded colouring.

Each kernel exists twice.  The ``*_nb`` variants work on ``uint64``/``int64``
word arrays and are compiled with numba when available; the ``*_py`` variants
use Python ints as bitsets.  Both walk the same tree in the same order, so
they return identical answers; the dispatchers at the bottom pick one.

Status codes: ``1`` found, ``0`` exhausted (no solution), ``-1`` node budget hit.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit

U0 = np.uint64(0)
U1 = np.uint64(1)
M32 = np.uint64(0xFFFFFFFF)
M16 = np.uint64(0xFFFF)
M8 = np.uint64(0xFF)
M4 = np.uint64(0xF)
M2 = np.uint64(0x3)
S32 = np.uint64(32)
S16 = np.uint64(16)
S8 = np.uint64(8)
S4 = np.uint64(4)
S2 = np.uint64(2)


@njit
def _ctz64(x):
    # x != 0
    n = 0
    if x & M32 == U0:
        n += 32
        x >>= S32
    if x & M16 == U0:
        n += 16
        x >>= S16
    if x & M8 == U0:
        n += 8
        x >>= S8
    if x & M4 == U0:
        n += 4
        x >>= S4
    if x & M2 == U0:
        n += 2
        x >>= S2
    if x & U1 == U0:
        n += 1
    return n


@njit
def _popcount_u64(x):
    c = 0
    while x != U0:
        x &= x - U1
        c += 1
    return c


@njit
def _pick_nb(order, assigned, dom, W):
    # unassigned vertex with the fewest admissible images; ties by position in order
    best = -1
    best_size = 1 << 62
    for t in range(order.shape[0]):
        v = order[t]
        if assigned[v]:
            continue
        size = 0
        for w in range(W):
            size += _popcount_u64(dom[v, w])
        if size < best_size:
            best = v
            best_size = size
            if size <= 1:
                break
    return best


@njit
def hom_search_nb(order, nbr_ptr, nbr_idx, ymask, dom0, budget):
    n = order.shape[0]
    W = ymask.shape[1]
    assign = np.full(dom0.shape[0], -1, np.int64)
    if n == 0:
        return 1, assign, 0
    assigned = np.zeros(dom0.shape[0], np.bool_)
    doms = np.empty((n + 1, dom0.shape[0], W), np.uint64)
    doms[0] = dom0
    sel = np.empty(n, np.int64)
    cand = np.empty((n, W), np.uint64)
    sel[0] = _pick_nb(order, assigned, doms[0], W)
    assigned[sel[0]] = True
    cand[0] = doms[0, sel[0]]
    t = 0
    nodes = 0
    while True:
        a = -1
        for w in range(W):
            x = cand[t, w]
            if x != U0:
                a = w * 64 + _ctz64(x)
                cand[t, w] = x & (x - U1)
                break
        v = sel[t]
        if a < 0:
            assigned[v] = False
            assign[v] = -1
            t -= 1
            if t < 0:
                return 0, assign, nodes
            continue
        nodes += 1
        if budget >= 0 and nodes > budget:
            return -1, assign, nodes
        assign[v] = a
        doms[t + 1] = doms[t]
        ok = True
        for q in range(nbr_ptr[v], nbr_ptr[v + 1]):
            u = nbr_idx[q]
            if assigned[u]:
                continue
            nz = False
            for w in range(W):
                m = doms[t + 1, u, w] & ymask[a, w]
                doms[t + 1, u, w] = m
                if m != U0:
                    nz = True
            if not nz:
                ok = False
                break
        if not ok:
            continue
        if t == n - 1:
            return 1, assign, nodes
        t += 1
        u = _pick_nb(order, assigned, doms[t], W)
        sel[t] = u
        assigned[u] = True
        cand[t] = doms[t, u]


def _pick_py(order, assigned, dom):
    best, best_size = -1, 1 << 62
    for v in order:
        if assigned[v]:
            continue
        size = dom[v].bit_count()
        if size < best_size:
            best, best_size = v, size
            if size <= 1:
                break
    return best


def hom_search_py(order, neighbors, ymask, dom0, budget):
    n = len(order)
    assign = [-1] * len(dom0)
    if n == 0:
        return 1, assign, 0
    assigned = [False] * len(dom0)
    doms = [None] * (n + 1)
    doms[0] = list(dom0)
    sel = [0] * n
    cand = [0] * n
    sel[0] = _pick_py(order, assigned, doms[0])
    assigned[sel[0]] = True
    cand[0] = doms[0][sel[0]]
    t = 0
    nodes = 0
    while True:
        c = cand[t]
        v = sel[t]
        if not c:
            assigned[v] = False
            assign[v] = -1
            t -= 1
            if t < 0:
                return 0, assign, nodes
            continue
        low = c & -c
        cand[t] = c ^ low
        a = low.bit_length() - 1
        nodes += 1
        if budget >= 0 and nodes > budget:
            return -1, assign, nodes
        assign[v] = a
        new = doms[t][:]
        ya = ymask[a]
        ok = True
        for u in neighbors[v]:
            if assigned[u]:
                continue
            m = new[u] & ya
            if not m:
                ok = False
                break
            new[u] = m
        if not ok:
            continue
        if t == n - 1:
            return 1, assign, nodes
        t += 1
        doms[t] = new
        u = _pick_py(order, assigned, new)
        sel[t] = u
        assigned[u] = True
        cand[t] = new[u]


@njit
def _popcount64(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def color_search_nb(nbr_ptr, nbr_idx, degree, precolor, k, budget):
    n = degree.shape[0]
    color = np.full(n, -1, np.int64)
    full = (np.int64(1) << k) - 1
    doms = np.empty((n + 1, n), np.int64)
    for v in range(n):
        doms[0, v] = full
    npre = 0
    maxused0 = -1
    for v in range(n):
        c = precolor[v]
        if c < 0:
            continue
        if (doms[0, v] >> c) & 1 == 0:
            return 0, color, 0
        color[v] = c
        npre += 1
        if c > maxused0:
            maxused0 = c
        for q in range(nbr_ptr[v], nbr_ptr[v + 1]):
            doms[0, nbr_idx[q]] &= ~(np.int64(1) << c)
    sel = np.full(n + 1, -1, np.int64)
    cand = np.zeros(n + 1, np.int64)
    maxused = np.full(n + 1, -1, np.int64)
    maxused[0] = maxused0
    t = 0
    nodes = 0
    need = True
    while True:
        if need:
            need = False
            if npre + t == n:
                return 1, color, nodes
            lim = maxused[t] + 2
            if lim > k:
                lim = k
            allow = (np.int64(1) << lim) - 1
            best = -1
            best_size = 1 << 30
            best_deg = -1
            for v in range(n):
                if color[v] >= 0:
                    continue
                s = _popcount64(doms[t, v] & allow)
                if s < best_size or (s == best_size and degree[v] > best_deg):
                    best = v
                    best_size = s
                    best_deg = degree[v]
            sel[t] = best
            cand[t] = doms[t, best] & allow
        if cand[t] == 0:
            color[sel[t]] = -1
            t -= 1
            if t < 0:
                return 0, color, nodes
            continue
        x = cand[t]
        low = x & -x
        cand[t] = x ^ low
        c = _ctz64(np.uint64(low))
        nodes += 1
        if budget >= 0 and nodes > budget:
            return -1, color, nodes
        v = sel[t]
        color[v] = c
        for u in range(n):
            doms[t + 1, u] = doms[t, u]
        ok = True
        clear = ~(np.int64(1) << c)
        for q in range(nbr_ptr[v], nbr_ptr[v + 1]):
            u = nbr_idx[q]
            if color[u] >= 0:
                continue
            m = doms[t + 1, u] & clear
            doms[t + 1, u] = m
            if m == 0:
                ok = False
                break
        if not ok:
            continue
        maxused[t + 1] = maxused[t] if maxused[t] > c else c
        t += 1
        need = True


def color_search_py(neighbors, degree, precolor, k, budget):
    n = len(degree)
    color = [-1] * n
    full = (1 << k) - 1
    dom0 = [full] * n
    npre = 0
    maxused0 = -1
    for v in range(n):
        c = precolor[v]
        if c < 0:
            continue
        if not (dom0[v] >> c) & 1:
            return 0, color, 0
        color[v] = c
        npre += 1
        maxused0 = max(maxused0, c)
        for u in neighbors[v]:
            dom0[u] &= ~(1 << c)
    doms = [None] * (n + 1)
    doms[0] = dom0
    sel = [-1] * (n + 1)
    cand = [0] * (n + 1)
    maxused = [-1] * (n + 1)
    maxused[0] = maxused0
    t = 0
    nodes = 0
    need = True
    while True:
        if need:
            need = False
            if npre + t == n:
                return 1, color, nodes
            allow = (1 << min(maxused[t] + 2, k)) - 1
            best, best_size, best_deg = -1, 1 << 30, -1
            dom = doms[t]
            for v in range(n):
                if color[v] >= 0:
                    continue
                s = (dom[v] & allow).bit_count()
                if s < best_size or (s == best_size and degree[v] > best_deg):
                    best, best_size, best_deg = v, s, degree[v]
            sel[t] = best
            cand[t] = dom[best] & allow
        if not cand[t]:
            color[sel[t]] = -1
            t -= 1
            if t < 0:
                return 0, color, nodes
            continue
        x = cand[t]
        low = x & -x
        cand[t] = x ^ low
        c = low.bit_length() - 1
        nodes += 1
        if budget >= 0 and nodes > budget:
            return -1, color, nodes
        v = sel[t]
        color[v] = c
        new = doms[t][:]
        clear = ~(1 << c)
        ok = True
        for u in neighbors[v]:
            if color[u] >= 0:
                continue
            m = new[u] & clear
            new[u] = m
            if not m:
                ok = False
                break
        if not ok:
            continue
        maxused[t + 1] = max(maxused[t], c)
        t += 1
        doms[t] = new
        need = True


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _words(masks: list[int], nbits: int) -> np.ndarray:
    W = max(1, (nbits + 63) // 64)
    out = np.zeros((len(masks), W), np.uint64)
    for i, m in enumerate(masks):
        for w in range(W):
            out[i, w] = (m >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def hom_search(order: list[int], neighbors: list[list[int]], ymask: list[int], dom0: list[int],
               ny: int, budget: int = -1, backend: str | None = None):
    """Find the first homomorphism, branching on the unassigned vertex with
    the smallest domain (ties by ``order``); returns (status, assignment, nodes)."""
    backend = backend or ("numba" if USE_NUMBA else "python")
    if backend == "python":
        return hom_search_py(order, neighbors, ymask, dom0, budget)
    ptr = np.zeros(len(dom0) + 1, np.int64)
    for v, lst in enumerate(neighbors):
        ptr[v + 1] = ptr[v] + len(lst)
    idx = np.array([u for lst in neighbors for u in lst], np.int64)
    status, assign, nodes = hom_search_nb(
        np.asarray(order, np.int64), ptr, idx, _words(ymask, ny), _words(dom0, ny), budget)
    return int(status), assign.tolist(), int(nodes)


def color_search(neighbors: tuple[tuple[int, ...], ...], degree: list[int], precolor: list[int],
                 k: int, budget: int = -1, backend: str | None = None):
    backend = backend or ("numba" if USE_NUMBA else "python")
    if backend == "python" or k > 62:
        return color_search_py(neighbors, degree, precolor, k, budget)
    n = len(degree)
    ptr = np.zeros(n + 1, np.int64)
    for v in range(n):
        ptr[v + 1] = ptr[v] + len(neighbors[v])
    idx = np.array([u for nb in neighbors for u in nb], np.int64)
    status, color, nodes = color_search_nb(
        ptr, idx, np.asarray(degree, np.int64), np.asarray(precolor, np.int64), k, budget)
    return int(status), color.tolist(), int(nodes)
