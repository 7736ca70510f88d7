"""Independent brute-force oracles used by the tests."""

from __future__ import annotations

import itertools

import numpy as np

from cayleycore.graph import Graph


def all_maps_scan(X: Graph) -> tuple[bool, bool]:
    """(has a non-injective endomorphism, has any endomorphism) by scanning all
    n**n maps.  Only for very small graphs."""
    n = X.n
    maps = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64).reshape(-1, n)
    e = X.edges()
    ok = np.ones(len(maps), dtype=bool)
    for u, v in e:
        ok &= X.adj[maps[:, u], maps[:, v]]
    homs = maps[ok]
    if len(homs) == 0:
        return False, False
    srt = np.sort(homs, axis=1)
    distinct = 1 + (np.diff(srt, axis=1) != 0).sum(axis=1)
    return bool((distinct < n).any()), True


def all_homomorphisms(X: Graph, Y: Graph, limit: int = 5_000_000) -> np.ndarray:
    """Every homomorphism X -> Y as rows, built vertex by vertex with all
    partial maps kept in one array."""
    rows = np.arange(Y.n, dtype=np.int64).reshape(-1, 1)
    for v in range(1, X.n):
        earlier = [u for u in range(v) if X.adj[u, v]]
        ext = np.repeat(rows, Y.n, axis=0)
        col = np.tile(np.arange(Y.n, dtype=np.int64), len(rows)).reshape(-1, 1)
        keep = np.ones(len(ext), dtype=bool)
        for u in earlier:
            keep &= Y.adj[ext[:, u], col[:, 0]]
        rows = np.hstack([ext[keep], col[keep]])
        if len(rows) > limit:
            raise MemoryError("too many partial homomorphisms for the oracle")
    return rows if X.n else np.zeros((1, 0), dtype=np.int64)


def has_noninjective_endomorphism(X: Graph) -> bool:
    homs = all_homomorphisms(X, X)
    srt = np.sort(homs, axis=1)
    distinct = 1 + (np.diff(srt, axis=1) != 0).sum(axis=1)
    return bool((distinct < X.n).any())
