"""Small explicit simple graphs on vertices ``0..n-1``."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class Graph:
    """Undirected loopless graph backed by a boolean adjacency matrix.

    ``labels`` records, for induced subgraphs, the parent vertex each local
    vertex came from.
    """

    def __init__(self, adj: np.ndarray, labels: Sequence[int] | None = None):
        adj = np.asarray(adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if adj.diagonal().any():
            raise ValueError("graph has a loop")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix is not symmetric")
        adj = adj.copy()
        adj.setflags(write=False)
        self.adj = adj
        self.labels = tuple(range(len(adj))) if labels is None else tuple(labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            a[u, v] = a[v, u] = True
        return cls(a)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(~np.eye(n, dtype=bool))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(t, (t + 1) % n) for t in range(n)])

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def __len__(self) -> int:
        return self.n

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    @cached_property
    def num_edges(self) -> int:
        return int(self.adj.sum()) // 2

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(np.flatnonzero(row).tolist()) for row in self.adj)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as Python-int bitsets."""
        return tuple(sum(1 << u for u in nb) for nb in self.neighbors)

    def edges(self) -> np.ndarray:
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return np.stack([us, vs], axis=1)

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def is_regular(self) -> bool:
        return self.n == 0 or bool((self.degrees == self.degrees[0]).all())

    def complement(self) -> "Graph":
        return Graph(~self.adj & ~np.eye(self.n, dtype=bool), self.labels)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        vs = list(vertices)
        return Graph(self.adj[np.ix_(vs, vs)], [self.labels[v] for v in vs])

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees.tolist(), reverse=True))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"
