"""Exact homomorphism, clique and colouring search on small graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import ResourceLimitError
from ..graph import Graph
from ._kernels import color_search, hom_search

DEFAULT_SEARCH_CAP = 64

CONSTRAINTS = ("non-injective", "image-strictly-smaller", "any")


@dataclass(frozen=True)
class VertexMap:
    images: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "VertexMap":
        return cls(tuple(range(n)))

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __len__(self) -> int:
        return len(self.images)

    def compose(self, inner: "VertexMap") -> "VertexMap":
        """``self ∘ inner``."""
        return VertexMap(tuple(self.images[x] for x in inner.images))

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.images)))

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_idempotent(self) -> bool:
        return self.compose(self) == self


@dataclass
class CoreCertificate:
    vertices: tuple[int, ...]
    retraction: VertexMap
    kind: str  # "complete" | "self" | "general"
    evidence: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.vertices)


def _check_cap(X: Graph, cap: int, what: str) -> None:
    if X.n > cap:
        raise ResourceLimitError(what, X.n, cap)


def is_homomorphism(f: VertexMap | Sequence[int], X: Graph, Y: Graph) -> bool:
    images = np.asarray(f.images if isinstance(f, VertexMap) else f, dtype=np.int64)
    if images.shape != (X.n,):
        raise ValueError(f"map has {images.shape[0]} entries, graph has {X.n} vertices")
    if X.n and (images.min() < 0 or images.max() >= Y.n):
        raise ValueError("map image outside the target graph")
    e = X.edges()
    if len(e) == 0:
        return True
    return bool(Y.adj[images[e[:, 0]], images[e[:, 1]]].all())


def search_order(X: Graph, domains: Sequence[int] | None = None) -> list[int]:
    """Vertices with a single admissible image first, then descending degree,
    ties by vertex index."""
    deg = X.degrees.tolist()
    pinned = [False] * X.n if domains is None else [d > 0 and d & (d - 1) == 0 for d in domains]
    return sorted(range(X.n), key=lambda v: (not pinned[v], -deg[v], v))


def find_homomorphism(X: Graph, Y: Graph, domains: Sequence[int] | None = None,
                      budget: int = -1, backend: str | None = None) -> VertexMap | None:
    """First homomorphism X -> Y found by the smallest-domain-first search,
    optionally restricting each vertex's images to the bitset ``domains[v]``."""
    order = search_order(X, domains)
    full = (1 << Y.n) - 1
    dom0 = [full] * X.n if domains is None else [d & full for d in domains]
    status, assign, nodes = hom_search(order, [list(nb) for nb in X.neighbors], list(Y.masks), dom0, Y.n,
                                       budget, backend)
    if status < 0:
        raise ResourceLimitError("homomorphism search nodes", nodes, budget)
    return VertexMap(tuple(assign)) if status == 1 else None


def find_endomorphism(X: Graph, constraint: str = "non-injective", cap: int = DEFAULT_SEARCH_CAP,
                      vertex_transitive: bool = False, budget: int = -1,
                      backend: str | None = None) -> VertexMap | None:
    """Exhaustive endomorphism search.

    ``non-injective`` and ``image-strictly-smaller`` coincide for finite
    graphs: both are answered by searching for a homomorphism into ``X - w``
    for each vertex ``w``.  With ``vertex_transitive`` the search instead pins
    ``0`` and one non-neighbour ``b`` of ``0`` to the image ``0``, for each
    ``b``: composing with automorphisms on both sides turns any non-injective
    endomorphism into one of that shape.
    """
    if constraint not in CONSTRAINTS:
        raise ValueError(f"unknown constraint {constraint!r}")
    _check_cap(X, cap, "endomorphism search")
    if constraint == "any":
        return find_homomorphism(X, X, budget=budget, backend=backend)
    n = X.n
    if n <= 1 or X.is_complete():
        return None
    if X.num_edges == 0:
        return VertexMap((0,) * n)
    full = (1 << n) - 1
    if vertex_transitive:
        candidates = []
        for b in range(1, n):
            if not X.masks[0] >> b & 1:
                dom = [full] * n
                dom[0] = dom[b] = 1
                candidates.append(dom)
    else:
        candidates = [[full ^ (1 << w)] * n for w in range(n)]
    return _first_homomorphism(X, candidates, budget, backend)


DEEPENING_BUDGETS = (10_000, 100_000, 1_000_000)


def _first_homomorphism(X: Graph, candidates: list[list[int]], budget: int,
                        backend: str | None) -> VertexMap | None:
    """First endomorphism found under any of the domain lists.  Searches are
    interleaved with growing node budgets; the last round is exhaustive (or
    bounded by ``budget``), so the answer does not depend on the schedule."""
    rounds = [b for b in DEEPENING_BUDGETS if budget < 0 or b < budget] + [budget]
    for t, limit in enumerate(rounds):
        last = t == len(rounds) - 1
        deferred = []
        for dom in candidates:
            try:
                f = find_homomorphism(X, X, dom, limit, backend)
            except ResourceLimitError:
                if last:
                    raise
                deferred.append(dom)
                continue
            if f is not None:
                return f
        candidates = deferred
        if not candidates:
            break
    return None


def idempotent_power(f: VertexMap) -> VertexMap:
    """``f**k`` for the least ``k >= 1`` making it idempotent."""
    g = f
    while not g.is_idempotent():
        g = f.compose(g)
    return g


COLOURING_SHORTCUT_BUDGET = 200_000
CERTIFY_BUDGET = 20_000_000


def clique_retraction(X: Graph, budget: int = COLOURING_SHORTCUT_BUDGET,
                      backend: str | None = None) -> tuple[list[int], VertexMap] | None:
    """Retraction onto a maximum clique ``K`` when ``X`` is ``|K|``-colourable.

    Colours ``0 .. |K|-1`` are pre-assigned along ``K``, so sending each
    vertex to the clique vertex of its colour is a homomorphism fixing ``K``.
    Returns None when no such colouring exists or the budget runs out.
    """
    clique = max_clique(X, max(X.n, 1))
    k = len(clique)
    if k == 0:
        return None
    pre = [-1] * X.n
    for c, v in enumerate(clique):
        pre[v] = c
    status, colour, _ = color_search(X.neighbors, X.degrees.tolist(), pre, k, budget, backend)
    if status != 1:
        return None
    return clique, VertexMap(tuple(clique[colour[v]] for v in range(X.n)))


def compute_core(X: Graph, cap: int = DEFAULT_SEARCH_CAP, vertex_transitive: bool = False,
                 backend: str | None = None) -> CoreCertificate:
    """Core of ``X`` with a retraction onto it.

    A retraction onto a maximum clique is tried first.  Otherwise ``X`` is
    folded by image-shrinking retractions until no further fold exists or,
    for vertex-transitive ``X``, until the retract reaches the least order
    that clique and chromatic numbers allow for its core.
    """
    _check_cap(X, cap, "core search")
    if X.n and not X.is_complete():
        shortcut = clique_retraction(X, backend=backend)
        if shortcut is not None:
            clique, r = shortcut
            evidence = {"fold_orders": [X.n, len(clique)], "core_edges": len(clique) * (len(clique) - 1) // 2,
                        "clique": sorted(clique), "method": "clique colouring"}
            return CoreCertificate(tuple(sorted(clique)), r, "complete", evidence)
    target, eliminated = 0, None
    if vertex_transitive and X.n > 1:
        from .certify import smallest_feasible_core_order
        target, eliminated = smallest_feasible_core_order(X, budget=CERTIFY_BUDGET)
    current = list(range(X.n))
    retraction = list(range(X.n))
    steps = [X.n]
    vt = vertex_transitive
    while len(current) > target:
        H = X.induced(current)
        f = find_endomorphism(H, "image-strictly-smaller", cap, vt, backend=backend)
        vt = False
        if f is None:
            break
        g = idempotent_power(f)
        local = {v: i for i, v in enumerate(current)}
        retraction = [current[g(local[r])] for r in retraction]
        current = [current[i] for i in g.image()]
        steps.append(len(current))
    core = X.induced(current)
    if core.is_complete():
        kind = "complete"
    elif len(current) == X.n:
        kind = "self"
    else:
        kind = "general"
    evidence = {"fold_orders": steps, "core_edges": core.num_edges, "method": "folding"}
    if kind == "complete":
        evidence["clique"] = list(current)
    elif len(current) == target:
        evidence["eliminated"] = eliminated
    else:
        evidence["exhausted"] = "no image-shrinking endomorphism of the core"
    return CoreCertificate(tuple(current), VertexMap(tuple(retraction)), kind, evidence)


def is_core(X: Graph, cap: int = DEFAULT_SEARCH_CAP, vertex_transitive: bool = False,
            budget: int = -1, backend: str | None = None) -> bool:
    if vertex_transitive and X.n > 1:
        from .certify import smallest_feasible_core_order
        if smallest_feasible_core_order(X, budget=CERTIFY_BUDGET)[0] == X.n:
            return True
    return find_endomorphism(X, "non-injective", cap, vertex_transitive, budget, backend) is None


# ---------------------------------------------------------------------------
# Cliques and colourings
# ---------------------------------------------------------------------------

def _greedy_colour_classes(P: int, masks: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    colour = 0
    while P:
        colour += 1
        Q = P
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~masks[v] & ~low
            P &= ~low
            out.append((v, colour))
    return out


def max_clique(X: Graph, cap: int = DEFAULT_SEARCH_CAP * 4) -> list[int]:
    """A maximum clique, by branch and bound with a greedy colouring bound."""
    _check_cap(X, cap, "clique search")
    masks = X.masks
    best: list[int] = []

    def expand(R: list[int], P: int) -> None:
        nonlocal best
        for v, c in reversed(_greedy_colour_classes(P, masks)):
            if len(R) + c <= len(best):
                return
            newP = P & masks[v]
            if newP:
                expand(R + [v], newP)
            elif len(R) + 1 > len(best):
                best = R + [v]
            P &= ~(1 << v)

    expand([], (1 << X.n) - 1)
    return sorted(best)


def clique_number(X: Graph, cap: int = DEFAULT_SEARCH_CAP * 4) -> int:
    return len(max_clique(X, cap))


def find_coloring(X: Graph, k: int, cap: int = DEFAULT_SEARCH_CAP * 4, budget: int = -1,
                  backend: str | None = None) -> list[int] | None:
    """A proper ``k``-colouring, or None.  The vertices of a maximum clique are
    pre-coloured ``0, 1, ...`` to break colour symmetry."""
    if k < 0:
        raise ValueError("k must be non-negative")
    _check_cap(X, cap, "colouring search")
    n = X.n
    if n == 0:
        return []
    if k == 0:
        return None
    clique = max_clique(X, cap)
    if len(clique) > k:
        return None
    if k >= n:
        return list(range(n))
    pre = [-1] * n
    for c, v in enumerate(clique):
        pre[v] = c
    status, colour, nodes = color_search(X.neighbors, X.degrees.tolist(), pre, k, budget, backend)
    if status < 0:
        raise ResourceLimitError("colouring search nodes", nodes, budget)
    return colour if status == 1 else None


def has_proper_coloring(X: Graph, k: int, cap: int = DEFAULT_SEARCH_CAP * 4, budget: int = -1,
                        backend: str | None = None) -> bool:
    return find_coloring(X, k, cap, budget, backend) is not None


def chromatic_number(X: Graph, cap: int = DEFAULT_SEARCH_CAP * 4, budget: int = -1,
                     backend: str | None = None) -> int:
    if X.n == 0:
        return 0
    k = max(1, clique_number(X, cap))
    while not has_proper_coloring(X, k, cap, budget, backend):
        k += 1
    return k
