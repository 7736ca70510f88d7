"""Certifying that a vertex-transitive graph is its own core without a full
endomorphism search.

The core of a vertex-transitive graph ``X`` is vertex-transitive, has the same
clique and chromatic numbers as ``X``, and its order divides ``|V(X)|``
(Hahn and Tardif).  Each proper divisor ``m`` is then ruled out either as the
order of a complete core (needs ``m = ω`` and an ``m``-colouring of ``X``) or
of a non-complete one (needs ``ω < m`` and ``χ(X)`` no larger than the largest
chromatic number of a non-complete vertex-transitive graph on ``m`` vertices).

That largest chromatic number is computed, not assumed, for orders ``q`` and
``q**2`` with ``q`` prime: every vertex-transitive graph of such an order is a
Cayley graph on ``Z_m`` or ``Z_q x Z_q`` (Turner; Marušič), so enumerating all
their connection sets is exhaustive.  Other orders fall back to ``m - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import ResourceLimitError
from ..gfp import FieldSpec, is_prime
from ..graph import Graph
from .search import (
    DEFAULT_SEARCH_CAP,
    CoreCertificate,
    VertexMap,
    chromatic_number,
    clique_number,
    has_proper_coloring,
)

CATALOG_MAX_CLASSES = 12


@dataclass(frozen=True)
class CatalogEntry:
    order: int
    groups: tuple[str, ...]
    graphs: int
    max_chromatic: int


def _prime_root(m: int) -> tuple[int, int] | None:
    """(q, e) with m = q**e for e in {1, 2}, else None."""
    if is_prime(m):
        return m, 1
    r = int(round(m ** 0.5))
    if r * r == m and is_prime(r):
        return r, 2
    return None


def _circulant(m: int, shifts: set[int]) -> Graph:
    a = np.zeros((m, m), dtype=bool)
    for x in range(m):
        for s in shifts:
            a[x, (x + s) % m] = True
    return Graph(a)


def _elementary(q: int, elems: set[int]) -> Graph:
    f = FieldSpec(q, 2)
    n = f.size
    a = np.zeros((n, n), dtype=bool)
    for x in range(n):
        for c in elems:
            a[x, f.add(x, c)] = True
    return Graph(a)


def _inverse_classes_cyclic(m: int) -> list[set[int]]:
    seen, out = set(), []
    for x in range(1, m):
        if x not in seen:
            cls = {x, (-x) % m}
            seen |= cls
            out.append(cls)
    return out


def _inverse_classes_elementary(q: int) -> list[set[int]]:
    f = FieldSpec(q, 2)
    seen, out = set(), []
    for x in range(1, f.size):
        if x not in seen:
            cls = {x, f.neg(x)}
            seen |= cls
            out.append(cls)
    return out


@lru_cache(maxsize=None)
def vertex_transitive_catalog(m: int) -> CatalogEntry | None:
    """Largest chromatic number of a non-complete vertex-transitive graph on
    ``m`` vertices, for ``m`` a prime or a prime square."""
    root = _prime_root(m)
    if root is None:
        return None
    q, e = root
    families = [("Z_%d" % m, _inverse_classes_cyclic(m), lambda s: _circulant(m, s))]
    if e == 2:
        families.append(("Z_%d^2" % q, _inverse_classes_elementary(q), lambda s: _elementary(q, s)))
    if any(len(classes) > CATALOG_MAX_CLASSES for _, classes, _ in families):
        return None
    best = 1
    count = 0
    for _, classes, build in families:
        for mask in range((1 << len(classes)) - 1):  # the full set gives K_m
            conn = set()
            for b, cls in enumerate(classes):
                if mask >> b & 1:
                    conn |= cls
            best = max(best, chromatic_number(build(conn)))
            count += 1
    return CatalogEntry(m, tuple(name for name, _, _ in families), count, best)


def smallest_feasible_core_order(X: Graph, cap: int = DEFAULT_SEARCH_CAP * 4,
                                 budget: int = -1) -> tuple[int, list[dict]]:
    """Least divisor ``m`` of ``|V(X)|`` not ruled out as the order of the core
    of the vertex-transitive graph ``X``, with the eliminations below it.

    A colouring search that exhausts ``budget`` leaves its order feasible.
    """
    n = X.n
    if n <= 1 or X.num_edges == 0:
        return min(n, 1), []
    omega = clique_number(X, cap)
    log: list[dict] = [{"order": 1, "reason": "graph has an edge"}]

    def colourable(k: int) -> bool | None:
        try:
            return has_proper_coloring(X, k, cap, budget)
        except ResourceLimitError:
            return None

    for m in (m for m in range(2, n) if n % m == 0):
        if omega > m:
            log.append({"order": m, "reason": f"clique number {omega} > {m}"})
            continue
        if m == omega:
            if colourable(m) is not False:
                return m, log
            log.append({"order": m, "reason": f"clique number {omega} but no proper {m}-colouring"})
            continue
        entry = vertex_transitive_catalog(m)
        bound = entry.max_chromatic if entry else m - 1
        if colourable(bound) is not False:
            return m, log
        reason = f"no proper {bound}-colouring"
        if entry:
            reason += (f"; non-complete vertex-transitive graphs on {m} vertices have chromatic"
                       f" number <= {bound} ({entry.graphs} Cayley graphs on {', '.join(entry.groups)})")
        log.append({"order": m, "reason": reason})
    return n, log


def certify_core_by_invariants(X: Graph, cap: int = DEFAULT_SEARCH_CAP * 4,
                               budget: int = -1) -> CoreCertificate | None:
    """Return a ``kind="self"`` certificate when every proper divisor of
    ``|V(X)|`` is ruled out as a core order; ``None`` when inconclusive.

    ``X`` must be vertex-transitive (every Cayley graph is).
    """
    n = X.n
    m, log = smallest_feasible_core_order(X, cap, budget)
    if m < n or X.num_edges == 0:
        return None
    evidence = {"order": n, "clique_number": clique_number(X, cap), "eliminated": log}
    return CoreCertificate(tuple(range(n)), VertexMap.identity(n), "self", evidence)
