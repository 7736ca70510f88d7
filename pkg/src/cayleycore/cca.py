"""The Complete Core Axiom.

A connection set ``C`` satisfies the axiom for a pair of subspaces ``(V, W)``
when ``V + W`` is a direct sum equal to the whole space, every nonzero vector
of ``V`` lies in ``C`` and ``W`` misses ``C``.  The projection onto ``V`` along
``W`` is then a retraction of the Cayley graph onto the complete graph on ``V``.

Witness search exploits two facts that follow straight from the definition:

* since ``V \\ {0}`` lies in ``C`` and ``W`` misses ``C``, the condition
  ``V ∩ W = 0`` is automatic, so ``V`` and ``W`` can be searched separately;
* a witness ``V`` is necessarily inclusion-maximal among subspaces inside
  ``C ∪ {0}`` (a strictly larger one would meet ``W`` nontrivially by a
  dimension count), and symmetrically for ``W`` inside the complement.

Hence a witness exists iff the largest subspace inside ``C ∪ {0}`` and the
largest subspace avoiding ``C`` have dimensions summing to ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .cayley import ConnectionSet, complement_connection_set
from .errors import DimensionMismatchError, InvalidFieldError, InvalidWitnessError, ResourceLimitError
from .gfp import (
    FieldSpec,
    FVector,
    LinearMap,
    Subspace,
    enumerate_subspaces,
    is_direct_sum,
    is_prime,
    rref,
    span,
    standard_complement,
    subspace_sum,
)

DEFAULT_SEARCH_CAP = 4096


def kappa(p: int) -> int:
    """Sharp degree threshold: 5 for p = 2, 12 for p = 3, 2 for larger primes."""
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidFieldError(f"kappa is defined on primes only, got {p!r}")
    return {2: 5, 3: 12}.get(p, 2)


@dataclass(frozen=True)
class CCAWitness:
    """A candidate pair ``(V, W)``.

    The direct-sum condition is not enforced on construction so that
    :func:`cca_check` can report it as a failed clause.
    """

    V: Subspace
    W: Subspace

    def __post_init__(self):
        if self.V.field != self.W.field:
            raise DimensionMismatchError(f"{self.V.field} vs {self.W.field}")

    @property
    def field(self) -> FieldSpec:
        return self.V.field

    @property
    def dim(self) -> int:
        return self.V.dim

    def swapped(self) -> "CCAWitness":
        return CCAWitness(self.W, self.V)

    def __str__(self) -> str:
        return f"({self.V}, {self.W})"


@dataclass(frozen=True)
class CCAResult:
    ok: bool
    clause: str | None = None
    witness: FVector | None = None

    def __bool__(self) -> bool:
        return self.ok

    @property
    def reason(self) -> str:
        if self.ok:
            return "ok"
        text = {
            "a": "V and W do not form a direct sum of the whole space",
            "b": "V has a nonzero vector outside C",
            "c": "W meets C",
        }[self.clause]
        return f"({self.clause}) {text}: {self.witness}"


def cca_check(C: ConnectionSet, w: CCAWitness) -> CCAResult:
    """Check the axiom, reporting the first failed clause with its lex-least witness."""
    f = C.field
    if w.field != f:
        raise DimensionMismatchError(f"witness over {w.field}, connection set over {f}")
    V, W = w.V, w.W
    if not is_direct_sum(V, W):
        small, big = (V, W) if V.dim <= W.dim else (W, V)
        common = sorted(x for x in small.elements if x and big.contains_index(x))
        if common:
            bad = common[0]
        else:
            total = subspace_sum(V, W)
            bad = next(x for x in range(f.size) if not total.contains_index(x))
        return CCAResult(False, "a", f.from_index(bad))
    outside = [x for x in sorted(V.elements) if x and x not in C.indices]
    if outside:
        return CCAResult(False, "b", f.from_index(outside[0]))
    hits = [x for x in sorted(C.indices) if W.contains_index(x)]
    if hits:
        return CCAResult(False, "c", f.from_index(hits[0]))
    return CCAResult(True)


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------

@dataclass
class SideSearch:
    """Outcome of exploring all subspaces inside one allowed set."""

    max_dim: int
    best: Subspace
    examined: int
    maximal: int
    searched_dim: int | None = None  # dimension of the span searched, None for the whole space


@dataclass
class WitnessSearch:
    witness: CCAWitness | None
    inside: SideSearch
    outside: SideSearch
    notes: list[str] = dc_field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None

    def coverage(self) -> dict:
        return {
            "subspaces_in_C": self.inside.examined,
            "maximal_in_C": self.inside.maximal,
            "max_dim_in_C": self.inside.max_dim,
            "subspaces_avoiding_C": self.outside.examined,
            "maximal_avoiding_C": self.outside.maximal,
            "max_dim_avoiding_C": self.outside.max_dim,
            "searched_dims": [self.inside.searched_dim, self.outside.searched_dim],
        }


def _largest_subspaces(f: FieldSpec, allowed: frozenset[int]) -> SideSearch:
    """Breadth-first closure over subspaces contained in ``allowed`` (which holds 0)."""
    nonzero = sorted(allowed - {0})
    closed = Subspace.from_rows(f, [f.decode(x) for x in nonzero])
    if closed.order == len(allowed):
        # the allowed set is itself a subspace; it is the unique maximal one
        return SideSearch(closed.dim, closed, 1, 1)

    level: dict[frozenset[int], tuple[int, ...]] = {frozenset([0]): ()}
    examined = 1
    maximal = 0
    dim = 0
    while True:
        nxt: dict[frozenset[int], tuple[int, ...]] = {}
        for U, gens in level.items():
            covered: set[int] = set()
            extended = False
            for c in nonzero:
                if c in U or c in covered:
                    continue
                fresh = []
                good = True
                for a in range(1, f.p):
                    ac = f.scale(a, c)
                    for u in U:
                        y = f.add(u, ac)
                        if y not in allowed:
                            good = False
                            break
                        fresh.append(y)
                    if not good:
                        break
                if not good:
                    continue
                extended = True
                covered.update(fresh)
                new = U.union(fresh)
                if new not in nxt:
                    nxt[new] = gens + (c,)
            if not extended:
                maximal += 1
        if not nxt:
            best = min(Subspace.from_rows(f, [f.decode(x) for x in g]) for g in level.values())
            return SideSearch(dim, best, examined, maximal)
        examined += len(nxt)
        level = nxt
        dim += 1


LEX_SEARCH_BUDGET = 200_000


class _BudgetExceeded(Exception):
    pass


def _lex_least_inside(f: FieldSpec, allowed: frozenset[int], k: int, budget: int) -> Subspace | None:
    """Lex-least ``k``-dimensional subspace inside ``allowed``, by depth-first
    search over RREF matrices in row-major order.  A completed row is kept only
    if the span so far stays inside ``allowed``."""
    d, p = f.d, f.p
    if k == 0:
        return Subspace.zero(f)
    mat = [[0] * d for _ in range(k)]
    pivots = [-1] * k
    forbidden = [0] * d
    elems: list[list[int]] = [[0]] + [[] for _ in range(k)]
    nodes = 0

    def free_after(col: int) -> int:
        return sum(1 for c in range(col + 1, d) if not forbidden[c])

    def walk(pos: int) -> Subspace | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if pos and pos % d == 0:
            r = pos // d - 1
            row = f.encode(mat[r])
            grown = list(elems[r])
            for a in range(1, p):
                ar = f.scale(a, row)
                for u in elems[r]:
                    y = f.add(u, ar)
                    if y not in allowed:
                        return None
                    grown.append(y)
            elems[r + 1] = grown
        if pos == k * d:
            return Subspace(f, tuple(tuple(r) for r in mat))
        r, c = divmod(pos, d)
        prev = pivots[r - 1] if r else -1
        if pivots[r] < 0:
            if free_after(max(c, prev)) >= k - r:
                got = walk(pos + 1)
                if got is not None:
                    return got
            if c > prev and not forbidden[c] and free_after(c) >= k - r - 1:
                pivots[r] = c
                mat[r][c] = 1
                got = walk(pos + 1)
                mat[r][c] = 0
                pivots[r] = -1
                return got
            return None
        got = walk(pos + 1)
        if got is not None:
            return got
        forbidden[c] += 1
        if free_after(pivots[r]) >= k - r - 1:
            for a in range(1, p):
                mat[r][c] = a
                got = walk(pos + 1)
                if got is not None:
                    break
            mat[r][c] = 0
        forbidden[c] -= 1
        return got

    return walk(0)


def _side(f: FieldSpec, forbidden: frozenset[int], notes: list[str]) -> SideSearch:
    """Lex-least largest subspace missing ``forbidden`` (a zero-free set).

    When the allowed set is the larger one, the largest dimension is found
    inside ``B = span(forbidden)``: any ``U`` missing ``forbidden`` has
    ``dim U <= dim(U ∩ B) + d - dim B``, and ``K + standard_complement(B)``
    misses ``forbidden`` whenever ``K ⊆ B`` does.  A lex-ordered search of
    that dimension then picks the canonical representative.
    """
    allowed_nonzero = f.size - 1 - len(forbidden)
    if allowed_nonzero <= len(forbidden):
        return _largest_subspaces(f, frozenset(range(f.size)) - forbidden)
    B = span([f.from_index(x) for x in sorted(forbidden)], f)
    inner = _largest_subspaces(f, B.elements - forbidden)
    best = subspace_sum(inner.best, standard_complement(B))
    allowed = frozenset(range(f.size)) - forbidden
    try:
        best = _lex_least_inside(f, allowed, best.dim, LEX_SEARCH_BUDGET)
    except _BudgetExceeded:
        notes.append(f"lex-least search over budget; kept {best} from the coordinate section")
    return SideSearch(best.dim, best, inner.examined, inner.maximal, B.dim)


def find_witness(C: ConnectionSet, cap: int = DEFAULT_SEARCH_CAP) -> WitnessSearch:
    """Return the canonical witness (largest ``V``, then lex-least ``V`` and
    ``W``) or a certified negative answer with coverage counts."""
    f = C.field
    if f.size > cap:
        raise ResourceLimitError("witness search", f.size, cap)
    outside_set = frozenset(range(1, f.size)) - C.indices
    notes: list[str] = []
    inside = _side(f, outside_set, notes)
    outside = _side(f, C.indices, notes)
    if inside.max_dim + outside.max_dim == f.d:
        return WitnessSearch(CCAWitness(inside.best, outside.best), inside, outside, notes)
    return WitnessSearch(None, inside, outside, notes)


def enumerate_witnesses(C: ConnectionSet, cap: int = 256) -> Iterator[CCAWitness]:
    """Every valid witness, by brute force over all subspace pairs."""
    f = C.field
    for k in range(f.d + 1):
        Ws = list(enumerate_subspaces(f, f.d - k, cap))
        for V in enumerate_subspaces(f, k, cap):
            for W in Ws:
                w = CCAWitness(V, W)
                if cca_check(C, w):
                    yield w


def dual_witness(C: ConnectionSet, w: CCAWitness) -> CCAWitness:
    """Swap the pair; valid for the complement of ``C``."""
    res = cca_check(C, w)
    if not res:
        raise InvalidWitnessError(f"not a witness for C: {res.reason}")
    return w.swapped()


def _inside(S: Subspace, B: Subspace) -> bool:
    return all(B.contains_index(S.field.encode(r)) for r in S.basis)


def lift_witness(C: ConnectionSet, w: CCAWitness) -> CCAWitness:
    """Extend a witness valid inside span(C) to the ambient space by adding the
    coordinate complement of span(C) to ``W``."""
    B = C.span
    V, W = w.V, w.W
    if w.field != C.field:
        raise DimensionMismatchError(f"witness over {w.field}, connection set over {C.field}")
    if not (_inside(V, B) and _inside(W, B)):
        raise InvalidWitnessError("inner witness must lie inside span(C)")
    if V.dim + W.dim != B.dim or subspace_sum(V, W) != B:
        raise InvalidWitnessError("inner witness must decompose span(C)")
    if any(x and x not in C.indices for x in V.elements):
        raise InvalidWitnessError("V has a nonzero vector outside C")
    if any(W.contains_index(x) for x in C.indices):
        raise InvalidWitnessError("W meets C")
    return CCAWitness(V, subspace_sum(W, standard_complement(B)))


def _solve(rows: list[tuple[int, ...]], x: tuple[int, ...], p: int) -> list[int]:
    """Coefficients ``a`` with ``sum(a_i * rows_i) = x`` for a basis ``rows``."""
    d = len(x)
    n = len(rows)
    aug = [[rows[i][t] for i in range(n)] + [x[t]] for t in range(d)]
    R = rref(aug, p, n + 1)
    coeffs = [0] * n
    for r in R:
        piv = next(i for i, c in enumerate(r) if c)
        if piv == n:
            raise InvalidWitnessError("vector outside the span")
        coeffs[piv] = r[n]
    return coeffs


def projection_map(w: CCAWitness) -> LinearMap:
    """The linear map x = g + h  ->  g."""
    if not is_direct_sum(w.V, w.W):
        raise InvalidWitnessError("projection needs a direct-sum decomposition")
    f = w.field
    rows = list(w.V.basis) + list(w.W.basis)
    cols = []
    for t in range(f.d):
        e = tuple(int(s == t) for s in range(f.d))
        a = _solve(rows, e, f.p)
        g = [sum(a[i] * w.V.basis[i][s] for i in range(w.V.dim)) % f.p for s in range(f.d)]
        cols.append(g)
    matrix = tuple(tuple(cols[t][s] for t in range(f.d)) for s in range(f.d))
    return LinearMap(f, matrix)


def project(x: FVector, w: CCAWitness) -> FVector:
    return projection_map(w)(x)


def projection_images(w: CCAWitness) -> list[int]:
    """Projection as a vertex map over indices."""
    P = projection_map(w)
    f = w.field
    return [P(f.from_index(x)).index for x in range(f.size)]


def complement_search(C: ConnectionSet, cap: int = DEFAULT_SEARCH_CAP) -> WitnessSearch:
    return find_witness(complement_connection_set(C), cap)
