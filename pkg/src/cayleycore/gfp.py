"""Exact linear algebra over a prime field F_p.

Vectors are addressed two ways.  The public value type is :class:`FVector`, a
coordinate tuple.  Internally most hot paths work on the *vertex index* of a
vector: the coordinates read as a base-``p`` integer with coordinate 1 most
significant.  Index order therefore coincides with lexicographic order of the
coordinate tuples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatchError, InvalidFieldError, ResourceLimitError, SingularMapError

DEFAULT_ENUMERATION_CAP = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@lru_cache(maxsize=64)
def _digit_table(p: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(product(range(p), repeat=d))


@lru_cache(maxsize=32)
def _add_table(p: int, d: int) -> tuple[tuple[int, ...], ...]:
    digits = _digit_table(p, d)
    weights = [p ** (d - 1 - t) for t in range(d)]
    rows = []
    for x in digits:
        rows.append(tuple(
            sum(((a + b) % p) * w for a, b, w in zip(x, y, weights)) for y in digits
        ))
    return tuple(rows)


@dataclass(frozen=True, order=True)
class FieldSpec:
    """The ambient space (F_p)^d."""

    p: int
    d: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidFieldError(f"modulus {self.p!r} is not prime")
        if not isinstance(self.d, int) or self.d < 0:
            raise InvalidFieldError(f"dimension {self.d!r} must be a non-negative integer")

    @property
    def size(self) -> int:
        return self.p ** self.d

    def __str__(self) -> str:
        return f"F_{self.p}^{self.d}"

    # -- vector construction -------------------------------------------------
    def vector(self, coords: Sequence[int]) -> "FVector":
        if len(coords) != self.d:
            raise DimensionMismatchError(f"expected {self.d} coordinates, got {len(coords)}")
        return FVector(tuple(int(c) % self.p for c in coords), self)

    def zero(self) -> "FVector":
        return FVector((0,) * self.d, self)

    def unit(self, t: int) -> "FVector":
        """The standard basis vector e_{t+1} (``t`` is 0-based)."""
        coords = [0] * self.d
        coords[t] = 1
        return FVector(tuple(coords), self)

    def from_index(self, index: int) -> "FVector":
        return FVector(self.decode(index), self)

    def vectors(self) -> Iterator["FVector"]:
        for idx in range(self.size):
            yield self.from_index(idx)

    # -- index arithmetic ------------------------------------------------------
    def encode(self, coords: Sequence[int]) -> int:
        idx = 0
        for c in coords:
            idx = idx * self.p + c
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        if self.size <= DEFAULT_ENUMERATION_CAP:
            return _digit_table(self.p, self.d)[index]
        out = []
        for _ in range(self.d):
            index, r = divmod(index, self.p)
            out.append(r)
        return tuple(reversed(out))

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if self.size <= 729:
            return _add_table(self.p, self.d)[x][y]
        p = self.p
        return self.encode([(a + b) % p for a, b in zip(self.decode(x), self.decode(y))])

    def scale(self, a: int, x: int) -> int:
        a %= self.p
        if a == 1:
            return x
        if a == 0:
            return 0
        p = self.p
        return self.encode([(a * c) % p for c in self.decode(x)])

    def neg(self, x: int) -> int:
        return x if self.p == 2 else self.scale(-1, x)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))


@dataclass(frozen=True, order=True)
class FVector:
    coords: tuple[int, ...]
    field: FieldSpec

    def __post_init__(self):
        if len(self.coords) != self.field.d:
            raise DimensionMismatchError(
                f"vector of length {len(self.coords)} in {self.field}")
        if any(not 0 <= c < self.field.p for c in self.coords):
            raise DimensionMismatchError(f"coordinates {self.coords} not reduced mod {self.field.p}")

    @property
    def index(self) -> int:
        return self.field.encode(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "FVector") -> None:
        if other.field != self.field:
            raise DimensionMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: "FVector") -> "FVector":
        self._check(other)
        p = self.field.p
        return FVector(tuple((a + b) % p for a, b in zip(self.coords, other.coords)), self.field)

    def __sub__(self, other: "FVector") -> "FVector":
        self._check(other)
        p = self.field.p
        return FVector(tuple((a - b) % p for a, b in zip(self.coords, other.coords)), self.field)

    def __neg__(self) -> "FVector":
        p = self.field.p
        return FVector(tuple((-a) % p for a in self.coords), self.field)

    def __rmul__(self, a: int) -> "FVector":
        p = self.field.p
        return FVector(tuple((a * c) % p for c in self.coords), self.field)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------

def rref(rows: Iterable[Sequence[int]], p: int, d: int) -> list[tuple[int, ...]]:
    """Reduced row echelon form of ``rows`` over F_p, zero rows dropped."""
    m = [[c % p for c in r] for r in rows]
    out_rows = 0
    for col in range(d):
        piv = next((r for r in range(out_rows, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        inv = pow(m[out_rows][col], -1, p)
        row = [(c * inv) % p for c in m[out_rows]]
        m[out_rows] = row
        for r in range(len(m)):
            if r != out_rows and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], row)]
        out_rows += 1
    return [tuple(r) for r in m[:out_rows]]


def _pivot(row: Sequence[int]) -> int:
    return next(i for i, c in enumerate(row) if c)


@dataclass(frozen=True, order=True)
class Subspace:
    """A subspace held in canonical RREF form; equal subspaces have equal bases."""

    field: FieldSpec
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, field: FieldSpec) -> "Subspace":
        return cls(field, ())

    @classmethod
    def full(cls, field: FieldSpec) -> "Subspace":
        return cls(field, tuple(tuple(int(i == j) for j in range(field.d)) for i in range(field.d)))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[int]]) -> "Subspace":
        return cls(field, tuple(rref(rows, field.p, field.d)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_pivot(r) for r in self.basis)

    @property
    def order(self) -> int:
        return self.field.p ** self.dim

    def vectors(self) -> list[FVector]:
        return [FVector(r, self.field) for r in self.basis]

    @cached_property
    def elements(self) -> frozenset[int]:
        """Indices of every vector in the subspace (``p**dim`` of them)."""
        f = self.field
        elems = {0}
        for row in self.basis:
            r = f.encode(row)
            multiples = [f.scale(a, r) for a in range(f.p)]
            elems = {f.add(e, m) for e in elems for m in multiples}
        return frozenset(elems)

    def contains_index(self, x: int) -> bool:
        return _reduce(self, self.field.decode(x))

    def __contains__(self, v: FVector) -> bool:
        return subspace_contains(self, v)

    def __str__(self) -> str:
        if not self.basis:
            return "<0>"
        return "<" + "; ".join(",".join(map(str, r)) for r in self.basis) + ">"


def _reduce(S: Subspace, coords: Sequence[int]) -> bool:
    p = S.field.p
    v = list(coords)
    for row in S.basis:
        c = _pivot(row)
        if v[c]:
            f = v[c]
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return not any(v)


def _common_field(vectors: Sequence[FVector], field: FieldSpec | None) -> FieldSpec:
    fields = {v.field for v in vectors}
    if field is not None:
        fields.add(field)
    if len(fields) > 1:
        raise DimensionMismatchError(f"mixed fields: {sorted(map(str, fields))}")
    if not fields:
        raise DimensionMismatchError("cannot infer the field of an empty vector sequence")
    return fields.pop()


def span(vectors: Iterable[FVector], field: FieldSpec | None = None) -> Subspace:
    vectors = list(vectors)
    f = _common_field(vectors, field)
    return Subspace.from_rows(f, [v.coords for v in vectors])


def subspace_contains(S: Subspace, v: FVector) -> bool:
    if v.field != S.field:
        raise DimensionMismatchError(f"{v.field} vs {S.field}")
    return _reduce(S, v.coords)


def _same_field(*spaces: Subspace) -> FieldSpec:
    fields = {s.field for s in spaces}
    if len(fields) != 1:
        raise DimensionMismatchError(f"mixed fields: {sorted(map(str, fields))}")
    return fields.pop()


def subspace_sum(*spaces: Subspace) -> Subspace:
    f = _same_field(*spaces)
    return Subspace.from_rows(f, [r for s in spaces for r in s.basis])


def intersection(V: Subspace, W: Subspace) -> Subspace:
    f = _same_field(V, W)
    small, big = (V, W) if V.dim <= W.dim else (W, V)
    return Subspace.from_rows(f, [f.decode(x) for x in small.elements if big.contains_index(x)])


def is_direct_sum(V: Subspace, W: Subspace) -> bool:
    f = _same_field(V, W)
    if V.dim + W.dim != f.d:
        return False
    return len(rref(V.basis + W.basis, f.p, f.d)) == f.d


def standard_complement(B: Subspace) -> Subspace:
    """Coordinate complement of ``B``: the span of e_c over B's non-pivot columns."""
    piv = set(B.pivots)
    f = B.field
    return Subspace(f, tuple(
        tuple(int(j == c) for j in range(f.d)) for c in range(f.d) if c not in piv
    ))


def nullspace(field: FieldSpec, equations: Iterable[Sequence[int]]) -> Subspace:
    """All x with ``a . x = 0`` for every row ``a`` in ``equations``."""
    p, d = field.p, field.d
    R = rref(equations, p, d)
    piv = [_pivot(r) for r in R]
    free = [c for c in range(d) if c not in piv]
    rows = []
    for fc in free:
        x = [0] * d
        x[fc] = 1
        for r, pc in zip(R, piv):
            x[pc] = (-r[fc]) % p
        rows.append(x)
    return Subspace.from_rows(field, rows)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for t in range(k):
        num *= q ** (n - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


def enumerate_subspaces(field: FieldSpec, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Subspace]:
    """Yield every ``k``-dimensional subspace once, in lexicographic order of
    the row-major RREF matrix."""
    d, p = field.d, field.p
    if not 0 <= k <= d:
        raise ValueError(f"dimension {k} outside 0..{d}")
    if field.size > cap:
        raise ResourceLimitError("subspace enumeration", field.size, cap)
    if k == 0:
        yield Subspace.zero(field)
        return

    mat = [[0] * d for _ in range(k)]
    pivots = [-1] * k
    forbidden = [0] * d  # >0: some row has a non-pivot nonzero entry here

    def free_after(col: int) -> int:
        return sum(1 for c in range(col + 1, d) if not forbidden[c])

    def walk(pos: int) -> Iterator[Subspace]:
        if pos == k * d:
            yield Subspace(field, tuple(tuple(r) for r in mat))
            return
        r, c = divmod(pos, d)
        prev = pivots[r - 1] if r else -1
        if pivots[r] < 0:
            # still before this row's pivot: entry is 0 or the pivot itself
            if free_after(max(c, prev)) >= k - r:
                yield from walk(pos + 1)
            if c > prev and not forbidden[c] and free_after(c) >= k - r - 1:
                pivots[r] = c
                mat[r][c] = 1
                yield from walk(pos + 1)
                mat[r][c] = 0
                pivots[r] = -1
            return
        yield from walk(pos + 1)
        forbidden[c] += 1
        if free_after(pivots[r]) >= k - r - 1:
            for a in range(1, p):
                mat[r][c] = a
                yield from walk(pos + 1)
            mat[r][c] = 0
        forbidden[c] -= 1

    yield from walk(0)


# ---------------------------------------------------------------------------
# Linear maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    field: FieldSpec
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = self.field.d
        if len(self.matrix) != d or any(len(r) != d for r in self.matrix):
            raise DimensionMismatchError(f"matrix must be {d}x{d}")

    @classmethod
    def identity(cls, field: FieldSpec) -> "LinearMap":
        return cls(field, Subspace.full(field).basis)

    @classmethod
    def permutation(cls, field: FieldSpec, perm: Sequence[int]) -> "LinearMap":
        """Map sending e_t to e_{perm[t]} (0-based)."""
        d = field.d
        m = [[0] * d for _ in range(d)]
        for t, s in enumerate(perm):
            m[s][t] = 1
        return cls(field, tuple(map(tuple, m)))

    @classmethod
    def random_invertible(cls, field: FieldSpec, rng: random.Random) -> "LinearMap":
        while True:
            m = tuple(tuple(rng.randrange(field.p) for _ in range(field.d)) for _ in range(field.d))
            T = cls(field, m)
            if T.is_invertible():
                return T

    def is_invertible(self) -> bool:
        return len(rref(self.matrix, self.field.p, self.field.d)) == self.field.d

    def __call__(self, v: FVector) -> FVector:
        if v.field != self.field:
            raise DimensionMismatchError(f"{v.field} vs {self.field}")
        p = self.field.p
        return FVector(tuple(sum(a * b for a, b in zip(row, v.coords)) % p for row in self.matrix),
                       self.field)

    def image(self, S: Subspace) -> Subspace:
        return span([self(v) for v in S.vectors()], self.field)


def apply_map(T: LinearMap, C: Iterable[FVector], require_invertible: bool = False) -> frozenset[FVector]:
    if require_invertible and not T.is_invertible():
        raise SingularMapError("linear map is singular")
    return frozenset(T(c) for c in C)
