"""Connection sets over (F_p)^d and the Cayley graphs they define."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    DocumentError,
    DuplicateLineError,
    InvalidConnectionSetError,
    InvalidFieldError,
    ResourceLimitError,
    SymmetryViolationError,
)
from .gfp import FieldSpec, FVector, Subspace, span
from .graph import Graph

DEFAULT_MATERIALIZE_CAP = 4096


@dataclass(frozen=True)
class ConnectionSet:
    """A symmetric, zero-free subset of (F_p)^d, stored by vertex index."""

    field: FieldSpec
    indices: frozenset[int]

    def __post_init__(self):
        f = self.field
        if any(not 0 <= x < f.size for x in self.indices):
            raise InvalidConnectionSetError("index out of range")
        if 0 in self.indices:
            raise InvalidConnectionSetError("the zero vector cannot belong to a connection set")
        for x in sorted(self.indices):
            if f.neg(x) not in self.indices:
                raise SymmetryViolationError(f.from_index(x))

    @classmethod
    def from_vectors(cls, field: FieldSpec, vectors: Iterable[FVector]) -> "ConnectionSet":
        vectors = list(vectors)
        if any(v.field != field for v in vectors):
            raise DimensionMismatchError("vector outside the connection set's field")
        return cls(field, frozenset(v.index for v in vectors))

    @property
    def elements(self) -> frozenset[FVector]:
        return frozenset(self.field.from_index(x) for x in self.indices)

    def sorted_vectors(self) -> list[FVector]:
        return [self.field.from_index(x) for x in sorted(self.indices)]

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, v: FVector | int) -> bool:
        return (v if isinstance(v, int) else v.index) in self.indices

    @cached_property
    def span(self) -> Subspace:
        return span(self.sorted_vectors(), self.field)

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.sorted_vectors())) + "}"


def make_connection_set(field: FieldSpec, generators: Sequence[FVector] | Sequence[Sequence[int]],
                        close: bool = True) -> ConnectionSet:
    """Build a connection set; with ``close`` the negations are added."""
    vecs = [g if isinstance(g, FVector) else field.vector(g) for g in generators]
    if any(v.field != field for v in vecs):
        raise DimensionMismatchError("generator outside the given field")
    idx = {v.index for v in vecs}
    if 0 in idx:
        raise InvalidConnectionSetError("the zero vector cannot belong to a connection set")
    if close:
        idx |= {field.neg(x) for x in idx}
    return ConnectionSet(field, frozenset(idx))


def canonical_line(v: FVector) -> FVector:
    """Scale ``v`` so its first nonzero coordinate is 1."""
    if v.is_zero():
        raise InvalidConnectionSetError("the zero vector does not name a projective point")
    lead = next(c for c in v.coords if c)
    return pow(lead, -1, v.field.p) * v


def projective_expand(field: FieldSpec, lines: Iterable[FVector] | Iterable[Sequence[int]]) -> ConnectionSet:
    """All nonzero multiples of each line representative."""
    if field.p == 2:
        raise InvalidFieldError("projective specification needs an odd prime")
    seen: set[FVector] = set()
    idx: set[int] = set()
    for raw in lines:
        v = raw if isinstance(raw, FVector) else field.vector(raw)
        rep = canonical_line(v)
        if rep in seen:
            raise DuplicateLineError(f"projective point [{rep}] given twice")
        seen.add(rep)
        idx.update(field.scale(a, rep.index) for a in range(1, field.p))
    return ConnectionSet(field, frozenset(idx))


def projective_points(field: FieldSpec) -> list[int]:
    """Indices of canonical line representatives, ascending."""
    out = []
    for x in range(1, field.size):
        lead = next(c for c in field.decode(x) if c)
        if lead == 1:
            out.append(x)
    return out


def complement_connection_set(C: ConnectionSet) -> ConnectionSet:
    return ConnectionSet(C.field, frozenset(range(1, C.field.size)) - C.indices)


def adjacent(C: ConnectionSet, x: FVector, y: FVector) -> bool:
    if x.field != C.field or y.field != C.field:
        raise DimensionMismatchError("vertex outside the connection set's field")
    return C.field.sub(x.index, y.index) in C.indices


def _check_cap(C: ConnectionSet, cap: int, what: str) -> None:
    if C.field.size > cap:
        raise ResourceLimitError(what, C.field.size, cap)


def components(C: ConnectionSet, cap: int = DEFAULT_MATERIALIZE_CAP) -> list[frozenset[int]]:
    """Cosets of span(C), ordered by smallest member."""
    _check_cap(C, cap, "components")
    f = C.field
    B = C.span.elements
    seen: set[int] = set()
    out = []
    for x in range(f.size):
        if x in seen:
            continue
        coset = frozenset(f.add(x, b) for b in B)
        seen |= coset
        out.append(coset)
    return out


def materialize(C: ConnectionSet, cap: int = DEFAULT_MATERIALIZE_CAP) -> Graph:
    _check_cap(C, cap, "materialization")
    f = C.field
    n = f.size
    a = np.zeros((n, n), dtype=bool)
    conn = sorted(C.indices)
    for x in range(n):
        for c in conn:
            a[x, f.add(x, c)] = True
    return Graph(a)


class CayleyGraph:
    """Cay((F_p)^d, C).  Vertex ``x`` is the vector with index ``x``."""

    def __init__(self, connection: ConnectionSet, cap: int = DEFAULT_MATERIALIZE_CAP):
        self.connection = connection
        self.cap = cap

    @property
    def field(self) -> FieldSpec:
        return self.connection.field

    @property
    def order(self) -> int:
        return self.field.size

    @property
    def degree(self) -> int:
        return len(self.connection)

    @cached_property
    def graph(self) -> Graph:
        return materialize(self.connection, self.cap)

    def adjacent(self, x: FVector, y: FVector) -> bool:
        return adjacent(self.connection, x, y)

    def complement(self) -> "CayleyGraph":
        return CayleyGraph(complement_connection_set(self.connection), self.cap)

    def induced(self, vertices: Iterable[FVector]) -> Graph:
        return self.graph.induced([v.index for v in vertices])

    def __repr__(self) -> str:
        return f"CayleyGraph({self.field}, |C|={self.degree})"


# ---------------------------------------------------------------------------
# Connection-set documents
# ---------------------------------------------------------------------------

_DOC_KEYS = {"p", "d", "generators", "close_under_negation", "projective"}


def _strict_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{what} must be an integer, got {value!r}")
    return value


def parse_document(doc: Mapping[str, Any]) -> ConnectionSet:
    if not isinstance(doc, Mapping):
        raise DocumentError("document must be a JSON object")
    unknown = set(doc) - _DOC_KEYS
    if unknown:
        raise DocumentError(f"unknown fields: {sorted(unknown)}")
    for key in ("p", "d", "generators"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    p = _strict_int(doc["p"], "p")
    d = _strict_int(doc["d"], "d")
    field = FieldSpec(p, d)
    close = doc.get("close_under_negation", True)
    projective = doc.get("projective", False)
    if not isinstance(close, bool) or not isinstance(projective, bool):
        raise DocumentError("close_under_negation and projective must be booleans")
    gens = doc["generators"]
    if not isinstance(gens, list):
        raise DocumentError("generators must be an array")
    vecs = []
    for g in gens:
        if not isinstance(g, list) or len(g) != d:
            raise DocumentError(f"generator {g!r} must be an array of length {d}")
        coords = [_strict_int(c, "coordinate") for c in g]
        if any(not 0 <= c < p for c in coords):
            raise DocumentError(f"generator {g!r} has entries outside [0, {p - 1}]")
        vecs.append(FVector(tuple(coords), field))
    if projective:
        if p == 2:
            raise DocumentError("projective documents require an odd prime")
        return projective_expand(field, vecs)
    return make_connection_set(field, vecs, close=close)


def load_document(path: str | Path) -> ConnectionSet:
    with open(path, encoding="utf-8") as fh:
        return parse_document(json.load(fh))


def dump_document(C: ConnectionSet) -> dict:
    return {
        "p": C.field.p,
        "d": C.field.d,
        "generators": [list(v.coords) for v in C.sorted_vectors()],
        "close_under_negation": False,
    }
