"""Symbolic fixtures for the classification tables and the sharpness examples.

Rows are written in the letters ``i, j, k, l, m`` for ``e_1 .. e_5``.  A
subspace expression is one of

* ``0`` or ``full``;
* ``<v, w, ...>``: a span of linear forms such as ``i+j-k``;
* ``hyper(a1, ..., an)``: ``{x in <e_1..e_n> : a1*x1 + ... + an*xn = 0}``.

``section`` names the side that receives the coordinate complement of the
span of the base connection set when a row is instantiated at a larger
ambient dimension.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..cayley import ConnectionSet, complement_connection_set, make_connection_set, projective_expand
from ..cca import CCAWitness
from ..gfp import FieldSpec, FVector, Subspace, nullspace, span, standard_complement, subspace_sum

LETTERS = "ijklm"

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*([ijklm])")


def parse_form(expr: str, field: FieldSpec) -> FVector:
    """``"i+j-k"`` -> the vector e_1 + e_2 - e_3."""
    coords = [0] * field.d
    text = expr.replace(" ", "")
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos:
            raise ValueError(f"cannot parse {expr!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        t = LETTERS.index(m.group(3))
        if t >= field.d:
            raise ValueError(f"{m.group(3)} needs ambient dimension > {t}")
        coords[t] += sign * coef
        pos = m.end()
    if pos != len(text) or not text:
        raise ValueError(f"cannot parse {expr!r}")
    return field.vector(coords)


def parse_subspace(expr: str, field: FieldSpec) -> Subspace:
    expr = expr.strip()
    if expr == "0":
        return Subspace.zero(field)
    if expr == "full":
        return Subspace.full(field)
    if expr.startswith("<") and expr.endswith(">"):
        return span([parse_form(t, field) for t in expr[1:-1].split(",")], field)
    m = re.fullmatch(r"hyper\(([-\d,\s]+)\)", expr)
    if m:
        coeffs = [int(c) for c in m.group(1).split(",")]
        n = len(coeffs)
        if n > field.d:
            raise ValueError(f"{expr} needs ambient dimension >= {n}")
        eqs = [coeffs + [0] * (field.d - n)]
        eqs += [[int(s == t) for s in range(field.d)] for t in range(n, field.d)]
        return nullspace(field, eqs)
    raise ValueError(f"cannot parse subspace {expr!r}")


def eval_dim(expr: str, d: int) -> int:
    expr = expr.replace(" ", "")
    if expr == "d":
        return d
    m = re.fullmatch(r"d-(\d+)", expr)
    if m:
        return d - int(m.group(1))
    return int(expr)


@dataclass(frozen=True)
class TableRow:
    table: int
    label: str
    gens: tuple[str, ...]
    V: str
    W: str
    dim: str
    complement: bool = False
    section: str | None = None
    printed_dim: str | None = None  # set only where the printed column is in error

    @property
    def projective(self) -> bool:
        return self.table in (3, 4)

    def base_set(self, field: FieldSpec) -> ConnectionSet:
        vecs = [parse_form(g, field) for g in self.gens]
        if self.projective:
            return projective_expand(field, vecs)
        return make_connection_set(field, vecs, close=True)

    def min_dim(self, p: int) -> int:
        """Smallest ambient dimension the row makes sense in."""
        need = 0
        for text in (*self.gens, self.V, self.W):
            for ch in re.sub(r"full|hyper", "", text):
                if ch in LETTERS:
                    need = max(need, LETTERS.index(ch) + 1)
        for m in re.finditer(r"hyper\(([-\d,\s]+)\)", self.V + self.W):
            need = max(need, len(m.group(1).split(",")))
        return need

    def instantiate(self, p: int, d: int) -> tuple[ConnectionSet, CCAWitness, int]:
        field = FieldSpec(p, d)
        base = self.base_set(field)
        C = complement_connection_set(base) if self.complement else base
        V = parse_subspace(self.V, field)
        W = parse_subspace(self.W, field)
        if self.section:
            s = standard_complement(base.span)
            if self.section == "V":
                V = subspace_sum(V, s)
            else:
                W = subspace_sum(W, s)
        return C, CCAWitness(V, W), eval_dim(self.dim, d)


def _low(table, label, gens, V, W, dim, section="W", printed_dim=None):
    return TableRow(table, label, tuple(gens), V, W, dim, False, section, printed_dim)


def _high(table, label, gens, V, W, dim, section="V", printed_dim=None):
    return TableRow(table, label, tuple(gens), V, W, dim, True, section, printed_dim)


TABLE_1 = (
    _low(1, "{}", [], "0", "0", "0"),
    _low(1, "{i}", ["i"], "<i>", "0", "1", printed_dim="0"),
    _low(1, "{i, j}", ["i", "j"], "<i>", "<i+j>", "1"),
    _low(1, "{i, j, i+j}", ["i", "j", "i+j"], "<i, j>", "0", "2"),
    _low(1, "{i, j, k}", ["i", "j", "k"], "<i>", "hyper(1,1,1)", "1"),
    _low(1, "{i, j, k, i+j}", ["i", "j", "k", "i+j"], "<i, j>", "<i+j+k>", "2"),
    _low(1, "{i, j, k, i+j+k}", ["i", "j", "k", "i+j+k"], "<i>", "hyper(1,1,1)", "1"),
    _low(1, "{i, j, k, l}", ["i", "j", "k", "l"], "<i>", "hyper(1,1,1,1)", "1"),
)

TABLE_2 = (
    _low(2, "{}", [], "0", "full", "0", section=None),
    _low(2, "{i}", ["i"], "<i>", "0", "1", printed_dim="0"),
    _low(2, "{i, j}", ["i", "j"], "<i>", "<i+j>", "1"),
    _low(2, "{i, j, i+j}", ["i", "j", "i+j"], "<i, j>", "0", "2"),
    _low(2, "{i, j, k}", ["i", "j", "k"], "<i>", "hyper(1,1,1)", "1"),
    _low(2, "{i, j, k, i+j}", ["i", "j", "k", "i+j"], "<i, j>", "<i+j+k>", "2"),
    _low(2, "{i, j, k, i+j+k}", ["i", "j", "k", "i+j+k"], "<i>", "hyper(1,1,1)", "1"),
    _low(2, "{i, j, k, l}", ["i", "j", "k", "l"], "<i>", "hyper(1,1,1,1)", "1"),
    _high(2, "F_2^d minus 0", [], "full", "0", "d", section=None),
    _high(2, "complement of {i}", ["i"], "0", "<i>", "d-1", printed_dim="d"),
    _high(2, "complement of {i, j}", ["i", "j"], "<i+j>", "<i>", "d-1"),
    _high(2, "complement of {i, j, i+j}", ["i", "j", "i+j"], "0", "<i, j>", "d-2"),
    _high(2, "complement of {i, j, k}", ["i", "j", "k"], "hyper(1,1,1)", "<i>", "d-1"),
    _high(2, "complement of {i, j, k, i+j}", ["i", "j", "k", "i+j"], "<i+j+k>", "<i, j>", "d-2"),
    _high(2, "complement of {i, j, k, i+j+k}", ["i", "j", "k", "i+j+k"], "hyper(1,1,1)", "<i>", "d-1"),
    _high(2, "complement of {i, j, k, l}", ["i", "j", "k", "l"], "hyper(1,1,1,1)", "<i>", "d-1"),
)

# ternary rows list line representatives; the connection set is every nonzero multiple
_T3 = [
    ("{}", [], "0", "full", "0", None),
    ("{[i]}", ["i"], "<i>", "0", "1", "W"),
    ("{[i], [j]}", ["i", "j"], "<i>", "<i+j>", "1", "W"),
    ("{[i], [j], [i+j]}", ["i", "j", "i+j"], "<i>", "<i-j>", "1", "W"),
    ("{[i], [j], [i+j], [i-j]}", ["i", "j", "i+j", "i-j"], "<i, j>", "0", "2", "W"),
    ("{[i], [j], [k]}", ["i", "j", "k"], "<i>", "hyper(1,1,1)", "1", "W"),
    ("{[i], [j], [k], [i+j]}", ["i", "j", "k", "i+j"], "<k>", "hyper(1,1,1)", "1", "W"),
    ("{[i], [j], [k], [i+j+k]}", ["i", "j", "k", "i+j+k"], "<i+j+k>", "hyper(1,1,-1)", "1", "W"),
    ("{[i], [j], [k], [j+k], [j-k]}", ["i", "j", "k", "j+k", "j-k"], "<j, k>", "<i+j+k>", "2", "W"),
    ("{[i], [j], [k], [i+k], [j+k]}", ["i", "j", "k", "i+k", "j+k"], "<i>", "hyper(1,1,1)", "1", "W"),
    ("{[i], [j], [k], [i+j-k], [j+k]}", ["i", "j", "k", "i+j-k", "j+k"], "<i>", "hyper(1,1,1)", "1", "W"),
    ("{[i], [j], [k], [l]}", ["i", "j", "k", "l"], "<i>", "hyper(1,1,1,1)", "1", "W"),
    ("{[i], [j], [k], [l], [i+j]}", ["i", "j", "k", "l", "i+j"], "<i+j>", "hyper(1,1,1,1)", "1", "W"),
    ("{[i], [j], [k], [l], [i+j+k]}", ["i", "j", "k", "l", "i+j+k"], "<l>", "hyper(1,1,-1,1)", "1", "W"),
    ("{[i], [j], [k], [l], [i+j+k+l]}", ["i", "j", "k", "l", "i+j+k+l"], "<i+j+k+l>",
     "hyper(1,1,1,1)", "1", "W"),
    ("{[i], [j], [k], [l], [m]}", ["i", "j", "k", "l", "m"], "<i>", "hyper(1,1,1,1,1)", "1", "W"),
]

TABLE_3 = tuple(_low(3, lab, g, V, W, dim, section=sec) for lab, g, V, W, dim, sec in _T3)

_T4 = [
    ("F_3P^(d-1)", [], "full", "0", "d", None),
    ("complement of {[i]}", ["i"], "0", "<i>", "d-1", "V"),
    ("complement of {[i], [j]}", ["i", "j"], "<i+j>", "<i>", "d-1", "V"),
    ("complement of {[i], [j], [i+j]}", ["i", "j", "i+j"], "<i-j>", "<i>", "d-1", "V"),
    ("complement of {[i], [j], [i+j], [i-j]}", ["i", "j", "i+j", "i-j"], "0", "<i, j>", "d-2", "V"),
    ("complement of {[i], [j], [k]}", ["i", "j", "k"], "hyper(1,1,1)", "<i>", "d-1", "V"),
    ("complement of {[i], [j], [k], [i+j]}", ["i", "j", "k", "i+j"], "hyper(1,1,1)", "<k>", "d-1", "V"),
    ("complement of {[i], [j], [k], [i+j+k]}", ["i", "j", "k", "i+j+k"], "hyper(1,1,-1)", "<i+j+k>",
     "d-1", "V"),
    ("complement of {[i], [j], [k], [j+k], [j-k]}", ["i", "j", "k", "j+k", "j-k"], "<i+j+k>",
     "<j, k>", "d-2", "V"),
    ("complement of {[i], [j], [k], [i+k], [j+k]}", ["i", "j", "k", "i+k", "j+k"], "hyper(1,1,1)",
     "<i>", "d-1", "V"),
    ("complement of {[i], [j], [k], [i+j-k], [j+k]}", ["i", "j", "k", "i+j-k", "j+k"], "hyper(1,1,1)",
     "<i>", "d-1", "V"),
    ("complement of {[i], [j], [k], [l]}", ["i", "j", "k", "l"], "hyper(1,1,1,1)", "<i>", "d-1", "V"),
    ("complement of {[i], [j], [k], [l], [i+j]}", ["i", "j", "k", "l", "i+j"], "hyper(1,1,1,1)",
     "<i+j>", "d-1", "V"),
    ("complement of {[i], [j], [k], [l], [i+j+k]}", ["i", "j", "k", "l", "i+j+k"], "hyper(1,1,-1,1)",
     "<l>", "d-1", "V"),
    ("complement of {[i], [j], [k], [l], [i+j+k+l]}", ["i", "j", "k", "l", "i+j+k+l"],
     "hyper(1,1,1,1)", "<i+j+k+l>", "d-1", "V"),
    ("complement of {[i], [j], [k], [l], [m]}", ["i", "j", "k", "l", "m"], "hyper(1,1,1,1,1)", "<i>",
     "d-1", "V"),
]

TABLE_4 = tuple(_high(4, lab, g, V, W, dim, section=sec) for lab, g, V, W, dim, sec in _T4)

TABLE_5 = (
    _low(5, "{}", [], "0", "full", "0", section=None),
    _high(5, "F_p^d minus 0", [], "full", "0", "d", section=None),
)

TABLES = {1: TABLE_1, 2: TABLE_2, 3: TABLE_3, 4: TABLE_4, 5: TABLE_5}
TABLE_PRIME = {1: 2, 2: 2, 3: 3, 4: 3}


@dataclass(frozen=True)
class Counterexample:
    p: int
    d: int
    label: str
    name: str
    gens: tuple[str, ...]
    projective: bool

    def connection_set(self) -> ConnectionSet:
        field = FieldSpec(self.p, self.d)
        vecs = [parse_form(g, field) for g in self.gens]
        if self.projective:
            return projective_expand(field, vecs)
        return make_connection_set(field, vecs, close=True)


def counterexample(p: int) -> Counterexample:
    """The degree-kappa(p) graph whose complement is also a non-complete core."""
    if p == 2:
        return Counterexample(2, 4, "{i, j, k, l, i+j+k+l}", "Folded 5-cube / Clebsch graph",
                              ("i", "j", "k", "l", "i+j+k+l"), False)
    if p == 3:
        return Counterexample(3, 3, "pi^-1({[i], [j], [k], [i+j], [i+k], [i+j+k]})", "(no standard name)",
                              ("i", "j", "k", "i+j", "i+k", "i+j+k"), True)
    FieldSpec(p, 1)  # validates primality
    return Counterexample(p, 1, "{i, -i}", f"{p}-cycle C_{p}", ("i",), False)


def sharpness_set() -> ConnectionSet:
    """{i, j, k, l, i+j+k+l} in F_2^4: neither it nor its complement has a witness."""
    return counterexample(2).connection_set()


def halved_cube_set(n: int) -> ConnectionSet:
    """Connection set of the halved n-cube on (F_2)^(n-1)."""
    f = FieldSpec(2, n - 1)
    gens = [f.unit(a) for a in range(n - 1)]
    gens += [f.unit(a) + f.unit(b) for a in range(n - 1) for b in range(a + 1, n - 1)]
    return make_connection_set(f, gens)
