"""Replay suites: table rows, exhaustive desk-scale sweeps, core oracles and
the sharpness examples.  Every suite returns a :class:`SweepReport`."""

from __future__ import annotations

import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from ..cayley import (
    ConnectionSet,
    complement_connection_set,
    materialize,
)
from ..cca import cca_check, dual_witness, find_witness, kappa
from ..errors import CayleyCoreError, InvalidFieldError
from ..gfp import FieldSpec, is_prime
from ..homcore import (
    certify_core_by_invariants,
    chromatic_number,
    clique_number,
    compute_core,
    has_proper_coloring,
    is_core,
)
from ..graph import Graph
from .fixtures import TABLE_PRIME, TABLES, TableRow, counterexample

DEFAULT_SWEEP_LIMITS = {2: 5, 3: 3}
ORBIT_GROUP_CAP = 200_000


@dataclass
class SweepReport:
    suite: str
    params: dict = field(default_factory=dict)
    examined: int = 0
    passed: int = 0
    failed: list[dict] = field(default_factory=list)
    elapsed_ms: float = 0.0
    counts: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed

    def record(self, ok: bool, detail: dict | None = None) -> None:
        self.examined += 1
        if ok:
            self.passed += 1
        else:
            self.failed.append(detail or {})

    def merge(self, other: "SweepReport") -> None:
        self.examined += other.examined
        self.passed += other.passed
        self.failed.extend(other.failed)
        for k, v in other.counts.items():
            if isinstance(v, int) and isinstance(self.counts.get(k, 0), int):
                self.counts[k] = self.counts.get(k, 0) + v
            else:
                self.counts[k] = v
        self.notes.extend(other.notes)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "examined": self.examined,
            "passed": self.passed,
            "failed": self.failed,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "counts": self.counts,
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SweepReport":
        return cls(data["suite"], dict(data.get("params", {})), int(data["examined"]), int(data["passed"]),
                   list(data["failed"]), float(data["elapsed_ms"]), dict(data.get("counts", {})),
                   list(data.get("notes", [])))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, default=str)

    def summary(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{self.suite} [{params}]: {status} examined={self.examined} passed={self.passed} "
                 f"failed={len(self.failed)} elapsed_ms={self.elapsed_ms:.1f}"]
        for k, v in self.counts.items():
            lines.append(f"  {k}: {v}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        for f in self.failed[:20]:
            lines.append(f"  failure: {json.dumps(f, sort_keys=True, default=str)}")
        if len(self.failed) > 20:
            lines.append(f"  ... {len(self.failed) - 20} more failures")
        return "\n".join(lines)


class _Timer:
    def __init__(self, report: SweepReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = (time.perf_counter() - self.t0) * 1000.0
        return False


def _set_label(C: ConnectionSet) -> str:
    return "{" + ", ".join(str(v) for v in C.sorted_vectors()) + "}"


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

def table_rows(table_id: int) -> tuple[TableRow, ...]:
    if table_id not in TABLES:
        raise ValueError(f"no table {table_id} with symbolic rows")
    return TABLES[table_id]


def verify_table(table_id: int, d: int | None = None, p: int | None = None) -> SweepReport:
    if table_id == 6:
        return _verify_table_6(p if p is not None else 2)
    rows = table_rows(table_id)
    if table_id in TABLE_PRIME:
        if p is not None and p != TABLE_PRIME[table_id]:
            raise InvalidFieldError(f"table {table_id} is for p = {TABLE_PRIME[table_id]}")
        p = TABLE_PRIME[table_id]
    else:
        p = 5 if p is None else p
        if not is_prime(p) or p < 5:
            raise InvalidFieldError(f"table 5 needs a prime p >= 5, got {p}")
    need = max(max(r.min_dim(p) for r in rows), 1)
    d = need if d is None else d
    if d < need:
        raise ValueError(f"table {table_id} needs ambient dimension >= {need}, got {d}")
    report = SweepReport("tables", {"table": table_id, "p": p, "d": d})
    with _Timer(report):
        for row in rows:
            C, w, dim = row.instantiate(p, d)
            res = cca_check(C, w)
            detail = {"row": row.label}
            if not res.ok:
                detail["reason"] = res.reason
            if w.dim != dim:
                detail["dim"] = {"expected": dim, "witness": w.dim}
            report.record(res.ok and w.dim == dim, detail)
    return report


def _verify_table_6(p: int) -> SweepReport:
    ex = counterexample(p)
    report = SweepReport("tables", {"table": 6, "p": p, "d": ex.d})
    with _Timer(report):
        C = ex.connection_set()
        X = materialize(C)
        k = kappa(p)
        report.counts["name"] = ex.name
        report.counts["degree"] = len(C)
        ok = len(C) == k and X.is_regular() and not X.is_complete()
        report.record(ok, {"row": ex.label, "degree": len(C), "kappa": k, "complete": X.is_complete()})
    return report


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def inverse_classes(field: FieldSpec) -> list[tuple[int, ...]]:
    """The classes ``{x, -x}`` of nonzero vectors, ordered by least element.
    For p = 3 these are exactly the projective points."""
    seen: set[int] = set()
    out = []
    for x in range(1, field.size):
        if x not in seen:
            cls = tuple(sorted({x, field.neg(x)}))
            seen.update(cls)
            out.append(cls)
    return out


def low_regime_sets(field: FieldSpec) -> Iterator[tuple[int, ...]]:
    """Every symmetric zero-free ``C`` with ``|C| < kappa(p)``, smallest first,
    then lexicographically by sorted class indices."""
    classes = inverse_classes(field)
    width = 1 if field.p == 2 else 2
    k = kappa(field.p)
    for size in range(0, len(classes) + 1):
        if size * width >= k:
            break
        for combo in itertools.combinations(range(len(classes)), size):
            yield tuple(sorted(x for c in combo for x in classes[c]))


def _check_sweep_limits(p: int, d: int, limits: dict | None) -> None:
    limits = DEFAULT_SWEEP_LIMITS if limits is None else limits
    if p not in limits:
        raise InvalidFieldError(f"sweeps are defined for p in {sorted(limits)}, got {p}")
    if not 1 <= d <= limits[p]:
        raise ValueError(f"sweep at p = {p} limited to 1 <= d <= {limits[p]}, got {d}")


def _sweep_one(field: FieldSpec, indices: tuple[int, ...], direct: bool) -> tuple[bool, bool, int, dict]:
    C = ConnectionSet(field, frozenset(indices))
    label = _set_label(C)
    ws = find_witness(C)
    if not ws.found:
        return False, False, -1, {"regime": "low", "C": label, "reason": "no witness"}
    res = cca_check(C, ws.witness)
    if not res.ok:
        return False, False, -1, {"regime": "low", "C": label, "reason": res.reason}
    Cbar = complement_connection_set(C)
    dual = dual_witness(C, ws.witness)
    high = cca_check(Cbar, dual)
    detail = {}
    high_ok = high.ok
    if not high_ok:
        detail = {"regime": "high", "C": f"complement of {label}", "reason": high.reason}
    elif direct:
        wb = find_witness(Cbar)
        high_ok = wb.found and wb.witness.dim == field.d - ws.witness.dim
        if not high_ok:
            detail = {"regime": "high", "C": f"complement of {label}", "reason": "direct search disagrees"}
    return True, high_ok, ws.witness.dim, detail


def _sweep_chunk(args) -> list[tuple[int, bool, bool, int, dict]]:
    p, d, direct, chunk = args
    field = FieldSpec(p, d)
    return [(pos, *_sweep_one(field, idx, direct)) for pos, idx in chunk]


def _map_chunks(fn, items: list, threads: int, extra: tuple) -> list:
    threads = max(1, threads)
    if threads == 1 or len(items) < 64:
        return fn((*extra, items))
    size = max(1, len(items) // (threads * 4))
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    out = []
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(fn, [(*extra, c) for c in chunks]):
            out.extend(part)
    return out


def sweep_proposition(p: int, d: int, direct: bool = False, threads: int = 1, orbits: bool = True,
                      limits: dict | None = None) -> SweepReport:
    """Exhaust the low-cardinality regime and cover the high one by duality."""
    _check_sweep_limits(p, d, limits)
    field = FieldSpec(p, d)
    report = SweepReport("sweep", {"p": p, "d": d, "max_size": kappa(p) - 1, "direct_high": direct})
    with _Timer(report):
        sets = list(enumerate(low_regime_sets(field)))
        results = _map_chunks(_sweep_chunk, sets, threads, (p, d, direct))
        results.sort(key=lambda r: r[0])
        low_pass = high_pass = 0
        dims: dict[int, int] = {}
        for _, low_ok, high_ok, dim, detail in results:
            low_pass += low_ok
            high_pass += high_ok
            if low_ok:
                dims[dim] = dims.get(dim, 0) + 1
            if detail:
                report.failed.append(detail)
        n = len(results)
        report.examined = 2 * n
        report.passed = low_pass + high_pass
        report.counts.update({
            "low_examined": n, "low_witnesses": low_pass,
            "high_examined": n, "high_witnesses": high_pass,
            "witness_dims": {str(k): v for k, v in sorted(dims.items())},
        })
        if orbits:
            diag = orbit_diagnostic(field, [s for _, s in sets])
            if diag is None:
                report.notes.append("orbit diagnostic skipped: linear group too large")
            else:
                report.counts["orbits"] = diag["orbits"]
                report.counts["orbits_matched_to_rows"] = diag["matched"]
                for lab in diag["orbits_without_row"]:
                    report.notes.append(f"orbit with no table row: {lab}")
                for lab in diag["rows_never_matched"]:
                    report.notes.append(f"table row never matched: {lab}")
    return report


# ---------------------------------------------------------------------------
# Orbits under GL(d, p)
# ---------------------------------------------------------------------------

def gl_order(p: int, d: int) -> int:
    out = 1
    for t in range(d):
        out *= p ** d - p ** t
    return out


def gl_permutations(field: FieldSpec) -> np.ndarray:
    """Vertex permutations induced by every invertible matrix, one per row."""
    p, d, n = field.p, field.d, field.size
    digits = np.array([field.decode(x) for x in range(n)], dtype=np.int64)
    weights = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    mats: list[list[tuple[int, ...]]] = []

    def extend(cols: list[tuple[int, ...]], spanned: set[int]) -> None:
        if len(cols) == d:
            mats.append(list(cols))
            return
        for x in range(1, n):
            if x in spanned:
                continue
            new = set()
            for s in spanned:
                for a in range(p):
                    new.add(field.add(s, field.scale(a, x)))
            extend(cols + [field.decode(x)], new)

    extend([], {0})
    M = np.array(mats, dtype=np.int64)  # (G, d columns, d coords)
    images = np.einsum("nc,gck->gnk", digits, M) % p
    return images @ weights


def _canonical(P2: np.ndarray, members: Sequence[int]) -> int:
    if not members:
        return 0
    return int(P2[:, list(members)].sum(axis=1).min())


def orbit_diagnostic(field: FieldSpec, sets: Iterable[Sequence[int]]) -> dict | None:
    """Group swept sets into GL-orbits and match them against table rows."""
    if gl_order(field.p, field.d) > ORBIT_GROUP_CAP or field.size > 62:
        return None
    P2 = np.left_shift(np.int64(1), gl_permutations(field))
    orbit_rep: dict[int, tuple[int, ...]] = {}
    for s in sets:
        key = _canonical(P2, s)
        orbit_rep.setdefault(key, tuple(s))
    table = {2: 1, 3: 3}.get(field.p)
    row_keys: dict[int, str] = {}
    unmatched_rows = []
    if table is not None:
        for row in TABLES[table]:
            if row.min_dim(field.p) > field.d:
                continue
            key = _canonical(P2, sorted(row.base_set(field).indices))
            row_keys.setdefault(key, row.label)
            if key not in orbit_rep:
                unmatched_rows.append(row.label)
    without = [_set_label(ConnectionSet(field, frozenset(rep)))
               for key, rep in orbit_rep.items() if key not in row_keys]
    return {
        "orbits": len(orbit_rep),
        "matched": sum(1 for key in orbit_rep if key in row_keys),
        "orbits_without_row": without,
        "rows_never_matched": unmatched_rows,
    }


# ---------------------------------------------------------------------------
# Core oracle
# ---------------------------------------------------------------------------

def extreme_regime_sets(field: FieldSpec, regime: str = "both") -> Iterator[tuple[str, ConnectionSet]]:
    if regime not in ("low", "high", "both"):
        raise ValueError(f"unknown regime {regime!r}")
    for idx in low_regime_sets(field):
        C = ConnectionSet(field, frozenset(idx))
        if regime in ("low", "both"):
            yield "low", C
        if regime in ("high", "both"):
            yield "high", complement_connection_set(C)


def _theorem_one(C: ConnectionSet, cap: int, backend: str | None) -> dict:
    X = materialize(C)
    ws = find_witness(C)
    if not ws.found:
        return {"reason": "no witness"}
    cert = compute_core(X, cap=cap, vertex_transitive=True, backend=backend)
    V = sorted(ws.witness.V.elements)
    expected = C.field.p ** ws.witness.dim
    problems = {}
    if cert.kind != "complete":
        problems["core_kind"] = cert.kind
    if cert.order != expected:
        problems["core_order"] = {"computed": cert.order, "predicted": expected}
    if not X.induced(V).is_complete() or len(V) != cert.order:
        problems["V_clique"] = {"order": len(V), "complete": X.induced(V).is_complete()}
    return problems


def _theorem_chunk(args) -> list[tuple[int, dict]]:
    p, d, cap, backend, chunk = args
    field = FieldSpec(p, d)
    out = []
    for pos, (regime, idx) in chunk:
        C = ConnectionSet(field, frozenset(idx))
        problems = _theorem_one(C, cap, backend)
        if problems:
            problems = {"regime": regime, "C": _set_label(C), **problems}
        out.append((pos, problems))
    return out


def verify_theorem_end_to_end(p: int, d: int, regime: str = "both", cap: int = 64, threads: int = 1,
                              backend: str | None = None) -> SweepReport:
    """Compare brute-force cores with the witness prediction on every extreme set."""
    field = FieldSpec(p, d)
    if field.size > cap:
        from ..errors import ResourceLimitError

        raise ResourceLimitError("core search vertices", field.size, cap)
    report = SweepReport("theorem", {"p": p, "d": d, "regime": regime, "cap": cap})
    with _Timer(report):
        items = [(pos, (reg, tuple(sorted(C.indices))))
                 for pos, (reg, C) in enumerate(extreme_regime_sets(field, regime))]
        results = _map_chunks(_theorem_chunk, items, threads, (p, d, cap, backend))
        results.sort(key=lambda r: r[0])
        per = {"low": 0, "high": 0}
        for pos, problems in results:
            reg = items[pos][1][0]
            per[reg] += 1
            report.record(not problems, problems)
        report.counts.update({f"{k}_examined": v for k, v in per.items() if v})
    return report


# ---------------------------------------------------------------------------
# Sharpness examples
# ---------------------------------------------------------------------------

def five_cycles_cover_pairs(X: Graph) -> bool:
    """Whether every two distinct vertices lie on a common 5-cycle."""
    nb = X.neighbors
    n = X.n
    for u in range(n):
        covered = {u}
        for a in nb[u]:
            for b in nb[a]:
                if b == u:
                    continue
                for c in nb[b]:
                    if c in (u, a):
                        continue
                    for e in nb[c]:
                        if e in (u, a, b) or not X.adj[e, u]:
                            continue
                        covered.update((a, b, c, e))
        if len(covered) < n:
            return False
    return True


def verify_counterexamples(p: int, cap: int = 64, budget: int = 5_000_000,
                           backend: str | None = None) -> SweepReport:
    ex = counterexample(p)
    C = ex.connection_set()
    Cbar = complement_connection_set(C)
    k = kappa(p)
    n = C.field.size
    report = SweepReport("counterexamples", {"p": p, "d": ex.d})
    with _Timer(report):
        names = ("X", "complement")
        if p == 2:
            names = ("folded 5-cube", "halved 5-cube")
        for name, S, deg in ((names[0], C, k), (names[1], Cbar, n - k - 1)):
            X = materialize(S)
            info = {"graph": name, "order": n, "degree": len(S)}
            problems = []
            if len(S) != deg:
                problems.append(f"degree {len(S)} != {deg}")
            if X.is_complete():
                problems.append("complete")
            if p == 2:
                if not is_core(X, cap, vertex_transitive=True, backend=backend):
                    problems.append("not a core")
                info["method"] = "is_core"
            elif p == 3:
                omega = clique_number(X)
                info["clique_number"] = omega
                if omega != 4:
                    problems.append(f"clique number {omega} != 4")
                if has_proper_coloring(X, 6, budget=budget, backend=backend):
                    problems.append("6-colourable")
                info["chromatic_number"] = chromatic_number(X, budget=budget, backend=backend)
                cert = certify_core_by_invariants(X, budget=budget)
                if cert is not None:
                    info["method"] = "invariant chain"
                    info["eliminated"] = cert.evidence["eliminated"]
                else:
                    info["method"] = "is_core"
                    try:
                        if not is_core(X, cap, vertex_transitive=True, budget=budget, backend=backend):
                            problems.append("not a core")
                    except CayleyCoreError as exc:
                        problems.append(f"inconclusive: {exc}")
            else:
                if not is_core(X, cap, backend=backend):
                    problems.append("not a core by direct search")
                cert = certify_core_by_invariants(X)
                if cert is None:
                    problems.append("prime-order argument failed")
                info["method"] = "is_core + prime order"
            report.counts[name] = info
            report.record(not problems, {"graph": name, "problems": problems})
        if p == 2:
            X = materialize(C)
            omega = clique_number(X)
            cyc = five_cycles_cover_pairs(X)
            report.counts["folded 5-cube"]["clique_number"] = omega
            report.counts["folded 5-cube"]["pairs_on_5_cycles"] = cyc
            report.record(omega == 2, {"graph": names[0], "problems": [f"clique number {omega} != 2"]})
            report.record(cyc, {"graph": names[0], "problems": ["some pair on no common 5-cycle"]})
    return report


def default_threads() -> int:
    return os.cpu_count() or 1
