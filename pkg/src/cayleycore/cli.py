"""Command-line driver.

Exit status: 0 pass, 1 check failure or resource cap, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cayley import DEFAULT_MATERIALIZE_CAP, ConnectionSet, components, materialize, parse_document
from .cca import DEFAULT_SEARCH_CAP as WITNESS_CAP
from .cca import CCAWitness, cca_check, find_witness
from .errors import CayleyCoreError, ResourceLimitError
from .gfp import FieldSpec, Subspace
from .homcore import DEFAULT_SEARCH_CAP as CORE_CAP
from .homcore import clique_number, compute_core, is_core
from .verify import SweepReport, sweep_proposition, verify_counterexamples, verify_table, verify_theorem_end_to_end
from .verify.suites import default_threads

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("tables", "sweep", "theorem", "counterexamples")


class UsageError(Exception):
    pass


def _load(path: str | None) -> ConnectionSet:
    if not path:
        raise UsageError("--input is required")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_document(doc)


def parse_basis(text: str | None, field: FieldSpec, flag: str) -> Subspace:
    """``"1,0,0;0,1,1"`` -> span of the listed vectors; empty -> zero subspace."""
    if text is None:
        raise UsageError(f"{flag} is required")
    rows = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            coords = [int(c) for c in part.split(",")]
        except ValueError as exc:
            raise UsageError(f"{flag}: cannot parse vector {part!r}") from exc
        if len(coords) != field.d or any(not 0 <= c < field.p for c in coords):
            raise UsageError(f"{flag}: vector {part!r} must have {field.d} entries in [0, {field.p - 1}]")
        rows.append(coords)
    return Subspace.from_rows(field, rows)


def _basis_str(S: Subspace) -> str:
    return ";".join(",".join(map(str, row)) for row in S.basis)


# ---------------------------------------------------------------------------
# Subcommands: each returns (exit status, payload, text lines)
# ---------------------------------------------------------------------------

def cmd_check_cca(args):
    C = _load(args.input)
    f = C.field
    w = CCAWitness(parse_basis(args.v, f, "--v"), parse_basis(args.w, f, "--w"))
    res = cca_check(C, w)
    payload = {"ok": res.ok, "clause": res.clause, "vector": list(res.witness.coords) if res.witness else None,
               "V": _basis_str(w.V), "W": _basis_str(w.W), "dim_V": w.dim}
    text = [f"PASS dim V = {w.dim}" if res.ok else f"FAIL clause {res.reason}"]
    return (EXIT_OK if res.ok else EXIT_FAIL), payload, text


def cmd_find_witness(args):
    C = _load(args.input)
    cap = args.max_vertices or WITNESS_CAP
    ws = find_witness(C, cap)
    payload = {"found": ws.found, "coverage": ws.coverage()}
    if ws.found:
        payload.update(V=_basis_str(ws.witness.V), W=_basis_str(ws.witness.W), dim_V=ws.witness.dim)
        text = [f"V = {ws.witness.V}", f"W = {ws.witness.W}", f"dim V = {ws.witness.dim}"]
    else:
        text = ["none"] + [f"  {k}: {v}" for k, v in ws.coverage().items()]
    return EXIT_OK, payload, text


def cmd_core(args):
    C = _load(args.input)
    cap = args.max_vertices or CORE_CAP
    if C.field.size > cap:
        raise ResourceLimitError("core search vertices", C.field.size, cap)
    cert = compute_core(materialize(C), cap=cap, vertex_transitive=True)
    payload = {"order": cert.order, "complete": cert.kind == "complete", "kind": cert.kind,
               "vertices": list(cert.vertices), "retraction": list(cert.retraction.images),
               "fold_orders": cert.evidence["fold_orders"]}
    text = [f"core order {cert.order}", f"complete {payload['complete']}", f"kind {cert.kind}",
            f"retraction {' '.join(map(str, cert.retraction.images))}"]
    return EXIT_OK, payload, text


def cmd_is_core(args):
    C = _load(args.input)
    cap = args.max_vertices or CORE_CAP
    if C.field.size > cap:
        raise ResourceLimitError("core search vertices", C.field.size, cap)
    ans = is_core(materialize(C), cap=cap, vertex_transitive=True)
    return EXIT_OK, {"is_core": ans}, [f"is core: {'yes' if ans else 'no'}"]


def cmd_graph_info(args):
    C = _load(args.input)
    cap = args.max_vertices or DEFAULT_MATERIALIZE_CAP
    X = materialize(C, cap)
    comps = components(C, cap)
    payload = {"p": C.field.p, "d": C.field.d, "order": X.n, "degree": len(C), "edges": X.num_edges,
               "components": len(comps), "complete": X.is_complete(), "span_dim": C.span.dim}
    if X.n <= 256:
        payload["clique_number"] = clique_number(X)
    text = [f"{k} {v}" for k, v in payload.items()]
    return EXIT_OK, payload, text


def _tables(args) -> SweepReport:
    if args.table is not None:
        ps = [args.p] if args.table in (5, 6) and args.p else [None]
        return _combine("tables", [verify_table(args.table, args.d, p) for p in ps])
    plan = [(1, 4, None), (2, 4, None), (2, 5, None), (3, 5, None), (3, 6, None), (4, 5, None), (4, 6, None)]
    plan += [(5, d, p) for p in (5, 7) for d in (1, 2, 3)]
    plan += [(6, None, p) for p in (2, 3, 5)]
    if args.d is not None:
        plan = [(t, args.d, p) for t, _, p in plan if t != 6]
    return _combine("tables", [verify_table(t, d, p) for t, d, p in plan])


def _combine(suite: str, reports: list[SweepReport]) -> SweepReport:
    if len(reports) == 1:
        return reports[0]
    out = SweepReport(suite, {"runs": [r.params for r in reports]})
    for r in reports:
        out.examined += r.examined
        out.passed += r.passed
        out.failed.extend({**f, **r.params} for f in r.failed)
        out.elapsed_ms += r.elapsed_ms
    return out


def cmd_verify(args):
    suite = args.suite_flag or args.suite
    if suite is None:
        raise UsageError(f"choose a suite: {', '.join(SUITES)}")
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    threads = args.threads or default_threads()
    if suite == "tables":
        report = _tables(args)
    elif suite == "sweep":
        p = args.p or 2
        report = sweep_proposition(p, args.d or (4 if p == 2 else 3), direct=args.direct, threads=threads)
    elif suite == "theorem":
        report = verify_theorem_end_to_end(args.p or 2, args.d or 3, cap=args.max_vertices or CORE_CAP,
                                           threads=threads)
    else:
        report = verify_counterexamples(args.p or 2, cap=args.max_vertices or CORE_CAP)
    return (EXIT_OK if report.ok else EXIT_FAIL), report.to_json(), report.summary().splitlines()


COMMANDS = {
    "check-cca": cmd_check_cca,
    "find-witness": cmd_find_witness,
    "core": cmd_core,
    "is-core": cmd_is_core,
    "graph-info": cmd_graph_info,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayleycore", description="Cores of Cayley graphs on (F_p)^d.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p: argparse.ArgumentParser, doc: bool = True) -> None:
        if doc:
            p.add_argument("--input", metavar="PATH", help="connection-set JSON document")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--report", metavar="PATH", help="also write the JSON result here")
        p.add_argument("--max-vertices", type=int, metavar="N",
                       help=f"size cap (defaults: witness {WITNESS_CAP}, core {CORE_CAP}, "
                            f"materialize {DEFAULT_MATERIALIZE_CAP})")

    p = sub.add_parser("check-cca", help="check a candidate witness (V, W)")
    common(p)
    p.add_argument("--v", metavar="BASIS", help='basis of V, e.g. "1,0,0;0,1,0" (empty for 0)')
    p.add_argument("--w", metavar="BASIS", help="basis of W")
    for name, helptext in (("find-witness", "search for a witness"), ("core", "compute the core"),
                           ("is-core", "decide whether the graph is a core"),
                           ("graph-info", "basic graph statistics")):
        common(sub.add_parser(name, help=helptext))
    p = sub.add_parser("verify", help="run a replay suite")
    common(p, doc=False)
    p.add_argument("suite", nargs="?", help=", ".join(SUITES))
    p.add_argument("--suite", dest="suite_flag", metavar="NAME")
    p.add_argument("--table", type=int, choices=range(1, 7), metavar="N")
    p.add_argument("--p", type=int, metavar="N")
    p.add_argument("--d", type=int, metavar="N")
    p.add_argument("--threads", type=int, metavar="N", help="worker processes (default: all CPUs)")
    p.add_argument("--direct", action="store_true", help="also search high-regime witnesses directly")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, payload, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except CayleyCoreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.report:
        Path(args.report).write_text(json.dumps(payload, indent=2, default=str) + "\n")
    if args.format == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        print("\n".join(text))
    return status


if __name__ == "__main__":
    sys.exit(main())
