from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cayleycore.cayley import dump_document
from cayleycore.cli import main
from cayleycore.verify import SweepReport
from cayleycore.verify.fixtures import halved_cube_set, sharpness_set


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


@pytest.fixture
def docs(tmp_path):
    return {
        "c_star": write(tmp_path, "c_star.json", dump_document(sharpness_set())),
        "pair": write(tmp_path, "pair.json", {"p": 2, "d": 2, "generators": [[1, 0], [0, 1]]}),
        "cube": write(tmp_path, "cube.json", {"p": 2, "d": 3, "generators": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}),
        "empty": write(tmp_path, "empty.json", {"p": 3, "d": 2, "generators": []}),
        "t1": write(tmp_path, "t1.json", {"p": 2, "d": 3, "generators": [[1, 0, 0], [0, 1, 0], [1, 1, 0]]}),
        "p4": write(tmp_path, "p4.json", {"p": 4, "d": 2, "generators": [[1, 0]]}),
        "broken": write(tmp_path, "broken.json", '{"p": 2,\n "d": 2,\n "generators": [[1, 0]\n'),
        "unknown": write(tmp_path, "unknown.json", {"p": 2, "d": 2, "generators": [], "extra": 1}),
    }


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_cca_pass(docs, capsys):
    code, out, _ = run(["check-cca", "--input", docs["t1"], "--v", "1,0,0;0,1,0", "--w", "0,0,1"], capsys)
    assert code == 0 and "PASS" in out


def test_check_cca_c_star_hyperplane_fails_clause_c(docs, capsys):
    w = "1,1,0,0;1,0,1,0;1,0,0,1"
    code, out, _ = run(["check-cca", "--input", docs["c_star"], "--v", "1,0,0,0", "--w", w, "--format", "json"], capsys)
    payload = json.loads(out)
    assert code == 1
    assert payload["clause"] == "c" and payload["vector"] == [1, 1, 1, 1]


def test_check_cca_bad_basis_is_usage_error(docs, capsys):
    code, _, err = run(["check-cca", "--input", docs["t1"], "--v", "1,0", "--w", ""], capsys)
    assert code == 2 and "--v" in err


def test_composite_modulus_exit_2(docs, capsys):
    code, _, err = run(["find-witness", "--input", docs["p4"]], capsys)
    assert code == 2 and "prime" in err


def test_malformed_json_reports_line_and_column(docs, capsys):
    code, _, err = run(["graph-info", "--input", docs["broken"]], capsys)
    assert code == 2 and "line 4 column 1" in err


def test_unknown_field_and_missing_file(docs, capsys):
    assert run(["graph-info", "--input", docs["unknown"]], capsys)[0] == 2
    assert run(["graph-info", "--input", docs["unknown"] + ".missing"], capsys)[0] == 2
    assert run(["graph-info"], capsys)[0] == 2


def test_find_witness_examples(docs, capsys):
    code, out, _ = run(["find-witness", "--input", docs["pair"], "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["dim_V"] == 1
    code, out, _ = run(["find-witness", "--input", docs["c_star"]], capsys)
    assert code == 0 and out.startswith("none")
    code, out, _ = run(["find-witness", "--input", docs["empty"], "--format", "json"], capsys)
    payload = json.loads(out)
    assert payload["dim_V"] == 0 and payload["V"] == "" and payload["W"] == "1,0;0,1"


def test_core_examples(docs, capsys, tmp_path):
    code, out, _ = run(["core", "--input", docs["cube"], "--format", "json"], capsys)
    payload = json.loads(out)
    assert code == 0 and payload["order"] == 2 and payload["complete"]
    code, out, _ = run(["core", "--input", docs["c_star"]], capsys)
    assert "core order 16" in out and "kind self" in out
    report = tmp_path / "core.json"
    code, _, _ = run(["core", "--input", docs["empty"], "--report", str(report)], capsys)
    assert code == 0 and json.loads(report.read_text())["order"] == 1


def test_core_vertex_cap_exit_1(docs, capsys):
    code, _, err = run(["core", "--input", docs["c_star"], "--max-vertices", "8"], capsys)
    assert code == 1 and "8" in err


def test_is_core_and_graph_info(docs, tmp_path, capsys):
    halved = write(tmp_path, "halved.json", dump_document(halved_cube_set(5)))
    assert "yes" in run(["is-core", "--input", halved], capsys)[1]
    assert "no" in run(["is-core", "--input", docs["cube"]], capsys)[1]
    code, out, _ = run(["graph-info", "--input", docs["c_star"], "--format", "json"], capsys)
    info = json.loads(out)
    assert info["order"] == 16 and info["degree"] == 5 and info["clique_number"] == 2


def test_verify_suites(capsys):
    assert run(["verify", "tables", "--table", "2", "--d", "5"], capsys)[0] == 0
    code, out, _ = run(["verify", "--suite", "sweep", "--p", "2", "--d", "4", "--threads", "1"], capsys)
    assert code == 0 and "examined=3882 passed=3882" in out
    assert run(["verify", "counterexamples", "--p", "3"], capsys)[0] == 0


def test_verify_unknown_suite_exit_2(capsys):
    assert run(["verify", "bogus"], capsys)[0] == 2
    assert run(["verify"], capsys)[0] == 2


def test_unknown_flag_rejected(docs):
    with pytest.raises(SystemExit) as exc:
        main(["core", "--input", docs["cube"], "--bogus"])
    assert exc.value.code == 2


def test_report_round_trip_reproduces_summary(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(["verify", "tables", "--table", "1", "--d", "4", "--report", str(report)], capsys)
    assert code == 0
    parsed = SweepReport.from_json(json.loads(report.read_text()))
    assert parsed.summary() == out.rstrip("\n")


def test_console_entry_point(docs):
    proc = subprocess.run([sys.executable, "-m", "cayleycore.cli", "find-witness", "--input", docs["pair"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dim V = 1" in proc.stdout
