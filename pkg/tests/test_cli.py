from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from endolab import cli


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_count_podi3(capsys):
    code, data = run_json(capsys, "count", "--monoid", "podi", "--n", "3")
    assert code == 0
    assert data["total"] == 36
    assert sum(data["per_family"].values()) == 36


def test_endos_od2_classified(capsys):
    code, data = run_json(capsys, "endos", "--monoid", "od", "--n", "2", "--classify")
    assert code == 0 and data["count"] == 7
    assert data["families"] == {"Identity": 1, "InnerTau": 1, "IdempotentPair": 2, "Constant": 3}


def test_enumerate_and_greens(capsys):
    code, data = run_json(capsys, "enumerate", "--monoid", "pod", "--n", "2")
    assert code == 0 and len(data["elements"]) == 9  # all 3^2 partial maps
    code, data = run_json(capsys, "greens", "--monoid", "pod", "--n", "3")
    assert code == 0 and data["characterization_agrees"]
    assert len(data["j_chain"]) == 4


def test_congruences(capsys):
    code, data = run_json(capsys, "congruences", "--monoid", "podi", "--n", "2")
    assert code == 0
    assert all(r["is_congruence"] for r in data["chain"])
    assert len(data["all_congruences"]) == 4


def test_table_format(capsys):
    assert cli.run(["count", "--monoid", "od", "--n", "3", "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert "total" in out and "26" in out


def test_classify_census_at_n3(capsys):
    code, data = run_json(capsys, "classify", "--monoid", "pod", "--n", "3")
    assert code == 0
    assert data["search_total"] == data["formula_total"] == 102
    assert data["search_equals_family_builds"]


def test_classify_census_at_n2_reports_the_overlap(capsys):
    code, data = run_json(capsys, "classify", "--monoid", "poi", "--n", "2")
    assert code == 1
    assert (data["search_total"], data["formula_total"]) == (11, 13)


def test_classify_input(tmp_path, capsys):
    records = [{"map": [0, 0, 0, 0]}, [0, 1, 2, 3], [3, 2, 1, 0]]
    path = tmp_path / "maps.json"
    path.write_text(json.dumps(records))
    code, data = run_json(capsys, "classify", "--monoid", "od", "--n", "2", "--input", str(path))
    assert code == 1
    fams = [r.get("family") for r in data["records"]]
    assert fams[:2] == ["Constant", "Identity"]
    assert "error" in data["records"][2]


def test_classify_input_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("[[0, 1, 2, 3]]"))
    code, data = run_json(capsys, "classify", "--monoid", "od", "--n", "2", "--input", "-")
    assert code == 0 and data["records"][0]["family"] == "Identity"


@pytest.mark.parametrize("argv", [
    ["count", "--monoid", "xyz", "--n", "3"],
    ["count", "--monoid", "pod"],
    ["count", "--monoid", "pod", "--n", "0"],
    ["endos", "--monoid", "i1one", "--n", "2", "--classify"],
    ["enumerate", "--monoid", "pod", "--n", "9", "--strategy", "filter"],
    ["classify", "--monoid", "od", "--n", "2", "--input", "/nonexistent/file.json"],
    [],
])
def test_usage_errors(argv, capsys):
    assert cli.run(argv) == 2


def test_budget_exit(capsys):
    assert cli.run(["endos", "--monoid", "po", "--n", "4", "--budget-seconds", "0"]) == 3


def test_verify_single_check(capsys):
    code, data = run_json(capsys, "verify", "--suite", "11")
    assert code == 0 and data["overall"] == "pass"


def test_output_is_deterministic(capsys):
    argv = ["endos", "--monoid", "pod", "--n", "3", "--classify"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv + ["--jobs", "2"])
    assert capsys.readouterr().out == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "endolab", "count", "--monoid", "od", "--n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["total"] == 7
