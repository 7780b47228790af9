import csv
import io
import json
import subprocess
import sys

import pytest

from shuttlec.cli import REPORT_FIELDS, main
from shuttlec.codes import save_css, save_matrix, steane


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def compile_json(capsys, *argv):
    code, out, _ = run(capsys, "compile", *argv, "--format", "json")
    assert code == 0
    return json.loads(out)["reports"]


def test_compile_steane_shor(capsys):
    rows = compile_json(capsys, "--code", "steane", "--style", "shor", "--basis", "both")
    assert [r["basis"] for r in rows] == ["X", "Z"]
    assert [(r["sssc"], r["num_chains"], r["blanks"]) for r in rows] == [(3, 3, 1)] * 2
    assert all(len(r["reindexing"]) == 12 for r in rows)


def test_compile_shor9(capsys):
    rows = compile_json(capsys, "--code", "shor9", "--style", "shor", "--basis", "both")
    assert [r["sssc"] for r in rows] == [2, 4]
    assert [r["blanks"] for r in rows] == [0, 4]


def test_compile_toric_x(capsys):
    rows = compile_json(capsys, "--code", "toric:3", "--style", "shor", "--basis", "x")
    assert len(rows) == 1 and rows[0]["num_chains"] == 2


def test_naive_has_no_sssc(capsys):
    rows = compile_json(capsys, "--code", "steane", "--style", "naive")
    assert all(r["sssc"] is None and r["ahr"] == 7 for r in rows)


def test_output_order_follows_input(capsys):
    names = ["gb48", "steane", "toric:4", "shor9", "surface:3"]
    rows = compile_json(capsys, "--code", *names, "--basis", "x", "--jobs", "4")
    assert [r["code"] for r in rows] == names


def test_formats_agree(capsys):
    args = ["--code", "steane", "shor9", "--style", "shor"]
    rows = compile_json(capsys, *args)
    _, csv_out, _ = run(capsys, "compile", *args, "--format", "csv")
    _, table_out, _ = run(capsys, "compile", *args, "--format", "table")
    parsed = list(csv.DictReader(io.StringIO(csv_out)))
    table = [line.split() for line in table_out.strip().splitlines()]
    assert table[0] == list(REPORT_FIELDS)
    for j, row in enumerate(rows):
        for i, key in enumerate(REPORT_FIELDS):
            expected = "" if row[key] is None else str(row[key])
            assert parsed[j][key] == expected
            assert table[j + 1][i] == (expected or "-")


def test_json_idempotent(capsys):
    _, out, _ = run(capsys, "compile", "--code", "steane", "--format", "json")
    doc = json.loads(out)
    assert json.loads(json.dumps(doc, indent=2)) == doc
    assert json.dumps(doc, indent=2) + "\n" == out


def test_pedagogical_combined(capsys):
    rows = compile_json(capsys, "--code", "steane", "--pedagogical-combined")
    assert len(rows) == 1 and rows[0]["basis"] == "XZ"
    assert rows[0]["gate_shuffled"] == 14 and rows[0]["sssc"] == 6
    code, _, err = run(capsys, "compile", "--code", "steane", "--pedagogical-combined", "--basis", "x")
    assert code == 2 and "pedagogical" in err


def test_file_codes(capsys, tmp_path):
    save_matrix(steane().hx, tmp_path / "hx.txt")
    save_matrix(steane().hz, tmp_path / "hz.txt")
    save_css(steane(), tmp_path / "steane.css")
    a = compile_json(capsys, "--code", f"file:{tmp_path / 'hx.txt'},{tmp_path / 'hz.txt'}")
    b = compile_json(capsys, "--code", str(tmp_path / "steane.css"))
    strip = [{k: v for k, v in r.items() if k != "code"} for r in a]
    assert strip == [{k: v for k, v in r.items() if k != "code"} for r in b]
    assert a[0]["sssc"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["compile", "--code", "nope"],
        ["compile", "--code", "file:/does/not/exist"],
        ["compile"],
        ["compile", "--code", "steane", "--style", "flag"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_schedule_sssc(capsys):
    code, out, _ = run(capsys, "schedule", "--code", "steane", "--pass", "sssc")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] == "sssc" and doc["shuttles"] == 3
    assert sorted(g["delta"] for g in doc["groups"]) == [7, 9, 12]
    pos = doc["reindexing"]
    for group in doc["groups"]:
        for g in group["gates"]:
            assert (doc["n"] - g["data"]) + pos[g["ancilla"] - 1] == group["delta"]


def test_schedule_blanks_to_file(capsys, tmp_path):
    target = tmp_path / "s.json"
    code, out, _ = run(capsys, "schedule", "--code", "steane", "--pass", "blanks", "--out", str(target))
    assert code == 0 and "shuttles=3" in out
    doc = json.loads(target.read_text())
    assert doc["blanks"] == 1 and doc["row_length"] == 13


def test_schedule_text(capsys):
    code, out, _ = run(capsys, "schedule", "--code", "shor9", "--basis", "z", "--format", "text")
    assert code == 0 and "shuttles=4" in out


def test_schedule_sssc_naive_rejected(capsys):
    code, _, err = run(capsys, "schedule", "--code", "steane", "--style", "naive", "--pass", "sssc")
    assert code == 2 and "shor" in err


def test_schedule_needs_code(capsys):
    code, _, _ = run(capsys, "schedule")
    assert code == 2


def test_verify_vacuous(capsys):
    code, out, _ = run(capsys, "verify", "--random", "0", "--format", "json")
    assert code == 0 and json.loads(out) == {"ok": True, "suites": []}


def test_verify_deterministic(capsys):
    a = run(capsys, "verify", "--random", "30", "--max-s", "6", "--seed", "4", "--format", "json")
    b = run(capsys, "verify", "--random", "30", "--max-s", "6", "--seed", "4", "--format", "json")
    assert a == b
    doc = json.loads(a[1])
    assert {s["suite"] for s in doc["suites"]} == {
        "shor_sandwich",
        "naive_sandwich",
        "column_regular",
        "reduction",
    }
    assert a[0] == (0 if doc["ok"] else 1)


def test_verify_limit(capsys, monkeypatch):
    code, _, err = run(capsys, "verify", "--random", "1", "--max-s", "8", "--limit", "5")
    assert code == 2 and "limit" in err
    monkeypatch.setenv("SHUTTLEC_ORACLE_LIMIT", "4")
    code, _, _ = run(capsys, "verify", "--random", "1", "--max-s", "5")
    assert code == 2


def test_reduce_demo(capsys):
    code, out, _ = run(capsys, "reduce", "--demo")
    assert code == 0
    doc = json.loads(out)
    assert doc["lemmas"]["ok"] and doc["packing"]["distinct_outputs"] == 7
    assert doc["packing"]["recovered"] == [[1, 2, 3], [4, 5, 6]]
    assert len(doc["s_multiset"]) == doc["size"] == 47


def test_reduce_instance_files(capsys, tmp_path):
    inst = tmp_path / "inst.txt"
    inst.write_text("2 15\n4 6 5 5 4 6\n")
    part = tmp_path / "part.txt"
    part.write_text("1 3 6\n2 4 5\n")
    code, out, _ = run(capsys, "reduce", "--instance", str(inst), "--partition", str(part))
    assert code == 0
    assert json.loads(out)["packing"]["recovered"] == [[1, 3, 6], [2, 4, 5]]


def test_reduce_rejections(capsys, tmp_path):
    loose = tmp_path / "loose.txt"
    loose.write_text("2 12\n3 4 5 3 4 5\n")
    code, _, err = run(capsys, "reduce", "--instance", str(loose))
    assert code == 2 and "T/4" in err
    code, out, _ = run(capsys, "reduce", "--instance", str(loose), "--allow-loose-bounds")
    assert code == 0 and json.loads(out)["a_star"] == 2

    bad = tmp_path / "bad.txt"
    bad.write_text("2 15\n4 five\n")
    assert run(capsys, "reduce", "--instance", str(bad))[0] == 2
    assert run(capsys, "reduce", "--instance", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "reduce")[0] == 2
    assert run(capsys, "reduce", "--demo", "--partition", "x")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "shuttlec", "compile", "--code", "steane", "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("code,n,style")
