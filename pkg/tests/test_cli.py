from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from ddkit.cli import main, parse_datum

DIAGRAMS = Path(__file__).resolve().parent.parent / "diagrams"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


def test_table_c3(capsys):
    code, rows = run_json(capsys, "table", "--max-rank", "3")
    assert code == 0
    c3 = next(r for r in rows if r["name"] == "C3")
    assert c3["labels"] == ["1/2", "1", "3/2"] and c3["special"] == 3 and c3["symplectic"] == [1]


def test_format_after_subcommand(capsys):
    code, out, _ = run(capsys, "special", "D", "5", "--format", "json")
    assert code == 0 and json.loads(out)["special"] == [1, 4, 5]


def test_special_and_oppinv_text(capsys):
    assert run(capsys, "special", "E", "8")[1].strip() == "none"
    assert run(capsys, "special", "e", "6")[1].strip() == "1 6"
    code, data = run_json(capsys, "oppinv", "D", "5")
    assert data["tau"]["4"] == 5 and data["trivial"] is False
    code, data = run_json(capsys, "oppinv", "B", "3")
    assert data["trivial"] is True


def test_classify(capsys):
    code, data = run_json(capsys, "classify", str(DIAGRAMS / "d4_triality.json"))
    assert code == 0 and data["type"] == "NOT_SYMPLECTIC"
    code, data = run_json(capsys, "classify", str(DIAGRAMS / "d4_real.json"))
    assert data["type"] == "D4^R" and data["aut_id"] == 2 and data["S"] == [2, 3]


def test_isom(capsys):
    a, b = str(DIAGRAMS / "d4_quaternionic.json"), str(DIAGRAMS / "d4_quaternionic_twin.json")
    code, data = run_json(capsys, "isom", a, b)
    assert code == 0 and data["global"] == [0, 1, 3, 2]
    assert all(x["witness"] is not None for x in data["locals"])
    code, data = run_json(capsys, "isom", a, b, "--local", "0")
    assert data["local"] == "(2 3)(6 7)" and data["witness"] == [0, 1, 3, 2]
    code, _, err = run(capsys, "isom", a, b, "--local", "7")
    assert code == 2 and "bad generator token" in err


def test_deligne(capsys):
    code, data = run_json(capsys, "deligne", str(DIAGRAMS / "b3.json"), "--n", "2")
    assert code == 0
    assert data["V'"] == [["0", "1", "16"], ["1", "0", "16"]]
    assert data["abelian variety dimension"] == 16


def test_hyperadjoint(capsys):
    code, data = run_json(capsys, "hyperadjoint", "D4xT2", "--dim", "10")
    assert code == 0 and data["index"] == 2
    assert data["hyperadjoint"] == {"acting": "D4", "dim": 28}
    assert parse_datum("1").trivial
    code, _, err = run(capsys, "hyperadjoint", "Dx4")
    assert code == 2


def test_goursat_small(capsys):
    code, data = run_json(capsys, "goursat", "--max-order", "4")
    assert code == 0 and data["failures"] == [] and data["subdirect_total"] > 0


def test_verify_small_campaign(capsys, tmp_path):
    dump = tmp_path / "dump.json"
    code, out, err = run(capsys, "verify-local-global", "--max-order", "6", "--max-rank", "3", "--dump", str(dump))
    assert code == 0 and "COUNTEREXAMPLE" not in out and not dump.exists()
    assert "tasks" in err


def test_verify_diagrams_quiet(capsys):
    code, out, err = run(capsys, "verify-diagrams", "--max-order", "4", "--max-rank", "2", "--quiet")
    assert code == 0 and err == ""
    assert "failures=0" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "does-not-exist.json"],
        ["special", "Q", "3"],
        ["special", "D", "2"],
        ["verify-local-global", "--types", "A,Z"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_malformed_file_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "components": [["D", 5]],\n  "mu": [2]\n}\n')
    code, _, err = run(capsys, "classify", str(p))
    assert code == 2 and "line 3:" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ddkit", "special", "C", "4"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "4"
