import json
import subprocess
import sys

import pytest

from hopfcalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "sweedler4")
    assert code == 0 and json.loads(out)["dim"] == 4
    code, out, _ = run(capsys, "build", "double:sweedler4")
    assert code == 0 and json.loads(out)["dim"] == 16
    code, out, _ = run(capsys, "build", "dual:c2")
    assert code == 0 and json.loads(out)["basis"] == ["e_1", "e_g"]
    p = tmp_path / "h.json"
    assert run(capsys, "build", "sweedler4", "--out", str(p))[0] == 0
    code, out, _ = run(capsys, "build", "--json", str(p))
    assert code == 0 and json.loads(out) == json.loads(p.read_text())


def test_build_unknown(capsys):
    code, _, err = run(capsys, "build", "nosuch")
    assert code == 2 and "unknown algebra" in err


def test_check_hopf(capsys):
    code, out, err = run(capsys, "check", "hopf", "sweedler4")
    doc = json.loads(out)
    assert code == 0 and all(c["pass"] for c in doc["checks"])
    assert set(doc) == {"checks", "numbers", "timing_ms"}
    assert "antipode (left): pass" in err


def test_check_triangular_fails(capsys):
    code, out, err = run(capsys, "check", "triangular", "double:sweedler4")
    assert code == 1
    assert "triangular: fail" in err
    assert json.loads(out)["checks"] == [{"name": "triangular", "pass": False, "witness": None}]


def test_check_qt_and_weak(capsys):
    assert run(capsys, "check", "qt", "double:sweedler4")[0] == 0
    assert run(capsys, "check", "weak-r", "double:sweedler4")[0] == 0
    code, _, err = run(capsys, "check", "qt", "sweedler4")
    assert code == 2 and "double:" in err


def test_check_bad_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 1}')
    assert run(capsys, "check", "hopf", "--json", str(p))[0] == 2
    assert run(capsys, "check", "hopf", "--json", str(tmp_path / "missing.json"))[0] == 2


def test_check_axiom_failure(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "sweedler4")
    doc = json.loads(out)
    doc["antipode"] = [[i, i, "1/1"] for i in range(4)]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, "check", "hopf", "--json", str(p))
    assert code == 1 and "antipode" in err


def test_fields(capsys):
    assert run(capsys, "--field", "p:7", "check", "hopf", "double:sweedler4")[0] == 0
    code, _, err = run(capsys, "--field", "p:2", "check", "hopf", "sweedler4")
    assert code == 2 and "2" in err
    assert run(capsys, "--field", "p:7", "repro", "lemma-2.1")[0] == 2


def test_repro_lemma(capsys):
    code, out, _ = run(capsys, "repro", "lemma-2.1")
    doc = json.loads(out)
    assert code == 0
    assert [(n["value"], n["expected"]) for n in doc["numbers"]] == [("0/1", "0/1"), ("1/1", "1/1")]


def test_repro_unknown(capsys):
    assert run(capsys, "repro", "lemma-9")[0] == 2


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "m ; S", "--algebra", "sweedler4")
    assert code == 0 and out.splitlines()[0] == "H4⊗H4 -> H4"
    code, out, _ = run(capsys, "eval", "cm ; (cu * id[H])")
    lines = out.splitlines()
    assert code == 0 and lines[1:] == [f"{l} <- {l} : 1/1" for l in ("1", "g", "x", "gx")]
    code, _, err = run(capsys, "eval", "m *")
    assert code == 2 and "line 1, column 4" in err
    assert run(capsys, "eval", "m ; m")[0] == 2


def test_output_is_deterministic(capsys):
    a = run(capsys, "build", "double:sweedler4")[1]
    b = run(capsys, "build", "double:sweedler4")[1]
    assert a == b


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "hopfcalc.cli", "check", "hopf", "c2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["checks"]
