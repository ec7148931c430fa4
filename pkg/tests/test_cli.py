import json
import subprocess
import sys

import pytest
from helpers import F3

from freepoly.cli import main, run_job

BATCH = "\n---\n".join([
    "y^2 - x1^3",
    "y^2 - x1*x2",
    F3,
    "y^2 - (x1^3 + x2^3)",
    "y - x1 - x2",
])


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_cusp(capsys):
    code, out, _ = run(capsys, "analyze", "y^2 - x1^3")
    rep = json.loads(out)
    assert code == 0
    assert rep["r"] == [[2], [3]] and rep["generators"] == [[2], [3]]
    assert all(c["pass"] for c in rep["checks"])
    assert rep["order"] == {"weight": [1], "tiebreak": "lex"}


def test_analyze_f3_and_degree_one(capsys):
    code, out, _ = run(capsys, "analyze", F3)
    assert code == 0 and json.loads(out)["generators"] == [[4, 0], [0, 4], [2, 2], [5, 5]]
    code, out, _ = run(capsys, "analyze", "y - x1^2")
    assert code == 0 and json.loads(out)["h"] == 0


def test_certify_reducible_exits_one(capsys):
    code, out, _ = run(capsys, "certify-free", "y^2 - (x1^2 + x2^2)")
    payload = json.loads(out)
    assert code == 1
    assert payload["free"] is False and payload["conjugates"] == 1
    assert len(payload["factors"]) == 2


@pytest.mark.parametrize("argv", [
    ["analyze", "y^2 - x1*"],
    ["analyze", "2*y^2 - x1"],
    ["analyze", "x1 + 1"],
    ["analyze", "y^2 - x1", "cone{ (1,0), (-1,0) }"],
    ["analyze", "y^2 - x1^3", "precision = -1"],
])
def test_bad_input_exits_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error" in json.loads(out)
    assert err.startswith("freepoly: input error")


def test_parse_error_reports_position(tmp_path, capsys):
    path = tmp_path / "jobs.txt"
    path.write_text("y^2 - x1^3\n---\ny^2 - x1^(3\n")
    code, out, _ = run(capsys, "analyze", "--input", str(path))
    first, second = out.strip().split("\n")
    assert code == 2
    assert json.loads(first)["n"] == 2
    err = json.loads(second)
    assert err["line"] == 3 and err["column"] == 12


def test_bad_precision_flag():
    with pytest.raises(SystemExit) as info:
        main(["analyze", "y^2 - x1^3", "--precision", "0"])
    assert info.value.code == 2


def test_batch_equals_sequential(tmp_path, capsys):
    path = tmp_path / "batch.txt"
    path.write_text(BATCH)
    code_b, out_b, _ = run(capsys, "analyze", "--input", str(path), "--jobs", "2")
    singles = []
    for body in BATCH.split("\n---\n"):
        code, out, _ = run(capsys, "analyze", body)
        assert code == 0
        singles.append(json.loads(out))
    assert code_b == 0
    assert [json.loads(line) for line in out_b.strip().split("\n")] == singles


def test_text_format(capsys):
    code, out, _ = run(capsys, "analyze", "y^2 - x1*x2", "--format", "text")
    assert code == 0
    assert "generators: (2,0), (0,2), (1,1)" in out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_subcommands(capsys):
    code, out, _ = run(capsys, "prepare", "y^2 - x2")
    assert code == 0 and json.loads(out)["t"] == 1
    code, out, _ = run(capsys, "blowup", "y^2 - (x1^3 + x2^3)")
    assert code == 0
    code, out, _ = run(capsys, "root-expand", "y^2 - x1^3", "--precision", "5")
    assert code == 0 and "series(" in json.loads(out)["root"]
    code, out, _ = run(capsys, "semigroup", F3, "value = (6,6)")
    rep = json.loads(out)["representations"][0]
    assert code == 0 and rep["alpha0"] == [1, 1] and rep["alpha"] == [1, 0]
    code, out, _ = run(capsys, "approx-root", F3, "d = 2")
    assert code == 0
    code, out, _ = run(capsys, "certify-free", "y^2 - (x1^3 + x2^3)")
    assert code == 0 and json.loads(out)["free"] is True


def test_custom_cone_needs_root():
    code, out, _ = run_job("analyze", "y^2 - x1\ncone{ (1,0), (-1,1) }")
    assert code == 1 and "root" in json.loads(out)["error"]
    body = "y^2 - x1^3\ncone{ (1) }\nseries(n=2; (3) -> 1)"
    code, out, _ = run_job("analyze", body)
    assert code == 0 and json.loads(out)["route"] == "supplied"


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "freepoly.cli", "analyze", "y^2 - x1^3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["D"] == [2, 1]


@pytest.mark.parametrize("text", ["y^2 - x1*x2 - x2^3", "(y^2 - x1)*(y^3 - x1)"])
def test_non_free_input_exits_one(capsys, text):
    code, out, err = run(capsys, "analyze", text)
    assert code == 1
    assert json.loads(out)["error"].startswith("NotFree")
    assert "line 1" in err
