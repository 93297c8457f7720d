import json
import shutil
import subprocess
import sys

import pytest

from twyangian.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_relations_passing_selection(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, cap = run(capsys, "relations", "--lie-type", "C", "--n", "1", "--d", "2", "--r-max", "1",
                    "--s-max", "1", "--h-mode", "series", "--relations", "hh,R5,R6", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["summary"] == {"pass": 6, "fail": 0}
    assert {c["id"] for c in data["checks"]} == {"hh", "R5", "R6"}
    assert "summary: 6 pass, 0 fail" in cap.out


def test_relations_failure_exit_code(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, cap = run(capsys, "relations", "--lie-type", "B", "--n", "1", "--d", "1", "--r-max", "0",
                    "--s-max", "0", "--relations", "R1", "--out", str(out))
    assert code == 1
    data = json.loads(out.read_text())
    assert data["h_mode_resolution"]["passed"] == []
    assert data["checks"][0]["witness"]["residual"]
    assert "FAIL R1" in cap.out


def test_empty_relation_selection(capsys):
    code, cap = run(capsys, "relations", "--lie-type", "C", "--n", "1", "--d", "1",
                    "--h-mode", "series", "--relations", "")
    assert code == 0 and "summary: 0 pass, 0 fail" in cap.out


def test_unknown_relation_id(capsys):
    code, cap = run(capsys, "relations", "--lie-type", "C", "--n", "1", "--d", "1",
                    "--relations", "R9")
    assert code == 2 and "unknown relation" in cap.err


def test_current_n1(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _ = run(capsys, "current", "--n", "1", "--r-max", "2", "--out", str(out), "--d", "1")
    assert code == 0
    data = json.loads(out.read_text())
    realizations = {c["params"]["realization"] for c in data["checks"]}
    assert realizations == {"matrix", "operators"}


def test_current_n2_reports_failures(capsys):
    code, cap = run(capsys, "current", "--n", "2", "--r-max", "1")
    assert code == 1 and "FAIL P.he" in cap.out


def test_oracle(capsys):
    code, cap = run(capsys, "oracle", "--lie-type", "C", "--n", "1", "--d", "1", "--gen", "E",
                    "--i", "1", "--r", "2", "--degree", "2")
    assert code == 0 and "PASS oracle" in cap.out


def test_euler(tmp_path, capsys):
    out = tmp_path / "e.json"
    code, cap = run(capsys, "euler", "--lie-type", "C", "--dimvec", "1,0,1", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["dim"] == 1 and data["euler_base"] == "-2*x1" and data["fixed_points"] == 2
    assert "tangent_weights: [[-2]]" in cap.out


@pytest.mark.parametrize("vec", ["1,1,1", "1,2", "1,0,2"])
def test_euler_invalid(capsys, vec):
    code, cap = run(capsys, "euler", "--lie-type", "C", "--dimvec", vec)
    assert code == 2 and cap.err.startswith("error:")


def test_log_level_from_environment(capsys, monkeypatch):
    import logging
    monkeypatch.setenv("TWYANGIAN_LOG", "DEBUG")
    root = logging.getLogger()
    saved = root.level, list(root.handlers)
    root.handlers.clear()
    try:
        main(["relations", "--lie-type", "C", "--n", "1", "--d", "1", "--relations", "R5"])
        assert logging.getLogger("twyangian.relations").isEnabledFor(logging.DEBUG)
    finally:
        root.handlers[:] = saved[1]
        root.setLevel(saved[0])


@pytest.mark.skipif(shutil.which("twyangian") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["twyangian", "euler", "--lie-type", "B", "--dimvec", "1,1,1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "dim: 1" in proc.stdout


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twyangian.cli", "euler", "--lie-type", "C",
                           "--dimvec", "0,2,0"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "dim: 0" in proc.stdout
