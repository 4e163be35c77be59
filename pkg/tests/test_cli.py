import json
import subprocess
import sys

import pytest

from qchab.cli import main, sample_path


def test_check_prints_conditions(capsys):
    assert main(["check", "--instance", "bundled"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["conditions"]["geometric"]
    assert out["flags"]["good_reduction"]


def test_diagnose_writes_json(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["diagnose", "--instance", "bundled", "--json", str(target)]) == 0
    printed = capsys.readouterr().out
    assert target.read_text() == printed
    report = json.loads(printed)
    assert "disks" not in report
    assert report["diagnostics"][0]["d_T"] == 3


def test_missing_file_exits_2(tmp_path, capsys):
    assert main(["check", "--instance", str(tmp_path / "nope.json")]) == 2
    assert "qchab:" in capsys.readouterr().err


def test_invariant_violation_exits_2(tmp_path, capsys):
    data = json.loads(sample_path("bundled").read_text())
    data["field"]["d"] = "5"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert main(["check", "--instance", str(path)]) == 2
    assert "InvariantViolation" in capsys.readouterr().err


def test_unknown_command_rejected():
    with pytest.raises(SystemExit):
        main(["solve", "--instance", "bundled"])


def test_sample_path_names():
    assert sample_path("rigged").name == "rigged.json"
    with pytest.raises(KeyError):
        sample_path("nonexistent")


def test_console_script_bound():
    proc = subprocess.run([sys.executable, "-m", "qchab.cli", "bound", "--instance", "bundled"],
                          capture_output=True, text=True, check=True)
    report = json.loads(proc.stdout)
    assert "oracle" not in report["disks"][0]
    assert report["bound"]["total"] == int(report["disks"][0]["dim"])
