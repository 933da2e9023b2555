"""Golden-file tests for the command-line front end.

Set FGL_UPDATE_GOLDEN=1 to rewrite the expected outputs after an intended change.
"""

import contextlib
import io
import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from fgl.cli import run

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())
UPDATE = os.environ.get("FGL_UPDATE_GOLDEN") == "1"


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def in_golden_dir(monkeypatch):
    monkeypatch.chdir(GOLDEN)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    case = CASES[name]
    code, out, err = invoke(case["argv"])
    out_path, err_path = GOLDEN / f"{name}.stdout", GOLDEN / f"{name}.stderr"
    if UPDATE:
        out_path.write_text(out)
        if err:
            err_path.write_text(err)
        elif err_path.exists():
            err_path.unlink()
    assert code == case["exit"]
    assert out == out_path.read_text()
    assert err == (err_path.read_text() if err_path.exists() else "")


def test_exit_code_contract_is_covered():
    assert {case["exit"] for case in CASES.values()} == {0, 1, 2, 3}


@pytest.mark.parametrize("name", sorted(n for n, c in CASES.items() if "json" in c["argv"]))
def test_json_reports_parse_and_are_deterministic(name):
    argv = CASES[name]["argv"]
    first, second = invoke(argv), invoke(argv)
    assert first == second
    code, out, err = first
    if out:
        data = json.loads(out)
        assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"
    if err:
        error = json.loads(err)["error"]
        assert set(error) == {"type", "message", "exit_code"} and error["exit_code"] == code


def test_documented_examples():
    code, out, _ = invoke(["height", "--law", "builtin:honda:3:2", "--prime", "3", "--bound", "27", "--format", "json"])
    assert code == 0 and json.loads(out)["verdict"] == {"kind": "exact", "n": 2}
    code, out, _ = invoke(["landweber", "--law", "builtin:additive", "--ring", "integers", "--primes", "2,3", "--format", "json"])
    assert code == 1 and all(r["failed_at"] == 1 for r in json.loads(out)["reports"])
    code, out, _ = invoke(["elliptic", "invariants", "--curve", "legendre.json", "--format", "json"])
    assert code == 0 and json.loads(out)["delta"] == "16*l^4 - 32*l^3 + 16*l^2"
    code, out, _ = invoke(["law", "check", "--law", "bad_assoc.json", "--format", "json"])
    assert code == 1 and json.loads(out)["exponent"] == [3, 1, 1]


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = invoke(["height", "--law", "builtin:honda:2:1", "--prime", "2", "--format", "json", "--out", str(target)])
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "height_honda_2_1.expected").read_text()


def test_text_errors_go_to_stderr():
    code, out, err = invoke(["height", "--law", "builtin:nosuch", "--prime", "2"])
    assert code == 3 and out == "" and "nosuch" in err


def test_usage_error_is_exit_three():
    code, _, err = invoke(["frobnicate"])
    assert code == 3 and err


@pytest.mark.skipif(shutil.which("fgl") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(
        ["fgl", *CASES["height_honda_3_2"]["argv"]], cwd=GOLDEN, capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "height_honda_3_2.stdout").read_text()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fgl", *CASES["landweber_additive"]["argv"]], cwd=GOLDEN, capture_output=True, text=True
    )
    assert proc.returncode == 1
    assert proc.stdout == (GOLDEN / "landweber_additive.stdout").read_text()
