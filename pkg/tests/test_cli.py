import json
import subprocess
import sys

import pytest

from ybe.cli import main


def _strip(obj):
    if isinstance(obj, dict):
        return {k: _strip(v) for k, v in obj.items() if k != "elapsed"}
    if isinstance(obj, list):
        return [_strip(v) for v in obj]
    return obj


def test_solution_check_trivial(capsys):
    assert main(["solution", "check", "trivial:4"]) == 0
    assert "PASS" in capsys.readouterr().out.upper()


def test_solution_enumerate():
    assert main(["solution", "enumerate", "3"]) == 0


def test_solution_mpl_of_non_multipermutation(tmp_path):
    out = tmp_path / "r.json"
    code = main(["solution", "mpl", "census:4:13", "--json", str(out)])
    reports = json.loads(out.read_text())
    assert code == (0 if all(r["verdict"] == "pass" for r in reports) else 1)


def test_ring_thm6_check_passes_expectations(capsys):
    assert main(["ring", "thm6", "check"]) == 0
    assert "(x, y, x)" in capsys.readouterr().out


def test_ring_thm6_json_witness(tmp_path):
    out = tmp_path / "r.json"
    assert main(["ring", "thm6", "check", "--json", str(out), "--samples", "2000"]) == 0
    reports = json.loads(out.read_text())
    assert len(reports) == 3
    text = json.dumps(reports)
    assert '"x", "y", "x"' in text


def test_ring_thm8(tmp_path):
    assert main(["ring", "thm8", "check", "--samples", "2000"]) == 0


def test_ring_to_brace_refused():
    assert main(["ring", "to-brace", "thm8"]) == 1


def test_brace_commands(tmp_path):
    assert main(["brace", "check", "trivial:4"]) == 0
    assert main(["brace", "mpl", "census:4:2"]) == 0
    out = tmp_path / "s.json"
    assert main(["brace", "convert", "census:4:2", "--out", str(out)]) == 0
    assert main(["solution", "check", str(out)]) == 0


def test_group_commands(tmp_path):
    assert main(["group", "check", "perm:3:(1 2 3)", "--radius", "3"]) == 0
    assert main(["group", "ball", "trivial:2", "--radius", "2", "--out", str(tmp_path / "b.json")]) == 0
    assert len(json.loads((tmp_path / "b.json").read_text())) == 13
    assert main(["group", "permgroup", "perm:2:(1 2)"]) == 0


def test_failing_check_exits_1():
    assert main(["group", "check", "census:4:5", "--radius", "2", "--conditions", "lri"]) == 1


def test_usage_errors_exit_2(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["solution", "check", "trivial:3", "--no-such-flag"])
    assert e.value.code == 2
    assert main(["solution", "check", str(tmp_path / "missing.json")]) == 2
    assert main(["solution", "check", "trivial:3", "--conditions", "nonsense"]) == 2


def test_malformed_file_exits_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"lambda": [[0, 1], [1, 0]]}')
    assert main(["solution", "check", str(p)]) == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "ybe", "solution", "check", "trivial:4"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    r = subprocess.run([sys.executable, "-m", "ybe", "frobnicate"], capture_output=True, text=True)
    assert r.returncode == 2


def test_suite_subset_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    ca = main(["suite", "paper", "--only", "2,6,9", "--seed", "0", "--json", str(a)])
    cb = main(["suite", "paper", "--only", "2,6,9", "--seed", "0", "--json", str(b)])
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert _strip(ra) == _strip(rb)
    assert ca == cb == (0 if all(r["verdict"] == "pass" for r in ra) else 1)
