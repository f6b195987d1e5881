"""Acceptance gate: one pass/fail line per criterion.

The suite is run twice through the command line (``ybe suite paper --seed 0``);
criteria 1-9 are read off the first JSON report and criterion 10 compares the
two runs with timing fields removed.  Run this file directly to print only
the criterion lines.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from ybe.suite import CRITERIA

RUNTIME_LIMITS = {"1": 30.0, "2": 10.0}  # seconds
LINES: list[str] = []


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "elapsed"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _run(path: Path) -> tuple[int, list]:
    r = subprocess.run([sys.executable, "-m", "ybe", "suite", "paper", "--seed", "0", "--json", str(path)],
                       capture_output=True, text=True)
    assert r.returncode in (0, 1), r.stderr
    return r.returncode, json.loads(path.read_text())


@pytest.fixture(scope="module")
def runs(tmp_path_factory):
    d = tmp_path_factory.mktemp("acceptance")
    return _run(d / "first.json"), _run(d / "second.json")


def _record(label: str, ok: bool, detail: str = "") -> None:
    LINES.append(f"criterion {label:>3}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else ""))


def _first_failure(rep):
    for p in rep["parts"]:
        if p["verdict"] != "pass":
            return f"{p['subject']} :: {p['check']} witness={p['witnesses'][:1]}"
    return f"witness={rep['witnesses'][:1]}"


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(runs, key):
    (_, reports), _ = runs
    rep = reports[list(CRITERIA).index(key)]
    ok = rep["verdict"] == "pass"
    detail = f"{rep['check']} ({rep['elapsed']:.1f}s)"
    limit = RUNTIME_LIMITS.get(key)
    fast = limit is None or rep["elapsed"] < limit
    if limit is not None:
        detail += f" limit {limit:.0f}s"
    if not ok:
        detail += "; " + _first_failure(rep)
    _record(key, ok and fast, detail)
    assert ok, _first_failure(rep)
    assert fast, f"criterion {key} took {rep['elapsed']:.1f}s (limit {limit}s)"


def test_criterion_10_determinism(runs):
    (code_a, a), (code_b, b) = runs
    same = _strip_timing(a) == _strip_timing(b) and code_a == code_b
    _record("10", same, "two runs of `suite paper --seed 0`, timing removed")
    assert same


def test_exit_code_matches_verdicts(runs):
    (code, reports), _ = runs
    assert code == (0 if all(r["verdict"] == "pass" for r in reports) else 1)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        first, second = _run(Path(d) / "a.json"), _run(Path(d) / "b.json")
    for key in CRITERIA:
        try:
            test_criterion((first, second), key)
        except AssertionError:
            pass
    try:
        test_criterion_10_determinism((first, second))
    except AssertionError:
        pass
    print("\n".join(LINES))
