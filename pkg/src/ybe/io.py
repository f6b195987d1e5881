"""JSON files (1-based) and the ``name:params`` shorthand for builtin objects."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ._scan import ScanPolicy
from .brace import FiniteBrace, trivial_brace
from .errors import MalformedTableError
from .rings import DEFAULT_CAP, RewriteSystem, builtin_thm6, builtin_thm8, p3_fixture
from .solution import FiniteSolution, permutation_solution, trivial_solution


def _load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise MalformedTableError(f"{path}: not valid JSON ({e})") from None


def _one_based(rows, what):
    a = np.asarray(rows)
    if a.ndim != 2 or not np.issubdtype(a.dtype, np.integer):
        raise MalformedTableError(f"{what} must be a square integer table")
    if a.size and a.min() < 1:
        raise MalformedTableError(f"{what} uses 1-based indices")
    return a - 1


def solution_from_json(d: dict, name: str = "file") -> FiniteSolution:
    if "lambda" not in d:
        raise MalformedTableError("solution file needs a 'lambda' table")
    lam = _one_based(d["lambda"], "lambda")
    if "n" in d and d["n"] != len(lam):
        raise MalformedTableError(f"n={d['n']} but lambda has {len(lam)} rows")
    rho = _one_based(d["rho"], "rho") if d.get("rho") is not None else None
    return FiniteSolution(lam, rho, name=name)


def brace_from_json(d: dict, name: str = "file", policy: ScanPolicy | None = None) -> FiniteBrace:
    add = _one_based(d["add"], "add")
    mul = _one_based(d["mul"], "mul")
    if "order" in d and d["order"] != len(add):
        raise MalformedTableError(f"order={d['order']} but add has {len(add)} rows")
    return FiniteBrace(add, mul, names=d.get("names"), name=name, policy=policy)


def ring_from_json(d: dict, name: str = "file") -> RewriteSystem:
    return RewriteSystem.from_json(d, name=name)


def write_json(obj, path) -> None:
    data = obj.to_json() if hasattr(obj, "to_json") else obj
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _is_file_ref(ref: str) -> bool:
    return ref.endswith(".json") or Path(ref).is_file()


def load_solution(ref: str) -> FiniteSolution:
    """``trivial:n``, ``perm:n:(cycles)``, ``census:n:i`` or a solution file."""
    if _is_file_ref(ref):
        return solution_from_json(_load(ref), name=Path(ref).stem)
    kind, _, rest = ref.partition(":")
    if kind == "trivial":
        return trivial_solution(int(rest))
    if kind == "perm":
        n, _, sigma = rest.partition(":")
        return permutation_solution(sigma or "()", int(n))
    if kind == "census":
        from .census import solution_census
        n, _, i = rest.partition(":")
        sols = [s for s in solution_census(int(n)) if s.n == int(n)]
        return sols[int(i) - 1]
    raise MalformedTableError(f"unknown solution reference {ref!r}")


def load_brace(ref: str, policy: ScanPolicy | None = None, cap: int = DEFAULT_CAP) -> FiniteBrace:
    """``trivial:m``, ``census:m:i``, ``thm6``, ``thm8`` (brace of the ring) or a brace file."""
    if _is_file_ref(ref):
        return brace_from_json(_load(ref), name=Path(ref).stem, policy=policy)
    kind, _, rest = ref.partition(":")
    if kind == "trivial":
        b = trivial_brace(int(rest))
    elif kind == "census":
        from .census import braces_of_order
        m, _, i = rest.partition(":")
        found = [c for c in braces_of_order(int(m)) if c.name == ref]
        if found:
            b = found[0]
        elif i.isdigit():
            b = braces_of_order(int(m))[int(i) - 1]
        else:
            raise MalformedTableError(f"no census brace {ref!r}")
    elif kind in ("thm6", "thm8", "p3fixture"):
        from .rings import to_finite_brace
        return to_finite_brace(load_ring(ref), cap=cap, policy=policy)
    else:
        raise MalformedTableError(f"unknown brace reference {ref!r}")
    if policy is not None:
        b.policy = policy
    return b


def load_ring(ref: str, p: int | None = None) -> RewriteSystem:
    """``thm6``, ``thm8`` (``thm8:p`` or ``p``), ``p3fixture`` or a ring file."""
    if _is_file_ref(ref):
        return ring_from_json(_load(ref), name=Path(ref).stem)
    kind, _, rest = ref.partition(":")
    if kind == "thm6":
        return builtin_thm6()
    if kind == "thm8":
        return builtin_thm8(int(rest) if rest else (p or 2))
    if kind == "p3fixture":
        return p3_fixture()
    raise MalformedTableError(f"unknown ring reference {ref!r}")
