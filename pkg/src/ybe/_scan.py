"""Exhaustive-or-sampled identity scans over index tuples.

An identity is a vectorised predicate over index arrays.  Scans are
exhaustive while the number of tuples stays at or below ``max_evals``;
above that, ``samples`` tuples are drawn from a seeded generator and the
seed is carried into the report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .report import CheckReport

MAX_EVALS = 10**8
SAMPLES = 10**5
CHUNK = 1 << 20


@dataclass
class ScanPolicy:
    max_evals: int = MAX_EVALS
    samples: int = SAMPLES
    seed: int = 0

    def sampled_for(self, m: int, arity: int) -> bool:
        return m**arity > self.max_evals

    def sample(self, m: int, arity: int, salt: int = 0) -> np.ndarray:
        rng = np.random.default_rng([self.seed, salt])
        return rng.integers(0, m, size=(self.samples, arity), dtype=np.int64)


DEFAULT_POLICY = ScanPolicy()


@dataclass
class ScanResult:
    witness: tuple | None
    scanned: int
    sampled: bool
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.witness is None


def _chunks(m: int, arity: int):
    total = m**arity
    for start in range(0, total, CHUNK):
        flat = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        cols = []
        for k in range(arity - 1, -1, -1):
            cols.append((flat // m**k) % m)
        yield cols


def scan(m: int, arity: int, ok_fn: Callable, policy: ScanPolicy = DEFAULT_POLICY, salt: int = 0) -> ScanResult:
    """Run ``ok_fn(*cols) -> bool array`` over all (or sampled) ``arity``-tuples of ``range(m)``."""
    if m == 0:
        return ScanResult(None, 0, False)
    if policy.sampled_for(m, arity):
        idx = policy.sample(m, arity, salt)
        for start in range(0, len(idx), CHUNK):
            part = idx[start:start + CHUNK]
            cols = [part[:, k] for k in range(arity)]
            ok = np.asarray(ok_fn(*cols))
            if not ok.all():
                k = int(np.argmin(ok))
                return ScanResult(tuple(int(c[k]) for c in cols), start + k + 1, True, policy.seed)
        return ScanResult(None, len(idx), True, policy.seed)
    done = 0
    for cols in _chunks(m, arity):
        ok = np.asarray(ok_fn(*cols))
        if not ok.all():
            k = int(np.argmin(ok))
            return ScanResult(tuple(int(c[k]) for c in cols), done + k + 1, False)
        done += len(cols[0])
    return ScanResult(None, done, False)


def kernel_scan(kernel: Callable, tables: Sequence[np.ndarray], m: int,
                policy: ScanPolicy = DEFAULT_POLICY, salt: int = 0) -> ScanResult:
    """Triple scan through one of the compiled/fallback kernels."""
    if m == 0:
        return ScanResult(None, 0, False)
    if policy.sampled_for(m, 3):
        idx = policy.sample(m, 3, salt)
        w = kernel(*tables, idx)
        return ScanResult(w, len(idx), True, policy.seed)
    w = kernel(*tables)
    if w is None:
        return ScanResult(None, m**3, False)
    a, b, c = w
    return ScanResult(w, a * m * m + b * m + c + 1, False)


def report(subject: str, check: str, res: ScanResult, label: Callable = lambda i: i + 1,
           elapsed: float = 0.0, notes=None) -> CheckReport:
    counts = {"scanned": res.scanned}
    if res.sampled:
        counts["sampled"] = res.scanned
    witnesses = [] if res.ok else [tuple(label(i) for i in res.witness)]
    return CheckReport(
        subject, check, "pass" if res.ok else "fail",
        witnesses=witnesses, counts=counts,
        seed=res.seed if res.sampled else None,
        notes=list(notes or []), elapsed=elapsed,
    )


def witness_report(subject: str, check: str, witness, scanned: int, elapsed: float = 0.0,
                   label: Callable = lambda i: i + 1, notes=None) -> CheckReport:
    res = ScanResult(witness, scanned, False)
    return report(subject, check, res, label, elapsed, notes)
