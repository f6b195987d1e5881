"""Check reports shared by every module and emitted by the CLI."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterable

VERDICTS = ("pass", "fail", "incomplete", "refused")


@dataclass
class CheckReport:
    """Outcome of one check, possibly composed of named sub-checks.

    ``fail`` always carries a witness, ``incomplete`` always carries the
    exhausted ``bound`` and any sampled scan carries its ``seed``.
    """

    subject: str
    check: str
    verdict: str = "pass"
    witnesses: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    seed: int | None = None
    bound: dict | None = None
    notes: list = field(default_factory=list)
    parts: list = field(default_factory=list)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and not self.witnesses:
            for p in self.parts:
                if p.verdict == "fail":
                    self.witnesses = list(p.witnesses)
                    break
            if not self.witnesses:
                raise ValueError(f"{self.check}: a failing report needs a witness")
        if self.verdict == "incomplete" and self.bound is None:
            for p in self.parts:
                if p.verdict == "incomplete":
                    self.bound = dict(p.bound)
                    break
            if self.bound is None:
                raise ValueError(f"{self.check}: an incomplete report needs its bound")
        if self.counts.get("sampled") and self.seed is None:
            raise ValueError(f"{self.check}: a sampled report needs its seed")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def failed(self) -> bool:
        return self.verdict == "fail"

    def __bool__(self):
        return self.passed

    def part(self, check: str) -> "CheckReport":
        for p in self.parts:
            if p.check == check:
                return p
        raise KeyError(check)

    def __getitem__(self, check: str) -> "CheckReport":
        return self.part(check)

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None

    @classmethod
    def combine(cls, subject: str, check: str, parts: Iterable["CheckReport"], **kw) -> "CheckReport":
        parts = list(parts)
        verdicts = {p.verdict for p in parts}
        for v in ("fail", "refused", "incomplete"):
            if v in verdicts:
                verdict = v
                break
        else:
            verdict = "pass"
        seeds = [p.seed for p in parts if p.seed is not None]
        kw.setdefault("seed", seeds[0] if seeds else None)
        kw.setdefault("elapsed", sum(p.elapsed for p in parts))
        return cls(subject, check, verdict, parts=parts, **kw)

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d = {
            "subject": self.subject,
            "check": self.check,
            "verdict": self.verdict,
            "witnesses": [_jsonable(w) for w in self.witnesses],
            "counts": _jsonable(dict(self.counts)),
            "seed": _jsonable(self.seed),
            "bound": _jsonable(self.bound),
            "notes": [str(n) for n in self.notes],
            "parts": [p.to_dict(timing) for p in self.parts],
        }
        if timing:
            d["elapsed"] = round(self.elapsed, 6)
        return d

    def lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        head = f"{pad}[{self.verdict.upper():>10}] {self.subject} :: {self.check}"
        extra = []
        if self.witnesses:
            extra.append(f"witness={_fmt(self.witnesses[0])}")
        if self.counts:
            extra.append(", ".join(f"{k}={v}" for k, v in self.counts.items()))
        if self.seed is not None and self.counts.get("sampled"):
            extra.append(f"seed={self.seed}")
        if self.bound:
            extra.append(f"bound={self.bound}")
        if extra:
            head += "  (" + "; ".join(extra) + ")"
        out = [head]
        out += [f"{pad}    note: {n}" for n in self.notes]
        for p in self.parts:
            out += p.lines(indent + 1)
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _jsonable(w):
    if isinstance(w, dict):
        return {str(k): _jsonable(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [_jsonable(x) for x in w]
    if hasattr(w, "item"):
        return w.item()
    return w


def _fmt(w):
    if isinstance(w, (list, tuple)):
        return "(" + ", ".join(str(_jsonable(x)) for x in w) + ")"
    return str(w)


@contextmanager
def timed():
    box = {"elapsed": 0.0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["elapsed"] = time.perf_counter() - t0


def expectation(report: CheckReport, expected: str, label: str | None = None) -> CheckReport:
    """Wrap ``report`` so the result passes iff its verdict equals ``expected``."""
    name = label or f"expect {report.check}={expected}"
    if report.verdict == expected:
        return CheckReport(report.subject, name, "pass", parts=[report], elapsed=report.elapsed)
    return CheckReport(
        report.subject,
        name,
        "fail",
        witnesses=[("observed", report.verdict)],
        parts=[report],
        elapsed=report.elapsed,
    )
