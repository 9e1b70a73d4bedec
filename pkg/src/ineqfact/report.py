"""Verification report returned by the ``verify_*`` routines."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction


def jsonable(x):
    """Render exact numbers as ints or "p/q" strings, recursively."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x if isinstance(x, (str, float)) else str(x)


@dataclass
class Report:
    name: str
    cases: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, label, ok: bool, **detail):
        entry = {"case": label, "ok": bool(ok), **detail}
        self.cases.append(entry)
        if not ok:
            self.failures.append(entry)
        return ok

    def merge(self, other: "Report") -> "Report":
        self.cases.extend(other.cases)
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        return self

    def to_json(self) -> dict:
        d = asdict(self)
        d["status"] = "ok" if self.ok else "mismatch"
        return jsonable(d)

    def __str__(self):
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"{self.name}: {len(self.cases)} cases, {status}"
