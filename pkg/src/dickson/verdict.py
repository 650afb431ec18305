from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Any

PASS, FAIL, SKIPPED, VACUOUS = "pass", "fail", "skipped", "vacuous"
STATUSES = (PASS, FAIL, SKIPPED, VACUOUS)


@dataclass
class Verdict:
    check_name: str
    q: int
    status: str
    instances_checked: int = 0
    counterexample: dict[str, Any] | None = None
    note: str = ""
    millis: float | None = None

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == FAIL) != (self.counterexample is not None):
            raise ValueError("a verdict fails exactly when it carries a counterexample")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Verdict:
        return cls(**d)


def _plain(v: Any) -> Any:
    """Coerce numpy scalars and containers into JSON-safe Python values."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v) if isinstance(v, (set, frozenset)) else v
        return [_plain(x) for x in items]
    if hasattr(v, "tolist"):
        return _plain(v.tolist())
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return int(v)
    return v


@dataclass
class Tally:
    """Accumulates claims for one check; keeps the first counterexample."""

    check_name: str
    q: int
    instances: int = 0
    counterexample: dict[str, Any] | None = None
    notes: list[str] = field(default_factory=list)
    vacuous_clauses: list[str] = field(default_factory=list)
    _t0: float = field(default_factory=time.perf_counter)

    def claim(self, ok: bool, clause: str, count: int = 1, **record: Any) -> bool:
        self.instances += count
        if not ok and self.counterexample is None:
            self.counterexample = {"clause": clause, **_plain(record)}
        return bool(ok)

    def vacuous(self, clause: str) -> None:
        if clause not in self.vacuous_clauses:
            self.vacuous_clauses.append(clause)

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    def verdict(self) -> Verdict:
        notes = list(self.notes)
        if self.vacuous_clauses:
            notes.append("vacuous: " + ", ".join(self.vacuous_clauses))
        if self.counterexample is not None:
            status = FAIL
        elif self.instances == 0:
            status = VACUOUS
        else:
            status = PASS
        return Verdict(
            self.check_name,
            self.q,
            status,
            self.instances,
            self.counterexample,
            "; ".join(notes),
            millis=(time.perf_counter() - self._t0) * 1000.0,
        )


def skipped(check_name: str, q: int, reason: str) -> Verdict:
    return Verdict(check_name, q, SKIPPED, 0, None, reason)
