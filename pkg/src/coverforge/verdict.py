"""Bounded verdicts shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``kind`` names the outcome (``"YES"``, ``"COUNTEREXAMPLE"``, ...), ``status``
    is one of pass/fail/inconclusive.  Positive answers that rest on a finite
    search carry the ``bound`` they were established at.
    """

    kind: str
    status: str
    bound: int | None = None
    witness: Any = None
    detail: str = ""
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.status == PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def __str__(self):
        s = self.kind if self.bound is None else f"{self.kind}({self.bound})"
        if self.detail:
            s += f": {self.detail}"
        return s


def passed(kind, bound=None, detail="", witness=None, **data) -> Verdict:
    return Verdict(kind, PASS, bound, witness, detail, data)


def failed(kind, witness=None, bound=None, detail="", **data) -> Verdict:
    return Verdict(kind, FAIL, bound, witness, detail, data)


def inconclusive(kind, bound=None, detail="", witness=None, **data) -> Verdict:
    return Verdict(kind, INCONCLUSIVE, bound, witness, detail, data)
