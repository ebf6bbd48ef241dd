"""Reports shared by all subcommands."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from coverforge.verdict import FAIL, INCONCLUSIVE, PASS, Verdict

SCHEMA = "coverforge-report/1"


def jsonable(x):
    """Best-effort conversion of witnesses and data to JSON values."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, dict):
        return {_key(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = list(x)
        if isinstance(x, (set, frozenset)):
            items = sorted(items, key=repr)
        return [jsonable(v) for v in items]
    if hasattr(x, "to_json"):
        try:
            return jsonable(x.to_json())
        except TypeError:
            pass
    return str(x)


def _key(k):
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return ",".join(str(jsonable(a)) for a in k)
    return str(k)


@dataclass
class Check:
    id: str
    verdict: Verdict
    seconds: float = 0.0

    def to_json(self) -> dict:
        v = self.verdict
        out = {"id": self.id, "status": v.status, "kind": v.kind}
        if v.bound is not None:
            out["bound"] = v.bound
        if v.witness is not None:
            out["witness"] = jsonable(v.witness)
        if v.detail:
            out["detail"] = v.detail
        if v.data:
            out["data"] = jsonable(v.data)
        out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class Report:
    command: list
    checks: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    started: float = field(default_factory=time.perf_counter)

    def add(self, check_id: str, verdict: Verdict, seconds: float = 0.0):
        self.checks.append(Check(check_id, verdict, seconds))

    def put(self, key: str, value):
        self.results[key] = value

    def failed(self) -> bool:
        return any(c.verdict.status == FAIL for c in self.checks)

    def inconclusive(self) -> bool:
        return any(c.verdict.status == INCONCLUSIVE for c in self.checks)

    def exit_code(self, strict: bool = False) -> int:
        if self.failed() or (strict and self.inconclusive()):
            return 1
        return 0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "results": jsonable(self.results),
            "verdicts": [c.to_json() for c in self.checks],
            "summary": {s: sum(1 for c in self.checks if c.verdict.status == s) for s in (PASS, FAIL, INCONCLUSIVE)},
            "seconds": round(time.perf_counter() - self.started, 4),
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2)
        lines = []
        for k, v in self.results.items():
            if isinstance(v, (list, tuple)):
                lines.append(f"{k}:")
                lines.extend(f"  {x if isinstance(x, str) else json.dumps(jsonable(x))}" for x in v)
            elif isinstance(v, dict):
                lines.append(f"{k}:")
                lines.extend(f"  {a}: {b if isinstance(b, str) else json.dumps(jsonable(b))}" for a, b in v.items())
            else:
                lines.append(f"{k}: {v if isinstance(v, str) else json.dumps(jsonable(v))}")
        if self.checks:
            width = max(len(c.id) for c in self.checks)
            for c in self.checks:
                lines.append(f"[{c.verdict.status:^12}] {c.id:<{width}}  {c.verdict}  ({c.seconds:.2f}s)")
        return "\n".join(lines)
