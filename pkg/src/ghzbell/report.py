"""Machine-readable reports.

A report is a JSON object with a fixed key set.  Reals are rounded to 12
significant digits before serialization so that reruns with the same seed
produce byte-identical output.
"""

from __future__ import annotations

import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .rng import RNG_ALGORITHM


def num(x: float) -> float | int:
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("reports carry finite numbers only")
    out = float(f"{x:.12g}")
    return 0.0 if out == 0 else out


@dataclass
class Check:
    name: str
    lhs: float
    rhs: float
    tolerance: float
    relation: str = "eq"  # eq: |lhs - rhs| <= tol, le: lhs <= rhs + tol

    @property
    def passed(self) -> bool:
        if self.relation == "eq":
            return abs(self.lhs - self.rhs) <= self.tolerance
        if self.relation == "le":
            return self.lhs <= self.rhs + self.tolerance
        raise ValueError(f"unknown relation {self.relation!r}")

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "relation": self.relation,
            "tolerance": num(self.tolerance),
            "pass": self.passed,
        }


@dataclass
class Report:
    command: str
    arguments: dict[str, Any]
    seed: int
    checks: list[Check] = field(default_factory=list)
    findings: list[dict[str, Any]] = field(default_factory=list)
    tables: dict[str, Any] = field(default_factory=dict)
    version: str = __version__

    def check(self, name: str, lhs: float, rhs: float, tolerance: float = 0.0, relation: str = "eq") -> Check:
        c = Check(name, lhs, rhs, tolerance, relation)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "arguments": _clean(self.arguments),
            "seed": self.seed,
            "version": self.version,
            "rng": RNG_ALGORITHM,
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_json() for c in self.checks],
            "findings": _clean(self.findings),
            "tables": _clean(self.tables),
        }

    def render(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False, allow_nan=False) + "\n"


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": num(obj.real), "im": num(obj.imag)}
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return _clean(obj.item())
    return num(obj)


def emit_report(report: Report, destination: str | os.PathLike | None = None) -> None:
    text = report.render()
    if destination is None or os.fspath(destination) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
