"""Verification report container and its JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

THEOREMS = ("FM", "FPM", "K2CK", "STAR", "QUOTIENT", "EDGE_MONO", "MONO_S")


@dataclass
class Check:
    name: str
    expected: Any
    observed: Any
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": _plain(self.expected),
            "observed": _plain(self.observed),
            "pass": bool(self.passed),
        }


@dataclass
class VerificationReport:
    theorem: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)
    runtime_ms: float = 0.0
    status: str = "binding"
    values: dict = field(default_factory=dict)
    findings: list[str] = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)

    def check(self, name: str, expected, observed, passed: bool) -> bool:
        self.checks.append(Check(name, expected, observed, bool(passed)))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and not self.counterexamples

    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": _plain(self.params),
            "status": self.status,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "counterexamples": list(self.counterexamples),
            "findings": list(self.findings),
            "values": _plain(self.values),
            "tolerances": _plain(self.tolerances),
            "runtime_ms": round(self.runtime_ms, 3),
        }

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kwargs)


def _plain(obj):
    """Convert numpy scalars and tuples into JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return obj.item()
    if isinstance(obj, float) and obj != obj:
        return None
    return obj


def report_schema() -> dict:
    text = resources.files("distfactor").joinpath("report_schema.json").read_text()
    return json.loads(text)
