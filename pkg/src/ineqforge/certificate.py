"""Machine-readable verdicts shared by the damascus and symred pipelines."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .exactpoly import Poly, ext_str, fraction_str, is_finite
from .sturm import CertificateFailure, RatInterval, SignCertificate

SCHEMA_VERSION = 1


def jsonable(value: Any) -> Any:
    """Convert exact values to JSON-friendly data (fractions become ``p/q`` strings)."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, float):
        if not is_finite(value):
            return ext_str(value)
        raise TypeError("floats have no place in an exact certificate")
    if isinstance(value, Poly):
        return value.to_text()
    if isinstance(value, (RatInterval, SignCertificate)):
        return value.to_json()
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


@dataclass
class Step:
    description: str
    ok: bool
    values: dict = field(default_factory=dict)
    error: str | None = None

    def to_json(self) -> dict:
        out = {"description": self.description, "ok": self.ok, "values": jsonable(self.values)}
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class Certificate:
    claim_id: str
    verdict: str = "certified"
    steps: list[Step] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    @property
    def failed_step(self) -> str | None:
        for s in self.steps:
            if not s.ok:
                return s.description
        return None

    def check(self, description: str, condition: bool, **values) -> bool:
        """Record an exact check; a false condition fails the certificate."""
        self.steps.append(Step(description, bool(condition), values))
        if not condition:
            self.verdict = "failed"
        return bool(condition)

    def run(self, description: str, fn: Callable[[], Any], **values) -> Any:
        """Record a step whose body raises on failure; returns the body's result."""
        try:
            result = fn()
        except (CertificateFailure, ValueError, ArithmeticError, AssertionError) as exc:
            self.steps.append(Step(description, False, values, error=str(exc)))
            self.verdict = "failed"
            return None
        vals = dict(values)
        if result is not None:
            vals["result"] = result
        self.steps.append(Step(description, True, vals))
        return result

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "claim_id": self.claim_id,
            "verdict": self.verdict,
            "failed_step": self.failed_step,
            "summary": jsonable(self.summary),
            "steps": [s.to_json() for s in self.steps],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)
