"""Shared helpers; also collects acceptance verdicts for the terminal summary."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from ineqforge.exactpoly import Poly

GOLDEN = Path(__file__).parent / "golden"
ACCEPTANCE_LINES: dict[int, list[str]] = {}


def P(*coeffs) -> Poly:
    """Poly from coefficients listed from the highest degree down (reads like the math)."""
    return Poly([Fraction(c) for c in reversed(coeffs)])


@pytest.fixture
def record_criterion():
    def record(k: int, label: str, ok: bool, detail: str = "") -> bool:
        line = f"criterion {k:>2} [{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.setdefault(k, []).append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        for line in ACCEPTANCE_LINES[k]:
            terminalreporter.write_line(line)
