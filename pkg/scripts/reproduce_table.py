"""Rebuild the (m, n) validity table and print it with per-cell evidence."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from fractions import Fraction

from ineqforge.certificate import jsonable
from ineqforge.cli import RunConfig, cmd_verify_table, render_table
from ineqforge.explorer import GridSpec


@dataclass
class TableExperiment:
    n_max: int = 10
    validation_steps: int = 60
    show_details: bool = False


def run(cfg: TableExperiment) -> dict:
    report = cmd_verify_table(RunConfig("table", n_max=cfg.n_max),
                              GridSpec(Fraction(1, 10), Fraction(10), cfg.validation_steps))
    print(render_table(report))
    print("mismatches vs expected statuses:", report["mismatches"] or "none")
    if cfg.show_details:
        print(json.dumps(jsonable(report["rows"]), indent=1))
    return report


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--validation-steps", type=int, default=60)
    ap.add_argument("--details", action="store_true")
    a = ap.parse_args()
    rep = run(TableExperiment(a.n_max, a.validation_steps, a.details))
    raise SystemExit(0 if rep["ok"] else 1)
