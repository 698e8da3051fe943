"""Scan I_n^3 on a grid for several n, report region statistics and the nesting check.

Optionally writes a CSV per n for external plotting.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ineqforge.explorer import GridSpec, export, nested_check, region_report, scan


@dataclass
class ExploreExperiment:
    n_values: tuple[int, ...] = (3, 4, 5, 6, 7, 8)
    grid: GridSpec = GridSpec()
    csv_dir: Path | None = None


def run(cfg: ExploreExperiment) -> None:
    scans = {}
    for n in cfg.n_values:
        t0 = time.perf_counter()
        samples = scan(n, cfg.grid)
        rep = region_report(samples, n)
        scans[n] = samples
        dist = "-" if rep.min_dist_to_one is None else f"{float(rep.min_dist_to_one):.4f}"
        c = "-" if rep.c_estimate is None else f"{float(rep.c_estimate):.4f}"
        print(f"n={n}: {rep.violation_count:>6} / {rep.sample_count} violating, "
              f"min |x_j - 1| ~ {dist}, c ~ {c}  ({time.perf_counter() - t0:.1f} s)")
        if cfg.csv_dir is not None:
            cfg.csv_dir.mkdir(parents=True, exist_ok=True)
            (cfg.csv_dir / f"samples_n{n}.csv").write_bytes(export(samples, "csv"))
    for n in cfg.n_values:
        if n + 1 in scans:
            idx = nested_check(scans[n], scans[n + 1])
            pts = [(str(scans[n][i].x), str(scans[n][i].y)) for i in idx[:10]]
            print(f"nested {n}->{n + 1}: {len(idx)} point(s) in I_{n} but not I_{n + 1}" + (f": {pts}" if pts else ""))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-values", default="3,4,5,6,7,8")
    ap.add_argument("--lo", default="1/10")
    ap.add_argument("--hi", default="10")
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--csv-dir", type=Path)
    a = ap.parse_args()
    run(ExploreExperiment(tuple(int(t) for t in a.n_values.split(",")),
                          GridSpec(Fraction(a.lo), Fraction(a.hi), a.steps), a.csv_dir))
