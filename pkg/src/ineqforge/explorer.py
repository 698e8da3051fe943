"""Exact grid scans of the violation sets I_n^3 = {xyz = 1 : S_n^3 > 0}."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .damascus import summand
from .exactpoly import as_rational, fraction_str

F = Fraction
CSV_COLUMNS = ["n", "x", "y", "z", "value", "violating"]


class RefutationDetected(RuntimeError):
    """A violating sample with a coordinate exactly 1 -- would contradict separation from the planes x_j = 1."""


class GridMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    lo: Fraction = F(1, 10)
    hi: Fraction = F(10)
    steps_per_axis: int = 200

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo <= 0 or not lo < hi:
            raise ValueError("grid needs 0 < lo < hi")
        if self.steps_per_axis < 1:
            raise ValueError("steps_per_axis must be positive")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def axis(self) -> list[Fraction]:
        h = (self.hi - self.lo) / self.steps_per_axis
        return [self.lo + k * h for k in range(self.steps_per_axis + 1)]

    def to_json(self) -> dict:
        return {"lo": fraction_str(self.lo), "hi": fraction_str(self.hi), "steps_per_axis": self.steps_per_axis}


@dataclass(frozen=True)
class SampleRecord:
    n: int
    x: Fraction
    y: Fraction
    z: Fraction
    value: Fraction
    violating: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "x": fraction_str(self.x),
            "y": fraction_str(self.y),
            "z": fraction_str(self.z),
            "value": fraction_str(self.value),
            "violating": self.violating,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SampleRecord":
        return cls(int(d["n"]), F(d["x"]), F(d["y"]), F(d["z"]), F(d["value"]), bool(d["violating"]))


def _row(args) -> list[SampleRecord]:
    n, xv, axis, fx_row = args
    fx = summand(n, xv)
    out = []
    for yv, fy in zip(axis, fx_row):
        zv = 1 / (xv * yv)
        val = fx + fy + summand(n, zv)
        out.append(SampleRecord(n, xv, yv, zv, val, val > 0))
    return out


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("INEQFORGE_THREADS", "1")))
    except ValueError:
        return 1


def scan(n: int, grid: GridSpec, workers: int | None = None) -> list[SampleRecord]:
    """One record per grid point (x, y, 1/(xy)), row-major in (x index, y index)."""
    if n < 1:
        raise ValueError("n must be positive")
    axis = grid.axis()
    fvals = [summand(n, a) for a in axis]
    jobs = [(n, xv, axis, fvals) for xv in axis]
    workers = _workers() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_row(j) for j in jobs]
    samples = [r for row in rows for r in row]
    _check_swap_symmetry(samples, len(axis))
    return samples


def _check_swap_symmetry(samples: Sequence[SampleRecord], side: int) -> None:
    for i in range(side):
        for j in range(i + 1, side):
            a, b = samples[i * side + j], samples[j * side + i]
            if a.value != b.value:
                raise AssertionError(f"S_n^3 not symmetric at grid point ({i}, {j})")


@dataclass
class RegionReport:
    n: int
    violation_count: int = 0
    sample_count: int = 0
    bbox: list[tuple[Fraction, Fraction]] | None = None
    min_dist_to_one: Fraction | None = None
    c_estimate: Fraction | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "sample_count": self.sample_count,
            "violation_count": self.violation_count,
            "bbox": None if self.bbox is None else [[fraction_str(a), fraction_str(b)] for a, b in self.bbox],
            "min_dist_to_one_estimate": None if self.min_dist_to_one is None else fraction_str(self.min_dist_to_one),
            "c_estimate": None if self.c_estimate is None else fraction_str(self.c_estimate),
            "notes": self.notes,
        }


def region_report(samples: Sequence[SampleRecord], n: int | None = None) -> RegionReport:
    ns = {s.n for s in samples}
    if len(ns) > 1:
        raise ValueError("samples mix several n")
    n = ns.pop() if ns else (n or 0)
    rep = RegionReport(n=n, sample_count=len(samples))
    bad = [s for s in samples if s.violating]
    if not bad:
        return rep
    for s in bad:
        if 1 in (s.x, s.y, s.z):
            raise RefutationDetected(f"violating sample with a unit coordinate: ({s.x}, {s.y}, {s.z})")
    coords = [(s.x, s.y, s.z) for s in bad]
    rep.violation_count = len(bad)
    rep.bbox = [(min(c[i] for c in coords), max(c[i] for c in coords)) for i in range(3)]
    rep.min_dist_to_one = min(abs(v - 1) for c in coords for v in c)
    rep.c_estimate = min(min(v, 1 / v) for c in coords for v in c)
    rep.notes.append("min_dist_to_one and c_estimate are grid estimates, not certified constants")
    return rep


def nested_check(samples_n: Sequence[SampleRecord], samples_n1: Sequence[SampleRecord]) -> list[int]:
    """Indices violating at n but not at n + 1 (evidence against I_n^3 being inside I_(n+1)^3)."""
    if len(samples_n) != len(samples_n1):
        raise GridMismatch("grids differ in size")
    out = []
    for idx, (a, b) in enumerate(zip(samples_n, samples_n1)):
        if (a.x, a.y) != (b.x, b.y):
            raise GridMismatch(f"grid point {idx} differs")
        if b.n != a.n + 1:
            raise GridMismatch("samples are not for consecutive n")
        if a.violating and not b.violating:
            out.append(idx)
    return out


def export(samples: Iterable[SampleRecord], fmt: str = "csv") -> bytes:
    samples = list(samples)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for s in samples:
            d = s.to_json()
            w.writerow([d["n"], d["x"], d["y"], d["z"], d["value"], "true" if s.violating else "false"])
        return buf.getvalue().encode()
    if fmt == "json":
        return json.dumps([s.to_json() for s in samples], indent=1).encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_export(data: bytes, fmt: str = "csv") -> list[SampleRecord]:
    text = data.decode()
    if fmt == "json":
        return [SampleRecord.from_json(d) for d in json.loads(text)]
    rows = list(csv.DictReader(io.StringIO(text)))
    return [SampleRecord.from_json({**r, "violating": r["violating"] == "true"}) for r in rows]
