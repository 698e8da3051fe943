from fractions import Fraction as F

import pytest

from ineqforge.damascus import s_eval
from ineqforge.explorer import (
    CSV_COLUMNS,
    GridMismatch,
    GridSpec,
    RefutationDetected,
    SampleRecord,
    export,
    nested_check,
    parse_export,
    region_report,
    scan,
)

SMALL = GridSpec(F(1, 10), F(10), 40)


def test_unit_point_is_zero():
    samples = scan(1, GridSpec(F(1, 2), F(3, 2), 2))
    centre = [s for s in samples if s.x == 1 and s.y == 1]
    assert len(centre) == 1
    assert centre[0].value == 0 and not centre[0].violating
    assert len(samples) == 9


def test_records_are_exact():
    for s in scan(5, GridSpec(F(1, 2), F(2), 3)):
        assert s.x * s.y * s.z == 1
        assert s.value == s_eval(5, (s.x, s.y, s.z))
        assert s.violating == (s.value > 0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("grid", [SMALL, GridSpec(F(1, 3), F(3), 30), GridSpec(F(1, 2), F(2), 25)])
def test_no_violations_small_n(n, grid):
    assert region_report(scan(n, grid)).violation_count == 0


def test_n6_violates_near_witness():
    grid = GridSpec(F(1, 2), F(3, 2), 4)  # axis 1/2, 3/4, 1, 5/4, 3/2
    samples = scan(6, grid)
    hit = [s for s in samples if (s.x, s.y) == (F(1, 2), F(3, 2))]
    assert hit[0].violating and hit[0].z == F(4, 3)
    rep = region_report(samples)
    assert rep.violation_count > 0
    assert rep.min_dist_to_one > 0
    assert all(F(1, 10) <= lo <= hi <= 10 for lo, hi in rep.bbox)


def test_region_report_empty():
    rep = region_report([], n=3)
    assert rep.violation_count == 0 and rep.sample_count == 0
    assert rep.bbox is None and rep.min_dist_to_one is None and rep.c_estimate is None


def test_refutation_detected():
    fake = SampleRecord(3, F(1), F(2), F(1, 2), F(1), True)
    with pytest.raises(RefutationDetected):
        region_report([fake])


def test_nested_check_errors():
    a = scan(4, GridSpec(F(1, 2), F(2), 4))
    b = scan(5, GridSpec(F(1, 2), F(2), 5))
    with pytest.raises(GridMismatch):
        nested_check(a, b)
    c = scan(5, GridSpec(F(1, 3), F(2), 4))
    with pytest.raises(GridMismatch):
        nested_check(a, c)
    with pytest.raises(GridMismatch):
        nested_check(a, scan(6, GridSpec(F(1, 2), F(2), 4)))


def test_nested_small_grid():
    assert nested_check(scan(5, SMALL), scan(6, SMALL)) == []


def test_refinement_monotone():
    # every violating point of the coarse grid is a point of the fine grid and still violates
    coarse = scan(5, GridSpec(F(1, 10), F(10), 30))
    fine = {(s.x, s.y): s for s in scan(5, GridSpec(F(1, 10), F(10), 60))}
    bad = [s for s in coarse if s.violating]
    assert bad
    assert all(fine[(s.x, s.y)].violating for s in bad)
    assert sum(s.violating for s in fine.values()) >= len(bad)


def test_csv_contract():
    rec = SampleRecord(6, F(1, 2), F(3, 2), F(4, 3), s_eval(6, (F(1, 2), F(3, 2), F(4, 3))), True)
    lines = export([rec], "csv").decode().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    v = rec.value
    assert lines[1] == f"6,1/2,3/2,4/3,{v.numerator}/{v.denominator},true"
    assert export([], "csv").decode() == ",".join(CSV_COLUMNS) + "\n"
    with pytest.raises(ValueError):
        export([rec], "xml")


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_export_roundtrip(fmt):
    samples = scan(4, GridSpec(F(1, 2), F(2), 5))
    assert parse_export(export(samples, fmt), fmt) == samples


def test_parallel_scan_matches_serial():
    grid = GridSpec(F(1, 5), F(5), 12)
    assert scan(5, grid, workers=2) == scan(5, grid, workers=1)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(F(0), F(1), 10)
    with pytest.raises(ValueError):
        GridSpec(F(2), F(1), 10)
    with pytest.raises(ValueError):
        scan(0, SMALL)
