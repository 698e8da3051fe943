import json

import pytest

from ineqforge.cli import EXIT_MISSING, EXIT_OK, EXIT_USAGE, main

GRID = ["--grid-lo", "1/2", "--grid-hi", "2", "--grid-steps", "8"]


def body(path):
    return json.loads(path.read_text())["body"]


def test_table(tmp_path, capsys):
    assert main(["table", "--n-max", "5", "--out", str(tmp_path), "--format", "text"]) == EXIT_OK
    rows = {(r["m"], r["n"]): r for r in body(tmp_path / "table.json")["rows"]}
    assert rows[(3, 3)]["status"] == "certified"
    assert rows[(3, 1)]["status"] == rows[(3, 2)]["status"] == "validated-empirically"
    assert all(rows[(3, n)]["status"] == "witness-refuted" for n in (4, 5))
    assert rows[(5, 1)]["status"] == "certified"
    assert rows[(6, 1)]["status"] == "witness-refuted"
    assert rows[(6, 1)]["detail"]["tuple"] == ["2", "2", "2", "2", "2", "1/32"]
    assert "status by n" in capsys.readouterr().out


def test_certify(tmp_path, capsys):
    assert main(["certify", "m3n3", "--out", str(tmp_path)]) == EXIT_OK
    assert body(tmp_path / "certificates" / "m3n3.json")["verdict"] == "certified"
    assert main(["certify", "ineq-1", "--out", str(tmp_path)]) == EXIT_OK
    cert = body(tmp_path / "certificates" / "ineq-1.json")
    assert cert["summary"]["centroid_value"] == "27/125"
    assert main(["certify", "bogus", "--out", str(tmp_path)]) == EXIT_USAGE
    assert "unknown claim" in capsys.readouterr().err


def test_explore(tmp_path):
    assert main(["explore", "--n-values", "5,6", "--out", str(tmp_path), *GRID]) == EXIT_OK
    ex = tmp_path / "explore"
    assert (ex / "samples_n5.json").exists()
    assert body(ex / "region_n6.json")["violation_count"] > 0
    assert body(ex / "nested.json")["checks"][0]["violations"] == []
    assert main(["explore", "--n-values", "6", "--format", "csv", "--out", str(tmp_path), *GRID]) == EXIT_OK
    assert (ex / "samples_n6.csv").read_text().startswith("n,x,y,z,value,violating")


def test_report(tmp_path):
    assert main(["report", "--out", str(tmp_path)]) == EXIT_MISSING
    main(["certify", "ineq-2", "--out", str(tmp_path)])
    assert main(["report", "--out", str(tmp_path)]) == EXIT_OK
    rep = body(tmp_path / "report.json")
    assert "table.json" in rep["gaps"] and "certificates/ineq-1.json" in rep["gaps"]
    assert rep["summary"]["modified_inequalities"] == "1/12 certified"


def test_full_report(tmp_path):
    out = ["--out", str(tmp_path)]
    assert main(["certify", "all", *out]) == EXIT_OK
    assert main(["table", "--n-max", "4", *out]) == EXIT_OK
    assert main(["explore", "--n-values", "3,4", *out, *GRID]) == EXIT_OK
    assert main(["report", *out]) == EXIT_OK
    rep = body(tmp_path / "report.json")
    assert rep["summary"]["modified_inequalities"] == "12/12 certified"
    assert rep["gaps"] == []


def test_deterministic_bodies(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        main(["certify", "m5n1", "--out", str(d)])
    ja = json.loads((a / "certificates" / "m5n1.json").read_text())
    jb = json.loads((b / "certificates" / "m5n1.json").read_text())
    assert ja["schema"] == 1
    assert ja["body"] == jb["body"]


def test_sturm_and_eval(capsys):
    assert main(["sturm", "3 0 0 -6 -2 0 0 2 3", "--lo", "0", "--hi", "inf"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["V_lo"] == 5 and out["V_hi"] == 3 and out["distinct_roots"] == 2
    assert main(["eval", "1", "2", "2", "1/4"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "-26/85"


def test_bad_config():
    assert main(["table", "--n-max", "0"]) == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["nonsense"])
