"""Command-line front end.

    ineqforge table    [--n-max N] [--out DIR] [--format json|text]
    ineqforge certify  CLAIM [--out DIR]       # m3n3, m5n1, m2-n<k>, ineq-<1..12>, all
    ineqforge explore  [--n-values 3,4,5,6] [--grid-lo 1/10] [--grid-hi 10] [--grid-steps 200] [--out DIR] [--format csv|json]
    ineqforge report   [--out DIR]
    ineqforge sturm    "c0 c1 ... cd" [--lo 0] [--hi inf] [--width 1/100]
    ineqforge eval     N x1 x2 ...

Every JSON document carries ``schema: 1``; the only run-dependent field is
``header.generated_at``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certificate import SCHEMA_VERSION, Certificate, jsonable
from .damascus import (
    certify_m2,
    exact_hessian_at_center,
    fixed_witness,
    gradient_at_center,
    lemma_bank,
    s_eval,
    witness_family,
)
from .exactpoly import Poly, fraction_str, parse_ext
from .explorer import (
    GridSpec,
    RefutationDetected,
    export,
    nested_check,
    region_report,
    scan,
)
from .sturm import RatInterval, build_chain, count_roots, isolate_roots, variations
from .symred import INEQUALITIES, verify_modified_inequality

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_MISSING, EXIT_REFUTED = 0, 1, 2, 3, 4


class UnknownClaim(ValueError):
    pass


class MissingInputs(FileNotFoundError):
    pass


@dataclass
class RunConfig:
    command: str
    n_max: int = 10
    grid: GridSpec = field(default_factory=GridSpec)
    n_values: tuple[int, ...] = (3, 4, 5, 6)
    output_path: str = "ineqforge-out"
    format: str = "json"

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")


def envelope(kind: str, body) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "header": {"tool": f"ineqforge {__version__}", "kind": kind,
                   "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds")},
        "body": jsonable(body),
    }


def write_json(path: Path, kind: str, body) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(envelope(kind, body), indent=2) + "\n")
    return path


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("INEQFORGE_THREADS", "1")))
    except ValueError:
        return 1


def _parallel_map(fn, items):
    items = list(items)
    if _threads() > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=_threads()) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


# ---------------------------------------------------------------------------
# claims
# ---------------------------------------------------------------------------


def claim_ids() -> list[str]:
    return ["m3n3", "m5n1"] + [f"m2-n{n}" for n in range(1, 11)] + [f"ineq-{i}" for i in sorted(INEQUALITIES)]


def parse_claim(claim: str) -> tuple[str, object]:
    if claim in ("m3n3", "m5n1"):
        return "lemma", claim
    if claim.startswith("m2-n") and claim[4:].isdigit() and int(claim[4:]) >= 1:
        return "m2", int(claim[4:])
    if claim.startswith("ineq-") and claim[5:].isdigit() and int(claim[5:]) in INEQUALITIES:
        return "ineq", int(claim[5:])
    raise UnknownClaim(f"unknown claim {claim!r}; known: m3n3, m5n1, m2-n<k>, ineq-1..ineq-12, all")


def run_claim(claim: str) -> Certificate:
    kind, arg = parse_claim(claim)
    if kind == "lemma":
        return lemma_bank(arg)
    if kind == "m2":
        return certify_m2(arg)
    return verify_modified_inequality(arg)


def certify_m1(n: int) -> Certificate:
    cert = Certificate(f"m1-n{n}")
    cert.check("H_1 = {1} and S_n^1(1) = 0", s_eval(n, [1]) == 0)
    return cert


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def expected_status(m: int, n: int) -> str:
    if m in (1, 2):
        return "certified"
    if m == 3:
        return {1: "validated-empirically", 2: "validated-empirically", 3: "certified"}.get(n, "witness-refuted")
    if m in (4, 5):
        return "certified" if n == 1 else "witness-refuted"
    return "witness-refuted"


def validate_m3_empirically(n: int, grid: GridSpec) -> dict:
    samples = scan(n, grid)
    rep = region_report(samples)
    grad = gradient_at_center(n)
    (a, b), _ = exact_hessian_at_center(n)
    ok = rep.violation_count == 0 and grad == (0, 0) and a < 0 and a * a - b * b > 0
    return {"ok": ok, "grid": grid.to_json(), "samples": rep.sample_count, "violations": rep.violation_count,
            "gradient": grad, "hessian_minors": [a, a * a - b * b]}


def _cached_lemma(cache: dict, case: str) -> Certificate:
    if case not in cache:
        cache[case] = lemma_bank(case)
    return cache[case]


def table_row(m: int, n: int, grid: GridSpec, cache: dict) -> dict:
    row = {"m": m, "n": n}
    if m == 1:
        cert = certify_m1(n)
    elif m == 2:
        cert = certify_m2(n)
    elif m == 3 and n in (1, 2):
        detail = validate_m3_empirically(n, grid)
        row.update(status="validated-empirically" if detail["ok"] else "failed", detail=detail)
        return row
    elif m == 3 and n == 3:
        cert = _cached_lemma(cache, "m3n3")
    elif m == 3:
        dv = fixed_witness("n4-triple" if n == 4 else "n5plus-triple", n)
        row.update(status="witness-refuted", detail=dv.to_json())
        return row
    elif m in (4, 5) and n == 1:
        cert = _cached_lemma(cache, "m5n1")
        if m == 4:
            row["note"] = "corollary of S_1^5 <= 0 by fixing one coordinate to 1"
    else:
        w = witness_family(m, n)
        row.update(status="witness-refuted" if w.positive else "failed", detail=w.to_json())
        return row
    row.update(status="certified" if cert.certified else "failed",
               detail={"claim_id": cert.claim_id, "verdict": cert.verdict, "failed_step": cert.failed_step})
    if m in (1, 2):
        row["scope"] = "certified up to n_max"
    return row


def cmd_verify_table(cfg: RunConfig, grid: GridSpec | None = None) -> dict:
    grid = grid or GridSpec(steps_per_axis=60)
    cache: dict = {}
    rows = [table_row(m, n, grid, cache) for m in range(1, 7) for n in range(1, cfg.n_max + 1)]
    mismatches = [(r["m"], r["n"], r["status"]) for r in rows if r["status"] != expected_status(r["m"], r["n"])]
    return {"n_max": cfg.n_max, "rows": rows, "mismatches": mismatches, "ok": not mismatches}


def render_table(report: dict) -> str:
    by_m: dict[int, dict[str, list[int]]] = {}
    for r in report["rows"]:
        by_m.setdefault(r["m"], {}).setdefault(r["status"], []).append(r["n"])
    lines = [f"{'m':>2} | status by n (n <= {report['n_max']})"]
    for m, groups in sorted(by_m.items()):
        parts = [f"{st}: {','.join(map(str, ns))}" for st, ns in groups.items()]
        lines.append(f"{m:>2} | " + "; ".join(parts))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_certify(cfg: RunConfig, claim: str) -> list[Certificate]:
    claims = claim_ids() if claim == "all" else [claim]
    for c in claims:
        parse_claim(c)
    certs = _parallel_map(run_claim, claims)
    out = Path(cfg.output_path) / "certificates"
    for cert in certs:
        write_json(out / f"{cert.claim_id}.json", "certificate", cert.to_json())
    return certs


def cmd_explore(cfg: RunConfig) -> dict:
    out = Path(cfg.output_path) / "explore"
    out.mkdir(parents=True, exist_ok=True)
    scans = {}
    reports = {}
    for n in cfg.n_values:
        samples = scan(n, cfg.grid)
        scans[n] = samples
        fmt = "json" if cfg.format == "json" else "csv"
        (out / f"samples_n{n}.{fmt}").write_bytes(export(samples, fmt))
        rep = region_report(samples, n)
        reports[n] = rep
        write_json(out / f"region_n{n}.json", "region-report", {"grid": cfg.grid.to_json(), **rep.to_json()})
    nested = []
    for n in sorted(scans):
        if n + 1 in scans:
            idx = nested_check(scans[n], scans[n + 1])
            nested.append({
                "from": n, "to": n + 1, "violations": idx,
                "points": [[fraction_str(scans[n][i].x), fraction_str(scans[n][i].y), fraction_str(scans[n][i].z)] for i in idx],
            })
    write_json(out / "nested.json", "nested-check", {"grid": cfg.grid.to_json(), "checks": nested})
    return {"reports": reports, "nested": nested}


def cmd_report(cfg: RunConfig) -> dict:
    root = Path(cfg.output_path)
    found: dict = {"table": None, "certificates": {}, "regions": {}, "nested": None}
    gaps = []

    def load(p: Path):
        return json.loads(p.read_text())["body"]

    if (root / "table.json").exists():
        found["table"] = load(root / "table.json")
    else:
        gaps.append("table.json")
    cert_dir = root / "certificates"
    if cert_dir.is_dir():
        for p in sorted(cert_dir.glob("*.json")):
            found["certificates"][p.stem] = load(p)
    missing_claims = [c for c in claim_ids() if c not in found["certificates"]]
    gaps.extend(f"certificates/{c}.json" for c in missing_claims)
    explore = root / "explore"
    if explore.is_dir():
        for p in sorted(explore.glob("region_n*.json")):
            found["regions"][p.stem] = load(p)
        if (explore / "nested.json").exists():
            found["nested"] = load(explore / "nested.json")
    if not found["regions"]:
        gaps.append("explore/region_n*.json")
    if found["nested"] is None:
        gaps.append("explore/nested.json")
    if found["table"] is None and not found["certificates"] and not found["regions"]:
        raise MissingInputs(f"no artifacts under {root}")

    certs = found["certificates"]
    ineq = [c for c in certs if c.startswith("ineq-")]
    summary = {
        "certificates_certified": sum(1 for c in certs.values() if c["verdict"] == "certified"),
        "certificates_total": len(certs),
        "modified_inequalities": f"{sum(1 for c in ineq if certs[c]['verdict'] == 'certified')}/{len(INEQUALITIES)} certified",
        "table_ok": None if found["table"] is None else found["table"]["ok"],
        "violation_counts": {k: v["violation_count"] for k, v in found["regions"].items()},
        "nested_violations": None if found["nested"] is None else
        {f"{c['from']}->{c['to']}": len(c["violations"]) for c in found["nested"]["checks"]},
    }
    return {"summary": summary, "gaps": gaps, **found}


def cmd_sturm(poly_text: str, lo: str, hi: str, width: str) -> dict:
    p = Poly.from_text(poly_text)
    iv = RatInterval(parse_ext(lo), parse_ext(hi))
    chain = build_chain(p)
    return {
        "poly": p.to_text(),
        "chain": [f.to_text() for f in chain.entries],
        "interval": iv.to_json(),
        "V_lo": variations(chain, iv.lo),
        "V_hi": variations(chain, iv.hi),
        "distinct_roots": count_roots(p, iv),
        "isolating_intervals": [i.to_json() for i in isolate_roots(p, iv, Fraction(width))],
    }


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _n_values(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="ineqforge-out", help="output directory")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--n-max", type=int, default=10)
    common.add_argument("--grid-lo", default="1/10")
    common.add_argument("--grid-hi", default="10")
    common.add_argument("--grid-steps", type=int, default=200)
    common.add_argument("--n-values", type=_n_values, default=(3, 4, 5, 6))

    parser = argparse.ArgumentParser(prog="ineqforge", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table", parents=[common], help="reproduce the (m, n) validity table")
    pc = sub.add_parser("certify", parents=[common], help="run one certificate (or all)")
    pc.add_argument("claim")
    sub.add_parser("explore", parents=[common], help="grid scan of the violation sets I_n^3")
    sub.add_parser("report", parents=[common], help="merge artifacts into report.json")
    ps = sub.add_parser("sturm", help="Sturm chain, root count and isolation for a polynomial")
    ps.add_argument("poly", help='ascending coefficients, e.g. "3 0 0 -6 -2 0 0 2 3"')
    ps.add_argument("--lo", default="-inf")
    ps.add_argument("--hi", default="inf")
    ps.add_argument("--width", default="1/100")
    pe = sub.add_parser("eval", help="exact S_n^m at a point")
    pe.add_argument("n", type=int)
    pe.add_argument("xs", nargs="+")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        n_max=args.n_max,
        grid=GridSpec(Fraction(args.grid_lo), Fraction(args.grid_hi), args.grid_steps),
        n_values=args.n_values,
        output_path=args.out,
        format=args.format,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "sturm":
        print(json.dumps(cmd_sturm(args.poly, args.lo, args.hi, args.width), indent=2))
        return EXIT_OK
    if args.command == "eval":
        value = s_eval(args.n, [Fraction(x) for x in args.xs])
        print(fraction_str(value))
        return EXIT_OK

    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if cfg.command == "table":
        report = cmd_verify_table(cfg)
        write_json(Path(cfg.output_path) / "table.json", "table", report)
        print(render_table(report) if cfg.format == "text" else json.dumps(jsonable(report["mismatches"])))
        if not report["ok"]:
            print(f"table mismatch: {report['mismatches']}", file=sys.stderr)
            return EXIT_FAILED
        return EXIT_OK

    if cfg.command == "certify":
        try:
            certs = cmd_certify(cfg, args.claim)
        except UnknownClaim as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        for c in certs:
            print(f"{c.claim_id}: {c.verdict}" + (f" (failed at: {c.failed_step})" if c.failed_step else ""))
        return EXIT_OK if all(c.certified for c in certs) else EXIT_FAILED

    if cfg.command == "explore":
        try:
            result = cmd_explore(cfg)
        except RefutationDetected as exc:
            print(f"refutation detected: {exc}", file=sys.stderr)
            return EXIT_REFUTED
        for n, rep in result["reports"].items():
            print(f"n={n}: {rep.violation_count} violating of {rep.sample_count}")
        for c in result["nested"]:
            print(f"nested {c['from']}->{c['to']}: {len(c['violations'])} counterexample point(s)")
        if any(result["reports"][n].violation_count for n in result["reports"] if n <= 3):
            return EXIT_REFUTED
        return EXIT_OK

    if cfg.command == "report":
        try:
            report = cmd_report(cfg)
        except MissingInputs as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MISSING
        write_json(Path(cfg.output_path) / "report.json", "report", report)
        print(json.dumps(report["summary"], indent=2))
        if report["gaps"]:
            print("gaps: " + ", ".join(report["gaps"]), file=sys.stderr)
        return EXIT_OK
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
