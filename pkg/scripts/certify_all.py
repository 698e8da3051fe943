"""Run every certificate and print a one-line verdict per claim with timing."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from ineqforge.cli import claim_ids, run_claim, write_json


@dataclass
class CertifyExperiment:
    claims: list[str] = field(default_factory=claim_ids)
    out: Path | None = None


def run(cfg: CertifyExperiment) -> bool:
    ok = True
    for claim in cfg.claims:
        t0 = time.perf_counter()
        cert = run_claim(claim)
        dt = time.perf_counter() - t0
        extra = f"  failed at: {cert.failed_step}" if cert.failed_step else ""
        print(f"{claim:<10} {cert.verdict:<10} {len(cert.steps):>3} steps  {dt * 1000:7.1f} ms{extra}")
        if cfg.out is not None:
            write_json(cfg.out / f"{claim}.json", "certificate", cert.to_json())
        ok &= cert.certified
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("claims", nargs="*")
    ap.add_argument("--out", type=Path)
    a = ap.parse_args()
    cfg = CertifyExperiment(a.claims or claim_ids(), a.out)
    raise SystemExit(0 if run(cfg) else 1)
