"""Compare finite-difference Hessians of S_n^3(x, y, 1/(xy)) at (1, 1) with the
chain-rule value and with the published matrix ((-3n/4, -n/2), (-n/2, -3n/4))."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from ineqforge.damascus import exact_hessian_at_center, hessian_at_center, published_hessian


@dataclass
class HessianExperiment:
    n_values: tuple[int, ...] = (1, 2, 3, 4, 6, 8)
    steps: tuple[Fraction, ...] = (Fraction(1, 100), Fraction(1, 200), Fraction(1, 400), Fraction(1, 1000))


def fmt(m) -> str:
    return "((%.6f, %.6f), (%.6f, %.6f))" % (m[0][0], m[0][1], m[1][0], m[1][1])


def run(cfg: HessianExperiment) -> None:
    for n in cfg.n_values:
        exact = exact_hessian_at_center(n)
        print(f"n={n}: chain rule {fmt(exact)}   published {fmt(published_hessian(n))}")
        prev = None
        for h in cfg.steps:
            fd = hessian_at_center(n, h)
            err = max(abs(fd[i][j] - exact[i][j]) for i in range(2) for j in range(2))
            ratio = "" if prev is None or not err else f"  error ratio {float(prev / err):.2f}"
            print(f"    step {str(h):>7}: {fmt(fd)}  |fd - exact| = {float(err):.3e}{ratio}")
            prev = err


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-values", default="1,2,3,4,6,8")
    a = ap.parse_args()
    run(HessianExperiment(tuple(int(t) for t in a.n_values.split(","))))
