import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import P
from ineqforge.damascus import (
    DELTA_NUMER,
    H_M3N3,
    H_M5N1,
    N4_VALUE,
    ConstraintTuple,
    DeltaMismatch,
    certify_m2,
    exact_hessian_at_center,
    fixed_witness,
    ga_delta,
    ga_delta_numer,
    gradient_at_center,
    hessian_at_center,
    lemma_bank,
    ln_bounds,
    n5plus_ratio,
    published_minors,
    partials,
    psi_numer,
    s_eval,
    witness_family,
)
from ineqforge.exactpoly import Poly


def test_s_eval_examples():
    assert s_eval(4, (F(31, 20), F(43, 100), F(2000, 1333))) == N4_VALUE
    assert N4_VALUE == F(354458009159794612949999, 481099388060786340236540521)
    for n in (1, 3, 9):
        assert s_eval(n, (1, 1, 1, 1)) == 0
    assert s_eval(1, (2, 2, F(1, 4))) == F(-26, 85)
    with pytest.raises(ValueError):
        s_eval(1, (0, 1))


def test_constraint_tuple_rejects_bad_product():
    with pytest.raises(ValueError):
        ConstraintTuple((F(2), F(2), F(1, 2)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=F(1, 20), max_value=20, max_denominator=50), min_size=2, max_size=5),
       st.integers(1, 7), st.randoms(use_true_random=False))
def test_permutation_invariance(xs, n, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert s_eval(n, xs) == s_eval(n, ys)


def test_two_variable_case_never_positive():
    rnd = random.Random(7)
    for _ in range(200):
        t = F(rnd.randint(1, 5000), rnd.randint(1, 5000))
        n = rnd.randint(1, 12)
        assert s_eval(n, (t, 1 / t)) <= 0


def test_witness_family_examples():
    w = witness_family(6, 1)
    assert w.value == F(33, 1025) and w.positive
    assert w.value == 5 * F(1, 5) + (F(1, 32) - 1) / (F(1, 1024) + 1)
    assert w.g_value == F(165, 1024)
    assert witness_family(4, 2).positive
    with pytest.raises(ValueError):
        witness_family(5, 1)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4, 9) for n in range(2, 9)] + [(m, 1) for m in range(6, 13)])
def test_witness_family_grid(m, n):
    w = witness_family(m, n)
    assert w.positive and w.value > 0
    assert (w.f_value > 0) == (w.value > 0)
    if n == 1:
        assert (w.g_value > 0) == (w.value > 0)


def test_fixed_witnesses():
    assert fixed_witness("n4-triple").value == N4_VALUE
    for n in (5, 6, 10, 20):
        assert fixed_witness("n5plus-triple", n).positive
        assert n5plus_ratio(n) < 1
    with pytest.raises(ValueError):
        fixed_witness("n5plus-triple", 4)
    assert n5plus_ratio(4) > 1


def test_psi_numer_examples():
    assert psi_numer(1) == P(-2, 2, 0, -2, 2)
    assert psi_numer(1) == Poly([-1, 1]) * Poly([1, 0, 0, 1]) * -2
    assert psi_numer(2) == P(-3, 2, 1, 0, -1, -2, 3)


@pytest.mark.parametrize("n", range(1, 11))
def test_certify_m2(n):
    cert = certify_m2(n)
    assert cert.certified, cert.failed_step
    assert cert.summary["positive_roots"] == 1


def test_ga_delta_numerators():
    assert ga_delta_numer("m3n3") == P(1, 0, 0, -16, -22, 0, 0, 16, 9)
    assert ga_delta_numer("m5n1") == P(1, -4, -6, 4, 1)
    with pytest.raises(DeltaMismatch):
        ga_delta_numer("m5n1", P(1, -4, 6, 4, 1))


def _fd_delta(h, t, e=1e-4):
    f = lambda s: float(h(F(s).limit_denominator(10**12)))  # noqa: E731
    d1 = (f(t + e) - f(t - e)) / (2 * e)
    d2 = (f(t + e) - 2 * f(t) + f(t - e)) / e**2
    return d1 + t * d2


@pytest.mark.parametrize("case,h,base,shift", [("m3n3", H_M3N3, Poly([1, 0, 0, 0, 1]), 2), ("m5n1", H_M5N1, Poly([1, 0, 1]), 0)])
def test_delta_against_finite_differences(case, h, base, shift):
    numer = DELTA_NUMER[case]
    for t in (0.3, 0.8, 1.5, 2.2):
        exact = float(numer(F(t))) * t**shift / float(base(F(t))) ** 3
        assert exact == pytest.approx(_fd_delta(h, t), rel=1e-3, abs=1e-4)
        assert float(ga_delta(h)(F(t))) == pytest.approx(exact, rel=1e-9)


@pytest.mark.parametrize("case", ["m3n3", "m5n1"])
def test_lemma_bank(case):
    cert = lemma_bank(case)
    assert cert.certified, cert.failed_step
    assert all(s.ok for s in cert.steps)


def test_lemma_bank_records():
    assert lemma_bank("m3n3").summary["h_4_5"] == F(-305, 881)
    assert lemma_bank("m5n1").summary["positive_roots"] == 2


@pytest.mark.parametrize("case", ["m3n3", "m5n1"])
def test_lemma_bank_mutated_delta_fails(case):
    good = DELTA_NUMER[case]
    coeffs = list(good.coeffs)
    k = next(i for i, c in enumerate(coeffs) if c)
    coeffs[k] = -coeffs[k]
    cert = lemma_bank(case, Poly(coeffs))
    assert not cert.certified
    assert "Delta" in cert.failed_step


@pytest.mark.parametrize("x", [F(1, 3), F(4, 5), F(117, 500), F(5, 4), F(7)])
def test_ln_bounds_bracket(x):
    lo, hi = ln_bounds(x)
    assert lo <= hi
    slack = 1e-15 * max(1.0, abs(math.log(x)))
    assert float(lo) - slack <= math.log(x) <= float(hi) + slack
    assert hi - lo < F(1, 10**10)


@pytest.mark.parametrize("n", range(1, 9))
def test_gradient_is_zero(n):
    assert gradient_at_center(n) == (0, 0)


def test_partials_match_finite_differences():
    from ineqforge.damascus import on_surface

    n, x0, y0, e = 3, F(3, 2), F(2, 3), F(1, 10**6)
    px, py = partials(n, x0, y0)
    fx = (on_surface(n, x0 + e, y0) - on_surface(n, x0 - e, y0)) / (2 * e)
    fy = (on_surface(n, x0, y0 + e) - on_surface(n, x0, y0 - e)) / (2 * e)
    assert abs(px - fx) < F(1, 10**8) and abs(py - fy) < F(1, 10**8)


@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_hessian_converges_to_exact(n):
    exact = exact_hessian_at_center(n)
    assert exact == ((-n, F(-n, 2)), (F(-n, 2), -n))
    h1 = hessian_at_center(n, F(1, 100))
    h2 = hessian_at_center(n, F(1, 200))
    assert h1[0][1] == h1[1][0]
    for i in range(2):
        for j in range(2):
            e1, e2 = abs(h1[i][j] - exact[i][j]), abs(h2[i][j] - exact[i][j])
            assert e2 < F(1, 10**3)
            if e2:  # second order at least; some entries come out fourth order
                assert e1 / e2 > F(7, 2)
    # still a strict local max: negative definite
    (a, b), _ = exact
    assert a < 0 and a * a - b * b > 0


def test_hessian_step_guard_and_minors():
    with pytest.raises(ValueError):
        hessian_at_center(2, F(1, 5))
    assert published_minors(4) == (-3, 5)
