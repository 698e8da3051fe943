"""Exact evaluation of S_n^m, counterexample witnesses and proof certificates
for the generalized Damascus inequality.

``S_n^m(x_1..x_m) = sum_j (x_j^n - 1) / (x_j^(n+1) + 1)`` on positive tuples
with product one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .certificate import Certificate
from .exactpoly import (
    POS_INF,
    Poly,
    RatFunc,
    X,
    as_rational,
    poly_divrem,
    root_multiplicity,
)
from .sturm import (
    POSITIVE_HALFLINE,
    REAL_LINE,
    RatInterval,
    build_chain,
    certify_sign,
    count_roots,
    isolate_roots,
    variations,
)

F = Fraction


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def summand(n: int, x: Fraction) -> Fraction:
    return (x**n - 1) / (x ** (n + 1) + 1)


def s_eval(n: int, xs: Sequence) -> Fraction:
    """Exact S_n^m; the product-one constraint is not required here."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    total = Fraction(0)
    for x in xs:
        x = as_rational(x)
        if x <= 0:
            raise ValueError(f"coordinate {x} is not positive")
        total += summand(n, x)
    return total


@dataclass(frozen=True)
class ConstraintTuple:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(as_rational(c) for c in self.coords)
        if not coords:
            raise ValueError("empty tuple")
        if any(c <= 0 for c in coords):
            raise ValueError("coordinates must be positive")
        if math.prod(coords) != 1:
            raise ValueError("coordinates must multiply to 1")
        object.__setattr__(self, "coords", coords)

    @property
    def m(self) -> int:
        return len(self.coords)

    def to_json(self) -> list[str]:
        from .exactpoly import fraction_str

        return [fraction_str(c) for c in self.coords]


@dataclass(frozen=True)
class DamascusValue:
    n: int
    tuple: ConstraintTuple
    value: Fraction

    @property
    def positive(self) -> bool:
        return self.value > 0

    def to_json(self) -> dict:
        from .exactpoly import fraction_str

        return {"n": self.n, "tuple": self.tuple.to_json(), "value": fraction_str(self.value)}


def evaluate(n: int, coords: Sequence) -> DamascusValue:
    t = ConstraintTuple(tuple(coords))
    return DamascusValue(n, t, s_eval(n, t.coords))


# ---------------------------------------------------------------------------
# counterexample family (2, ..., 2, 2^(1-m))
# ---------------------------------------------------------------------------


def family_numerator_f(n: int, m: int) -> Fraction:
    """The expanded numerator f(n, m) of S_n^m at (2, ..., 2, 2^(1-m))."""
    two = F(2)
    a = two ** ((1 - m) * (n + 1))
    b = two ** ((1 - m) * n)
    return (
        m * two**n
        - m * a
        + m * a * two**n
        + b
        - two**n
        + a
        + b * two ** (n + 1)
        - a * two**n
        - two ** (n + 1)
        - m
    )


def family_numerator_g(m: int) -> Fraction:
    two = F(2)
    return (m - 1) * (two ** (2 * (1 - m)) + 1) + 5 * (two ** (1 - m) - 1)


@dataclass(frozen=True)
class WitnessResult:
    m: int
    n: int
    tuple: ConstraintTuple
    value: Fraction
    positive: bool
    f_value: Fraction
    g_value: Fraction | None

    def to_json(self) -> dict:
        from .certificate import jsonable

        return jsonable(
            {
                "m": self.m,
                "n": self.n,
                "tuple": self.tuple,
                "value": self.value,
                "positive": self.positive,
                "f_value": self.f_value,
                "g_value": self.g_value,
            }
        )


def family_tuple(m: int) -> ConstraintTuple:
    return ConstraintTuple((F(2),) * (m - 1) + (F(2) ** (1 - m),))


def witness_family(m: int, n: int) -> WitnessResult:
    if not ((m >= 4 and n >= 2) or (m >= 6 and n >= 1)):
        raise ValueError(f"(m, n) = ({m}, {n}) is outside the counterexample range")
    t = family_tuple(m)
    value = s_eval(n, t.coords)
    f_val = family_numerator_f(n, m)
    # the two-fraction form before expansion; must agree with f exactly
    two = F(2)
    direct = (m - 1) * (two**n - 1) * (two ** ((n + 1) * (1 - m)) + 1) + (two ** (n * (1 - m)) - 1) * (two ** (n + 1) + 1)
    if f_val != direct:
        raise AssertionError(f"expanded numerator f({n}, {m}) disagrees with its unexpanded form")
    g_val = family_numerator_g(m) if n == 1 else None
    s = (value > 0) - (value < 0)
    if s != (f_val > 0) - (f_val < 0):
        raise AssertionError(f"sign of f({n}, {m}) disagrees with S_{n}^{m}")
    if g_val is not None and s != (g_val > 0) - (g_val < 0):
        raise AssertionError(f"sign of g({m}) disagrees with S_1^{m}")
    return WitnessResult(m, n, t, value, value > 0, f_val, g_val)


# ---------------------------------------------------------------------------
# the two m = 3 witnesses
# ---------------------------------------------------------------------------

N4_TRIPLE = (F(31, 20), F(43, 100), F(2000, 1333))
N4_VALUE = F(354458009159794612949999, 481099388060786340236540521)
N5_TRIPLE = (F(1, 2), F(3, 2), F(4, 3))


def n5plus_integer_form(n: int) -> int:
    """Integer expression whose positivity is equivalent to S_n^3(1/2, 3/2, 4/3) > 0."""
    return (
        7 * 2 ** (3 * n + 1)
        - 5 * 2 ** (4 * n + 2)
        + 5 * 2 ** (2 * n) * 3**n
        + 5 * 2 ** (3 * n + 1) * 3**n
        + 5 * 3 ** (2 * n + 1)
        - 2 ** (n + 3) * 3 ** (2 * n + 1)
    )


def n5plus_cleared_numerator(n: int) -> Fraction:
    """Common-denominator numerator of S_n^3(1/2, 3/2, 4/3) times 2^(2n+2) 3^(n+1)."""
    xs = N5_TRIPLE
    num = sum(
        (xs[i] ** n - 1) * math.prod(xs[j] ** (n + 1) + 1 for j in range(3) if j != i)
        for i in range(3)
    )
    return num * 2 ** (2 * n + 2) * 3 ** (n + 1)


def fixed_witness(claim: str, n: int | None = None) -> DamascusValue:
    """``n4-triple`` (n = 4) or ``n5plus-triple`` (n >= 5); raises if the claim fails."""
    if claim == "n4-triple":
        if n not in (None, 4):
            raise ValueError("the n4 triple is stated for n = 4 only")
        dv = evaluate(4, N4_TRIPLE)
    elif claim == "n5plus-triple":
        if n is None or n < 5:
            raise ValueError("the (1/2, 3/2, 4/3) witness is claimed for n >= 5")
        dv = evaluate(n, N5_TRIPLE)
        form = n5plus_integer_form(n)
        if n5plus_cleared_numerator(n) != form:
            raise AssertionError(f"integer form disagrees with the cleared numerator at n = {n}")
        if form <= 0:
            raise AssertionError(f"integer form is not positive at n = {n}")
    else:
        raise ValueError(f"unknown witness {claim!r}")
    if not dv.positive:
        raise AssertionError(f"{claim} does not violate the inequality at n = {dv.n}")
    return dv


def n5plus_ratio(n: int) -> Fraction:
    """12/5 (3/4)^n + 2 (2/3)^n; below 1 for n >= 5 and decreasing in n."""
    return F(12, 5) * F(3, 4) ** n + 2 * F(2, 3) ** n


# ---------------------------------------------------------------------------
# m = 2
# ---------------------------------------------------------------------------


def _laurent_psi(n: int) -> dict[int, Fraction]:
    """psi(x) = 1/x + x^n - x^-(n+1) + x + x^-n - x^(n+1) - 2 as {exponent: coeff}."""
    terms: dict[int, Fraction] = {}
    for e, c in ((-1, 1), (n, 1), (-(n + 1), -1), (1, 1), (-n, 1), (n + 1, -1), (0, -2)):
        terms[e] = terms.get(e, F(0)) + c
    return terms


def psi_numer(n: int) -> Poly:
    """x^(n+2) * psi'(x) as an ordinary polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    deriv = {e - 1: c * e for e, c in _laurent_psi(n).items() if e != 0 and c != 0}
    shift = n + 2
    coeffs = [F(0)] * (max(deriv) + shift + 1)
    for e, c in deriv.items():
        coeffs[e + shift] += c
    return Poly(coeffs)


def psi_numer_closed_form(n: int) -> Poly:
    return (
        Poly.monomial(2 * n + 2, -(n + 1))
        + Poly.monomial(2 * n + 1, n)
        + Poly.monomial(n + 2, 1)
        - Poly.monomial(n, 1)
        - Poly.monomial(1, n)
        + (n + 1)
    )


def certify_m2(n: int) -> Certificate:
    cert = Certificate(f"m2-n{n}")
    p = psi_numer(n)
    cert.check("x^(n+2) psi'(x) matches its closed form", p == psi_numer_closed_form(n), poly=p)
    roots = count_roots(p, POSITIVE_HALFLINE)
    cert.check("exactly one distinct root in (0, inf)", roots == 1, count=roots)
    k, q = root_multiplicity(p, 1)
    cert.check("x = 1 is a root of odd multiplicity", k % 2 == 1, multiplicity=k, quotient=q)
    left, right = p(F(1, 2)), p(F(2))
    cert.check("psi' > 0 on (0, 1): positive at 1/2", left > 0, value=left)
    cert.check("psi' < 0 on (1, inf): negative at 2", right < 0, value=right)
    cert.summary = {"n": n, "positive_roots": roots, "root": F(1), "multiplicity": k}
    return cert


# ---------------------------------------------------------------------------
# GA-convexity: Delta_h = h' + x h''
# ---------------------------------------------------------------------------

H_M3N3 = RatFunc(Poly([-1, 0, 0, 1]), Poly([1, 0, 0, 0, 1]))  # (x^3 - 1)/(x^4 + 1)
H_M5N1 = RatFunc(Poly([-1, 1]), Poly([1, 0, 1]))  # (x - 1)/(x^2 + 1)

DELTA_NUMER = {
    "m3n3": Poly([9, 16, 0, 0, -22, -16, 0, 0, 1]),
    "m5n1": Poly([1, 4, -6, -4, 1]),
}
_DELTA_SHAPE = {  # (h, base of the denominator, power of x pulled out)
    "m3n3": (H_M3N3, Poly([1, 0, 0, 0, 1]), 2),
    "m5n1": (H_M5N1, Poly([1, 0, 1]), 0),
}


class DeltaMismatch(AssertionError):
    pass


def ga_delta(h: RatFunc) -> RatFunc:
    d1 = h.derivative()
    d2 = d1.derivative()
    return (d1 + RatFunc(X) * d2).reduced()


def ga_delta_numer(case: str, expected: Poly | None = None) -> Poly:
    """Numerator N of Delta_h = x^k N / base^3, derived from h itself."""
    h, base, xpow = _DELTA_SHAPE[case]
    delta = ga_delta(h)
    q, r = poly_divrem(delta.den, base**3)
    if not r.is_zero() or q.degree != 0:
        raise DeltaMismatch(f"denominator of Delta_h is not a multiple of ({base.pretty()})^3")
    num = delta.num.scale(1 / q.lc)
    k = 0
    while num and num[0] == 0:
        num = poly_divrem(num, X)[0]
        k += 1
    expected = DELTA_NUMER[case] if expected is None else expected
    if k != xpow or num != expected:
        raise DeltaMismatch(f"derived numerator x^{k}*({num.pretty()}) differs from {expected.pretty()}")
    return num


# ---------------------------------------------------------------------------
# logarithm bounds
# ---------------------------------------------------------------------------


def ln_bounds(x, terms: int = 40) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= ln(x) <= hi`` from the atanh series with a geometric tail bound."""
    x = as_rational(x)
    if x <= 0:
        raise ValueError("ln needs a positive argument")
    if x == 1:
        return F(0), F(0)
    y = x if x > 1 else 1 / x
    z = (y - 1) / (y + 1)
    z2 = z * z
    s, power = F(0), z
    for k in range(terms):
        s += power / (2 * k + 1)
        power *= z2
    lo = 2 * s
    hi = lo + 2 * power / ((2 * terms + 1) * (1 - z2))
    return (lo, hi) if x > 1 else (-hi, -lo)


# ---------------------------------------------------------------------------
# reference data for the m = 3, n = 3 proof
# ---------------------------------------------------------------------------

SEED_CHAIN = [
    Poly([3, 0, 0, -6, -2, 0, 0, 2, 3]),
    Poly([0, 0, -18, -8, 0, 0, 14, 24]),
    Poly([-3, 0, F(-3, 16), F(11, 3), 1, 0, F(7, 48)]),
    Poly([-288, F(-3456, 7), 0, F(2304, 7), F(4896, 7), F(1152, 7)]),
    Poly([F(3137, 768), F(77, 48), F(-1, 4), F(-157, 32), F(-2567, 768)]),
    Poly([F(-1789231104, 6589489), F(480079872, 6589489), F(-294801408, 6589489), F(2340864000, 6589489)]),
    Poly([F(-1653961739, 129032000000), F(-146490929959, 1032256000000), F(728975399603, 3096768000000)]),
    Poly([F(113118741504000000, 431253270223963), F(-1424761021440000000, 7331305593807371)]),
    Poly([F(-31931834754991359271, 142253483234400000000)]),
]
# signs at 0 and +inf, one row per chain entry
SEED_CHAIN_SIGNS = [(1, 1), (0, 1), (-1, 1), (-1, 1), (1, -1), (-1, 1), (-1, 1), (1, -1), (-1, -1)]
SEED_CHAIN_V = (5, 3)

H_MAX_LO = F(4203, 10000)
H_MAX_HI = F(1051, 2500)
H_ARGMAX_INTERVAL = (F(223, 125), F(357, 200))

# ell(x) with sqrt(x) -> t; terms are (coeff, power of x, carries sqrt(x))
ELL_TERMS = [(2, 4, False), (2, 3, True), (1, 3, False), (1, 2, True), (1, 2, False), (-1, 1, False), (-1, 0, True), (1, 0, False)]
ELL_T = Poly([1, -1, -1, 0, 1, 1, 1, 2, 2])


def ell_in_t() -> Poly:
    coeffs = [F(0)] * 9
    for c, p, root in ELL_TERMS:
        coeffs[2 * p + int(root)] += c
    return Poly(coeffs)



def _cleared(f_num: Poly, f_den: Poly, multiplier: Poly) -> Poly:
    """``multiplier * f_num / f_den`` as a polynomial; raises if not exact."""
    q, r = poly_divrem(multiplier * f_num, f_den)
    if not r.is_zero():
        raise AssertionError("expression does not clear to a polynomial")
    return q


def _reciprocal(h: RatFunc) -> RatFunc:
    """h(1/t) with numerator and denominator multiplied by t^d."""
    d = max(h.num.degree, h.den.degree)

    def rev(p: Poly) -> Poly:
        cs = list(p.coeffs) + [F(0)] * (d + 1 - len(p.coeffs))
        return Poly(reversed(cs))

    return RatFunc(rev(h.num), rev(h.den))


def h_max_bracket(p: Poly, h: RatFunc, lo: Fraction, hi: Fraction, target_lo: Fraction, target_hi: Fraction, max_iter: int = 200):
    """Bisect the root of ``p`` in (lo, hi) until the value bracket of ``h`` at the root
    fits in (target_lo, target_hi).

    ``h = (x^3 - 1)/(x^4 + 1)`` increases before the root and decreases after it, so
    on a bracket [a, b] the maximum is at least max(h(a), h(b)) and at most
    (b^3 - 1)/(a^4 + 1) when a > 1.
    """
    a, b = lo, hi
    sa = p(a) > 0
    for it in range(max_iter):
        lower = max(h(a), h(b))
        upper = h.num(b) / h.den(a)
        if target_lo < lower and upper < target_hi:
            return {"bracket": (a, b), "lower": lower, "upper": upper, "iterations": it}
        m = (a + b) / 2
        vm = p(m)
        if vm == 0:
            a = b = m
            lower = upper = h(m)
            if target_lo < lower < target_hi:
                return {"bracket": (a, b), "lower": lower, "upper": upper, "iterations": it}
            break
        if (vm > 0) == sa:
            a = m
        else:
            b = m
    raise AssertionError("bisection did not separate the maximum of h from the target bounds")


# ---------------------------------------------------------------------------
# lemma banks
# ---------------------------------------------------------------------------


def _lemma_bank_m3n3(delta_expected: Poly | None) -> Certificate:
    cert = Certificate("m3n3")
    h = H_M3N3
    f0 = SEED_CHAIN[0]
    mult = X * Poly([1, 0, 0, 0, 1]) ** 2 * -2  # -2x(x^4+1)^2

    # f = h - (3/2) ln x;  f' = h' - 3/(2x)
    fprime = h.derivative() - RatFunc(Poly.const(F(3, 2)), X)
    cleared = _cleared(fprime.num, fprime.den, mult)
    cert.check("-2x(x^4+1)^2 f'(x) = 3x^8+2x^7-2x^4-6x^3+3", cleared == f0, derived=cleared)

    chain = build_chain(f0)
    cert.check("Sturm chain has 9 entries equal to the tabulated f_0..f_8", list(chain.entries) == SEED_CHAIN,
               entries=list(chain.entries))
    signs = [(f.sign_at(F(0)), f.sign_at(POS_INF)) for f in chain.entries]
    cert.check("sign table at 0 and +inf", signs == SEED_CHAIN_SIGNS, signs=signs)
    v0, vinf = variations(chain, F(0)), variations(chain, POS_INF)
    cert.check("V(0) = 5, V(+inf) = 3, two positive roots", (v0, vinf) == SEED_CHAIN_V and count_roots(f0, POSITIVE_HALFLINE) == 2,
               V0=v0, Vinf=vinf)

    k1, _ = root_multiplicity(f0, 1)
    cert.check("x = 1 is a simple root of f_0", k1 == 1, multiplicity=k1)
    a_lo, a_hi = F(4, 5), F(9, 10)
    n_alpha = count_roots(f0, RatInterval(a_lo, a_hi))
    cert.check("alpha: one root in (4/5, 9/10) with a sign change", n_alpha == 1 and f0(a_lo) * f0(a_hi) < 0,
               count=n_alpha, f0_lo=f0(a_lo), f0_hi=f0(a_hi))
    iso = isolate_roots(f0, RatInterval(0, 2), F(1, 100))
    cert.check("isolating intervals on (0, 2): alpha inside (4/5, 9/10), the other around 1",
               len(iso) == 2 and iso[0].inside(RatInterval(a_lo, a_hi)) and iso[1].contains(F(1)), intervals=iso)
    cert.check("f_0 > 0 beyond its last root (f' < 0 on (1, inf))", f0.sign_at(POS_INF) == 1 and count_roots(f0, RatInterval(a_hi, POS_INF)) == 1)

    h45, h910, h25 = h(F(4, 5)), h(F(9, 10)), h(F(2, 5))
    _, ln54_hi = ln_bounds(F(5, 4))
    f45_upper = h45 + F(3, 2) * ln54_hi
    cert.check("f(4/5) < 0 using ln(5/4) <= upper bound", f45_upper < 0, h=h45, ln_upper=ln54_hi, f_upper=f45_upper)
    cert.check("h(4/5) = -305/881", h45 == F(-305, 881), value=h45)
    cert.check("h(9/10) = -2710/16561", h910 == F(-2710, 16561), value=h910)

    hp = h.derivative().reduced()
    quartic = Poly([-3, -4, 0, 0, 1])
    target = RatFunc(-(X * X * quartic), Poly([1, 0, 0, 0, 1]) ** 2)
    cert.check("h'(x) = -x^2(x^4-4x-3)/(x^4+1)^2", hp.num * target.den == target.num * hp.den)
    cert.run("x^4-4x-3 < 0 on [0, 1], so h increases on (0, 1]", lambda: certify_sign(quartic, RatInterval(0, 1), "negative"))
    n_crit = count_roots(quartic, POSITIVE_HALFLINE)
    lo, hi = H_ARGMAX_INTERVAL
    n_in = count_roots(quartic, RatInterval(lo, hi))
    cert.check("h' has one positive root, inside (223/125, 357/200)", n_crit == 1 and n_in == 1, positive_roots=n_crit)
    cert.run("max h lies in (4203/10000, 1051/2500)",
             lambda: h_max_bracket(quartic, h, lo, hi, H_MAX_LO, H_MAX_HI))

    case1 = -2 * F(305, 881) + H_MAX_HI
    cert.check("case 1: -2(305/881) + 1051/2500 < 0", case1 < 0, value=case1)
    case2a = h25 + 2 * H_MAX_HI
    cert.check("case 2, x <= 2/5: h(2/5) + 2(1051/2500) < 0", case2a < 0, h25=h25, value=case2a)
    case2b = h45 + h910 + H_MAX_HI
    cert.check("case 2, y <= 9/10: h(4/5) + h(9/10) + 1051/2500 < 0", case2b < 0, value=case2b)
    zmax = 1 / (F(2, 5) * F(9, 10))
    cert.check("x > 2/5, y > 9/10 forces z < 14/5", zmax <= F(14, 5), z_bound=zmax)

    expected = DELTA_NUMER["m3n3"] if delta_expected is None else delta_expected
    try:
        derived = ga_delta_numer("m3n3", expected)
        cert.check("Delta_h numerator derived from h matches y^8-16y^5-22y^4+16y+9", True, numerator=derived)
    except DeltaMismatch as exc:
        cert.steps.append(_failed("Delta_h numerator derived from h matches y^8-16y^5-22y^4+16y+9", str(exc)))
        cert.verdict = "failed"
    cert.run("Delta_h numerator has no root in (9/10, 14/5)",
             lambda: _require_zero_roots(expected, RatInterval(F(9, 10), F(14, 5))))
    cert.run("Delta_h < 0 on [9/10, 14/5]", lambda: certify_sign(expected, RatInterval(F(9, 10), F(14, 5)), "negative"))
    cert.run("Delta_h < 0 on [91/100, 279/100]", lambda: certify_sign(expected, RatInterval(F(91, 100), F(279, 100)), "negative"))

    recip = _reciprocal(h)
    cert.check("2h(1/t) = 2t(1-t^3)/(t^4+1)",
               recip.num * Poly([1, 0, 0, 0, 1]) == Poly([0, 1, 0, 0, -1]) * recip.den)
    ell = ell_in_t()
    cert.check("ell with sqrt(x) = t is 2t^8+2t^7+t^6+t^5+t^4-t^2-t+1", ell == ELL_T, ell=ell)
    t = X
    lhs = (t**6 - 1) * (t**4 + 1) + 2 * t * (1 - t**3) * (t**8 + 1)
    rhs = -((t - 1) ** 2) * (t * t + t + 1) * ell
    cert.check("(x^3-1)(x^2+1) + 2sqrt(x)(1-x sqrt(x))(x^4+1) = -(sqrt(x)-1)^2(x+sqrt(x)+1) ell(x)", lhs == rhs)
    t_lo, t_hi = F(63, 100), F(9, 10)
    cert.check("[63/100, 9/10] covers sqrt of [2/5, 4/5]", t_lo**2 <= F(2, 5) and t_hi**2 >= F(4, 5))
    cert.run("ell(t^2) > 0 on [63/100, 9/10]", lambda: certify_sign(ell, RatInterval(t_lo, t_hi), "positive"))
    cert.summary = {"V0": v0, "Vinf": vinf, "h_4_5": h45, "h_9_10": h910}
    return cert


def _lemma_bank_m5n1(delta_expected: Poly | None) -> Certificate:
    cert = Certificate("m5n1")
    h = H_M5N1
    p = Poly([-1, 2, 2, -2, -1])
    mult = X * Poly([1, 0, 1]) ** 2 * 2  # 2x(x^2+1)^2

    fprime = h.derivative() - RatFunc(Poly.const(F(1, 2)), X)
    cleared = _cleared(fprime.num, fprime.den, mult)
    cert.check("2x(x^2+1)^2 f'(x) = -x^4-2x^3+2x^2+2x-1", cleared == p, derived=cleared)
    npos = count_roots(p, POSITIVE_HALFLINE)
    cert.check("two distinct positive roots", npos == 2, count=npos)
    quad = Poly([-1, 2, 1])  # x^2 + 2x - 1, positive root sqrt(2) - 1
    cert.check("numerator = -(x-1)(x+1)(x^2+2x-1)", p == -(Poly([-1, 1]) * Poly([1, 1]) * quad))
    cert.check("x = 1 is a root", p(1) == 0)
    enc = RatInterval(F(41, 100), F(42, 100))
    cert.check("sqrt(2)-1 in (41/100, 42/100)", quad(enc.lo) < 0 < quad(enc.hi) and count_roots(p, enc) == 1)
    iso = isolate_roots(p, RatInterval(0, 2), F(1, 100))
    cert.check("isolating intervals on (0, 2) enclose sqrt(2)-1 and 1",
               len(iso) == 2 and iso[0].lo < enc.hi and enc.lo < iso[0].hi and iso[1].contains(F(1)), intervals=iso)

    x0 = F(117, 500)
    cert.check("117/500 < sqrt(2)-1", x0 < enc.lo)
    h0 = h(x0)
    ln_lo, _ = ln_bounds(x0, terms=60)
    cert.check("f(117/500) <= 0: h(117/500) <= (1/2) * lower bound of ln(117/500)", h0 <= ln_lo / 2,
               h=h0, half_ln_lower=ln_lo / 2, margin=ln_lo / 2 - h0)

    hp = h.derivative().reduced()
    hp_num = Poly([1, 2, -1])
    cert.check("h'(x) = (-x^2+2x+1)/(x^2+1)^2", hp.num * Poly([1, 0, 1]) ** 2 == hp_num * hp.den)
    cert.check("241/100 < 1 + sqrt(2)", F(141, 100) ** 2 < 2)
    cert.run("h' > 0 on [0, 241/100], so h increases there", lambda: certify_sign(hp_num, RatInterval(0, F(241, 100)), "positive"))

    q = F(259, 1250)
    cert.check("q = 259/1250 >= 1/sqrt(2) - 1/2", 2 * (q + F(1, 2)) ** 2 >= 1, q=q)
    bound_poly = Poly([q + 1, -1, q])  # q(x^2+1) - (x-1)
    cert.run("h(x) < q for every real x", lambda: certify_sign(bound_poly, REAL_LINE, "positive"))

    h3_20, h127 = h(F(3, 20)), h(F(127, 100))
    cases = {
        "case 1: 4h(117/500) + q < 0": 4 * h0 + q,
        "case 2: 3h(117/500) + 2q < 0": 3 * h0 + 2 * q,
        "case 3: 2h(117/500) + 3q < 0": 2 * h0 + 3 * q,
        "case 4, s <= 3/20: h(3/20) + 4q < 0": h3_20 + 4 * q,
        "case 4, w <= 127/100: h(117/500) + h(127/100) + 3q < 0": h0 + h127 + 3 * q,
    }
    for desc, val in cases.items():
        cert.check(desc, val < 0, value=val)
    w_hi = 1 / (F(3, 20) * F(127, 100) ** 3)
    cert.check("s > 3/20, w >= 127/100 force w, x, y, z < 20000000/6145149", w_hi == F(20000000, 6145149), bound=w_hi)

    expected = DELTA_NUMER["m5n1"] if delta_expected is None else delta_expected
    try:
        derived = ga_delta_numer("m5n1", expected)
        cert.check("Delta_h numerator derived from h matches w^4-4w^3-6w^2+4w+1", True, numerator=derived)
    except DeltaMismatch as exc:
        cert.steps.append(_failed("Delta_h numerator derived from h matches w^4-4w^3-6w^2+4w+1", str(exc)))
        cert.verdict = "failed"
    win = RatInterval(F(127, 100), w_hi)
    cert.run("Delta_h numerator has no root in (127/100, 20000000/6145149)", lambda: _require_zero_roots(expected, win))
    cert.run("Delta_h < 0 on [127/100, 20000000/6145149]", lambda: certify_sign(expected, win, "negative"))

    recip = _reciprocal(h)
    cert.check("h(1/r) = r(1-r)/(1+r^2)", recip.num * Poly([1, 0, 1]) == Poly([0, 1, -1]) * recip.den)
    r = X
    e_num = (r**4 - 1) * (1 + r**2) + 4 * r * (1 - r) * (r**8 + 1)
    r_lo, r_hi = F(62, 100), F(7, 10)
    cert.check("[62/100, 7/10] covers the fourth root of [3/20, 117/500]", r_lo**4 <= F(3, 20) and r_hi**4 >= x0)
    cert.run("h(r^4) + 4h(1/r) < 0 on [62/100, 7/10] (numerator over positive denominator)",
             lambda: certify_sign(e_num, RatInterval(r_lo, r_hi), "negative"), numerator=e_num)
    cert.summary = {"positive_roots": npos, "q": q, "corollary": "S_1^4 <= 0 follows by setting one coordinate to 1"}
    return cert


def _require_zero_roots(p: Poly, interval: RatInterval) -> int:
    k = count_roots(p, interval)
    if k:
        raise AssertionError(f"{k} root(s) in {interval}")
    return k


def _failed(description: str, error: str):
    from .certificate import Step

    return Step(description, False, {}, error=error)


def lemma_bank(case: str, delta_numer: Poly | None = None) -> Certificate:
    """Certify every finite arithmetic and Sturm step of the m3n3 or m5n1 proof.

    ``delta_numer`` replaces the stored GA-convexity numerator (used for negative
    controls).
    """
    if case == "m3n3":
        return _lemma_bank_m3n3(delta_numer)
    if case == "m5n1":
        return _lemma_bank_m5n1(delta_numer)
    raise ValueError(f"unknown case {case!r}")


# ---------------------------------------------------------------------------
# local maximum at (1, 1, 1)
# ---------------------------------------------------------------------------


def partials(n: int, x, y) -> tuple[Fraction, Fraction]:
    """Closed-form partial derivatives of S_n^3(x, y, 1/(xy)) in x and y."""
    x, y = as_rational(x), as_rational(y)

    def one(a: Fraction, b: Fraction) -> Fraction:
        ab = a * b
        return (
            n / (a * (a ** (-n) + a))
            - (n + 1) * (a**n - 1) * a**n / (a ** (n + 1) + 1) ** 2
            - n * b / (ab ** (n + 1) + 1)
            - (n + 1) * b * (ab**n - 1) / (ab ** (n + 1) + 1) ** 2
        )

    return one(x, y), one(y, x)


def gradient_at_center(n: int) -> tuple[Fraction, Fraction]:
    return partials(n, 1, 1)


def on_surface(n: int, x: Fraction, y: Fraction) -> Fraction:
    return summand(n, x) + summand(n, y) + summand(n, 1 / (x * y))


def hessian_at_center(n: int, step) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Exact central second differences of S_n^3(x, y, 1/(xy)) at (1, 1)."""
    hs = as_rational(step)
    if not 0 < hs < F(1, 10):
        raise ValueError("step must lie in (0, 1/10)")
    one = F(1)
    g = lambda a, b: on_surface(n, a, b)  # noqa: E731
    c = g(one, one)
    hxx = (g(one + hs, one) - 2 * c + g(one - hs, one)) / hs**2
    hyy = (g(one, one + hs) - 2 * c + g(one, one - hs)) / hs**2
    hxy = (g(one + hs, one + hs) - g(one + hs, one - hs) - g(one - hs, one + hs) + g(one - hs, one - hs)) / (4 * hs**2)
    return ((hxx, hxy), (hxy, hyy))


def published_hessian(n: int) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    return ((F(-3 * n, 4), F(-n, 2)), (F(-n, 2), F(-3 * n, 4)))


def published_minors(n: int) -> tuple[Fraction, Fraction]:
    """Leading principal minors of the published matrix, with d2 rechecked against 5n^2/16."""
    (a, b), _ = published_hessian(n)
    d1, d2 = a, a * a - b * b
    if d2 != F(5 * n * n, 16):
        raise AssertionError("second minor disagrees with 5n^2/16")
    return d1, d2


@lru_cache(maxsize=None)
def _summand_derivatives_at_one(n: int) -> tuple[Fraction, Fraction]:
    f = RatFunc(Poly.monomial(n) - 1, Poly.monomial(n + 1) + 1)
    d1 = f.derivative()
    return d1(1), d1.derivative()(1)


def exact_hessian_at_center(n: int) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Hessian of S_n^3(x, y, 1/(xy)) at (1, 1) by the chain rule on exact derivatives.

    With z = 1/(xy): z_x = z_y = -1, z_xx = 2, z_xy = 1 at the centre.
    """
    f1, f2 = _summand_derivatives_at_one(n)
    hxx = 2 * f2 + 2 * f1
    hxy = f2 + f1
    return ((hxx, hxy), (hxy, hxx))
