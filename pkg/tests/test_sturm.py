from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import GOLDEN, P
from ineqforge.exactpoly import NEG_INF, POS_INF, Poly, X, squarefree_part
from ineqforge.sturm import (
    POSITIVE_HALFLINE,
    REAL_LINE,
    CertificateFailure,
    EndpointRootError,
    RatInterval,
    build_chain,
    build_chain_primitive,
    certify_sign,
    count_roots,
    isolate_roots,
    variations,
)

SEED = P(3, 2, 0, 0, -2, -6, 0, 0, 3)
M5 = P(-1, -2, 2, 2, -1)
DELTA_Y = P(1, 0, 0, -16, -22, 0, 0, 16, 9)
DELTA_W = P(1, -4, -6, 4, 1)
ELL = P(2, 2, 1, 1, 1, 0, -1, -1, 1)


def golden_chain():
    return [Poly.from_text(t) for t in (GOLDEN / "seed_chain.txt").read_text().splitlines() if t.strip()]


def test_table_chain_bit_exact():
    chain = build_chain(SEED)
    assert list(chain.entries) == golden_chain()
    assert chain[5] == P(F(2340864000, 6589489), F(-294801408, 6589489), F(480079872, 6589489), F(-1789231104, 6589489))


def test_small_chains():
    assert list(build_chain(P(1, 0, -1)).entries) == [P(1, 0, -1), P(2, 0), Poly.const(1)]
    chain = build_chain(M5)
    assert chain[-1].degree == 0
    assert M5 == -(X - 1) * (X + 1) * P(1, 2, -1)
    with pytest.raises(ValueError):
        build_chain(Poly.const(3))


def test_variations():
    chain = build_chain(SEED)
    assert variations(chain, 0) == 5
    assert variations(chain, POS_INF) == 3
    assert variations(build_chain(P(1, 0, -1)), 0) == 1


def test_count_roots_examples():
    assert count_roots(SEED, POSITIVE_HALFLINE) == 2
    assert count_roots(DELTA_Y, RatInterval(F(9, 10), F(14, 5))) == 0
    assert count_roots(DELTA_W, RatInterval(F(127, 100), F(20000000, 6145149))) == 0
    assert count_roots((X - 1) ** 3 * (X + 2), REAL_LINE) == 2
    with pytest.raises(EndpointRootError):
        count_roots(X - 1, RatInterval(1, 2))


def test_isolate_seed():
    ivs = isolate_roots(SEED, RatInterval(0, 2), F(1, 100))
    assert len(ivs) == 2
    assert ivs[0].inside(RatInterval(F(4, 5), F(9, 10)))
    assert ivs[1].lo < 1 < ivs[1].hi
    assert all(iv.width <= F(1, 100) for iv in ivs)


def test_isolate_m5_numerator():
    ivs = isolate_roots(M5, RatInterval(0, 2), F(1, 100))
    assert len(ivs) == 2
    lo, hi = ivs[0].lo, ivs[0].hi
    # sqrt(2) - 1 inside (lo, hi)  <=>  (lo + 1)^2 < 2 < (hi + 1)^2
    assert (lo + 1) ** 2 < 2 < (hi + 1) ** 2
    assert ivs[1].lo < 1 < ivs[1].hi


def test_isolate_hprime_root():
    p = P(1, 0, 0, -4, -3)
    assert count_roots(p, RatInterval(F(223, 125), F(357, 200))) == 1
    ivs = isolate_roots(p, POSITIVE_HALFLINE, F(1, 50))
    assert len(ivs) == 1 and ivs[0].width <= F(1, 50)
    fine = isolate_roots(p, POSITIVE_HALFLINE, F(1, 4096))
    assert fine[0].inside(RatInterval(F(223, 125), F(357, 200)))


def test_isolate_midpoint_root():
    ivs = isolate_roots(X * (X - 1) * (X + 1), RatInterval(-2, 2), F(1, 10))
    assert len(ivs) == 3
    assert [iv.contains(r) for iv, r in zip(ivs, (-1, 0, 1))] == [True] * 3


def test_certify_sign_examples():
    c = certify_sign(ELL.compose(X), RatInterval(F(63, 100), F(9, 10)), "positive")
    assert c.roots_inside == 0
    certify_sign(DELTA_Y, RatInterval(F(91, 100), F(279, 100)), "negative")
    with pytest.raises(CertificateFailure):
        certify_sign(P(1, 0, 1), RatInterval(0, 1), "negative")


def test_interval_validation():
    with pytest.raises(ValueError):
        RatInterval(1, 1)
    assert RatInterval(NEG_INF, 0).sample_point() == -1


# --- oracle: critical-point splitting, independent of Sturm sequences -------

RES = F(1, 2**20)


def _bisect(p, a, b):
    sa = p(a) > 0
    while b - a > RES:
        m = (a + b) / 2
        v = p(m)
        if v == 0:
            return m
        if (v > 0) == sa:
            a = m
        else:
            b = m
    return (a + b) / 2


def oracle_roots(p: Poly, lo, hi) -> list:
    """Approximate real roots of p in [lo, hi] via monotone segments between critical points."""
    if p.degree < 1:
        return []
    if p.degree == 1:
        r = -p[0] / p[1]
        return [r] if lo <= r <= hi else []
    crit = [c for c in oracle_roots(p.derivative(), lo, hi) if lo < c < hi]
    pts = [lo] + sorted(crit) + [hi]
    roots = []
    for a, b in zip(pts, pts[1:]):
        va, vb = p(a), p(b)
        if va == 0:
            roots.append(a)
        elif vb != 0 and (va > 0) != (vb > 0):
            roots.append(_bisect(p, a, b))
    if p(hi) == 0:
        roots.append(hi)
    out = []
    for r in sorted(roots):
        if not out or r - out[-1] > 4 * RES:
            out.append(r)
    return out


small_ints = st.integers(-6, 6)
random_polys = st.lists(small_ints, min_size=2, max_size=7).map(Poly).filter(lambda p: p.degree >= 1)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(random_polys)
def test_sturm_agrees_with_bisection_oracle(p):
    assume(squarefree_part(p).degree == p.degree)
    b = 8  # Cauchy bound for |coeffs| <= 6 and |lc| >= 1 is at most 7
    assert count_roots(p, RatInterval(-b, b)) == len(oracle_roots(p, F(-b), F(b)))
    assert count_roots(p, REAL_LINE) == count_roots(p, RatInterval(-b, b))


@settings(max_examples=100, deadline=None)
@given(random_polys)
def test_chain_invariants(p):
    chain = build_chain(p)
    assert chain[0] == p and chain[1] == p.derivative()
    for k in range(2, len(chain)):
        # f_{k-2} = q f_{k-1} - f_k  with deg f_k < deg f_{k-1}
        q, r = divmod(chain[k - 2], chain[k - 1])
        assert r == -chain[k]
        assert chain[k].degree < chain[k - 1].degree
    assert divmod(chain[-2], chain[-1])[1].is_zero()


@settings(max_examples=100, deadline=None)
@given(random_polys, st.integers(-5, 5), st.integers(1, 6))
def test_primitive_chain_counts_agree(p, a, w):
    iv = RatInterval(F(a, 2), F(a, 2) + w)
    assume(p(iv.lo) != 0 and p(iv.hi) != 0)
    assert count_roots(p, iv) == count_roots(p, iv, primitive=True)
    q = squarefree_part(p)
    if q.degree >= 1:
        raw, prim = build_chain(q), build_chain_primitive(q)
        assert [variations(raw, t) for t in (iv.lo, iv.hi)] == [variations(prim, t) for t in (iv.lo, iv.hi)]


@settings(max_examples=100, deadline=None)
@given(random_polys)
def test_isolation_is_sound(p):
    width = F(1, 64)
    ivs = isolate_roots(p, REAL_LINE, width)
    assert len(ivs) == count_roots(p, REAL_LINE)
    q = squarefree_part(p)
    for a, b in zip(ivs, ivs[1:]):
        assert a.hi <= b.lo
    for iv in ivs:
        assert iv.width <= width
        assert count_roots(q, iv) == 1
        assert q(iv.lo) * q(iv.hi) < 0


@settings(max_examples=60, deadline=None)
@given(random_polys, st.integers(-4, 4), st.integers(1, 4))
def test_certify_sign_is_sound(p, a, w):
    iv = RatInterval(a, a + w)
    for claim, want in (("positive", 1), ("negative", -1)):
        try:
            certify_sign(p, iv, claim)
        except (CertificateFailure, ValueError):
            continue
        pts = [iv.lo + k * F(w, 999) for k in range(1000)]
        assert all((p(t) > 0) - (p(t) < 0) == want for t in pts)
