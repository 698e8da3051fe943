"""Sturm chains, root counting and constant-sign certificates over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .exactpoly import (
    NEG_INF,
    POS_INF,
    ExtRational,
    Poly,
    as_rational,
    cauchy_bound,
    ext_str,
    fraction_str,
    is_finite,
    poly_divrem,
    sign,
    squarefree_part,
)

Sign = Literal["positive", "negative"]


class EndpointRootError(ValueError):
    """A finite interval endpoint is a root of the polynomial."""


class CertificateFailure(Exception):
    """A claimed sign/root property does not hold (or cannot be shown)."""


@dataclass(frozen=True)
class RatInterval:
    lo: ExtRational
    hi: ExtRational

    def __post_init__(self):
        lo = self.lo if not is_finite(self.lo) else as_rational(self.lo)
        hi = self.hi if not is_finite(self.hi) else as_rational(self.hi)
        if not lo < hi:
            raise ValueError(f"empty interval ({lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self):
        return self.hi - self.lo

    def is_finite(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    def contains(self, x: Fraction) -> bool:
        return self.lo < x < self.hi

    def inside(self, other: "RatInterval") -> bool:
        """True when self is a subset of ``other``."""
        return other.lo <= self.lo and self.hi <= other.hi

    def sample_point(self) -> Fraction:
        if self.is_finite():
            return (self.lo + self.hi) / 2
        if is_finite(self.lo):
            return self.lo + 1
        if is_finite(self.hi):
            return self.hi - 1
        return Fraction(0)

    def to_json(self) -> list[str]:
        return [ext_str(self.lo), ext_str(self.hi)]

    def __str__(self) -> str:
        return f"({ext_str(self.lo)}, {ext_str(self.hi)})"


REAL_LINE = RatInterval(NEG_INF, POS_INF)
POSITIVE_HALFLINE = RatInterval(0, POS_INF)


@dataclass(frozen=True)
class SturmChain:
    entries: tuple[Poly, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> Poly:
        return self.entries[k]

    def signs(self, point: ExtRational) -> list[int]:
        return [f.sign_at(point) for f in self.entries]


def build_chain(p: Poly) -> SturmChain:
    """p, p', then negated remainders -- no content normalization."""
    if p.degree < 1:
        raise ValueError("Sturm chain needs a polynomial of degree >= 1")
    chain = [p, p.derivative()]
    while True:
        r = poly_divrem(chain[-2], chain[-1])[1]
        if r.is_zero():
            break
        chain.append(-r)
    return SturmChain(tuple(chain))


def build_chain_primitive(p: Poly) -> SturmChain:
    """Same sign pattern as :func:`build_chain`; entries kept as primitive integer polys."""
    if p.degree < 1:
        raise ValueError("Sturm chain needs a polynomial of degree >= 1")
    chain = [p.primitive(), p.derivative().primitive()]
    while True:
        r = poly_divrem(chain[-2], chain[-1])[1]
        if r.is_zero():
            break
        chain.append((-r).primitive())
    return SturmChain(tuple(chain))


def variations(chain: SturmChain, point: ExtRational) -> int:
    nonzero = [s for s in chain.signs(point) if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def _check_endpoints(p: Poly, interval: RatInterval) -> None:
    for end in (interval.lo, interval.hi):
        if is_finite(end) and p(end) == 0:
            raise EndpointRootError(f"{fraction_str(end)} is a root of the polynomial")


def count_roots(p: Poly, interval: RatInterval, *, primitive: bool = False) -> int:
    """Number of distinct real roots of ``p`` in the open interval."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    _check_endpoints(p, interval)
    q = squarefree_part(p)
    if q.degree < 1:
        return 0
    chain = build_chain_primitive(q) if primitive else build_chain(q)
    return variations(chain, interval.lo) - variations(chain, interval.hi)


def _finite_bounds(q: Poly, interval: RatInterval) -> tuple[Fraction, Fraction]:
    bound = cauchy_bound(q)
    lo = interval.lo if is_finite(interval.lo) else -bound
    hi = interval.hi if is_finite(interval.hi) else bound
    return lo, hi


def isolate_roots(p: Poly, interval: RatInterval, max_width) -> list[RatInterval]:
    """Disjoint open intervals of width <= max_width, one per distinct root.

    Bisection always splits at the exact midpoint.  A midpoint that is itself a
    root gets a symmetric enclosure ``(m - e, m + e)`` with ``e`` halved until it
    isolates that root alone.
    """
    max_width = as_rational(max_width)
    if max_width <= 0:
        raise ValueError("max_width must be positive")
    _check_endpoints(p, interval)
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    chain = build_chain_primitive(q)

    def count(a, b):
        return variations(chain, a) - variations(chain, b)

    lo, hi = _finite_bounds(q, interval)
    out: list[RatInterval] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        k = count(a, b)
        if k == 0:
            continue
        if k == 1 and b - a <= max_width:
            out.append(RatInterval(a, b))
            continue
        m = (a + b) / 2
        if q(m) != 0:
            stack.append((m, b))
            stack.append((a, m))
            continue
        e = min(max_width, b - a) / 4
        while q(m - e) == 0 or q(m + e) == 0 or count(m - e, m + e) != 1:
            e /= 2
        out.append(RatInterval(m - e, m + e))
        stack.append((m + e, b))
        stack.append((a, m - e))
    out.sort(key=lambda iv: iv.lo)
    return out


@dataclass(frozen=True)
class SignCertificate:
    poly: Poly
    interval: RatInterval
    sign: Sign
    roots_inside: int
    sample_point: Fraction
    sample_value: Fraction
    endpoint_values: tuple

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_text(),
            "interval": self.interval.to_json(),
            "sign": self.sign,
            "roots_inside": self.roots_inside,
            "sample_point": fraction_str(self.sample_point),
            "sample_value": fraction_str(self.sample_value),
            "endpoint_values": [None if v is None else fraction_str(v) for v in self.endpoint_values],
        }


def certify_sign(p: Poly, interval: RatInterval, claimed: Sign) -> SignCertificate:
    """Certify that ``p`` has the claimed strict sign on the closure of ``interval``
    (restricted to its finite part).  Raises :class:`CertificateFailure` otherwise."""
    want = {"positive": 1, "negative": -1}[claimed]
    if p.is_zero():
        raise CertificateFailure("zero polynomial has no strict sign")
    endpoint_values = []
    for end in (interval.lo, interval.hi):
        if is_finite(end):
            v = p(end)
            if sign(v) != want:
                raise CertificateFailure(f"value {fraction_str(v)} at endpoint {fraction_str(end)} is not {claimed}")
            endpoint_values.append(v)
        else:
            endpoint_values.append(None)
    roots = count_roots(p, interval)
    if roots:
        raise CertificateFailure(f"{roots} root(s) inside {interval}")
    x0 = interval.sample_point()
    v0 = p(x0)
    if sign(v0) != want:
        raise CertificateFailure(f"sample value {fraction_str(v0)} at {fraction_str(x0)} is not {claimed}")
    return SignCertificate(p, interval, claimed, roots, x0, v0, tuple(endpoint_values))
