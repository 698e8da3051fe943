"""Exact rational scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Points on the extended line are either a
``Fraction`` or one of the sentinels :data:`NEG_INF` / :data:`POS_INF`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
NEG_INF = -math.inf
POS_INF = math.inf
ExtRational = Union[Fraction, float]

RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact values")
    return Fraction(value)


def is_finite(x: ExtRational) -> bool:
    return not (isinstance(x, float) and math.isinf(x))


def sign(x) -> int:
    return (x > 0) - (x < 0)


def fraction_str(x: Fraction) -> str:
    """``p/q`` or ``p`` for integers; the canonical text form used in golden files."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def ext_str(x: ExtRational) -> str:
    if is_finite(x):
        return fraction_str(x)
    return "inf" if x > 0 else "-inf"


def parse_ext(text: str) -> ExtRational:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return POS_INF
    if t in ("-inf", "-infinity"):
        return NEG_INF
    return Fraction(t)


class Poly:
    """Immutable dense polynomial over Q; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c: RationalLike) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> "Poly":
        p = cls.const(1)
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c: RationalLike) -> "Poly":
        c = as_rational(c)
        return Poly(c * a for a in self.coeffs)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        return poly_divrem(self, self._coerce(other))

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x: RationalLike) -> Fraction:
        """Horner evaluation at a finite rational point."""
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_naive(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        return sum((c * x**i for i, c in enumerate(self.coeffs)), Fraction(0))

    def sign_at(self, x: ExtRational) -> int:
        if not self.coeffs:
            return 0
        if is_finite(x):
            return sign(self(x))
        s = sign(self.lc)
        if x < 0 and self.degree % 2 == 1:
            s = -s
        return s

    # -- misc ----------------------------------------------------------------

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "Poly":
        return self.scale(1 / self.lc) if self.coeffs else self

    def content(self) -> Fraction:
        """Positive rational c with self/c a primitive integer polynomial."""
        if not self.coeffs:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Primitive integer polynomial with the same sign as self."""
        if not self.coeffs:
            return self
        return self.scale(1 / self.content())

    def to_text(self) -> str:
        return " ".join(fraction_str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def from_text(cls, text: str) -> "Poly":
        return cls(Fraction(tok) for tok in text.split())

    def __repr__(self) -> str:
        return f"Poly({self.pretty()})"

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = fraction_str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"({fraction_str(mag)})*{mono}" if mag.denominator != 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


X = Poly([0, 1])


def poly_arith(a: Poly, b: Poly | RationalLike, kind: str) -> Poly:
    """Dispatch for ``add``, ``sub``, ``mul`` and ``scale`` (``b`` is the scalar)."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "scale":
        return a.scale(b)
    raise ValueError(f"unknown kind {kind!r}")


def poly_eval(p: Poly, x: ExtRational) -> Fraction | int:
    """Exact value at a finite point; the sign (-1, 0, 1) at +-infinity."""
    if is_finite(x):
        return p(x)
    return p.sign_at(x)


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    if a.degree < db:
        return Poly(), a
    quot = [Fraction(0)] * (a.degree - db + 1)
    inv = 1 / b.lc
    for k in range(a.degree - db, -1, -1):
        c = rem[k + db] * inv
        quot[k] = c
        if c:
            for j, bj in enumerate(b.coeffs):
                rem[k + j] -= c * bj
    return Poly(quot), Poly(rem[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, poly_divrem(a, b)[1]
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    g = poly_gcd(p, p.derivative())
    return poly_divrem(p, g)[0]


def root_multiplicity(p: Poly, r: RationalLike) -> tuple[int, Poly]:
    """Return ``(k, q)`` with ``p == (x - r)**k * q`` and ``q(r) != 0``."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite multiplicity")
    r = as_rational(r)
    lin = Poly([-r, 1])
    k, q = 0, p
    while q(r) == 0:
        q, rem = poly_divrem(q, lin)
        assert rem.is_zero()
        k += 1
    return k, q


def cauchy_bound(p: Poly) -> Fraction:
    """All real roots of ``p`` lie strictly inside ``(-B, B)``."""
    if p.degree < 1:
        return Fraction(1)
    return 1 + max(abs(c / p.lc) for c in p.coeffs[:-1])


class RatFunc:
    """A quotient of polynomials, kept unreduced except on request."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        den = Poly.const(1) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def reduced(self) -> "RatFunc":
        g = poly_gcd(self.num, self.den)
        if g.degree <= 0:
            return self
        return RatFunc(self.num // g, self.den // g)

    def __call__(self, x: RationalLike) -> Fraction:
        return self.num(x) / self.den(x)
