"""Symmetric trivariate polynomials, reduction to u, v, w, and the ABC restriction.

``u = x + y + z``, ``v = xy + xz + yz``, ``w = xyz``.  Under ``u = 1`` the ABC
restriction ``x = y = t, z = 1 - 2t`` gives ``v = 2t - 3t^2`` and
``w = t^2 - 2t^3``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .certificate import Certificate
from .exactpoly import Poly, as_rational, fraction_str, root_multiplicity
from .sturm import REAL_LINE, CertificateFailure, certify_sign, count_roots

F = Fraction
Monomial = tuple[int, int, int]


class MPoly:
    """Sparse polynomial in three variables with exact coefficients."""

    names = ("x", "y", "z")
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                clean[tuple(mono)] = c
        self.terms: dict[Monomial, Fraction] = clean

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, i: int) -> "MPoly":
        mono = [0, 0, 0]
        mono[i] = 1
        return cls({tuple(mono): 1})

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if type(other) is not type(self):
                raise TypeError("mixing polynomial rings")
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for (a1, b1, c1), k1 in self.terms.items():
            for (a2, b2, c2), k2 in other.terms.items():
                m = (a1 + a2, b1 + b2, c1 + c2)
                out[m] = out.get(m, 0) + k1 * k2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = type(self).const(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c):
        c = as_rational(c)
        return type(self)({m: c * k for m, k in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return type(self) is type(other) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == type(self).const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __call__(self, a, b, c) -> Fraction:
        a, b, c = as_rational(a), as_rational(b), as_rational(c)
        return sum((k * a**i * b**j * c**l for (i, j, l), k in self.terms.items()), F(0))

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), F(0))

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading(self) -> tuple[Monomial, Fraction]:
        """Leading term in graded lexicographic order with the first variable largest."""
        mono = max(self.terms, key=lambda m: (sum(m), m))
        return mono, self.terms[mono]

    def permuted(self, perm: Sequence[int]) -> "MPoly":
        return type(self)({tuple(m[perm[i]] for i in range(3)): c for m, c in self.terms.items()})

    def to_json(self) -> list:
        return [[list(m), fraction_str(c)] for m, c in sorted(self.terms.items(), reverse=True)]

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True):
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(self.names, m) if e)
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{fraction_str(mag)}*{mono}" if mono else fraction_str(mag))
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.pretty()})"


class TriPoly(MPoly):
    names = ("x", "y", "z")
    __slots__ = ()

    def is_symmetric(self) -> bool:
        return all(self.permuted(p) == self for p in itertools.permutations(range(3)))


class UVWPoly(MPoly):
    names = ("u", "v", "w")
    __slots__ = ()

    def expand(self) -> TriPoly:
        """Re-expand in x, y, z."""
        out = TriPoly()
        for (i, j, k), c in self.terms.items():
            out = out + _uvw_power(i, j, k).scale(c)
        return out

    def w_coefficients(self) -> dict[int, Poly]:
        """Coefficients of w^k as polynomials in v (requires u-degree 0)."""
        if self.degree_in(0) > 0:
            raise ValueError("polynomial still depends on u")
        out: dict[int, list] = {}
        for (_, j, k), c in self.terms.items():
            cs = out.setdefault(k, [])
            cs.extend([F(0)] * (j + 1 - len(cs)))
            cs[j] += c
        return {k: Poly(cs) for k, cs in out.items()}


x, y, z = (TriPoly.var(i) for i in range(3))
u_, v_, w_ = (UVWPoly.var(i) for i in range(3))
ELEMENTARY = (x + y + z, x * y + x * z + y * z, x * y * z)


@lru_cache(maxsize=None)
def _uvw_power(i: int, j: int, k: int) -> TriPoly:
    e1, e2, e3 = ELEMENTARY
    return e1**i * e2**j * e3**k


# ---------------------------------------------------------------------------
# structured expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    """A univariate polynomial in one of x, y, z."""

    var: int
    poly: Poly

    def as_tripoly(self) -> TriPoly:
        out = TriPoly()
        for e, c in enumerate(self.poly.coeffs):
            mono = [0, 0, 0]
            mono[self.var] = e
            out = out + TriPoly({tuple(mono): c})
        return out

    def __call__(self, pt) -> Fraction:
        return self.poly(pt[self.var])


Product = tuple[Factor, ...]
SumOfProducts = tuple[tuple[Fraction, Product], ...]


def product(*factors: Factor, coeff=1) -> tuple[Fraction, Product]:
    return (F(coeff), tuple(factors))


def expand(expr: Iterable[tuple[object, Sequence[Factor]]]) -> TriPoly:
    """Expand a sum of ``(coefficient, [factors])`` products."""
    out = TriPoly()
    for c, factors in expr:
        term = TriPoly.const(c)
        for f in factors:
            term = term * f.as_tripoly()
        out = out + term
    return out


def eval_expr(expr: SumOfProducts, pt) -> Fraction:
    total = F(0)
    for c, factors in expr:
        term = F(c)
        for f in factors:
            term *= f(pt)
        total += term
    return total


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------


class NotSymmetric(ValueError):
    pass


def reduce_symmetric(p: TriPoly) -> UVWPoly:
    """Rewrite a symmetric polynomial in u, v, w by leading-monomial elimination."""
    if not p.is_symmetric():
        raise NotSymmetric("polynomial is not symmetric in x, y, z")
    rest = p
    out: dict[Monomial, Fraction] = {}
    while rest:
        (a, b, c), k = rest.leading()
        mono = (a - b, b - c, c)
        out[mono] = out.get(mono, 0) + k
        rest = rest - _uvw_power(*mono).scale(k)
    return UVWPoly(out)


def substitute_u(p: UVWPoly, u0) -> UVWPoly:
    u0 = as_rational(u0)
    out: dict[Monomial, Fraction] = {}
    for (i, j, k), c in p.terms.items():
        out[(0, j, k)] = out.get((0, j, k), 0) + c * u0**i
    return UVWPoly(out)


class ABCKind(enum.Enum):
    LINEAR_W = "LinearW"
    CONCAVE_QUAD_W = "ConcaveQuadW"
    NOT_APPLICABLE = "NotApplicable"


def abc_applicable(p: UVWPoly) -> ABCKind:
    wc = p.w_coefficients()
    dw = max(wc, default=0)
    if dw <= 1:
        return ABCKind.LINEAR_W
    if dw == 2:
        lead = wc[2]
        if lead.degree == 0 and lead.lc < 0:
            return ABCKind.CONCAVE_QUAD_W
    return ABCKind.NOT_APPLICABLE


V_OF_T = Poly([0, 2, -3])  # t^2 + 2t(1 - 2t)
W_OF_T = Poly([0, 0, 1, -2])  # t^2 (1 - 2t)


def abc_reduce(p: UVWPoly) -> Poly:
    """Restrict to x = y = t, z = 1 - 2t."""
    if abc_applicable(p) is ABCKind.NOT_APPLICABLE:
        raise ValueError("ABC restriction is not justified for this polynomial")
    out = Poly()
    for (_, j, k), c in p.terms.items():
        out = out + (V_OF_T**j * W_OF_T**k).scale(c)
    return out


# ---------------------------------------------------------------------------
# global maximum certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaxCertificate:
    poly: Poly
    root: Fraction
    multiplicity: int
    quotient: Poly
    quotient_real_roots: int

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_text(),
            "root": fraction_str(self.root),
            "multiplicity": self.multiplicity,
            "quotient": self.quotient.to_text(),
            "quotient_real_roots": self.quotient_real_roots,
        }


def certify_global_max_zero(pt: Poly, t0) -> MaxCertificate:
    """Certify ``pt <= 0`` on the real line with equality only at ``t0``."""
    t0 = as_rational(t0)
    if pt.is_zero():
        raise CertificateFailure("zero polynomial")
    if pt(t0) != 0:
        raise CertificateFailure(f"value at {fraction_str(t0)} is {fraction_str(pt(t0))}, not 0")
    k, q = root_multiplicity(pt, t0)
    if k % 2:
        raise CertificateFailure(f"root {fraction_str(t0)} has odd multiplicity {k}")
    if q.degree % 2:
        raise CertificateFailure("quotient has odd degree")
    if q.lc >= 0:
        raise CertificateFailure("quotient has a nonnegative leading coefficient")
    roots = count_roots(q, REAL_LINE) if q.degree > 0 else 0
    if roots:
        raise CertificateFailure(f"quotient has {roots} real root(s)")
    return MaxCertificate(pt, t0, k, q, roots)


# ---------------------------------------------------------------------------
# the twelve modified inequalities
# ---------------------------------------------------------------------------


def _one_minus(i: int) -> Factor:
    return Factor(i, Poly([1, -1]))


def _sq1(i: int) -> Factor:
    return Factor(i, Poly([1, 0, 1]))  # t^2 + 1


def _cyc(i: int) -> Factor:
    return Factor(i, Poly([1, -1, 1]))  # t^2 - t + 1 = (t^3 + 1)/(t + 1)


PAIRS = ((0, 1), (0, 2), (1, 2))
SINGLES = ((0, (1, 2)), (1, (0, 2)), (2, (0, 1)))


def _all3(make: Callable[[int], Factor]) -> SumOfProducts:
    return (product(make(0), make(1), make(2)),)


def _pair_sum(make: Callable[[int], Factor]) -> SumOfProducts:
    return tuple(product(make(a), make(b)) for a, b in PAIRS)


@dataclass(frozen=True)
class Term:
    numerator: SumOfProducts
    denominator: tuple[SumOfProducts, ...]  # product of blocks


@dataclass(frozen=True)
class InequalitySpec:
    id: int
    terms: tuple[Term, ...]
    rhs: Fraction
    expected_p: UVWPoly
    display: Callable


def _block(factor: Factor) -> SumOfProducts:
    return (product(factor),)


def _family(first: int, den: Callable[[int], Factor], consts, ps, displays) -> list[InequalitySpec]:
    A = _one_minus
    prod3 = tuple(_block(den(i)) for i in range(3))
    pair_den = (_pair_sum(den),)
    shapes = [
        (Term(_all3(A), prod3),),
        (Term(_pair_sum(A), prod3),),
        (Term(_all3(A), pair_den),),
        (Term(_pair_sum(A), pair_den),),
        tuple(Term((product(A(a), A(b)),), (_block(den(a)), _block(den(b)))) for a, b in PAIRS),
        tuple(Term((product(A(i)),), (_block(den(j)), _block(den(k)))) for i, (j, k) in SINGLES),
    ]
    return [
        InequalitySpec(first + i, shapes[i], F(consts[i]), ps[i], displays[i]) for i in range(6)
    ]


def _P(w2=0, w=0, wv=0, v2=0, v=0, c=0) -> UVWPoly:
    return UVWPoly({(0, 0, 2): w2, (0, 0, 1): w, (0, 1, 1): wv, (0, 2, 0): v2, (0, 1, 0): v, (0, 0, 0): c})


EXPECTED_P = {
    1: _P(w2=-27, w=-71, v2=-27, v=179, c=-54),
    2: _P(w2=-243, w=486, v2=-243, v=736, c=-236),
    3: _P(w=-21, v2=-2, v=33, c=-10),
    4: _P(w=18, v2=-9, v=61, c=-20),
    5: _P(w2=-27, w=154, v2=-27, v=4, c=-4),
    6: _P(w2=-81, w=12, v2=-81, v=212, c=-62),
    7: _P(w2=-216, wv=216, w=-559, v2=-216, v=775, c=-216),
    8: _P(w2=-972, wv=972, w=-972, v2=-972, v=2287, c=-629),
    9: _P(w=-57, v2=-8, v=81, c=-24),
    10: _P(w=-36, v2=-36, v=193, c=-59),
    11: _P(w2=-108, wv=108, w=-59, v2=-108, v=216, c=-59),
    12: _P(w2=-162, wv=162, w=-309, v2=-162, v=275, c=-64),
}


def _sym_pairs(fn):
    return lambda a, b, c: fn(a, b) + fn(a, c) + fn(b, c)


# The inequalities exactly as displayed (x^3 + 1 denominators unreduced); used
# as an independent evaluation path.
def _displays_1_6():
    s = lambda t: t * t + 1  # noqa: E731
    num3 = lambda a, b, c: (1 - a) * (1 - b) * (1 - c)  # noqa: E731
    num2 = _sym_pairs(lambda a, b: (1 - a) * (1 - b))
    den3 = lambda a, b, c: s(a) * s(b) * s(c)  # noqa: E731
    den2 = _sym_pairs(lambda a, b: s(a) * s(b))
    return [
        lambda a, b, c: num3(a, b, c) / den3(a, b, c),
        lambda a, b, c: num2(a, b, c) / den3(a, b, c),
        lambda a, b, c: num3(a, b, c) / den2(a, b, c),
        lambda a, b, c: num2(a, b, c) / den2(a, b, c),
        _sym_pairs(lambda a, b: (1 - a) * (1 - b) / (s(a) * s(b))),
        lambda a, b, c: (1 - a) / (s(b) * s(c)) + (1 - b) / (s(a) * s(c)) + (1 - c) / (s(a) * s(b)),
    ]


def _displays_7_12():
    cube = lambda t: t**3 + 1  # noqa: E731
    cyc = lambda t: t * t - t + 1  # noqa: E731
    num2 = _sym_pairs(lambda a, b: (1 - a) * (1 - b))
    mixed = _sym_pairs(lambda a, b: cube(a) * cube(b) / ((a + 1) * (b + 1)))
    return [
        lambda a, b, c: (1 - a * a) * (1 - b * b) * (1 - c * c) / (cube(a) * cube(b) * cube(c)),
        lambda a, b, c: num2(a, b, c) / (cyc(a) * cyc(b) * cyc(c)),
        lambda a, b, c: (1 - a) * (1 - b) * (1 - c) / mixed(a, b, c),
        lambda a, b, c: num2(a, b, c) / mixed(a, b, c),
        _sym_pairs(lambda a, b: (1 - a * a) * (1 - b * b) / (cube(a) * cube(b))),
        lambda a, b, c: (
            (1 - a) * (1 + b) * (1 + c) / (cube(b) * cube(c))
            + (1 - b) * (1 + a) * (1 + c) / (cube(a) * cube(c))
            + (1 - c) * (1 + a) * (1 + b) / (cube(a) * cube(b))
        ),
    ]


INEQUALITIES: dict[int, InequalitySpec] = {
    s.id: s
    for s in _family(1, _sq1, ["27/125", "243/250", "2/25", "9/25", "27/25", "81/50"],
                     [EXPECTED_P[i] for i in range(1, 7)], _displays_1_6())
    + _family(7, _cyc, ["216/343", "972/343", "8/49", "36/49", "108/49", "162/49"],
              [EXPECTED_P[i] for i in range(7, 13)], _displays_7_12())
}
CENTROID = F(1, 3)


def _block_key(block: SumOfProducts):
    return tuple(sorted((c, tuple((f.var, f.poly.coeffs) for f in fs)) for c, fs in block))


def common_form(spec: InequalitySpec) -> tuple[TriPoly, TriPoly, list[SumOfProducts]]:
    """``(N, D, blocks)`` with LHS = N / D and D the product of the distinct
    denominator blocks (each at its largest multiplicity)."""
    need: dict = {}
    blocks: dict = {}
    for term in spec.terms:
        counts: dict = {}
        for b in term.denominator:
            key = _block_key(b)
            blocks[key] = b
            counts[key] = counts.get(key, 0) + 1
        for key, k in counts.items():
            need[key] = max(need.get(key, 0), k)
    den = TriPoly.const(1)
    for key, k in need.items():
        den = den * expand(blocks[key]) ** k
    num = TriPoly()
    for term in spec.terms:
        counts = dict(need)
        for b in term.denominator:
            counts[_block_key(b)] -= 1
        part = expand(term.numerator)
        for key, k in counts.items():
            part = part * expand(blocks[key]) ** k
        num = num + part
    used = [blocks[key] for key in need for _ in range(need[key])]
    return num, den, used


def lhs_structured(spec: InequalitySpec, pt) -> Fraction:
    total = F(0)
    for term in spec.terms:
        d = F(1)
        for b in term.denominator:
            d *= eval_expr(b, pt)
        total += eval_expr(term.numerator, pt) / d
    return total


def _scalar_ratio(got: UVWPoly, want: UVWPoly) -> Fraction | None:
    """Positive c with ``want == c * got``, else None."""
    if not got or set(got.terms) != set(want.terms):
        return None
    mono = next(iter(got.terms))
    c = want.terms[mono] / got.terms[mono]
    if c <= 0 or got.scale(c) != want:
        return None
    return c


def verify_modified_inequality(ineq_id: int, expected: UVWPoly | None = None) -> Certificate:
    """End-to-end certificate that LHS <= RHS on x + y + z = 1, with equality only at the centroid."""
    spec = INEQUALITIES[ineq_id]
    want = spec.expected_p if expected is None else expected
    cert = Certificate(f"ineq-{ineq_id}")
    rhs = spec.rhs

    num, den, blocks = common_form(spec)
    diff = num.scale(rhs.denominator) - den.scale(rhs.numerator)
    cert.check("(a) numerator of LHS - RHS over the common denominator", bool(diff),
               rhs=rhs, terms=len(diff.terms), total_degree=diff.total_degree)

    def positive_denominator():
        atoms = {}
        for block in blocks:
            for c, factors in block:
                if c <= 0:
                    raise CertificateFailure("denominator block has a nonpositive coefficient")
                for f in factors:
                    atoms[f.poly] = f.poly
        return [certify_sign(p, REAL_LINE, "positive") for p in atoms.values()]

    cert.run("(b) every denominator factor is positive on the real line", positive_denominator)

    reduced = None
    try:
        reduced = reduce_symmetric(diff)
        cert.check("(c) symmetric reduction re-expands exactly", reduced.expand() == diff, reduced=reduced)
    except NotSymmetric as exc:
        cert.check("(c) symmetric reduction", False, error=str(exc))

    if reduced is not None:
        on_plane = substitute_u(reduced, 1)
        cert.check("(d) substitute u = 1", on_plane.degree_in(0) <= 0, result=on_plane)
        scalar = _scalar_ratio(on_plane, want)
        cert.check("(e) matches the stored P up to a positive scalar", scalar is not None, expected=want, scalar=scalar)

    kind = abc_applicable(want)
    cert.check("(f) ABC restriction applies (linear or concave quadratic in w)",
               kind is not ABCKind.NOT_APPLICABLE, kind=kind.value)
    if kind is not ABCKind.NOT_APPLICABLE:
        pt = abc_reduce(want)
        cert.run("(g) restricted polynomial has global maximum 0 only at t = 1/3",
                 lambda: certify_global_max_zero(pt, CENTROID), restricted=pt)

    c3 = (CENTROID,) * 3
    at_centroid = lhs_structured(spec, c3)
    displayed = spec.display(*c3)
    cert.check("(h) LHS at (1/3, 1/3, 1/3) equals the constant", at_centroid == rhs == displayed,
               value=at_centroid, displayed=displayed)
    cert.summary = {"id": ineq_id, "rhs": rhs, "centroid_value": at_centroid, "abc": kind.value}
    return cert
