"""The coordinate ring F[x, y]/(y^q + y - f(x)) and its Riemann-Roch spaces.

A normal-form element is a finite sum of monomials ``x^i y^j`` with
``0 <= j <= q - 1``.  The function ``x^i y^j`` has a single pole, at the point
at infinity, of order ``q*i + m*j``; on the normal range these orders are
pairwise distinct, so every monomial basis below is totally ordered by pole
order.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import CurveMismatch, DegreeDivisibleByP, NotDegreeM
from .gf import FieldElement, FieldSpec

NEG_INF = float("-inf")

Scalar = Union[FieldElement, int]


def _code(F: FieldSpec, c: Scalar) -> int:
    if isinstance(c, FieldElement):
        if c.spec != F:
            raise ValueError("scalar from a different field")
        return c.value
    c = int(c)
    if not 0 <= c < F.q:
        raise ValueError(f"coefficient code {c} out of range for GF({F.q})")
    return c


class Monomial(NamedTuple):
    i: int
    j: int


@dataclass(frozen=True)
class CurveParams:
    """The curve y^q + y = f(x) over ``field``; ``f`` stored as int codes."""

    field: FieldSpec
    f: tuple[int, ...]
    m: int = field(init=False)
    q: int = field(init=False)
    genus: int = field(init=False)

    def __post_init__(self):
        f = tuple(self.f)
        if len(f) < 2 or f[-1] == 0:
            raise NotDegreeM(f"f={list(f)} must have degree >= 1 with nonzero leading coefficient")
        m = len(f) - 1
        if gcd(m, self.field.p) != 1:
            raise DegreeDivisibleByP(f"m={m}, p={self.field.p}")
        q = self.field.q
        twice_g = (m - 1) * (q - 1)
        assert twice_g % 2 == 0, (m, q)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "genus", twice_g // 2)

    @property
    def f_coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(self.field.element(c) for c in self.f)

    @property
    def is_pure_power(self) -> bool:
        """True when f(x) = x^m exactly."""
        return self.f[-1] == 1 and not any(self.f[:-1])

    def order(self, mono: tuple[int, int]) -> int:
        return self.q * mono[0] + self.m * mono[1]

    def __repr__(self):
        return f"CurveParams(q={self.q}, m={self.m}, f={list(self.f)})"


def make_curve(field_spec: FieldSpec, f_coeffs: Sequence[Scalar]) -> CurveParams:
    """Build y^q + y = f(x) from low-to-high coefficients of f."""
    codes = []
    for c in f_coeffs:
        if isinstance(c, FieldElement):
            if c.spec != field_spec:
                raise ValueError("coefficient from a different field")
            codes.append(c.value)
        else:
            c = int(c)
            if not 0 <= c < field_spec.q:
                raise ValueError(f"coefficient code {c} out of range")
            codes.append(c)
    return CurveParams(field_spec, tuple(codes))


def pure_power_curve(field_spec: FieldSpec, m: int) -> CurveParams:
    return CurveParams(field_spec, (0,) * m + (1,))


# ---------------------------------------------------------------------------
# Products of monomials


def monomial_product(curve: CurveParams, a: tuple[int, int], b: tuple[int, int]):
    """Normal form of x^a.i y^a.j * x^b.i y^b.j as ``[(Monomial, code), ...]``.

    The y-degree of the raw product is at most 2q - 2, so one rewrite of
    y^q as f(x) - y is enough.
    """
    i = a[0] + b[0]
    j = a[1] + b[1]
    q = curve.q
    if j < q:
        return [(Monomial(i, j), 1)]
    jj = j - q
    out = [(Monomial(i + e, jj), c) for e, c in enumerate(curve.f) if c]
    out.append((Monomial(i, jj + 1), curve.field.neg(1)))
    return out


class RingElement:
    """Element of F[x,y]/(y^q + y - f(x)) in normal form.

    ``terms`` maps ``Monomial`` to a nonzero int code; use ``coefficient`` for
    ``FieldElement`` values.
    """

    __slots__ = ("curve", "terms")

    def __init__(self, curve: CurveParams, terms: Mapping[tuple[int, int], int] | None = None):
        self.curve = curve
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                mono = Monomial(*mono)
                if not 0 <= mono.j < curve.q or mono.i < 0:
                    raise ValueError(f"{mono} is not a normal-form monomial")
                clean[mono] = c
        self.terms = clean

    @classmethod
    def monomial(cls, curve: CurveParams, i: int, j: int, coeff: int = 1) -> "RingElement":
        return cls(curve, {Monomial(i, j): coeff})

    @classmethod
    def one(cls, curve: CurveParams) -> "RingElement":
        return cls(curve, {Monomial(0, 0): 1})

    def coefficient(self, mono: tuple[int, int]) -> FieldElement:
        return self.curve.field.element(self.terms.get(Monomial(*mono), 0))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "RingElement"):
        if other.curve != self.curve:
            raise CurveMismatch(f"{self.curve!r} vs {other.curve!r}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        F = self.curve.field
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = F.add(out.get(mono, 0), c)
        return RingElement(self.curve, out)

    def __neg__(self) -> "RingElement":
        F = self.curve.field
        return RingElement(self.curve, {mono: F.neg(c) for mono, c in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "RingElement":
        F = self.curve.field
        c = _code(F, c)
        return RingElement(self.curve, {mono: F.mul(v, c) for mono, v in self.terms.items()})

    def __mul__(self, other: "RingElement") -> "RingElement":
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.curve == other.curve and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=self.curve.order, reverse=True):
            c = self.terms[mono]
            parts.append(f"{c}*x^{mono.i}*y^{mono.j}")
        return " + ".join(parts)


def reduce(curve: CurveParams, raw: Mapping[tuple[int, int], Scalar]) -> RingElement:
    """Normal form of an arbitrary polynomial in x, y.

    The term of highest y-degree ``j >= q`` is rewritten as
    ``x^i y^(j-q) (f(x) - y)``; each step lowers the largest y-exponent
    present or its multiplicity.
    """
    F = curve.field
    q = curve.q
    work: dict[tuple[int, int], int] = {}
    for (i, j), c in raw.items():
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent in {(i, j)}")
        c = _code(F, c)
        if c:
            work[(i, j)] = F.add(work.get((i, j), 0), c)
    minus_one = F.neg(1)
    while True:
        high = [key for key, c in work.items() if c and key[1] >= q]
        if not high:
            break
        i, j = max(high, key=lambda key: key[1])
        c = work.pop((i, j))
        jj = j - q
        for e, fe in enumerate(curve.f):
            if fe:
                key = (i + e, jj)
                work[key] = F.add(work.get(key, 0), F.mul(c, fe))
        key = (i, jj + 1)
        work[key] = F.add(work.get(key, 0), F.mul(c, minus_one))
    return RingElement(curve, work)


def multiply(u: RingElement, v: RingElement) -> RingElement:
    u._check(v)
    curve = u.curve
    F = curve.field
    out: dict[Monomial, int] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            cab = F.mul(ca, cb)
            for mono, c in monomial_product(curve, a, b):
                out[mono] = F.add(out.get(mono, 0), F.mul(cab, c))
    return RingElement(curve, out)


def pole_order(u: RingElement) -> Union[int, float]:
    """Pole order at infinity; ``NEG_INF`` for the zero element."""
    if not u.terms:
        return NEG_INF
    return max(u.curve.order(mono) for mono in u.terms)


# ---------------------------------------------------------------------------
# Riemann-Roch spaces L(s * Q_inf)


@dataclass(frozen=True)
class RrBasis:
    curve: CurveParams
    s: int
    monomials: tuple[Monomial, ...]
    index: Mapping[Monomial, int] = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def orders(self) -> list[int]:
        return [self.curve.order(mono) for mono in self.monomials]

    def coordinates(self, u: RingElement) -> list[int]:
        """Coordinate vector (int codes) of ``u``; raises if u is outside the space."""
        vec = [0] * len(self.monomials)
        for mono, c in u.terms.items():
            try:
                vec[self.index[mono]] = c
            except KeyError:
                raise ValueError(f"{mono} not in L({self.s} Q_inf)") from None
        return vec


@functools.lru_cache(maxsize=4096)
def rr_basis(curve: CurveParams, s: int) -> RrBasis:
    """Monomial basis of L(s Q_inf), ascending by pole order."""
    if s < 0:
        raise ValueError("s must be >= 0")
    q, m = curve.q, curve.m
    monos = []
    for j in range(min(q - 1, s // m) + 1):
        for i in range((s - m * j) // q + 1):
            monos.append(Monomial(i, j))
    monos.sort(key=curve.order)
    orders = [curve.order(mono) for mono in monos]
    assert all(a < b for a, b in zip(orders, orders[1:])), "pole orders collide"
    return RrBasis(curve, s, tuple(monos), {mono: n for n, mono in enumerate(monos)})


def rr_dim(curve: CurveParams, s: int) -> int:
    """dim L(s Q_inf) by counting, without building the basis."""
    if s < 0:
        return 0
    q, m = curve.q, curve.m
    return sum((s - m * j) // q + 1 for j in range(min(q - 1, s // m) + 1))


def semigroup_gaps(curve: CurveParams) -> list[int]:
    """Gaps s >= 1 of the Weierstrass semigroup at infinity.

    A gap is an s with dim L(s) = dim L(s-1).  Every gap is at most 2g - 1,
    so the scan stops at 2g.
    """
    gaps = []
    prev = rr_dim(curve, 0)
    for s in range(1, 2 * curve.genus + 1):
        cur = rr_dim(curve, s)
        if cur == prev:
            gaps.append(s)
        prev = cur
    return gaps


def embedding_h0_drop_check(curve: CurveParams, s: int) -> bool:
    """True iff dim L((s-2) Q_inf) = dim L(s Q_inf) - 2."""
    if s < 2:
        raise ValueError("s must be >= 2")
    return rr_dim(curve, s - 2) == rr_dim(curve, s) - 2


def as_element(curve: CurveParams, mono: tuple[int, int]) -> RingElement:
    return RingElement.monomial(curve, *mono)


def linear_combination(curve: CurveParams, pairs: Iterable[tuple[Scalar, RingElement]]) -> RingElement:
    total = RingElement(curve)
    for c, u in pairs:
        total = total + u.scale(c)
    return total
