"""Arithmetic in GF(p) and GF(p^k).

Elements are stored as their base-p integer code: the coefficient vector
``(a_0, ..., a_{k-1})`` of the polynomial-basis representation maps to
``a_0 + a_1 p + ... + a_{k-1} p^{k-1}``.  The same encoding is used on the
command line and in certificates.

>>> F = make_field(2, 2)
>>> g = F.element(2)            # the class of x
>>> g * g == g + F.one
True
"""

from __future__ import annotations

import functools
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DivisionByZero, FieldMismatch, FieldTooLarge, NotPrime

FIELD_CAP = 1 << 20
# Fields up to this order get log/exp tables and dense add/mul tables.
TABLE_CAP = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomials over GF(p), coefficient lists low-to-high without trailing zeros.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    r = _trim(list(a))
    df = len(f) - 1
    lead_inv = pow(f[-1], p - 2, p)
    while len(r) - 1 >= df:
        shift = len(r) - 1 - df
        factor = r[-1] * lead_inv % p
        for i, c in enumerate(f):
            r[shift + i] = (r[shift + i] - factor * c) % p
        _trim(r)
    return r


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        lead_inv = pow(a[-1], p - 2, p)
        a = [c * lead_inv % p for c in a]
    return a


def poly_powmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = poly_mod(base, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, b, p), f, p)
        b = poly_mod(poly_mul(b, b, p), f, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p): root test for degree <= 3, Rabin's test above."""
    f = _trim(list(f))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if k <= 3:
        for r in range(p):
            acc = 0
            for c in reversed(f):
                acc = (acc * r + c) % p
            if acc == 0:
                return False
        return True
    x = [0, 1]
    if poly_powmod(x, p**k, f, p) != x:
        return False
    for r in prime_factors(k):
        h = poly_sub(poly_powmod(x, p ** (k // r), f, p), x, p)
        if len(poly_gcd(h, f, p)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------


class FieldTables(NamedTuple):
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


class FieldSpec:
    """GF(p^k) with a fixed monic irreducible modulus. Immutable."""

    __slots__ = ("p", "k", "q", "modulus", "_log", "_exp", "_tables")

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise NotPrime(f"p={p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}: {modulus}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._log = None
        self._exp = None
        self._tables = None

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (FieldSpec, (self.p, self.k, self.modulus))

    # -- construction of elements ------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        if len(coeffs) > self.k:
            raise ValueError(f"expected at most {self.k} coefficients")
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + int(c) % self.p
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def generator(self) -> "FieldElement":
        """The class of x in GF(p)[x]/(modulus); for k = 1 this is 0."""
        return FieldElement(self, self.p % self.q if self.k > 1 else 0)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.q):
            yield FieldElement(self, v)

    def digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            code, d = divmod(code, self.p)
            out.append(d)
        return out

    def _undigits(self, digits: Sequence[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    # -- arithmetic on integer codes ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._tables is not None:
            return int(self._tables.add[a, b])
        p = self.p
        return self._undigits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        return self._undigits([-x % p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul_reference(self, a: int, b: int) -> int:
        """Schoolbook product reduced modulo the modulus; no tables."""
        prod = poly_mul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        return self._undigits(poly_mod(prod, self.modulus, self.p))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._log is None and self.q <= TABLE_CAP:
            self._build_logs()
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self.mul_reference(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def frobenius(self, a: int, e: int) -> int:
        for _ in range(e):
            a = self.pow(a, self.p)
        return a

    # -- tables ------------------------------------------------------------

    def _build_logs(self) -> None:
        q = self.q
        order = q - 1
        factors = prime_factors(order)
        for g in range(2, q):
            if all(self._pow_reference(g, order // r) != 1 for r in factors):
                break
        else:  # pragma: no cover - GF(q)* is cyclic
            raise AssertionError("no primitive element found")
        exp = [0] * order
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self.mul_reference(x, g)
        self._exp = exp
        self._log = log

    def _pow_reference(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul_reference(result, a)
            a = self.mul_reference(a, a)
            e >>= 1
        return result

    def tables(self) -> FieldTables:
        """Dense add/mul/neg/inv tables of int64 codes (q <= TABLE_CAP)."""
        if self._tables is not None:
            return self._tables
        if self.q > TABLE_CAP:
            raise FieldTooLarge(f"tables need q <= {TABLE_CAP}, got {self.q}")
        q, p = self.q, self.p
        codes = np.arange(q, dtype=np.int64)
        digits = np.stack([(codes // p**i) % p for i in range(self.k)])
        weights = p ** np.arange(self.k, dtype=np.int64)
        add = np.tensordot(weights, (digits[:, :, None] + digits[:, None, :]) % p, axes=1)
        neg = weights @ ((-digits) % p)
        if self.k == 1:
            mul = np.outer(codes, codes) % p
        else:
            if self._log is None:
                self._build_logs()
            log = np.array(self._log, dtype=np.int64)
            exp = np.array(self._exp, dtype=np.int64)
            mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = self.inv(a)
        self._tables = FieldTables(
            add.astype(np.int64), mul.astype(np.int64), neg.astype(np.int64), inv
        )
        return self._tables


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    """GF(p^k) with the smallest monic irreducible modulus.

    Candidates ``x^k + a_{k-1} x^{k-1} + ... + a_0`` are ordered by the integer
    ``a_0 + a_1 p + ... + a_{k-1} p^{k-1}``; the first irreducible one wins.
    """
    if not is_prime(p):
        raise NotPrime(f"p={p}")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if p**k > FIELD_CAP:
        raise FieldTooLarge(f"{p}^{k} exceeds {FIELD_CAP}")
    for low in range(p**k):
        cand = []
        v = low
        for _ in range(k):
            v, d = divmod(v, p)
            cand.append(d)
        cand.append(1)
        if is_irreducible(cand, p):
            return FieldSpec(p, k, cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldElement:
    """A value of GF(p^k). Immutable and hashable."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        value = int(value)
        if not 0 <= value < spec.q:
            raise ValueError(f"code {value} out of range for GF({spec.q})")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.spec, self.value))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.spec.digits(self.value))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
            return other.value
        if isinstance(other, int):
            return other % self.spec.p
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FieldElement(self.spec, self.spec.inv(self._coerce(other)))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def frobenius_pow(self, e: int) -> "FieldElement":
        """Return ``self ** (p ** e)``."""
        if e < 0:
            raise ValueError("e must be >= 0")
        return FieldElement(self.spec, self.spec.frobenius(self.value, e))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.q, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.spec.q})<{self.value}>"


# Functional aliases for callers that prefer them.

def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def frobenius_pow(a: FieldElement, e: int) -> FieldElement:
    return a.frobenius_pow(e)
