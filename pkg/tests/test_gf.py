import itertools

import pytest
from hypothesis import given, strategies as st

from asnormal.errors import DivisionByZero, FieldMismatch, FieldTooLarge, NotPrime
from asnormal.gf import FieldSpec, is_irreducible, make_field, poly_mul

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2), (2, 4), (3, 3), (2, 8)]


def reducible_codes(p, k):
    """Codes of all reducible monic degree-k polynomials, by multiplying factors."""
    def monics(d):
        for low in itertools.product(range(p), repeat=d):
            yield list(low) + [1]

    out = set()
    for d in range(1, k // 2 + 1):
        for a in monics(d):
            for b in monics(k - d):
                prod = poly_mul(a, b, p)
                out.add(sum(c * p**i for i, c in enumerate(prod[:-1])))
    return out


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 3), (5, 2), (2, 4), (3, 3), (2, 5), (7, 2)])
def test_modulus_is_smallest_irreducible(p, k):
    bad = reducible_codes(p, k)
    smallest = min(c for c in range(p**k) if c not in bad)
    F = make_field(p, k)
    assert sum(c * p**i for i, c in enumerate(F.modulus[:-1])) == smallest


def test_make_field_examples():
    assert make_field(2, 1).modulus == (0, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(3, 2) is make_field(3, 2)
    assert FieldSpec(3, 2, [1, 0, 1]) == make_field(3, 2)


def test_make_field_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(NotPrime):
        make_field(1, 1)
    with pytest.raises(FieldTooLarge):
        make_field(2, 21)
    with pytest.raises(ValueError):
        FieldSpec(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2


def test_irreducibility_rabin_against_factor_enumeration():
    p, k = 2, 6
    bad = reducible_codes(p, k)
    for low in range(p**k):
        poly = [(low >> i) & 1 for i in range(k)] + [1]
        assert is_irreducible(poly, p) == (low not in bad)


def test_arithmetic_examples():
    F4 = make_field(2, 2)
    g = F4.element(2)
    assert g * g == g + F4.one
    assert F4.one + F4.one == F4.zero
    assert make_field(2).one + make_field(2).one == make_field(2).zero
    F9 = make_field(3, 2)
    g9 = F9.element(3)
    assert g9 * g9 == F9.element(2)
    assert g.inv() == g + F4.one
    assert F4.one.inv() == F4.one
    assert make_field(7).element(3).inv() == make_field(7).element(5)


def test_frobenius_examples():
    F4 = make_field(2, 2)
    g = F4.element(2)
    assert g.frobenius_pow(0) == g
    assert g.frobenius_pow(1) == g + F4.one
    assert g.frobenius_pow(2) == g


def test_errors():
    F4, F2 = make_field(2, 2), make_field(2)
    with pytest.raises(DivisionByZero):
        F4.zero.inv()
    with pytest.raises(ZeroDivisionError):
        F4.one / F4.zero
    with pytest.raises(FieldMismatch):
        F4.one + F2.one


def test_coeff_roundtrip():
    F = make_field(3, 3)
    for a in F.elements():
        assert F.from_coeffs(a.coeffs) == a


@pytest.mark.parametrize("p,k", FIELDS)
def test_frobenius_fixes_field_and_fermat(p, k):
    F = make_field(p, k)
    for a in F.elements():
        assert a.frobenius_pow(k) == a
        if a:
            assert a ** (F.q - 1) == F.one


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 4), (5, 2), (2, 8)])
def test_tables_match_reference_arithmetic(p, k):
    F = make_field(p, k)
    t = F.tables()
    for a in range(F.q):
        assert t.neg[a] == F.neg(a)
        if a:
            assert F.mul_reference(a, int(t.inv[a])) == 1
        for b in range(0, F.q, max(1, F.q // 16)):
            assert t.mul[a, b] == F.mul_reference(a, b)
            assert t.add[a, b] == F.add(a, b)


def elements(F):
    return st.integers(0, F.q - 1).map(F.element)


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms(p, k):
    F = make_field(p, k)

    @given(elements(F), elements(F), elements(F))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + F.zero == a and a * F.one == a
        assert a + (-a) == F.zero
        assert a - b == a + (-b)
        if a:
            assert a * a.inv() == F.one

    check()
