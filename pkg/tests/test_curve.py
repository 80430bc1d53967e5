import random

import pytest
from hypothesis import given, strategies as st

from asnormal.curve import (
    NEG_INF,
    Monomial,
    RingElement,
    embedding_h0_drop_check,
    make_curve,
    multiply,
    pole_order,
    pure_power_curve,
    reduce,
    rr_basis,
    rr_dim,
    semigroup_gaps,
)
from asnormal.errors import CurveMismatch, DegreeDivisibleByP, NotDegreeM
from asnormal.gf import make_field

F4 = make_field(2, 2)
C43 = pure_power_curve(F4, 3)


def mono(curve, i, j, c=1):
    return RingElement.monomial(curve, i, j, c)


def long_division_normal_form(curve, raw):
    """Independent oracle: divide by the monic-in-y relation, lowest y-degree
    of the quotient determined top-down, with x-polynomial coefficients."""
    F, q = curve.field, curve.q
    by_j = {}
    for (i, j), c in raw.items():
        row = by_j.setdefault(j, {})
        row[i] = F.add(row.get(i, 0), c)
    while by_j and max(by_j) >= q:
        j = max(by_j)
        lead = by_j.pop(j)
        # subtract lead * y^(j-q) * (y^q + y - f(x))
        low = by_j.setdefault(j - q + 1, {})
        for i, c in lead.items():
            low[i] = F.sub(low.get(i, 0), c)
        base = by_j.setdefault(j - q, {})
        for i, c in lead.items():
            for e, fe in enumerate(curve.f):
                base[i + e] = F.add(base.get(i + e, 0), F.mul(c, fe))
    return {(i, j): c for j, row in by_j.items() for i, c in row.items() if c}


def test_make_curve_examples():
    assert C43.genus == 3 and C43.q == 4 and C43.m == 3
    assert pure_power_curve(F4, 5).genus == 6
    assert make_curve(make_field(7), [0, 1]).genus == 0


def test_make_curve_errors():
    with pytest.raises(DegreeDivisibleByP):
        pure_power_curve(F4, 4)
    with pytest.raises(NotDegreeM):
        make_curve(F4, [1, 0, 0])
    with pytest.raises(NotDegreeM):
        make_curve(F4, [1])


def test_reduce_examples():
    assert reduce(C43, {(0, 4): 1}) == mono(C43, 3, 0) + mono(C43, 0, 1)
    C32 = pure_power_curve(make_field(3), 2)
    assert reduce(C32, {(0, 3): 1}) == mono(C32, 2, 0) + mono(C32, 0, 1, 2)
    assert reduce(C43, {(0, 5): 1}) == mono(C43, 3, 1) + mono(C43, 0, 2)


def test_multiply_examples():
    y2, y3 = mono(C43, 0, 2), mono(C43, 0, 3)
    assert multiply(RingElement.one(C43), y3) == y3
    assert multiply(y3, y2) == mono(C43, 3, 1) + mono(C43, 0, 2)
    assert multiply(y3, y3) == reduce(C43, {(0, 6): 1}) == mono(C43, 3, 2) + mono(C43, 0, 3)
    with pytest.raises(CurveMismatch):
        multiply(y2, mono(pure_power_curve(F4, 5), 0, 1))


def test_pole_order_examples():
    assert pole_order(mono(C43, 1, 0)) == 4
    assert pole_order(RingElement.one(C43)) == 0
    assert pole_order(mono(C43, 3, 1) + mono(C43, 0, 2)) == 15
    assert pole_order(RingElement(C43)) == NEG_INF


def test_rr_basis_examples():
    assert rr_basis(C43, 4).monomials == ((0, 0), (0, 1), (1, 0))
    C73 = pure_power_curve(make_field(7), 3)
    assert rr_basis(C73, 7).monomials == ((0, 0), (0, 1), (0, 2), (1, 0))
    assert rr_basis(C43, 13).dim == 11 == rr_dim(C43, 13)


def semigroup_gap_oracle(q, m):
    bound = (q - 1) * (m - 1)
    reach = {a * q + b * m for a in range(bound // q + 2) for b in range(bound // m + 2)}
    return [s for s in range(1, bound + 1) if s not in reach]


def test_gap_examples():
    assert semigroup_gaps(C43) == [1, 2, 5]
    assert semigroup_gaps(make_curve(make_field(7), [0, 1])) == []
    assert semigroup_gaps(pure_power_curve(make_field(3), 2)) == [1]


@pytest.mark.parametrize("p,k,m", [(2, 2, 3), (3, 1, 2), (7, 1, 3), (2, 3, 5), (5, 1, 4), (3, 2, 7), (2, 4, 9)])
def test_gaps_match_semigroup_oracle(p, k, m):
    curve = pure_power_curve(make_field(p, k), m)
    gaps = semigroup_gaps(curve)
    assert gaps == semigroup_gap_oracle(curve.q, m)
    assert len(gaps) == curve.genus
    g = curve.genus
    for s in range(max(0, 2 * g - 1), 2 * g + 21):
        assert rr_dim(curve, s) == s + 1 - g
    for s in range(1, 2 * g + 5):
        step = rr_dim(curve, s) - rr_dim(curve, s - 1)
        assert step == (0 if s in gaps else 1)
        assert rr_basis(curve, s).dim == rr_dim(curve, s)


def test_h0_drop_examples():
    assert embedding_h0_drop_check(C43, 4)
    assert embedding_h0_drop_check(pure_power_curve(make_field(7), 3), 7)
    assert not embedding_h0_drop_check(C43, 3)


CURVES = [
    C43,
    pure_power_curve(make_field(7), 3),
    make_curve(make_field(3, 2), [4, 0, 7, 1, 0, 2]),
    make_curve(make_field(5), [1, 2, 3, 4]),
]


def random_element(curve, rnd, s):
    basis = rr_basis(curve, s).monomials
    picks = rnd.sample(basis, rnd.randint(1, min(4, len(basis))))
    return RingElement(curve, {mo: rnd.randrange(1, curve.q) for mo in picks})


@pytest.mark.parametrize("curve", CURVES, ids=repr)
def test_multiply_matches_long_division(curve):
    rnd = random.Random(7)
    F = curve.field
    for _ in range(100):
        u = random_element(curve, rnd, 3 * curve.q)
        v = random_element(curve, rnd, 3 * curve.q)
        raw = {}
        for (a, b), c in u.terms.items():
            for (d, e), g in v.terms.items():
                key = (a + d, b + e)
                raw[key] = F.add(raw.get(key, 0), F.mul(c, g))
        assert multiply(u, v).terms == long_division_normal_form(curve, raw)
        assert reduce(curve, raw) == multiply(u, v)


@pytest.mark.parametrize("curve", CURVES, ids=repr)
def test_reduce_high_powers(curve):
    rnd = random.Random(3)
    for _ in range(20):
        raw = {(rnd.randrange(4), rnd.randrange(4 * curve.q)): rnd.randrange(1, curve.q) for _ in range(3)}
        assert reduce(curve, raw).terms == long_division_normal_form(curve, raw)


@pytest.mark.parametrize("curve", CURVES, ids=repr)
def test_ring_axioms_and_valuation(curve):
    s = 3 * curve.q

    @given(st.randoms(use_true_random=False))
    def check(rnd):
        u, v, w = (random_element(curve, rnd, s) for _ in range(3))
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w
        assert u * v == v * u
        assert pole_order(u * v) == pole_order(u) + pole_order(v)

    check()


def test_basis_orders_strictly_increase():
    for curve in CURVES:
        orders = rr_basis(curve, 5 * curve.q).orders()
        assert orders == sorted(set(orders))
        assert all(isinstance(mo, Monomial) for mo in rr_basis(curve, 5).monomials)
