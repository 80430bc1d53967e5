"""Explicit preimages under mu_s, following the case analysis of the proofs.

Each target monomial x^i y^j of L((s+1)D) is written as a sum of products
u * v with u in L(D) and v in L(sD).  Dispatch follows the case order of the
normality proofs and the first matching case wins, so tables are stable.
Every entry is re-multiplied before it is returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional

from .curve import Monomial, RingElement, pole_order, reduce
from .errors import ContradictionCaseReached, NoConstructiveWitness
from .linalg import solve_in_column_space
from .normality import EmbeddingSpec, Regime, mu_matrix


class WitnessCase(str, enum.Enum):
    CONSTANT_FACTOR = "CONSTANT_FACTOR"  # 1 (x) target
    X_SHIFT = "X_SHIFT"  # x (x) x^(i-1) y^j, or x^t (x) x^(i-t) y^j
    YC_SHIFT = "YC_SHIFT"  # y^c (x) x^i y^(j-c)
    CASE_B_EXPANSION = "CASE_B_EXPANSION"  # x^(am) = (y^q + y)^a, then powers of y
    DIRECT_SPLIT = "DIRECT_SPLIT"  # x^i (x) y^j, or a solver preimage


@dataclass(frozen=True)
class WitnessEntry:
    s: int
    target: Monomial
    case: WitnessCase
    terms: tuple[tuple[int, RingElement, RingElement], ...]  # (coefficient code, u, v)
    from_solver: bool = False

    def recombine(self) -> RingElement:
        curve = self.terms[0][1].curve if self.terms else None
        total = RingElement(curve)
        for c, u, v in self.terms:
            total = total + (u * v).scale(c)
        return total


def binomial_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    out = 1
    while n or k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        out = out * comb(ni, ki) % p
    return out


def check_witness(emb: EmbeddingSpec, entry: WitnessEntry) -> bool:
    s = entry.s
    for _, u, v in entry.terms:
        if pole_order(u) > emb.degree or pole_order(v) > s * emb.degree:
            return False
    expected = RingElement.monomial(emb.curve, *entry.target)
    return entry.recombine() == expected


def _mono(curve, i, j) -> RingElement:
    return RingElement.monomial(curve, i, j)


def _y_power(emb: EmbeddingSpec, s: int, b: int):
    """Preimage of y^b for b <= (s+1)c, as (u, v) pairs (pure power f only)."""
    curve, c = emb.curve, emb.c
    assert b <= (s + 1) * c, (b, s, c)
    if b <= c:
        return [(RingElement.one(curve), _mono(curve, 0, b))]
    if s == 1:
        return [(_mono(curve, 0, c), _mono(curve, 0, b - c))]
    h = min(b // c, s)
    rho = b - h * c
    return [(_mono(curve, 0, rho), reduce(curve, {(0, b - rho): 1}))]


def _case_b(emb: EmbeddingSpec, s: int, target: Monomial):
    """x^(am) y^j = (y^q + y)^a y^j, each y^b then split as a power of y."""
    curve = emb.curve
    q, m, p = curve.q, curve.m, curve.field.p
    a, rest = divmod(target.i, m)
    if rest or a <= 0 or target.j != (s + 1) * emb.c - a * q:
        raise ContradictionCaseReached(f"{target} is not of the form x^(am) y^((s+1)c-aq)")
    terms = []
    for k in range(a + 1):
        coef = binomial_mod(a, k, p)
        if coef:
            b = q * k + (a - k) + target.j
            terms.extend((coef, u, v) for u, v in _y_power(emb, s, b))
    return terms


def _case1(emb: EmbeddingSpec, s: int, target: Monomial):
    curve = emb.curve
    q, m, c = curve.q, curve.m, emb.c
    i, j = target
    o = curve.order(target)
    if o <= s * q:
        return WitnessCase.CONSTANT_FACTOR, [(1, RingElement.one(curve), _mono(curve, i, j))]
    if i > 0:
        return WitnessCase.X_SHIFT, [(1, _mono(curve, 1, 0), _mono(curve, i - 1, j))]
    if s * q < m * j < (s + 1) * q:
        return WitnessCase.YC_SHIFT, [(1, _mono(curve, 0, c), _mono(curve, 0, j - c))]
    raise ContradictionCaseReached(f"i = 0 and m*j = (s+1)q for target {target}, s={s}")


def _case2(emb: EmbeddingSpec, s: int, target: Monomial):
    curve = emb.curve
    q, m, c, t, D = curve.q, curve.m, emb.c, emb.t, emb.degree
    i, j = target
    o = curve.order(target)
    if j >= c:
        return WitnessCase.YC_SHIFT, [(1, _mono(curve, 0, c), _mono(curve, i, j - c))]
    if s >= 2:
        if o <= s * D:
            return WitnessCase.CONSTANT_FACTOR, [(1, RingElement.one(curve), _mono(curve, i, j))]
        if i < t:
            raise ContradictionCaseReached(f"i < t for target {target}, s={s}")
        if o < (s + 1) * D:
            return WitnessCase.X_SHIFT, [(1, _mono(curve, t, 0), _mono(curve, i - t, j))]
        return WitnessCase.CASE_B_EXPANSION, _case_b(emb, s, target)
    if i >= t:
        if q * (i - t) + m * j <= D:
            return WitnessCase.X_SHIFT, [(1, _mono(curve, t, 0), _mono(curve, i - t, j))]
        return WitnessCase.CASE_B_EXPANSION, _case_b(emb, s, target)
    return WitnessCase.DIRECT_SPLIT, [(1, _mono(curve, i, 0), _mono(curve, 0, j))]


def witness_decomposition(emb: EmbeddingSpec, s: int, target) -> WitnessEntry:
    """Proof-shaped preimage of ``target`` under mu_s, for 1 <= s <= m-1."""
    target = Monomial(*target)
    curve = emb.curve
    if not 1 <= s <= curve.m - 1:
        raise ValueError(f"s={s} outside 1..m-1")
    if target not in emb.basis(s + 1).index:
        raise ValueError(f"{target} is not a basis monomial of L({(s + 1) * emb.degree} Q_inf)")
    if emb.regime is Regime.CASE1:
        case, terms = _case1(emb, s, target)
    else:
        if not emb.regime_hypotheses:
            raise NoConstructiveWitness("needs f = x^m and c <= q-1")
        case, terms = _case2(emb, s, target)
    entry = WitnessEntry(s, target, case, tuple(terms))
    if not check_witness(emb, entry):
        raise AssertionError(f"witness for {target} (s={s}, {case.value}) does not recombine")
    return entry


def solver_witness(emb: EmbeddingSpec, s: int, target, matrix=None) -> Optional[WitnessEntry]:
    """Preimage found by linear solving; None when target is not in the image."""
    target = Monomial(*target)
    curve = emb.curve
    left, right, tgt = emb.basis(1), emb.basis(s), emb.basis(s + 1)
    M = mu_matrix(emb, s) if matrix is None else matrix
    rhs = [0] * tgt.dim
    rhs[tgt.index[target]] = 1
    sol = solve_in_column_space(M, rhs)
    if sol is None:
        return None
    terms = []
    for col, x in enumerate(sol):
        if x.value:
            a, b = divmod(col, right.dim)
            terms.append((x.value, _mono(curve, *left.monomials[a]), _mono(curve, *right.monomials[b])))
    entry = WitnessEntry(s, target, WitnessCase.DIRECT_SPLIT, tuple(terms), from_solver=True)
    assert check_witness(emb, entry)
    return entry


def witness_table(emb: EmbeddingSpec, s_values: Optional[Iterable[int]] = None) -> list[WitnessEntry]:
    """Witnesses for every target monomial and s = 1 .. m-1.

    Outside the constructive hypotheses the solver supplies the preimages.
    """
    if s_values is None:
        s_values = range(1, emb.curve.m)
    constructive = emb.regime is Regime.CASE1 or emb.regime_hypotheses
    out = []
    for s in s_values:
        M = None if constructive else mu_matrix(emb, s)
        for mono in emb.basis(s + 1):
            if constructive:
                out.append(witness_decomposition(emb, s, mono))
            else:
                entry = solver_witness(emb, s, mono, M)
                if entry is not None:
                    out.append(entry)
    return out
