"""Multiplication maps, Veronese restrictions and normality certificates.

An embedding is given by the complete linear system L(D) with D = q Q_inf
(``Regime.CASE1``, m | q - 1) or D = (tq + 1) Q_inf (``Regime.CASE2``,
m | tq + 1).  The embedded curve is projectively normal once every
multiplication map

    mu_s : L(D) (x) L(sD) -> L((s+1)D)

is onto; for s >= m this is automatic, so a certificate only has to check
s = 1 .. m-1 by rank, and spot-checks a few larger s as a guard.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Optional, Sequence

import numpy as np

from .curve import (
    CurveParams,
    RingElement,
    RrBasis,
    embedding_h0_drop_check,
    rr_basis,
    rr_dim,
)
from .errors import FormulaOutOfScope, HypothesisNotMet, RegimeMismatch, TrivialCurve
from .linalg import GfMatrix, _storage_dtype, rank


class Regime(str, enum.Enum):
    CASE1 = "CASE1"  # m | q - 1, D = q
    CASE2 = "CASE2"  # m | tq + 1, D = tq + 1


class Verdict(str, enum.Enum):
    PROVEN_NORMAL = "PROVEN_NORMAL"
    EMPIRICAL_NORMAL = "EMPIRICAL_NORMAL"
    FAILED = "FAILED"


@dataclass(frozen=True)
class EmbeddingSpec:
    curve: CurveParams
    regime: Regime
    t: Optional[int]
    degree: int
    c: int
    r: int
    h0_drop_ok: bool
    # t = 1 with m = q + 1 is excluded by a side remark in the source material;
    # such runs are flagged but still certified.
    outside_remark_scope: bool = False

    @property
    def regime_hypotheses(self) -> bool:
        """Whether the normality theorem for this regime covers the curve."""
        if self.regime is Regime.CASE1:
            return True
        return self.curve.is_pure_power and self.c <= self.curve.q - 1

    @property
    def theorem_covered(self) -> bool:
        return self.regime_hypotheses and self.h0_drop_ok

    def basis(self, s: int = 1) -> RrBasis:
        """Monomial basis of L(s D)."""
        return rr_basis(self.curve, s * self.degree)


def make_embedding(curve: CurveParams, regime, t: Optional[int] = None) -> EmbeddingSpec:
    regime = Regime(regime)
    q, m = curve.q, curve.m
    if m == 1:
        raise TrivialCurve("m = 1 gives a rational curve (g = 0)")
    if regime is Regime.CASE1:
        if t is not None:
            raise RegimeMismatch("t only applies to CASE2")
        if (q - 1) % m:
            raise RegimeMismatch(f"m={m} does not divide q-1={q - 1}")
        degree = q
        c = (q - 1) // m
        r = c + 1
        assert r == rr_dim(curve, degree) - 1, (q, m)
        remark = False
    else:
        if t is None or t < 1:
            raise RegimeMismatch("CASE2 needs t >= 1")
        if (t * q + 1) % m:
            raise RegimeMismatch(f"m={m} does not divide tq+1={t * q + 1}")
        degree = t * q + 1
        c = degree // m
        r = rr_dim(curve, degree) - 1
        remark = t == 1 and m == q + 1
    return EmbeddingSpec(
        curve=curve,
        regime=regime,
        t=t,
        degree=degree,
        c=c,
        r=r,
        h0_drop_ok=embedding_h0_drop_check(curve, degree),
        outside_remark_scope=remark,
    )


# ---------------------------------------------------------------------------
# Matrices


def multiplication_matrix(curve: CurveParams, left: RrBasis, right: RrBasis, target: RrBasis) -> GfMatrix:
    """Matrix of L(left) (x) L(right) -> L(target) on monomial bases.

    Column ``a * len(right) + b`` is the coordinate vector of the product of
    the a-th left and b-th right basis monomial; rows follow ``target``.
    """
    q, m = curve.q, curve.m
    nl, nr = left.dim, right.dim
    data = np.zeros((target.dim, nl * nr), dtype=_storage_dtype(q))
    if not nl or not nr:
        return GfMatrix(curve.field, data)
    L = np.array(left.monomials, dtype=np.int64).reshape(nl, 2)
    R = np.array(right.monomials, dtype=np.int64).reshape(nr, 2)
    I = (L[:, 0, None] + R[None, :, 0]).ravel()
    J = (L[:, 1, None] + R[None, :, 1]).ravel()
    cols = np.arange(nl * nr)

    top = target.s
    row_of_order = np.full(top + 1, -1, dtype=np.int64)
    row_of_order[np.array(target.orders(), dtype=np.int64)] = np.arange(target.dim)

    def rows_for(orders):
        if orders.size and orders.max() > top:
            raise ValueError(f"product leaves L({top} Q_inf)")
        rows = row_of_order[orders]
        assert (rows >= 0).all()
        return rows

    direct = J < q
    data[rows_for(q * I[direct] + m * J[direct]), cols[direct]] = 1
    over = ~direct
    if over.any():
        # y^j with q <= j <= 2q-2 becomes y^(j-q) (f(x) - y)
        Io, Jo, co = I[over], J[over] - q, cols[over]
        for e, fe in enumerate(curve.f):
            if fe:
                data[rows_for(q * (Io + e) + m * Jo), co] = fe
        data[rows_for(q * Io + m * (Jo + 1)), co] = curve.field.neg(1)
    return GfMatrix(curve.field, data)


def mu_matrix(emb: EmbeddingSpec, s: int) -> GfMatrix:
    if s < 1:
        raise ValueError("s must be >= 1")
    return multiplication_matrix(emb.curve, emb.basis(1), emb.basis(s), emb.basis(s + 1))


def veronese_matrix(emb: EmbeddingSpec, d: int) -> GfMatrix:
    """Degree-d monomials in the embedding coordinates, restricted to the curve.

    Columns are the multisets of size d of the L(D) basis, in
    ``combinations_with_replacement`` order; rows follow the basis of L(dD).
    Products go through the generic ring multiplication, not the vectorized
    builder used for mu_s.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    curve = emb.curve
    coords = [RingElement.monomial(curve, *mono) for mono in emb.basis(1)]
    target = emb.basis(d)
    columns = []
    for combo in combinations_with_replacement(range(len(coords)), d):
        prod = coords[combo[0]]
        for idx in combo[1:]:
            prod = prod * coords[idx]
        columns.append(dict(enumerate(target.coordinates(prod))))
    return GfMatrix.from_columns(curve.field, target.dim, columns)


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class MuReport:
    s: int
    source_dim: int
    multiplier_dim: int
    target_dim: int
    rank: int
    surjective: bool
    theorem_guaranteed: bool


def verify_mu(emb: EmbeddingSpec, s: int, backend: Optional[str] = None) -> MuReport:
    M = mu_matrix(emb, s)
    rk = rank(M, backend)
    target_dim = M.rows
    return MuReport(
        s=s,
        source_dim=emb.basis(1).dim,
        multiplier_dim=emb.basis(s).dim,
        target_dim=target_dim,
        rank=rk,
        surjective=rk == target_dim,
        theorem_guaranteed=s >= emb.curve.m,
    )


@dataclass(frozen=True)
class QuadricReport:
    c: int
    r: int
    h0_X_2: int
    expected_h0: int
    veronese_rank: int
    kernel_dim: int
    formula_value: int
    match: bool


def quadric_report(emb: EmbeddingSpec, backend: Optional[str] = None) -> QuadricReport:
    """Dimension of the space of quadrics through the embedded curve."""
    if emb.regime is not Regime.CASE1 or emb.curve.m < 3:
        raise FormulaOutOfScope("quadric count needs CASE1 and m >= 3")
    c = emb.c
    V = veronese_matrix(emb, 2)
    rk = rank(V, backend)
    kdim = V.cols - rk
    h0 = rr_dim(emb.curve, 2 * emb.degree)
    formula = comb(c + 3, 2) - 3 * c - 3
    return QuadricReport(
        c=c,
        r=emb.r,
        h0_X_2=h0,
        expected_h0=3 * c + 3,
        veronese_rank=rk,
        kernel_dim=kdim,
        formula_value=formula,
        match=kdim == formula and h0 == 3 * c + 3,
    )


@dataclass(frozen=True)
class NormalityCertificate:
    embedding: EmbeddingSpec
    mu_reports: tuple[MuReport, ...]
    verdict: Verdict
    first_failure: Optional[int] = None
    quadrics: Optional[QuadricReport] = None
    witnesses: Optional[tuple] = field(default=None, repr=False)


def certify(
    emb: EmbeddingSpec,
    s_extra: int = 2,
    *,
    quadrics: bool = True,
    witnesses: bool = False,
    backend: Optional[str] = None,
) -> NormalityCertificate:
    """Check mu_s for s = 1 .. m-1+s_extra and assemble the verdict."""
    if s_extra < 0:
        raise ValueError("s_extra must be >= 0")
    reports = tuple(verify_mu(emb, s, backend) for s in range(1, emb.curve.m + s_extra))
    failing = [rep.s for rep in reports if not rep.surjective]
    if failing:
        verdict = Verdict.FAILED
    elif emb.theorem_covered:
        verdict = Verdict.PROVEN_NORMAL
    else:
        verdict = Verdict.EMPIRICAL_NORMAL
    quad = None
    if quadrics and emb.regime is Regime.CASE1 and emb.curve.m >= 3:
        quad = quadric_report(emb, backend)
    table = None
    if witnesses:
        from .witness import witness_table

        table = tuple(witness_table(emb))
    return NormalityCertificate(
        embedding=emb,
        mu_reports=reports,
        verdict=verdict,
        first_failure=failing[0] if failing else None,
        quadrics=quad,
        witnesses=table,
    )


@dataclass(frozen=True)
class PencilReport:
    a: int
    b: int
    e: int
    source_dim: int
    multiplier_dim: int
    target_dim: int
    rank: int
    surjective: bool
    hypothesis_met: bool


def pencil_bound(curve: CurveParams, a: int, b: int) -> int:
    """Smallest e covered by the pencil-trick surjectivity statement."""
    return a * curve.q + b * curve.m + (curve.m - 1) * (curve.q - 1) - 1


def verify_pencil_trick(
    curve: CurveParams, a: int, b: int, e: int, *, force: bool = False, backend: Optional[str] = None
) -> PencilReport:
    """Rank check of L((aq+bm) Q_inf) (x) L(e Q_inf) -> L((e+aq+bm) Q_inf).

    Raises ``HypothesisNotMet`` outside the covered range unless ``force``.
    """
    met = a >= 0 and b >= 0 and a + b > 0 and e >= pencil_bound(curve, a, b)
    if not met and not force:
        raise HypothesisNotMet(f"a={a}, b={b}, e={e}")
    if a < 0 or b < 0 or e < 0:
        raise ValueError("a, b, e must be non-negative")
    deg = a * curve.q + b * curve.m
    left, right, target = rr_basis(curve, deg), rr_basis(curve, e), rr_basis(curve, e + deg)
    M = multiplication_matrix(curve, left, right, target)
    rk = rank(M, backend)
    return PencilReport(
        a=a,
        b=b,
        e=e,
        source_dim=left.dim,
        multiplier_dim=right.dim,
        target_dim=target.dim,
        rank=rk,
        surjective=rk == target.dim,
        hypothesis_met=met,
    )


def pencil_grid(
    curve: CurveParams, a_max: int = 3, b_max: int = 3, deltas: Sequence[int] = (0, 1, 5), backend=None
) -> list[PencilReport]:
    out = []
    for a in range(a_max + 1):
        for b in range(b_max + 1):
            if a + b == 0:
                continue
            for delta in deltas:
                out.append(verify_pencil_trick(curve, a, b, pencil_bound(curve, a, b) + delta, backend=backend))
    return out
