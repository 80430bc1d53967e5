from math import comb

import pytest

from asnormal.curve import RingElement, make_curve, pure_power_curve, rr_basis
from asnormal.errors import FormulaOutOfScope, HypothesisNotMet, RegimeMismatch, TrivialCurve
from asnormal.gf import make_field
from asnormal.linalg import rank
from asnormal.normality import (
    Regime,
    Verdict,
    certify,
    make_embedding,
    multiplication_matrix,
    mu_matrix,
    pencil_bound,
    pencil_grid,
    quadric_report,
    verify_mu,
    verify_pencil_trick,
    veronese_matrix,
)

F4, F7, F13 = make_field(2, 2), make_field(7), make_field(13)
C43 = pure_power_curve(F4, 3)
C73 = pure_power_curve(F7, 3)


def col(M, basis, a, b, right):
    return M.column(a * right.dim + b)


def test_make_embedding_examples():
    e = make_embedding(C73, Regime.CASE1)
    assert (e.c, e.r, e.degree) == (2, 3, 7) and e.h0_drop_ok
    e = make_embedding(pure_power_curve(F4, 5), "CASE2", 1)
    assert e.c == 1 and e.basis().monomials == ((0, 0), (1, 0), (0, 1)) and e.r == 2
    e = make_embedding(C43, "CASE2", 2)
    assert e.c == 3 and e.c <= e.curve.q - 1 and e.regime_hypotheses


def test_make_embedding_errors():
    with pytest.raises(RegimeMismatch):
        make_embedding(pure_power_curve(F7, 4), "CASE1")
    with pytest.raises(RegimeMismatch):
        make_embedding(C43, "CASE2", 1)
    with pytest.raises(RegimeMismatch):
        make_embedding(C43, "CASE2")
    with pytest.raises(TrivialCurve):
        make_embedding(make_curve(F7, [0, 1]), "CASE1")


def test_remark_scope_flag():
    e = make_embedding(pure_power_curve(make_field(2), 3), "CASE2", 1)
    assert e.outside_remark_scope
    assert make_embedding(pure_power_curve(F4, 5), "CASE2", 1).outside_remark_scope
    assert not make_embedding(pure_power_curve(make_field(3), 2), "CASE2", 1).outside_remark_scope


def test_mu_matrix_examples():
    e = make_embedding(C73, "CASE1")
    M = mu_matrix(e, 1)
    right, target = e.basis(1), e.basis(2)
    unit = [0] * target.dim
    unit[target.index[(0, 0)]] = 1
    assert M.column(0) == unit
    a, b = right.index[(1, 0)], right.index[(0, 2)]
    expect = [0] * target.dim
    expect[target.index[(1, 2)]] = 1
    assert M.column(a * right.dim + b) == expect
    # y * y^3 = y^4 = x^3 + y on y^4 + y = x^3; y^3 only enters L(sq) from s = 3 on
    e = make_embedding(C43, "CASE1")
    M = mu_matrix(e, 3)
    left, right, target = e.basis(1), e.basis(3), e.basis(4)
    column = M.column(left.index[(0, 1)] * right.dim + right.index[(0, 3)])
    nonzero = {target.monomials[r] for r, v in enumerate(column) if v}
    assert nonzero == {(3, 0), (0, 1)}


@pytest.mark.parametrize(
    "curve,regime,t",
    [
        (C73, "CASE1", None),
        (make_curve(F7, [3, 5, 0, 2]), "CASE1", None),
        (make_curve(F4, [1, 2, 0, 3]), "CASE2", 2),
        (make_curve(make_field(3, 2), [1, 0, 4, 0, 7]), "CASE1", None),
    ],
)
def test_mu_columns_match_ring_multiplication(curve, regime, t):
    e = make_embedding(curve, regime, t)
    for s in (1, 2, 3):
        M = mu_matrix(e, s)
        left, right, target = e.basis(1), e.basis(s), e.basis(s + 1)
        assert M.shape == (target.dim, left.dim * right.dim)
        for a, u in enumerate(left):
            for b, v in enumerate(right):
                prod = RingElement.monomial(curve, *u) * RingElement.monomial(curve, *v)
                assert M.column(a * right.dim + b) == target.coordinates(prod)


def test_verify_mu_examples():
    e = make_embedding(C73, "CASE1")
    r1, r3 = verify_mu(e, 1), verify_mu(e, 3)
    assert r1.surjective and not r1.theorem_guaranteed
    assert r3.surjective and r3.theorem_guaranteed
    assert r1.rank == r1.target_dim == rr_basis(C73, 14).dim
    e = make_embedding(pure_power_curve(F4, 5), "CASE2", 1)
    assert all(verify_mu(e, s).surjective for s in range(1, 5))


def test_certify_examples():
    for f in ([0, 0, 0, 1], [1, 0, 0, 1], [2, 6, 5, 3], [0, 1, 0, 4]):
        cert = certify(make_embedding(make_curve(F7, f), "CASE1"))
        assert cert.verdict is Verdict.PROVEN_NORMAL
        assert [r.s for r in cert.mu_reports] == [1, 2, 3, 4]
    cert = certify(make_embedding(C43, "CASE2", 2))
    assert cert.verdict is Verdict.PROVEN_NORMAL
    cert = certify(make_embedding(make_curve(F4, [0, 1, 0, 1]), "CASE2", 2))
    assert cert.verdict in (Verdict.EMPIRICAL_NORMAL, Verdict.FAILED)
    assert cert.verdict is not Verdict.PROVEN_NORMAL


def test_certify_reports_first_failure():
    # L(9 Q_inf) on y^4 + y = x^3 + x with t = 2: whatever the ranks say,
    # a FAILED verdict must name the first failing s.
    cert = certify(make_embedding(make_curve(F4, [0, 1, 0, 1]), "CASE2", 2), 0)
    failing = [r.s for r in cert.mu_reports if not r.surjective]
    assert cert.first_failure == (failing[0] if failing else None)


def test_certify_c_equal_one():
    cert = certify(make_embedding(C43, "CASE1"))
    assert cert.embedding.c == 1 and cert.verdict is Verdict.PROVEN_NORMAL


def test_veronese_examples():
    e = make_embedding(C73, "CASE1")
    V = veronese_matrix(e, 2)
    assert V.shape == (9, 10)
    assert rank(V) == 9
    unit = [0] * 9
    unit[0] = 1
    assert V.column(0) == unit
    e = make_embedding(C43, "CASE1")
    V = veronese_matrix(e, 2)
    assert V.shape == (6, 6) and rank(V) == 6
    V3 = veronese_matrix(make_embedding(C73, "CASE1"), 3)
    assert V3.cols == comb(make_embedding(C73, "CASE1").r + 3, 3)


@pytest.mark.parametrize("q,p,m,c,h0,formula", [(7, 7, 3, 2, 9, 1), (13, 13, 3, 4, 15, 6), (13, 13, 4, 3, 12, 3)])
def test_quadric_examples(q, p, m, c, h0, formula):
    rep = quadric_report(make_embedding(pure_power_curve(make_field(p), m), "CASE1"))
    assert (rep.c, rep.h0_X_2, rep.formula_value, rep.kernel_dim) == (c, h0, formula, formula)
    assert rep.match


def test_quadric_scope():
    with pytest.raises(FormulaOutOfScope):
        quadric_report(make_embedding(pure_power_curve(F7, 2), "CASE1"))
    with pytest.raises(FormulaOutOfScope):
        quadric_report(make_embedding(C43, "CASE2", 2))


def test_pencil_examples():
    assert pencil_bound(C43, 1, 0) == 9
    assert verify_pencil_trick(C43, 1, 0, 9).surjective
    assert verify_pencil_trick(C43, 0, 1, 8).surjective
    C32 = pure_power_curve(make_field(3), 2)
    rep = verify_pencil_trick(C32, 1, 1, 6)
    assert rep.surjective and rep.hypothesis_met
    with pytest.raises(HypothesisNotMet):
        verify_pencil_trick(C43, 1, 0, 8)
    forced = verify_pencil_trick(C43, 1, 0, 0, force=True)
    assert not forced.hypothesis_met


def test_pencil_grid_shape():
    reps = pencil_grid(C43, 1, 1, (0, 1))
    assert [(r.a, r.b) for r in reps] == [(0, 1), (0, 1), (1, 0), (1, 0), (1, 1), (1, 1)]
    assert all(r.surjective for r in reps)


def test_multiplication_matrix_rejects_small_target():
    with pytest.raises(ValueError):
        multiplication_matrix(C43, rr_basis(C43, 4), rr_basis(C43, 4), rr_basis(C43, 4))
