from fractions import Fraction

import pytest

from operadcalc.errors import InsufficientData, MalformedInput
from operadcalc.exactseries import TruncatedSeries
from operadcalc.gs import (
    NONNEGATIVE,
    bound_series,
    euler_defect,
    euler_defect_from_series,
    gs_binary_root,
    gs_criterion,
    growth_exponent_estimate,
)
from operadcalc.quotient import Presentation
from operadcalc.signature import Signature, parse_lincomb

BIN = Signature({"m": 2})


def S(*cs, order=12):
    return TruncatedSeries(cs, order)


def test_free_binary_is_nonnegative():
    rep = gs_criterion(S(0, 0, 1), S(0), 12)
    assert rep.verdict == NONNEGATIVE and rep.first_negative is None
    assert rep.criterion_series.coeffs == (1,) * 13


def test_cubic_relation_goes_negative_at_three():
    rep = gs_criterion(S(0, 0, 1), S(0, 0, 0, 1), 12)
    assert rep.verdict == "NegativeAt(3)"
    # 1/(1 - z + z^2) has period six
    assert rep.criterion_series.coeffs[:7] == (1, 1, 0, -1, -1, 0, 1)


def test_report_json_shape():
    doc = gs_criterion(S(0, 0, 2), S(0, 0, 1), 4).to_json()
    assert doc["criterion"] == ["1", "1", "1", "1", "1"]
    assert set(doc) >= {"criterion", "verdict", "first_negative", "euler_defect", "bound"}


def test_bad_input():
    with pytest.raises(MalformedInput):
        gs_criterion(S(0, 1, 1), S(0), 8)
    with pytest.raises(MalformedInput):
        gs_criterion(S(0, 0, 1), S(0), 1)


def test_binary_root_brackets():
    br = gs_binary_root(S(0, 0, 2), S(0))
    assert br.lo < Fraction(1, 2) < br.hi and br.derivative_nonzero
    # 1 - 2z + z^2/2 vanishes at 2 - sqrt 2
    br = gs_binary_root(S(0, 0, 2), S(0, 0, 0, Fraction(1, 2)))
    assert br.lo < Fraction(2) - Fraction(14142135, 10**7) < br.hi
    assert gs_binary_root(S(0, 0, 1), S(0, 0, 0, 1), (Fraction(0), Fraction(1))) is None
    with pytest.raises(MalformedInput):
        gs_binary_root(S(0, 0, 1, 1), S(0))


def test_euler_defect_of_associativity():
    ass = Presentation(BIN, (parse_lincomb("m(m(1,2),3) - m(1,m(2,3))", BIN),))
    d = euler_defect(ass, S(0, 0, 1, order=6), S(0, 0, 0, 1, order=6), 6)
    assert [int(c) for c in d.coeffs] == [0, 0, 0, 0, 1, 3, 6]


def test_euler_defect_of_commutativity_vanishes():
    com = Presentation(BIN, (parse_lincomb("m(1,2) - m(2,1)", BIN),))
    d = euler_defect(com, S(0, 0, 1, order=6), S(0, 0, Fraction(1, 2), order=6), 6)
    assert not any(d.coeffs)


def test_euler_defect_from_closed_form():
    # P = z/(1-z) for associativity, to a higher order without quotient computations
    P = TruncatedSeries([0] + [1] * 10)
    d = euler_defect_from_series(P, S(0, 0, 1, order=10), S(0, 0, 0, 1, order=10), 10)
    assert [int(c) for c in d.coeffs] == [0, 0, 0, 0, 1, 3, 6, 10, 15, 21, 28]


def test_bound_series():
    catalan = bound_series(S(0, 0, 1, order=8), S(0, order=8), 8)
    assert [int(c) for c in catalan.coeffs] == [0, 1, 1, 2, 5, 14, 42, 132, 429]
    q = bound_series(S(0, 0, 1, order=6), S(0, 0, 0, 1, order=6), 6)
    assert q.coeffs[:4] == (0, 1, 1, 1)


def test_growth_estimate():
    est = growth_exponent_estimate([(n, d) for n, d in enumerate([1, 2, 6, 24, 120], 1)])
    assert est.ratio == 5 and est.superexponential and est.heuristic
    flat = growth_exponent_estimate([(1, 1), (2, 2), (3, 4), (4, 8)])
    assert flat.ratio == 2 and not flat.superexponential
    with pytest.raises(InsufficientData):
        growth_exponent_estimate([(1, 1), (2, 2)])


def test_euler_defect_of_burnside_presentation():
    from operadcalc.kurosh import strong_construct
    from operadcalc.quotient import minimal_relation_series

    cert = strong_construct(Signature({"a": 2, "b": 2}), 1, 4, 12)
    pres = cert.presentation
    X = S(0, 0, 2, order=6)
    d = euler_defect(pres, X, minimal_relation_series(pres, 6), 6)
    assert all(c >= 0 for c in d.coeffs)


@pytest.mark.parametrize(
    "relation, R",
    [("m(m(1,2),3) - m(1,m(2,3))", S(0, 0, 0, 1, order=6)), ("m(1,2) - m(2,1)", S(0, 0, Fraction(1, 2), order=6))],
    ids=["ass", "com"],
)
def test_quotient_dominates_bound_series(relation, R):
    from operadcalc.quotient import quotient_dim_series

    pres = Presentation(BIN, (parse_lincomb(relation, BIN),))
    P = quotient_dim_series(pres, 6)
    Q = bound_series(S(0, 0, 1, order=6), R, 6)
    assert all(p >= q for p, q in zip(P.coeffs, Q.coeffs))
