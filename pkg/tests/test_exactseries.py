from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from operadcalc.errors import NonzeroInnerConstant, NotReversible, ParseError, ZeroConstantTerm
from operadcalc.exactseries import (
    TruncatedSeries,
    evaluate,
    first_negative_coefficient,
    format_series,
    parse_series,
    series_compose,
    series_mul,
    series_reciprocal,
    series_reversion,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
ORDER = 8


def series(first=None):
    tail = st.lists(rationals, min_size=ORDER, max_size=ORDER)
    if first is None:
        return st.tuples(rationals, tail).map(lambda p: TruncatedSeries([p[0], *p[1]]))
    return st.tuples(first, tail).map(lambda p: TruncatedSeries([p[0], *p[1]]))


nonzero = rationals.filter(bool)


def z(order=ORDER):
    return TruncatedSeries.monomial(1, order)


def test_geometric_reciprocal():
    s = series_reciprocal(TruncatedSeries([1, -1], 6))
    assert s.coeffs == (1,) * 7


def test_reversion_of_geometric_shift():
    # z/(1-z) reverts to z/(1+z)
    f = TruncatedSeries([0] + [1] * 12)
    g = series_reversion(f)
    assert g.coeffs == tuple([0] + [(-1) ** (n + 1) for n in range(1, 13)])


def test_catalan_reversion():
    g = series_reversion(TruncatedSeries([0, 1, -1], 10))
    assert [int(c) for c in g.coeffs[1:]] == [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]


def test_orders_take_minimum():
    a = TruncatedSeries([1, 2, 3])
    b = TruncatedSeries([1, 1, 1, 1, 1])
    assert (a + b).order == 2
    assert series_mul(a, b).order == 2


def test_errors():
    with pytest.raises(ZeroConstantTerm):
        series_reciprocal(TruncatedSeries([0, 1]))
    with pytest.raises(NonzeroInnerConstant):
        series_compose(TruncatedSeries([1, 1]), TruncatedSeries([1, 1]))
    with pytest.raises(NotReversible):
        series_reversion(TruncatedSeries([0, 0, 1]))
    with pytest.raises(TypeError):
        TruncatedSeries([0.5])


def test_parse_and_format():
    s = parse_series("1, -1, 1/2")
    assert s.coeffs == (1, -1, Fraction(1, 2))
    assert format_series(s) == "1, -1, 1/2"
    assert parse_series("0, 1", 4).coeffs == (0, 1, 0, 0, 0)
    with pytest.raises(ParseError) as info:
        parse_series("1, x, 2")
    assert info.value.pos == 2


def test_dims_round_trip():
    s = TruncatedSeries.from_dims([0, 1, 2, 6, 24], 4)
    assert s.coeffs == (0, 1, 1, 1, 1)
    assert s.to_dims() == [0, 1, 2, 6, 24]


def test_first_negative_and_evaluate():
    s = TruncatedSeries([1, 1, 0, -1])
    assert first_negative_coefficient(s) == 3
    assert evaluate(s, Fraction(1, 2)) == Fraction(11, 8)


@settings(max_examples=60, deadline=None)
@given(series(nonzero))
def test_reciprocal_inverse_law(a):
    assert series_mul(a, series_reciprocal(a)) == TruncatedSeries.one(ORDER)


@settings(max_examples=60, deadline=None)
@given(series(st.just(Fraction(0))).filter(lambda s: s.coeffs[1] != 0))
def test_reversion_inverse_law(a):
    b = series_reversion(a)
    assert series_compose(a, b) == z()
    assert series_compose(b, a) == z()


@settings(max_examples=40, deadline=None)
@given(series(), series(st.just(Fraction(0))), series(st.just(Fraction(0))))
def test_compose_associative(f, g, h):
    assert series_compose(series_compose(f, g), h) == series_compose(f, series_compose(g, h))


@settings(max_examples=40, deadline=None)
@given(series(), series(), series(st.just(Fraction(0))))
def test_compose_is_a_ring_map(f, g, h):
    assert series_compose(series_mul(f, g), h) == series_mul(series_compose(f, h), series_compose(g, h))


@given(series())
def test_literal_round_trip(a):
    assert parse_series(format_series(a)) == a
