"""Acceptance criteria 1-10, each at its stated tolerance and time limit.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from operadcalc.exactseries import TruncatedSeries, series_compose, series_mul, series_reciprocal, series_reversion
from operadcalc.freeoperad import compose_at, enumerate_basis, free_dim_series
from operadcalc.gs import NONNEGATIVE, euler_defect, gs_criterion
from operadcalc.kurosh import branch_relations, strong_construct, verify_construction, weak_construct
from operadcalc.quotient import Presentation, quotient_dim, reduce
from operadcalc.signature import LinComb, Signature, parse_lincomb, parse_term

import oracles

BIN = Signature({"m": 2})


def ass():
    return Presentation(BIN, (parse_lincomb("m(m(1,2),3) - m(1,m(2,3))", BIN),))


def com():
    return Presentation(BIN, (parse_lincomb("m(1,2) - m(2,1)", BIN),))


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


@pytest.mark.acceptance(1)
def test_free_operad_counts():
    with Timer(60):
        f = free_dim_series(BIN, 7)
        counts = [len(enumerate_basis(BIN, n)) for n in range(1, 8)]
    assert counts == [1, 2, 12, 120, 1680, 30240, 665280]
    assert counts == [factorial(n) * comb(2 * n - 2, n - 1) // n for n in range(1, 8)]
    assert counts == [factorial(n) * f[n] for n in range(1, 8)]


@pytest.mark.acceptance(2)
def test_associative_quotient():
    with Timer(120):
        dims = [quotient_dim(ass(), n) for n in range(2, 6)]
    assert dims == [2, 6, 24, 120]


@pytest.mark.acceptance(3)
def test_commutative_quotient():
    dims = [quotient_dim(com(), n) for n in range(2, 6)]
    assert dims == [oracles.double_factorial(2 * n - 3) for n in range(2, 6)] == [1, 3, 15, 105]


@pytest.mark.acceptance(4)
def test_gs_criterion_checks():
    X = TruncatedSeries([0, 0, 1], 13)
    free = gs_criterion(X, TruncatedSeries.zero(13), 12)
    assert free.verdict == NONNEGATIVE and free.criterion_series.coeffs == (1,) * 13
    cubic = gs_criterion(X, TruncatedSeries.monomial(3, 13), 12)
    assert cubic.first_negative == 3 and cubic.verdict == "NegativeAt(3)"
    # (1 - z + z^2)(1 + z) = 1 + z^3
    closed = series_mul(TruncatedSeries([1, 1], 12), series_reciprocal(TruncatedSeries([1, 0, 0, 1], 12)))
    assert cubic.criterion_series == closed


@pytest.mark.acceptance(5)
def test_euler_defect_of_ass():
    d = euler_defect(ass(), TruncatedSeries([0, 0, 1], 6), TruncatedSeries([0, 0, 0, 1], 6), 6)
    assert list(d.coeffs) == [0, 0, 0, 0, 1, 3, 6]
    closed = series_mul(TruncatedSeries.monomial(4, 6), series_reciprocal(TruncatedSeries([1, -1], 6)) ** 3)
    assert d == closed and all(c >= 0 for c in d.coeffs)


def _random_series(rnd, order, first):
    cs = [first] + [Fraction(rnd.randint(-9, 9), rnd.randint(1, 9)) for _ in range(order)]
    return TruncatedSeries(cs)


@pytest.mark.acceptance(6)
def test_series_laws():
    rnd = random.Random(20240601)
    order = 8
    z = TruncatedSeries.monomial(1, order)
    with Timer(10):
        for _ in range(100):
            a = _random_series(rnd, order, Fraction(rnd.choice([-3, -1, 1, 2]), rnd.randint(1, 4)))
            assert series_mul(a, series_reciprocal(a)) == TruncatedSeries.one(order)
            b = _random_series(rnd, order, Fraction(0))
            if b[1] == 0:
                b = b + z
            r = series_reversion(b)
            assert series_compose(b, r) == z and series_compose(r, b) == z
        f = TruncatedSeries([0] + [1] * 12)
        assert series_reversion(f).coeffs == tuple([0] + [(-1) ** (n + 1) for n in range(1, 13)])


@pytest.mark.acceptance(7)
def test_weak_construction():
    with Timer(300):
        cert = weak_construct(BIN, 3, 12)
        ts = [p.arity for p in cert.processed]
        assert len(ts) == 3 and ts[0] < ts[1] < ts[2]
        assert cert.gs_report.verdict == NONNEGATIVE and cert.gs_report.order == 12
        assert all(c >= 0 for c in cert.gs_report.criterion_series.coeffs)
        for rel in cert.presentation.relations:
            assert not rel.is_zero()
            assert reduce(cert.presentation, rel).is_zero()


@pytest.mark.acceptance(8)
def test_burnside_construction():
    sig = Signature({"a": 2, "b": 2})
    with Timer(600):
        cert = strong_construct(sig, 1, 6, 12)
        report = verify_construction(cert, 6)
    assert report.passed, report.to_json()
    names = [c.name for c in report.clauses]
    assert {"a", "c"} <= set(names)
    detail = {c.name: c.detail for c in report.clauses}
    assert "6:" in detail["a"]


@pytest.mark.acceptance(9)
def test_branch_counts():
    p2 = parse_term("m(1,2)", BIN)
    p3 = parse_term("t(1,2,3)", Signature({"t": 3}))
    assert [len(set(branch_relations(p2, d))) for d in range(1, 6)] == [2 ** (d - 1) for d in range(1, 6)]
    assert [len(set(branch_relations(p3, d))) for d in range(1, 4)] == [3 ** (d - 1) for d in range(1, 4)]


@pytest.mark.acceptance(10)
def test_ideal_two_sidedness():
    rnd = random.Random(7)
    contexts = {k: enumerate_basis(BIN, k).terms for k in (2, 3)}
    presentations = [ass(), com()]
    for _ in range(200):
        pres = rnd.choice(presentations)
        (r,) = pres.relations
        ctx = LinComb.of(rnd.choice(contexts[rnd.choice((2, 3))]))
        if rnd.random() < 0.5:
            v = compose_at(ctx, rnd.randint(1, ctx.arity), r)
        else:
            v = compose_at(r, rnd.randint(1, r.arity), ctx)
        perm = list(range(1, v.arity + 1))
        rnd.shuffle(perm)
        v = v.relabel((None,) + tuple(perm))
        assert reduce(pres, v).is_zero()
