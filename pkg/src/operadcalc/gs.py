"""
Golod-Shafarevich type criterion for infinite operads.

For generators X and relations R (as EGFs), the criterion series is
(1 - X(z)/z + R(z)/z)^(-1).  Nonnegative coefficients certify that the
presented operad is infinite, provided X and R are minimal.  Everything here
is exact and truncated; a verdict only speaks about the computed orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import InsufficientData, MalformedInput
from .exactseries import (
    TruncatedSeries,
    as_fraction,
    evaluate,
    first_negative_coefficient,
    format_rational,
    series_compose,
    series_reciprocal,
)

NONNEGATIVE = "NonNegativeUpToOrder"
TRUNCATION_NOTE = "verdict holds up to the truncation order only"
MINIMALITY_NOTE = "conclusion assumes X and R are minimal generators and relations"


def negative_at(n: int) -> str:
    return f"NegativeAt({n})"


@dataclass
class GSReport:
    criterion_series: TruncatedSeries
    verdict: str
    first_negative: Optional[int]
    euler_defect: Optional[TruncatedSeries] = None
    euler_defect_nonnegative: Optional[bool] = None
    bound: Optional[TruncatedSeries] = None
    notes: Tuple[str, ...] = field(default=(TRUNCATION_NOTE, MINIMALITY_NOTE))

    @property
    def order(self) -> int:
        return self.criterion_series.order

    @property
    def nonnegative(self) -> bool:
        return self.first_negative is None

    def to_json(self) -> dict:
        def ser(s):
            return None if s is None else [format_rational(c) for c in s.coeffs]

        return {
            "criterion": ser(self.criterion_series),
            "verdict": self.verdict,
            "first_negative": self.first_negative,
            "euler_defect": ser(self.euler_defect),
            "euler_defect_nonnegative": self.euler_defect_nonnegative,
            "bound": ser(self.bound),
            "notes": list(self.notes),
        }


def _check_input(X: TruncatedSeries, R: TruncatedSeries):
    for name, s in (("X", X), ("R", R)):
        if any(s.coeffs[:2]):
            raise MalformedInput(f"{name} must have zero constant and linear coefficients")


def phi_series(X: TruncatedSeries, R: TruncatedSeries, order: int) -> TruncatedSeries:
    """1 - X(z)/z + R(z)/z with X and R read as polynomials."""
    _check_input(X, R)
    X = X.pad(order + 1).shift_down()
    R = R.pad(order + 1).shift_down()
    return TruncatedSeries.one(order) - X + R


def gs_criterion(X: TruncatedSeries, R: TruncatedSeries, order: int) -> GSReport:
    if order < 2:
        raise MalformedInput("order must be at least 2")
    series = series_reciprocal(phi_series(X, R, order))
    neg = first_negative_coefficient(series)
    verdict = NONNEGATIVE if neg is None else negative_at(neg)
    return GSReport(series, verdict, neg)


@dataclass
class RootBracket:
    lo: Fraction
    hi: Fraction
    derivative_nonzero: bool


def _sign(x):
    return (x > 0) - (x < 0)


def gs_binary_root(
    X: TruncatedSeries,
    R: TruncatedSeries,
    search_interval: Tuple = (Fraction(0), Fraction(1)),
    grid: int = 256,
) -> Optional[RootBracket]:
    """Bracket the first sign change of phi on a uniform rational grid.

    A grid point where phi vanishes exactly is bracketed by its neighbours.
    The bracket is returned only if the endpoint values have opposite signs;
    ``derivative_nonzero`` says phi' has the same nonzero sign at both ends.
    """
    if any(X.coeffs[k] for k in range(len(X.coeffs)) if k != 2):
        raise MalformedInput("X must be concentrated in arity 2 (binary generators)")
    _check_input(X, R)
    order = max(X.order, R.order)
    phi = phi_series(X, R, order)
    dphi = phi.derivative()
    a, b = (as_fraction(x) for x in search_interval)
    if grid < 1 or not a < b:
        raise MalformedInput("need a < b and a positive grid")
    step = (b - a) / grid
    xs = [a + step * i for i in range(grid + 1)]
    vals = [evaluate(phi, x) for x in xs]
    for i in range(grid):
        lo, hi = None, None
        if vals[i] == 0 and 0 < i:
            lo, hi = i - 1, i + 1
        elif _sign(vals[i]) * _sign(vals[i + 1]) < 0:
            lo, hi = i, i + 1
        if lo is None:
            continue
        if _sign(vals[lo]) * _sign(vals[hi]) >= 0:
            continue
        d_lo, d_hi = evaluate(dphi, xs[lo]), evaluate(dphi, xs[hi])
        return RootBracket(xs[lo], xs[hi], _sign(d_lo) == _sign(d_hi) != 0)
    return None


def euler_defect(pres, X: TruncatedSeries, R: TruncatedSeries, order: int) -> TruncatedSeries:
    """R(P(z)) - X(P(z)) + P(z) - z with P the quotient dimension series."""
    from .quotient import quotient_dim_series

    P = quotient_dim_series(pres, order)
    return euler_defect_from_series(P, X, R, order)


def euler_defect_from_series(P: TruncatedSeries, X: TruncatedSeries, R: TruncatedSeries, order: int) -> TruncatedSeries:
    X, R = X.pad(order), R.pad(order)
    P = P.truncate(order)
    z = TruncatedSeries.monomial(1, order)
    return series_compose(R, P) - series_compose(X, P) + P - z


def bound_series(X: TruncatedSeries, R: TruncatedSeries, order: int) -> TruncatedSeries:
    """Candidate lower bound: the formal solution of Q = z + X(Q) - R(Q)."""
    _check_input(X, R)
    X, R = X.pad(order), R.pad(order)
    z = TruncatedSeries.monomial(1, order)
    Q = z
    for _ in range(order):
        Q = z + series_compose(X, Q) - series_compose(R, Q)
    return Q


@dataclass
class GrowthEstimate:
    ratio: Fraction
    log_rate: float
    superexponential: bool
    heuristic: bool = True


def growth_exponent_estimate(dims: Sequence[Tuple[int, int]]) -> GrowthEstimate:
    """Ratio of the last two dimensions, with ln dim(n)/n and a rising-ratio flag.

    A diagnostic only: nothing is claimed about the limit.
    """
    pts = sorted((int(n), int(d)) for n, d in dims)
    if len(pts) < 3 or any(d <= 0 for _, d in pts):
        raise InsufficientData("need at least three points with positive dimension")
    (n0, d0), (n1, d1), (n2, d2) = pts[-3:]
    ratio = Fraction(d2, d1)
    previous = Fraction(d1, d0)
    return GrowthEstimate(ratio, math.log(d2) / n2, ratio > previous)
