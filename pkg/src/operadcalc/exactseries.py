"""
Truncated formal power series over the rationals.

A ``TruncatedSeries`` of order N carries the coefficients c_0..c_N exactly
(as ``fractions.Fraction``).  Binary operations truncate to the smaller of
the two orders instead of failing, so pipelines compose freely.  Whether a
series is read as an ordinary or an exponential generating function is up
to the caller; ``from_dims`` / ``to_dims`` convert between component
dimensions and EGF coefficients (c_n = dim / n!).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Iterable, Optional

from .errors import NonzeroInnerConstant, NotReversible, ParseError, ZeroConstantTerm

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class TruncatedSeries:
    """c_0 + c_1 z + ... + c_N z^N, known exactly up to z^N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (), order: Optional[int] = None):
        cs = [as_fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("a series needs at least one coefficient")
        cs = cs[: order + 1]
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    @classmethod
    def monomial(cls, n: int, order: int, coeff=1) -> "TruncatedSeries":
        cs = [ZERO] * (order + 1)
        if n <= order:
            cs[n] = as_fraction(coeff)
        return cls(cs, order)

    @classmethod
    def from_dims(cls, dims, order: int) -> "TruncatedSeries":
        """EGF from component dimensions, given as a list indexed by n or a dict."""
        if not isinstance(dims, dict):
            dims = dict(enumerate(dims))
        cs = [ZERO] * (order + 1)
        for n, d in dims.items():
            if n <= order:
                cs[n] = Fraction(d, factorial(n))
        return cls(cs, order)

    def to_dims(self) -> list:
        """Inverse of ``from_dims``: n! * c_n for every n."""
        return [c * factorial(n) for n, c in enumerate(self.coeffs)]

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries([{format_series(self)}])"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order} by truncation")
        return TruncatedSeries(self.coeffs, order)

    def pad(self, order: int) -> "TruncatedSeries":
        """Read as a polynomial: missing coefficients are zero.  May also truncate."""
        return TruncatedSeries(self.coeffs, order)

    def shift_down(self) -> "TruncatedSeries":
        """Divide by z; the constant term must vanish."""
        if self.coeffs[0] != 0:
            raise ValueError("series is not divisible by z")
        if self.order == 0:
            return TruncatedSeries((), 0)
        return TruncatedSeries(self.coeffs[1:], self.order - 1)

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by z (exactly known one order further)."""
        return TruncatedSeries((ZERO,) + self.coeffs, self.order + 1)

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries((), 0)
        return TruncatedSeries([n * c for n, c in enumerate(self.coeffs)][1:], self.order - 1)

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries((as_fraction(other),), self.order)
        return series_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries((as_fraction(other),), self.order)
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        k = as_fraction(other)
        return TruncatedSeries([k * c for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return series_reciprocal(self) ** (-k)
        result = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = series_mul(result, base)
            base = series_mul(base, base)
            k >>= 1
        return result

    def __call__(self, inner):
        if isinstance(inner, TruncatedSeries):
            return series_compose(self, inner)
        return evaluate(self, inner)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries([a.coeffs[k] + b.coeffs[k] for k in range(n + 1)])


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = [ZERO] * (n + 1)
    for i in range(n + 1):
        ai = ac[i]
        if not ai:
            continue
        for j in range(n + 1 - i):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries(out)


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
    ac = a.coeffs
    out = [ONE / a0]
    for n in range(1, a.order + 1):
        s = sum((ac[k] * out[n - k] for k in range(1, n + 1) if ac[k]), ZERO)
        out.append(-s / a0)
    return TruncatedSeries(out)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(z)) by Horner's scheme; inner must have zero constant term."""
    if inner.coeffs[0] != 0:
        raise NonzeroInnerConstant("inner series must have zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    result = TruncatedSeries((outer.coeffs[n],), n)
    for k in range(n - 1, -1, -1):
        result = series_mul(result, inner)
        result = TruncatedSeries((result.coeffs[0] + outer.coeffs[k],) + result.coeffs[1:])
    return result


def series_reversion(a: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse by Lagrange inversion.

    [z^n] b = (1/n) [w^(n-1)] (w / a(w))^n
    """
    if a.order < 1 or a.coeffs[0] != 0 or a.coeffs[1] == 0:
        raise NotReversible("reversion needs a_0 = 0 and a_1 != 0")
    N = a.order
    h = series_reciprocal(a.shift_down())  # w / a(w), order N-1
    out = [ZERO]
    power = TruncatedSeries.one(h.order)
    for n in range(1, N + 1):
        power = series_mul(power, h)
        out.append(power.coeffs[n - 1] / n)
    return TruncatedSeries(out)


def first_negative_coefficient(a: TruncatedSeries) -> Optional[int]:
    for n, c in enumerate(a.coeffs):
        if c < 0:
            return n
    return None


def evaluate(a: TruncatedSeries, x) -> Fraction:
    x = as_fraction(x)
    acc = ZERO
    for c in reversed(a.coeffs):
        acc = acc * x + c
    return acc


def z_series(order: int) -> TruncatedSeries:
    return TruncatedSeries.monomial(1, order)


# literal syntax: comma separated rationals "p/q" in degree order

_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text.strip()!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text.strip()!r}")
    return Fraction(num, den)


def parse_series(text: str, order: Optional[int] = None) -> TruncatedSeries:
    """Parse ``"1, -1, 1/2"``; with ``order`` the literal is padded as a polynomial."""
    parts = text.split(",")
    coeffs = []
    pos = 0
    for part in parts:
        try:
            coeffs.append(parse_rational(part))
        except ParseError:
            raise ParseError(f"bad series coefficient {part.strip()!r}", pos=pos) from None
        pos += len(part) + 1
    return TruncatedSeries(coeffs, order)


def format_rational(x: Fraction) -> str:
    return str(x)


def format_series(a: TruncatedSeries) -> str:
    return ", ".join(format_rational(c) for c in a.coeffs)
