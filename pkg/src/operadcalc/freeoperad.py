"""
The free operad on a signature.

Basis elements of arity n are trees whose internal nodes are generators and
whose leaves carry the variables 1..n, each exactly once.  The S_n action
relabels leaves; generators carry no symmetry of their own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, List

from .errors import BudgetExceeded, IndexOutOfRange, PreconditionViolated
from .exactseries import TruncatedSeries, series_add, series_mul
from .linalg import Echelon
from .signature import LinComb, Node, Signature, relabel, term_arity

DEFAULT_TERM_BUDGET = 10**6


@dataclass(frozen=True)
class ComponentBasis:
    arity: int
    terms: tuple
    index: Dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


def free_dim_series(sig: Signature, order: int) -> TruncatedSeries:
    """Solve f = z + sum_k |Omega(k)| f^k degree by degree."""
    counts = {k: sig.count(k) for k in sig.by_arity}
    f = TruncatedSeries.monomial(1, order)
    for _ in range(order):
        acc = TruncatedSeries.monomial(1, order)
        power = f
        for k in range(2, max(counts, default=1) + 1):
            power = series_mul(power, f)
            if counts.get(k):
                acc = series_add(acc, power * counts[k])
        f = acc
    return f


def free_dims(sig: Signature, order: int) -> List[int]:
    """dim Gamma(X)(n) for n = 0..order (index 0 is 0)."""
    return [int(d) for d in free_dim_series(sig, order).to_dims()]


def planar_shapes(sig: Signature, n: int) -> list:
    """Trees with leaves labeled 1..n from left to right."""
    return [t for t in _planar(sig, n)]


def _planar(sig, n, offset=0):
    if n == 1:
        yield offset + 1
        return
    for name in sig.names:
        k = sig.arity[name]
        if k > n:
            continue
        for sizes in _compositions(n, k):
            subs = []
            off = offset
            for s in sizes:
                subs.append(list(_planar(sig, s, off)))
                off += s
            for children in product(*subs):
                yield Node(name, children)


def _compositions(n, k):
    """Ordered k-tuples of positive integers summing to n."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def enumerate_basis(sig: Signature, n: int, budget: int = DEFAULT_TERM_BUDGET) -> ComponentBasis:
    if n < 1:
        raise ValueError("arity must be at least 1")
    count = free_dims(sig, n)[n]
    if count > budget:
        raise BudgetExceeded(f"Gamma(X)({n}) has {count} basis trees, budget is {budget}")
    if n == 1:
        terms = [1]
    else:
        terms = []
        for shape in _planar(sig, n):
            for perm in permutations(range(1, n + 1)):
                terms.append(relabel(shape, (None,) + perm))
        terms.sort(key=sig.key)
    return ComponentBasis(n, tuple(terms), {t: i for i, t in enumerate(terms)})


# ---------------------------------------------------------------- composition

def compose_terms(outer, i: int, inner):
    """outer o_i inner on trees: inner takes labels i..i+m-1, outer's labels > i shift by m-1."""
    m = term_arity(inner)
    return _graft(outer, i, shift_leaves(inner, i - 1), m - 1)


def shift_leaves(t, offset):
    if offset == 0:
        return t
    if isinstance(t, int):
        return t + offset
    return Node(t.op, tuple(shift_leaves(c, offset) for c in t.args))


def _graft(t, i, sub, bump):
    if isinstance(t, int):
        if t == i:
            return sub
        return t + bump if t > i else t
    return Node(t.op, tuple(_graft(c, i, sub, bump) for c in t.args))


def compose_at(outer: LinComb, i: int, inner: LinComb) -> LinComb:
    if not 1 <= i <= outer.arity:
        raise IndexOutOfRange(f"input {i} out of range 1..{outer.arity}")
    d: Dict = {}
    for s, a in outer.terms.items():
        for t, b in inner.terms.items():
            u = compose_terms(s, i, t)
            c = d.get(u, 0) + a * b
            if c:
                d[u] = c
            else:
                del d[u]
    return LinComb._raw(d, outer.arity + inner.arity - 1)


def substitute(outer, children):
    """Full composition outer(c_1, ..., c_k) on trees; input j's block follows inputs < j."""
    offsets = [0]
    for c in children:
        offsets.append(offsets[-1] + term_arity(c))
    subs = [shift_leaves(c, offsets[j]) for j, c in enumerate(children)]
    return relabel(outer, (None,) + tuple(subs))


def identity() -> LinComb:
    return LinComb.of(1)


# ---------------------------------------------------------------- suboperads

def structural_key(t):
    """A total order on trees that needs no signature."""
    if isinstance(t, int):
        return (0, "", t)
    return (1, t.op, tuple(structural_key(c) for c in t.args))


def suboperad_closure(p: LinComb, max_degree: int, budget: int = DEFAULT_TERM_BUDGET) -> Dict[int, List[LinComb]]:
    """Spanning sets, per arity <= max_degree, of the suboperad generated by p.

    Every composite of copies of p arises by grafting one more copy of p on an
    input of a smaller composite, so arity n is spanned by a o_i p with a
    running over the spanning set of arity n - m + 1.  No outer relabeling is
    applied; duplicates are dropped by exact rank.
    """
    out: Dict[int, List[LinComb]] = {1: [identity()]}
    m = p.arity
    if m == 1:
        return out
    if m < 1 or p.is_zero():
        raise PreconditionViolated("p must be a nonzero element of arity >= 2")
    n = m
    while n <= max_degree:
        ech = Echelon(structural_key)
        span = []
        total = 0
        for a in out[n - m + 1]:
            for i in range(1, a.arity + 1):
                v = compose_at(a, i, p)
                total += len(v)
                if total > budget:
                    raise BudgetExceeded(f"closure at arity {n} exceeds {budget} terms")
                if ech.add(v.terms):
                    span.append(v)
        out[n] = span
        n += m - 1
    return out


# ---------------------------------------------------------------- symmetrized powers

def composition_shapes(p_term, copies: int) -> list:
    """All composites of ``copies`` copies of the tree p, one per planar shape."""
    return list(_shapes(p_term, copies))


@lru_cache(maxsize=None)
def _shapes(p_term, copies):
    if copies == 0:
        return (1,)
    m = term_arity(p_term)
    out = []
    for split in _weak_compositions(copies - 1, m):
        for children in product(*(_shapes(p_term, c) for c in split)):
            out.append(substitute(p_term, children))
    return tuple(out)


def _weak_compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _weak_compositions(n - first, k - 1):
            yield (first,) + rest


def symmetrized_power(p: LinComb, copies: int, budget: int = DEFAULT_TERM_BUDGET) -> LinComb:
    """Sum of every multilinear composite of ``copies`` copies of p, over all shapes and labelings."""
    m = p.arity
    if m < 2:
        raise PreconditionViolated("symmetrized power needs arity >= 2")
    if copies < 1:
        raise PreconditionViolated("at least one copy is needed")
    t = copies * (m - 1) + 1
    # shapes of a LinComb: expand multilinearly over the choice of term at each copy
    shapes: Dict = {}
    for combo_shape, coeff in _lincomb_shapes(p, copies):
        shapes[combo_shape] = shapes.get(combo_shape, 0) + coeff
    n_terms = len(shapes) * factorial(t)
    if n_terms > budget:
        raise BudgetExceeded(f"symmetrized power has {n_terms} terms before collection, budget is {budget}")
    d: Dict = {}
    perms = list(permutations(range(1, t + 1)))
    for shape, coeff in shapes.items():
        if not coeff:
            continue
        for perm in perms:
            u = relabel(shape, (None,) + perm)
            c = d.get(u, 0) + coeff
            if c:
                d[u] = c
            else:
                del d[u]
    return LinComb._raw(d, t)


def _lincomb_shapes(p: LinComb, copies: int):
    if len(p.terms) == 1:
        (term, c), = p.terms.items()
        scale = c ** copies
        for s in _shapes(term, copies):
            yield s, scale
        return
    # general combination: each copy picks its own term
    items = list(p.terms.items())
    yield from _mixed_shapes(items, copies)


def _mixed_shapes(items, copies):
    if copies == 0:
        yield 1, Fraction(1)
        return
    m = term_arity(items[0][0])
    for term, c in items:
        for split in _weak_compositions(copies - 1, m):
            subs = [list(_mixed_shapes(items, k)) for k in split]
            for children in product(*subs):
                coeff = c
                for _, cc in children:
                    coeff *= cc
                yield substitute(term, [ch for ch, _ in children]), coeff
