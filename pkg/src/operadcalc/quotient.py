"""
Finitely presented operads Gamma(X)/(R).

The ideal I generated by R satisfies, arity by arity,

    I(n) = sum_g g(Gamma, .., I, .., Gamma)(n)  +  (R o Gamma)(n)

(either the root of a composite lies above the relation, or the relation
sits at the root with trees plugged into its inputs).  Hence the quotient
Q(n) is the "top space" spanned by g(b_1, .., b_k) with each b_j a normal
form of lower arity on its block of labels, modulo the span of the root
images r(b_1, .., b_k).  Each component is one sparse elimination over that
top space; pivots are the largest trees in the canonical order, and the
non-pivot trees form the normal-form basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import factorial
from typing import Dict, List, Optional, Tuple

from .errors import BudgetExceeded, MalformedInput, PreconditionViolated
from .exactseries import TruncatedSeries
from .freeoperad import DEFAULT_TERM_BUDGET, _compositions, enumerate_basis, suboperad_closure
from .linalg import Echelon
from .signature import (
    LinComb,
    Node,
    Signature,
    leaves,
    parse_presentation_text,
    relabel,
    render_presentation_text,
    standardize,
    tensor_node,
    term_arity,
)

DEFAULT_MAX_ARITY = 8
ONE = Fraction(1)


@dataclass(frozen=True)
class Presentation:
    sig: Signature
    relations: Tuple[LinComb, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            if r.is_zero():
                raise MalformedInput("relations must be nonzero")
            if r.arity < 2:
                raise MalformedInput("relations must have arity >= 2")
            for t in r.terms:
                _check_term(self.sig, t, r.arity)

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        sig, rels = parse_presentation_text(text)
        return cls(sig, tuple(rels))

    def to_text(self) -> str:
        return render_presentation_text(self.sig, self.relations)

    def with_relations(self, extra) -> "Presentation":
        return Presentation(self.sig, self.relations + tuple(extra))

    @cached_property
    def engine(self) -> "QuotientEngine":
        return QuotientEngine(self)


def _check_term(sig, t, arity):
    labs = leaves(t)
    if sorted(labs) != list(range(1, arity + 1)):
        raise MalformedInput(f"relation term is not multilinear of arity {arity}")
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, int):
            continue
        if sig.arity.get(s.op) != len(s.args):
            raise MalformedInput(f"generator {s.op!r} is unknown or used with the wrong arity")
        stack.extend(s.args)


@dataclass(frozen=True)
class IdealComponent:
    arity: int
    basis: Tuple[LinComb, ...] = field(repr=False)
    dim: int


def _set_partitions(labels, k):
    """Partitions of ``labels`` into k nonempty blocks, blocks ordered by least element."""
    n = len(labels)

    def rec(i, blocks):
        if n - i < k - len(blocks):
            return
        if i == n:
            if len(blocks) == k:
                yield tuple(tuple(b) for b in blocks)
            return
        x = labels[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < k:
            blocks.append([x])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def _ordered_partitions(n, k):
    """Surjections {1..n} -> {1..k} as tuples of blocks in input order."""
    for assign in product(range(k), repeat=n):
        blocks = [[] for _ in range(k)]
        for lab, j in enumerate(assign, 1):
            blocks[j].append(lab)
        if all(blocks):
            yield tuple(tuple(b) for b in blocks)


def _multinomial(n, parts):
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def relabeling_orbit(r: LinComb, sig: Signature, budget: int = DEFAULT_TERM_BUDGET) -> List[LinComb]:
    """Distinct (up to scalar) relabelings of r, found by closing under adjacent transpositions."""
    n = r.arity

    def normal(v: LinComb) -> LinComb:
        lead = max(v.terms, key=sig.key)
        return v * (1 / v.terms[lead])

    start = normal(r)
    seen = {start}
    out = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(1, n):
                swap = list(range(n + 1))
                swap[i], swap[i + 1] = i + 1, i
                w = normal(v.relabel(swap))
                if w not in seen:
                    seen.add(w)
                    out.append(w)
                    nxt.append(w)
                    if len(out) * len(r.terms) > budget:
                        raise BudgetExceeded("relabeling orbit of a relation exceeds the term budget")
        frontier = nxt
    return out


class QuotientEngine:
    """Normal forms and component dimensions of one presentation, built lazily by arity."""

    def __init__(self, pres: Presentation, max_arity: int = DEFAULT_MAX_ARITY, budget: int = DEFAULT_TERM_BUDGET):
        self.pres = pres
        self.sig = pres.sig
        self.max_arity = max_arity
        self.budget = budget
        self._ech: Dict[int, Echelon] = {1: Echelon(self.sig.key)}
        self._dims: Dict[int, int] = {1: 1}
        self._top_dims: Dict[int, int] = {1: 1}
        self._basis: Dict[int, tuple] = {1: (1,)}
        self._memo: Dict[object, Dict] = {}
        self._orbits: Dict[int, List[LinComb]] = {}
        self._new_relations: Dict[int, int] = {1: 0}
        self.built = 1

    # -- sizes

    def top_dim(self, n: int) -> int:
        self.ensure(n)
        return self._top_dims[n]

    def dim(self, n: int) -> int:
        self.ensure(n)
        return self._dims[n]

    def rank(self, n: int) -> int:
        """Rank of the root relation images in the top space at arity n."""
        self.ensure(n)
        return self._ech[n].rank

    def minimal_relation_dim(self, n: int) -> int:
        """dim of the arity-n part of a minimal relation S-module.

        That is the rank the arity-n relations add on top of the ideal
        generated by the relations of smaller arity.
        """
        self.ensure(n)
        return self._new_relations[n]

    def _compute_top_dim(self, n: int) -> int:
        total = 0
        for name in self.sig.names:
            k = self.sig.arity[name]
            if k > n:
                continue
            for sizes in _compositions(n, k):
                term = _multinomial(n, sizes)
                for s in sizes:
                    term *= self._dims[s]
                total += term
        return total

    # -- building

    def ensure(self, n: int):
        if n <= self.built:
            return
        if n > self.max_arity:
            raise BudgetExceeded(f"arity {n} exceeds the component budget {self.max_arity}")
        for m in range(self.built + 1, n + 1):
            self._build(m)
            self.built = m

    def _orbit(self, i: int) -> List[LinComb]:
        if i not in self._orbits:
            self._orbits[i] = relabeling_orbit(self.pres.relations[i], self.sig, self.budget)
        return self._orbits[i]

    def _build(self, n: int):
        self._top_dims[n] = self._compute_top_dim(n)
        ech = Echelon(self.sig.key)
        self._ech[n] = ech
        work = 0
        labels = tuple(range(1, n + 1))
        order = sorted(range(len(self.pres.relations)), key=lambda i: self.pres.relations[i].arity)
        lower_rank = None
        for i in order:
            r = self.pres.relations[i]
            k = r.arity
            if k > n:
                continue
            if k == n and lower_rank is None:
                lower_rank = ech.rank
            orbit = self._orbit(i)
            for blocks in _set_partitions(labels, k):
                choices = [self._block_basis(b) for b in blocks]
                for plugged in product(*choices):
                    mapping = (None,) + plugged
                    for rho in orbit:
                        work += len(rho.terms)
                        if work > self.budget:
                            raise BudgetExceeded(f"relation images at arity {n} exceed the term budget {self.budget}")
                        ech.add(self._image(rho, mapping))
        if lower_rank is None:
            lower_rank = ech.rank
        self._new_relations[n] = ech.rank - lower_rank
        self._dims[n] = self._top_dims[n] - ech.rank

    def _block_basis(self, block):
        basis = self.basis(len(block))
        if len(block) == 1:
            return (block[0],)
        if block[-1] == len(block):
            return basis
        m = (None,) + block
        return tuple(relabel(b, m) for b in basis)

    def _image(self, rho: LinComb, mapping) -> Dict:
        out: Dict = {}
        for t, c in rho.terms.items():
            s = relabel(t, mapping)
            for u, x in tensor_node(s.op, [self.nf(ch) for ch in s.args]).items():
                y = out.get(u, 0) + c * x
                if y:
                    out[u] = y
                else:
                    del out[u]
        return out

    # -- normal forms

    def nf(self, t) -> Dict:
        """Normal form of a tree, as {normal tree: coefficient}."""
        if isinstance(t, int):
            return {t: ONE}
        s, labels = standardize(t)
        res = self._memo.get(s)
        if res is None:
            m = term_arity(s)
            if m > self.built:
                self.ensure(m)
            top = tensor_node(s.op, [self.nf(ch) for ch in s.args])
            res = self._ech[m].reduce(top)
            self._memo[s] = res
        if labels is None:
            return res
        back = (None,) + labels
        return {relabel(u, back): c for u, c in res.items()}

    def reduce(self, v: LinComb) -> LinComb:
        out: Dict = {}
        for t, c in v.terms.items():
            for u, x in self.nf(t).items():
                y = out.get(u, 0) + c * x
                if y:
                    out[u] = y
                else:
                    del out[u]
        return LinComb._raw(out, v.arity)

    def basis(self, n: int) -> tuple:
        """Normal-form basis of Q(n), in canonical order."""
        if n in self._basis:
            return self._basis[n]
        self.ensure(n)
        if self._top_dims[n] > self.budget:
            raise BudgetExceeded(f"top space at arity {n} has {self._top_dims[n]} elements, budget is {self.budget}")
        pivots = self._ech[n].rows
        out = []
        for name in self.sig.names:
            k = self.sig.arity[name]
            if k > n:
                continue
            for blocks in _ordered_partitions(n, k):
                for children in product(*(self._block_basis(b) for b in blocks)):
                    t = Node(name, children)
                    if t not in pivots:
                        out.append(t)
        out.sort(key=self.sig.key)
        assert len(out) == self._dims[n]
        self._basis[n] = tuple(out)
        return self._basis[n]


# ---------------------------------------------------------------- public operations

def _engine(pres: Presentation, max_arity=None, budget=None) -> QuotientEngine:
    eng = pres.engine
    if max_arity is not None:
        eng.max_arity = max(eng.max_arity, max_arity)
    if budget is not None:
        eng.budget = budget
    return eng


def quotient_dim(pres: Presentation, n: int, max_arity=None, budget=None) -> int:
    return _engine(pres, max_arity, budget).dim(n)


def quotient_dim_series(pres: Presentation, order: int, max_arity=None, budget=None) -> TruncatedSeries:
    eng = _engine(pres, max_arity, budget)
    return TruncatedSeries.from_dims({n: eng.dim(n) for n in range(1, order + 1)}, order)


def reduce(pres: Presentation, v: LinComb, max_arity=None, budget=None) -> LinComb:
    return _engine(pres, max_arity, budget).reduce(v)


def ideal_component(pres: Presentation, n: int, max_arity=None, budget=DEFAULT_TERM_BUDGET) -> IdealComponent:
    """Reduced echelon basis of I(n) inside Gamma(X)(n): t - nf(t) for every non-normal tree t."""
    eng = _engine(pres, max_arity, budget)
    eng.ensure(n)
    rows = []
    for t in enumerate_basis(pres.sig, n, budget):
        v = eng.nf(t)
        if len(v) == 1 and v.get(t) == 1:
            continue
        row = {t: ONE}
        for u, c in v.items():
            row[u] = row.get(u, 0) - c
        rows.append(LinComb._raw({u: c for u, c in row.items() if c}, n))
    rows.reverse()
    return IdealComponent(n, tuple(rows), len(rows))


def minimal_relation_series(pres: Presentation, order: int, max_arity=None, budget=None) -> TruncatedSeries:
    """EGF of a minimal generating S-module of the ideal (the R of the criterion)."""
    arities = sorted({r.arity for r in pres.relations if r.arity <= order})
    eng = _engine(pres, max(arities, default=1) if max_arity is None else max_arity, budget)
    # arities without relations contribute nothing
    return TruncatedSeries.from_dims({n: eng.minimal_relation_dim(n) for n in arities}, order)


def relation_module_series(pres: Presentation, order: int) -> TruncatedSeries:
    """EGF of the S-module spanned by the given relations (their relabelings)."""
    dims = {}
    for n in range(2, order + 1):
        ech = Echelon(pres.sig.key)
        for r in pres.relations:
            if r.arity == n:
                for v in relabeling_orbit(r, pres.sig):
                    ech.add(v.terms)
        dims[n] = ech.rank
    return TruncatedSeries.from_dims(dims, order)


@dataclass
class NilpotencyReport:
    nilpotent_by: Optional[int]
    component_dims: Dict[int, int]


def is_nilpotent_element(pres: Presentation, p: LinComb, max_degree: int, max_arity=None, budget=None) -> NilpotencyReport:
    if p.arity < 2:
        raise PreconditionViolated("nilpotency is tested for elements of arity >= 2")
    eng = _engine(pres, max(max_degree, max_arity or 0), budget)
    closure = suboperad_closure(p, max_degree, eng.budget)
    dims = {}
    for n in sorted(closure):
        if n < 2:
            continue
        ech = Echelon(pres.sig.key)
        for v in closure[n]:
            ech.add(eng.reduce(v).terms)
        dims[n] = ech.rank
    nil = None
    for n in sorted(dims, reverse=True):
        if dims[n]:
            break
        nil = n
    return NilpotencyReport(nil, dims)
