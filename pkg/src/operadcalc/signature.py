"""
Signatures, multilinear tree terms and their rational linear combinations.

A tree term is either a leaf, represented by its variable index (a positive
``int``), or a ``Node(op, args)``.  Terms are plain hashable tuples so they
can key dictionaries; a ``LinComb`` is a dictionary from terms to nonzero
``Fraction`` coefficients with a fixed arity.

Grammar::

    term    := INT | NAME '(' term (',' term)* ')'
    lincomb := ['+'|'-'] sterm (('+'|'-') sterm)*
    sterm   := [RATIONAL '*'] term
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from .errors import (
    ArityMismatch,
    MixedArity,
    NotMultilinear,
    ParseError,
    TermSyntaxError,
    UnknownGenerator,
)
from .exactseries import TruncatedSeries

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Node(NamedTuple):
    op: str
    args: tuple


TreeTerm = Union[int, Node]


def is_leaf(t) -> bool:
    return isinstance(t, int)


def leaves(t) -> List[int]:
    """Leaf labels from left to right."""
    out = []
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, int):
            out.append(s)
        else:
            stack.extend(reversed(s.args))
    return out


def term_arity(t) -> int:
    if isinstance(t, int):
        return 1
    return sum(term_arity(c) for c in t.args)


def num_nodes(t) -> int:
    if isinstance(t, int):
        return 0
    return 1 + sum(num_nodes(c) for c in t.args)


def relabel(t, mapping):
    """Replace every leaf label i by mapping[i] (a dict or a sequence indexed by i)."""
    if isinstance(t, int):
        return mapping[t]
    return Node(t.op, tuple(relabel(c, mapping) for c in t.args))


def shift(t, offset: int):
    if isinstance(t, int):
        return t + offset
    return Node(t.op, tuple(shift(c, offset) for c in t.args))


def standardize(t) -> Tuple[object, Optional[tuple]]:
    """Relabel leaves order-preservingly onto 1..n.

    Returns ``(std, labels)`` where ``labels`` is the sorted original label
    tuple, or ``None`` when ``t`` was already standard.
    """
    labs = sorted(leaves(t))
    if labs[-1] == len(labs):
        return t, None
    back = {lab: i for i, lab in enumerate(labs, 1)}
    return relabel(t, back), tuple(labs)


def unstandardize(t, labels: Optional[tuple]):
    if labels is None:
        return t
    return relabel(t, (None,) + labels)


class Signature:
    """Finite set of named generators, each of arity >= 2.

    Generators are given in order as ``{name: arity}``; that order is the
    generator index used by the canonical term order.
    """

    def __init__(self, generators: Union[Dict[str, int], Iterable[Tuple[str, int]]] = ()):
        items = list(generators.items()) if isinstance(generators, dict) else list(generators)
        self.arity: Dict[str, int] = {}
        for name, k in items:
            if not _NAME.match(name):
                raise ValueError(f"invalid generator name {name!r}")
            if name in self.arity:
                raise ValueError(f"duplicate generator {name!r}")
            if not isinstance(k, int) or k < 2:
                raise ValueError(f"generator {name!r} has arity {k}; constants and unary operations are not allowed")
            self.arity[name] = k
        self.names: Tuple[str, ...] = tuple(self.arity)
        self.index: Dict[str, int] = {name: i for i, name in enumerate(self.names)}
        self._keys: Dict[object, tuple] = {}

    @property
    def by_arity(self) -> Dict[int, Tuple[str, ...]]:
        out: Dict[int, list] = {}
        for name in self.names:
            out.setdefault(self.arity[name], []).append(name)
        return {k: tuple(v) for k, v in sorted(out.items())}

    def count(self, k: int) -> int:
        return sum(1 for name in self.names if self.arity[name] == k)

    @property
    def max_arity(self) -> int:
        return max(self.arity.values(), default=0)

    def __eq__(self, other):
        if isinstance(other, Signature):
            return list(self.arity.items()) == list(other.arity.items())
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.arity.items()))

    def __repr__(self):
        inner = ", ".join(f"{n!r}: {k}" for n, k in self.arity.items())
        return f"Signature({{{inner}}})"

    def key(self, t) -> tuple:
        """Canonical order: arity, then root generator index, then children lexicographically."""
        k = self._keys.get(t)
        if k is None:
            if isinstance(t, int):
                k = (1, -1, t)
            else:
                ck = tuple(self.key(c) for c in t.args)
                k = (sum(c[0] for c in ck), self.index[t.op], ck)
            self._keys[t] = k
        return k

    def clear_cache(self):
        self._keys.clear()


def signature_egf(sig: Signature, order: int) -> TruncatedSeries:
    """X(z): the free S-module on the generators has dim X(k) = k! |Omega(k)|."""
    cs = [0] * (order + 1)
    for name in sig.names:
        k = sig.arity[name]
        if k <= order:
            cs[k] += 1
    return TruncatedSeries(cs, order)


class LinComb:
    """Rational linear combination of tree terms of a common arity."""

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, terms=None, arity: Optional[int] = None):
        d: Dict[object, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for t, c in items:
                c = Fraction(c)
                if c:
                    nc = d.get(t, 0) + c
                    if nc:
                        d[t] = nc
                    else:
                        del d[t]
        if arity is None:
            if not d:
                raise ValueError("arity of an empty combination must be given")
            arity = term_arity(next(iter(d)))
        self.arity = arity
        self.terms = d
        self._hash = None

    @classmethod
    def of(cls, t, coeff=1) -> "LinComb":
        return cls({t: coeff}, term_arity(t))

    @classmethod
    def zero(cls, arity: int) -> "LinComb":
        return cls({}, arity)

    @classmethod
    def _raw(cls, d, arity):
        v = cls.__new__(cls)
        v.arity = arity
        v.terms = d
        v._hash = None
        return v

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self.arity == other.arity and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        body = " + ".join(f"{c}*{render_term(t)}" for t, c in self.terms.items()) or "0"
        return f"LinComb({body}; arity={self.arity})"

    def _check(self, other):
        if self.arity != other.arity:
            raise MixedArity(f"arities {self.arity} and {other.arity} differ")

    def __add__(self, other):
        self._check(other)
        d = dict(self.terms)
        for t, c in other.terms.items():
            nc = d.get(t, 0) + c
            if nc:
                d[t] = nc
            else:
                d.pop(t, None)
        return LinComb._raw(d, self.arity)

    def __neg__(self):
        return LinComb._raw({t: -c for t, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = Fraction(k)
        if not k:
            return LinComb.zero(self.arity)
        return LinComb._raw({t: k * c for t, c in self.terms.items()}, self.arity)

    __rmul__ = __mul__

    def relabel(self, mapping) -> "LinComb":
        return LinComb._raw({relabel(t, mapping): c for t, c in self.terms.items()}, self.arity)

    def sorted_terms(self, sig: Signature):
        return sorted(self.terms.items(), key=lambda tc: sig.key(tc[0]))


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            toks.append(("INT", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("NAME", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "(),+-*/":
                raise TermSyntaxError(f"unexpected character {ch!r}", pos=start, text=text)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("EOF", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            what = tok[1] or "end of input"
            raise TermSyntaxError(f"expected {kind!r}, found {what!r}", pos=tok[2], text=self.text)
        return tok

    def term(self):
        tok = self.next()
        if tok[0] == "INT":
            v = int(tok[1])
            if v < 1:
                raise TermSyntaxError("variable indices start at 1", pos=tok[2], text=self.text)
            return v
        if tok[0] == "NAME":
            name = tok[1]
            if name not in self.sig.arity:
                raise UnknownGenerator(f"unknown generator {name!r}", pos=tok[2], text=self.text)
            self.expect("(")
            args = [self.term()]
            while self.peek()[0] == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
            k = self.sig.arity[name]
            if len(args) != k:
                raise ArityMismatch(
                    f"generator {name!r} has arity {k} but got {len(args)} arguments",
                    pos=tok[2],
                    text=self.text,
                )
            return Node(name, tuple(args))
        what = tok[1] or "end of input"
        raise TermSyntaxError(f"expected a term, found {what!r}", pos=tok[2], text=self.text)

    def rational_or_term(self):
        """Either ``RATIONAL '*' term`` or a bare term (an INT may be a leaf)."""
        tok = self.peek()
        if tok[0] == "INT":
            save = self.i
            self.next()
            num, den = int(tok[1]), 1
            if self.peek()[0] == "/":
                self.next()
                den_tok = self.expect("INT")
                den = int(den_tok[1])
                if den == 0:
                    raise TermSyntaxError("zero denominator", pos=den_tok[2], text=self.text)
                self.expect("*")
                return Fraction(num, den), self.term_checked()
            if self.peek()[0] == "*":
                self.next()
                return Fraction(num), self.term_checked()
            self.i = save
        return Fraction(1), self.term_checked()

    def term_checked(self):
        start = self.peek()[2]
        t = self.term()
        check_multilinear(t, pos=start, text=self.text)
        return t


def check_multilinear(t, pos=None, text=None):
    labs = leaves(t)
    if sorted(labs) != list(range(1, len(labs) + 1)):
        seen = set()
        for lab in labs:
            if lab in seen:
                raise NotMultilinear(f"variable {lab} occurs twice", pos=pos, text=text)
            seen.add(lab)
        missing = sorted(set(range(1, len(labs) + 1)) - seen)
        raise NotMultilinear(f"variables must be exactly 1..{len(labs)}; missing {missing}", pos=pos, text=text)


def parse_term(text: str, sig: Signature):
    p = _Parser(text, sig)
    t = p.term()
    tok = p.peek()
    if tok[0] != "EOF":
        raise TermSyntaxError(f"unexpected {tok[1]!r} after term", pos=tok[2], text=text)
    check_multilinear(t, pos=0, text=text)
    return t


def parse_lincomb(text: str, sig: Signature, arity: Optional[int] = None) -> LinComb:
    """Parse a combination; ``"0"`` is accepted when ``arity`` is given."""
    if text.strip() == "0" and arity is not None:
        return LinComb.zero(arity)
    p = _Parser(text, sig)
    sign = 1
    if p.peek()[0] in "+-":
        sign = -1 if p.next()[0] == "-" else 1
    summands = []
    while True:
        start = p.peek()[2]
        coeff, t = p.rational_or_term()
        summands.append((sign * coeff, t, start))
        tok = p.peek()
        if tok[0] == "EOF":
            break
        if tok[0] not in "+-":
            raise TermSyntaxError(f"expected '+' or '-', found {tok[1]!r}", pos=tok[2], text=text)
        sign = -1 if p.next()[0] == "-" else 1
    if arity is None:
        arity = term_arity(summands[0][1])
    for _, t, start in summands:
        if term_arity(t) != arity:
            raise MixedArity(f"summand has arity {term_arity(t)}, expected {arity}", pos=start, text=text)
    return LinComb([(t, c) for c, t, _ in summands], arity)


# ---------------------------------------------------------------- printing

def render_term(t) -> str:
    if isinstance(t, int):
        return str(t)
    return f"{t.op}({','.join(render_term(c) for c in t.args)})"


def render_lincomb(v: LinComb, sig: Signature) -> str:
    """Canonical text: terms in canonical order, coefficients as p/q."""
    if not v.terms:
        return "0"
    parts = []
    for i, (t, c) in enumerate(v.sorted_terms(sig)):
        neg = c < 0
        a = -c if neg else c
        body = render_term(t) if a == 1 else f"{a}*{render_term(t)}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------- presentation files

def parse_presentation_text(text: str) -> Tuple[Signature, List[LinComb]]:
    """Read ``[generators]`` (``name : arity``) and ``[relations]`` sections."""
    section = None
    gens = []
    rel_lines = []
    offset = 0
    for lineno, raw in enumerate(text.splitlines(keepends=True), 1):
        line_start = offset
        offset += len(raw)
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if line == "[generators]":
                section = "generators"
            elif line == "[relations]":
                section = "relations"
            else:
                raise ParseError(f"line {lineno}: unknown section {line}", pos=line_start)
            continue
        if section == "generators":
            name, sep, k = line.partition(":")
            name, k = name.strip(), k.strip()
            if not sep or not _NAME.match(name) or not k.isdigit():
                raise ParseError(f"line {lineno}: expected 'name : arity', got {line!r}", pos=line_start)
            gens.append((name, int(k), lineno, line_start))
        elif section == "relations":
            rel_lines.append((line, lineno, line_start + raw.index(line[0])))
        else:
            raise ParseError(f"line {lineno}: content outside of a section", pos=line_start)
    try:
        sig = Signature([(n, k) for n, k, _, _ in gens])
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    relations = []
    for line, lineno, start in rel_lines:
        try:
            relations.append(parse_lincomb(line, sig))
        except ParseError as exc:
            pos = start + exc.pos if exc.pos is not None else start
            msg = str(exc).rsplit(" (at position", 1)[0]
            raise type(exc)(f"line {lineno}: {msg}", pos=pos, text=text) from None
    return sig, relations


def render_presentation_text(sig: Signature, relations: Iterable[LinComb]) -> str:
    lines = ["[generators]"]
    lines += [f"{name} : {sig.arity[name]}" for name in sig.names]
    lines.append("[relations]")
    lines += [render_lincomb(r, sig) for r in relations]
    return "\n".join(lines) + "\n"


def all_relabelings(t, n: Optional[int] = None):
    """Every relabeling of a multilinear term by a permutation of its labels."""
    from itertools import permutations

    if n is None:
        n = term_arity(t)
    for perm in permutations(range(1, n + 1)):
        yield relabel(t, (None,) + perm)


def tensor_node(op: str, child_vectors):
    """Multilinear expansion of op(v_1, ..., v_k) for dict-valued child vectors."""
    out: Dict[object, Fraction] = {}
    for combo in product(*(list(v.items()) for v in child_vectors)):
        c = Fraction(1)
        for _, ci in combo:
            c *= ci
        t = Node(op, tuple(ti for ti, _ in combo))
        out[t] = out.get(t, 0) + c
    return {t: c for t, c in out.items() if c}
