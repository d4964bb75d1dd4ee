"""
Constructions of infinite operads whose one-generated suboperads are small.

``weak_construct`` adds, for each enumerated element p_i, the symmetrized
power of N_i copies of p_i as a relation, so the clone of p_i satisfies a
nontrivial identity.  ``strong_construct`` adds all spine-shaped composites
("branches") of d copies of p_i, which makes p_i strongly nilpotent.  In both
cases the parameters are the least values that keep the truncated
Golod-Shafarevich criterion nonnegative, so the result comes with a
certificate of infiniteness up to the chosen order.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import List, Sequence

from .errors import ConstructionFailed, PreconditionViolated, VerificationFailed
from .exactseries import TruncatedSeries, format_rational, parse_rational
from .freeoperad import compose_terms, enumerate_basis, symmetrized_power
from .gs import GSReport, gs_criterion
from .quotient import (
    DEFAULT_MAX_ARITY,
    Presentation,
    is_nilpotent_element,
    minimal_relation_series,
    quotient_dim,
    reduce,
)
from .signature import (
    LinComb,
    Signature,
    leaves,
    parse_term,
    relabel,
    render_lincomb,
    render_term,
    signature_egf,
    term_arity,
)


@dataclass
class ProcessedElement:
    element: object  # TreeTerm
    parameter: int   # N_i (copies) or d_i (spine length)
    arity: int       # arity t_i of the added relations


@dataclass
class ConstructionCertificate:
    kind: str  # "weak" or "strong"
    presentation: Presentation
    processed: List[ProcessedElement]
    relation_series: TruncatedSeries
    gs_report: GSReport
    verified_up_to: int
    accounting: str = "minimal"

    def to_json(self) -> dict:
        sig = self.presentation.sig
        return {
            "kind": self.kind,
            "accounting": self.accounting,
            "order": self.verified_up_to,
            "signature": [[n, sig.arity[n]] for n in sig.names],
            "processed": [
                {"element": render_term(p.element), "parameter": p.parameter, "arity": p.arity}
                for p in self.processed
            ],
            "relation_series": [format_rational(c) for c in self.relation_series.coeffs],
            "gs": self.gs_report.to_json(),
            "verified_up_to": self.verified_up_to,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict, presentation: Presentation) -> "ConstructionCertificate":
        sig = presentation.sig
        processed = [
            ProcessedElement(parse_term(p["element"], sig), int(p["parameter"]), int(p["arity"]))
            for p in data["processed"]
        ]
        order = int(data["verified_up_to"])
        R = TruncatedSeries([parse_rational(c) for c in data["relation_series"]])
        report = gs_criterion(signature_egf(sig, order + 1), R, order)
        return cls(data["kind"], presentation, processed, R, report, order, data.get("accounting", "minimal"))


def enumerate_elements(sig: Signature, count: int, max_arity: int = DEFAULT_MAX_ARITY):
    """The first ``count`` basis trees of arity >= 2, in canonical order."""
    out = []
    if count <= 0 or not sig.names:
        return out
    for n in range(2, max_arity + 1):
        for t in enumerate_basis(sig, n):
            out.append(t)
            if len(out) == count:
                return out
    raise ConstructionFailed(f"fewer than {count} elements up to arity {max_arity}")


def _accepts(report: GSReport) -> bool:
    # a vanishing top coefficient means the generators were effectively killed
    return report.nonnegative and report.criterion_series.coeffs[-1] > 0


ACCOUNTINGS = ("minimal", "bound")


def _check_accounting(accounting):
    if accounting not in ACCOUNTINGS:
        raise PreconditionViolated(f"accounting must be one of {', '.join(ACCOUNTINGS)}")


def minimal_series(sig: Signature, relations: Sequence[LinComb], order: int, max_arity: int = DEFAULT_MAX_ARITY) -> TruncatedSeries:
    """R as the EGF of a minimal relation module, computed from ideal ranks."""
    top = max((r.arity for r in relations if r.arity <= order + 1), default=1)
    if top > max_arity:
        raise ConstructionFailed(f"relations of arity {top} exceed the component budget {max_arity}")
    return minimal_relation_series(Presentation(sig, tuple(relations)), order + 1, max_arity=max_arity)


# ---------------------------------------------------------------- weak

def weak_relation_series(processed: Sequence[ProcessedElement], order: int) -> TruncatedSeries:
    """Bound accounting: each symmetrized power spans at most z^t / t!."""
    R = TruncatedSeries.zero(order + 1)
    for p in processed:
        R = R + TruncatedSeries.monomial(p.arity, order + 1, Fraction(1, factorial(p.arity)))
    return R


def weak_construct(
    sig: Signature,
    num_elements: int,
    order: int,
    max_arity: int = DEFAULT_MAX_ARITY,
    accounting: str = "minimal",
) -> ConstructionCertificate:
    """Add a symmetrized power of each enumerated element, copies chosen greedily.

    With ``accounting="minimal"`` R counts only relations that are new modulo
    the ideal of the earlier ones; ``"bound"`` charges z^t/t! for each.
    """
    _check_accounting(accounting)
    if num_elements > 0 and not sig.names:
        raise PreconditionViolated("the signature must be nonempty")
    X = signature_egf(sig, order + 1)
    processed: List[ProcessedElement] = []
    relations: List[LinComb] = []
    R = TruncatedSeries.zero(order + 1)
    t_prev = 1
    for index, p in enumerate(enumerate_elements(sig, num_elements, max_arity), 1):
        m = term_arity(p)
        N = max(1, -(-t_prev // (m - 1)))  # least N with N(m-1)+1 > t_prev
        while True:
            t = N * (m - 1) + 1
            if t > max_arity:
                raise ConstructionFailed(
                    f"element {index} ({render_term(p)}): no number of copies up to arity {max_arity} keeps the criterion nonnegative",
                    index=index,
                )
            rel = symmetrized_power(LinComb.of(p), N)
            if accounting == "bound":
                trial = R + TruncatedSeries.monomial(t, order + 1, Fraction(1, factorial(t)))
            else:
                trial = minimal_series(sig, relations + [rel], order, max_arity)
            if _accepts(gs_criterion(X, trial, order)):
                R = trial
                relations.append(rel)
                processed.append(ProcessedElement(p, N, t))
                t_prev = t
                break
            N += 1
    pres = Presentation(sig, tuple(relations))
    return ConstructionCertificate("weak", pres, processed, R, gs_criterion(X, R, order), order, accounting)


# ---------------------------------------------------------------- strong

def branch_relations(p, d: int) -> list:
    """All composites of d copies of p along a spine, leaves renumbered left to right.

    Copy j+1 is plugged into one input of copy j and every other input is a
    variable, giving m^(d-1) trees of arity d(m-1)+1.
    """
    m = term_arity(p)
    if m < 2:
        raise PreconditionViolated("branches need an element of arity >= 2")
    if d < 1:
        raise PreconditionViolated("branch length must be at least 1")
    out = []
    for choice in itertools.product(range(1, m + 1), repeat=d - 1):
        t = p
        for i in reversed(choice):
            t = compose_terms(p, i, t)
        out.append(left_to_right(t))
    return out


def left_to_right(t):
    labs = leaves(t)
    mapping = {lab: i for i, lab in enumerate(labs, 1)}
    return relabel(t, mapping)


def strong_relation_series(sig: Signature, processed: Sequence[ProcessedElement], order: int) -> TruncatedSeries:
    """Bound accounting: each new branch tree generates at most t! dimensions, EGF coefficient 1."""
    R = TruncatedSeries.zero(order + 1)
    seen = set()
    for p in processed:
        new = [b for b in branch_relations(p.element, p.parameter) if b not in seen]
        seen.update(new)
        R = R + TruncatedSeries.monomial(p.arity, order + 1, len(new))
    return R


def strong_construct(
    sig: Signature,
    num_elements: int,
    spine_length_budget: int,
    order: int,
    min_length: int = 1,
    max_arity: int = DEFAULT_MAX_ARITY,
    accounting: str = "minimal",
) -> ConstructionCertificate:
    _check_accounting(accounting)
    if 2 * sig.count(2) < 3:
        raise PreconditionViolated(
            f"need dim X(2) >= 3, i.e. at least two binary generators; have dim X(2) = {2 * sig.count(2)}"
        )
    X = signature_egf(sig, order + 1)
    processed: List[ProcessedElement] = []
    relations: List = []
    seen = set()
    R = TruncatedSeries.zero(order + 1)
    for index, p in enumerate(enumerate_elements(sig, num_elements, max_arity), 1):
        m = term_arity(p)
        for d in range(min_length, spine_length_budget + 1):
            t = d * (m - 1) + 1
            if t > max_arity:
                break
            new = [b for b in branch_relations(p, d) if b not in seen]
            if accounting == "bound":
                trial = R + TruncatedSeries.monomial(t, order + 1, len(new))
            else:
                trial = minimal_series(sig, [LinComb.of(b) for b in relations + new], order, max_arity)
            if _accepts(gs_criterion(X, trial, order)):
                R = trial
                seen.update(new)
                relations.extend(new)
                processed.append(ProcessedElement(p, d, t))
                break
        if not processed or processed[-1].element != p:
            raise ConstructionFailed(
                f"element {index} ({render_term(p)}): no spine length up to {spine_length_budget} "
                f"(arity <= {max_arity}) keeps the criterion nonnegative",
                index=index,
            )
    pres = Presentation(sig, tuple(LinComb.of(b) for b in relations))
    return ConstructionCertificate("strong", pres, processed, R, gs_criterion(X, R, order), order, accounting)


def certificate_relation_series(cert: "ConstructionCertificate") -> TruncatedSeries:
    """Recompute R for a certificate from its processed elements."""
    order = cert.verified_up_to
    sig = cert.presentation.sig
    if cert.accounting == "minimal":
        return minimal_series(sig, expected_relations(cert), order, max([DEFAULT_MAX_ARITY, *(p.arity for p in cert.processed)]))
    if cert.kind == "weak":
        return weak_relation_series(cert.processed, order)
    return strong_relation_series(sig, cert.processed, order)


# ---------------------------------------------------------------- verification

@dataclass
class ClauseResult:
    name: str
    passed: bool
    detail: str


@dataclass
class VerificationReport:
    clauses: List[ClauseResult] = field(default_factory=list)
    samples: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def check(self):
        for c in self.clauses:
            if not c.passed:
                raise VerificationFailed(f"clause {c.name} failed: {c.detail}", clause=c.name)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "clauses": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.clauses],
            "samples": self.samples,
        }


def expected_relations(cert: ConstructionCertificate) -> List[LinComb]:
    if cert.kind == "weak":
        return [symmetrized_power(LinComb.of(p.element), p.parameter) for p in cert.processed]
    out, seen = [], set()
    for p in cert.processed:
        for b in branch_relations(p.element, p.parameter):
            if b not in seen:
                seen.add(b)
                out.append(LinComb.of(b))
    return out


def verify_construction(
    cert: ConstructionCertificate, check_degree: int, sample: Sequence[LinComb] = ()
) -> VerificationReport:
    pres = cert.presentation
    sig = pres.sig
    report = VerificationReport()
    D = check_degree

    # the certificate must be reproducible from the processed elements
    order = cert.verified_up_to
    R = certificate_relation_series(cert)
    recomputed = gs_criterion(signature_egf(sig, order + 1), R, order)
    same_rel = set(expected_relations(cert)) == set(pres.relations)
    ok = R == cert.relation_series and recomputed.verdict == cert.gs_report.verdict and recomputed.nonnegative and same_rel
    report.clauses.append(
        ClauseResult("certificate", ok, f"verdict {recomputed.verdict} up to order {order}; relations match: {same_rel}")
    )

    # (a) infiniteness evidence
    dims = {n: quotient_dim(pres, n, max_arity=D) for n in range(1, D + 1)}
    bad = [n for n, d in dims.items() if d <= 0]
    detail = "dims " + ", ".join(f"{n}:{d}" for n, d in dims.items())
    report.clauses.append(ClauseResult("a", not bad, detail if not bad else f"zero component at n={bad[0]}; {detail}"))

    # (b) weak: each clone satisfies its symmetrized relation
    if cert.kind == "weak":
        fails = []
        for p in cert.processed:
            rel = symmetrized_power(LinComb.of(p.element), p.parameter)
            if rel.is_zero() or not reduce(pres, rel, max_arity=p.arity).is_zero():
                fails.append(render_term(p.element))
        report.clauses.append(
            ClauseResult("b", not fails, "all symmetrized powers are nonzero and vanish" if not fails else f"failed for {fails}")
        )
    else:
        report.clauses.append(ClauseResult("b", True, "not applicable to strong certificates"))

    # (c) strong: each processed element is nilpotent within D
    if cert.kind == "strong":
        fails = []
        found = []
        for p in cert.processed:
            nil = is_nilpotent_element(pres, LinComb.of(p.element), D).nilpotent_by
            if nil is None:
                fails.append(render_term(p.element))
            found.append(f"{render_term(p.element)}:{nil}")
        report.clauses.append(
            ClauseResult("c", not fails, "nilpotent_by " + ", ".join(found) if not fails else f"not nilpotent within {D}: {fails}")
        )
    else:
        report.clauses.append(ClauseResult("c", True, "not applicable to weak certificates"))

    for s in sample:
        nil = is_nilpotent_element(pres, s, D) if s.arity >= 2 else None
        report.samples.append(
            {
                "element": render_lincomb(s, sig),
                "nilpotent_by": None if nil is None else nil.nilpotent_by,
                "component_dims": None if nil is None else {str(k): v for k, v in nil.component_dims.items()},
            }
        )
    return report
