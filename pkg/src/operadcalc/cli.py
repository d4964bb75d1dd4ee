"""Command-line front end.

Exit status: 0 on success, 1 when a construction or verification fails,
2 on input errors, 3 when a budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BudgetExceeded, ConstructionFailed, OperadError, ParseError
from .exactseries import (
    TruncatedSeries,
    format_rational,
    parse_rational,
    parse_series,
    series_compose,
    series_mul,
    series_reciprocal,
    series_reversion,
)
from .freeoperad import DEFAULT_TERM_BUDGET, free_dims, suboperad_closure
from .gs import bound_series, euler_defect_from_series, gs_binary_root, gs_criterion
from .kurosh import ConstructionCertificate, strong_construct, verify_construction, weak_construct
from .quotient import (
    DEFAULT_MAX_ARITY,
    Presentation,
    is_nilpotent_element,
    quotient_dim_series,
    reduce,
    relation_module_series,
)
from .signature import Signature, parse_lincomb, render_lincomb, signature_egf

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(OperadError):
    pass


# ---------------------------------------------------------------- helpers

def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def parse_signature_flag(text: str) -> Signature:
    """``"m:2,b:3"`` -> Signature."""
    pairs = []
    for i, part in enumerate(p for p in text.split(",") if p.strip()):
        name, sep, k = part.partition(":")
        if not sep or not k.strip().isdigit():
            raise ParseError(f"signature entry {i + 1}: expected 'name:arity', got {part.strip()!r}")
        pairs.append((name.strip(), int(k)))
    try:
        return Signature(pairs)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_interval(text: str):
    lo, sep, hi = text.partition(",")
    if not sep:
        raise ParseError(f"interval must be 'a/b,c/d', got {text!r}")
    return parse_rational(lo), parse_rational(hi)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _presentation(args, required=True):
    if args.input:
        return Presentation.from_text(_read(args.input))
    if getattr(args, "signature", None):
        return Presentation(parse_signature_flag(args.signature))
    if required:
        raise InputError("a presentation is required: pass --input FILE or --signature")
    return None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _series_json(s: TruncatedSeries):
    return [format_rational(c) for c in s.coeffs]


def _series_tsv(s: TruncatedSeries) -> str:
    return "".join(f"{n}\t{format_rational(c)}\n" for n, c in enumerate(s.coeffs))


# ---------------------------------------------------------------- commands

def cmd_series(args, out):
    a = parse_series(args.series, args.order)
    if args.op == "show":
        res = a
    elif args.op == "reciprocal":
        res = series_reciprocal(a)
    elif args.op == "reversion":
        res = series_reversion(a)
    else:
        if args.with_ is None:
            raise InputError(f"--op {args.op} needs --with SERIES")
        b = parse_series(args.with_, args.order)
        res = {"add": lambda: a + b, "mul": lambda: series_mul(a, b), "compose": lambda: series_compose(a, b)}[args.op]()
    out.write(_dump({"series": _series_json(res)}) if args.format == "json" else _series_tsv(res))


def cmd_free_dim(args, out):
    sig = _presentation(args).sig
    dims = free_dims(sig, args.order)
    if args.format == "json":
        out.write(_dump({"dims": {str(n): dims[n] for n in range(1, args.order + 1)}}))
    else:
        out.write("".join(f"{n}\t{dims[n]}\n" for n in range(1, args.order + 1)))


def cmd_quotient_dim(args, out):
    pres = _presentation(args)
    arities = [args.arity] if args.arity else range(1, args.order + 1)
    free = free_dims(pres.sig, max(arities))
    rows = []
    P = quotient_dim_series(pres, max(arities), max_arity=args.max_arity, budget=args.budget)
    for n in arities:
        q = int(P.to_dims()[n])
        rows.append((n, free[n], free[n] - q, q))
    if args.format == "json":
        keys = ("n", "dimGamma", "dimIdeal", "dimQuotient")
        out.write(_dump({"rows": [dict(zip(keys, r)) for r in rows]}))
    else:
        out.write("".join("\t".join(map(str, r)) + "\n" for r in rows))


def _element(args, sig):
    if not args.element:
        raise InputError("--element is required")
    return parse_lincomb(args.element, sig)


def cmd_reduce(args, out):
    pres = _presentation(args)
    v = _element(args, pres.sig)
    r = reduce(pres, v, max_arity=max(args.max_arity, v.arity), budget=args.budget)
    text = render_lincomb(r, pres.sig)
    out.write(_dump({"normal_form": text}) if args.format == "json" else text + "\n")


def cmd_closure(args, out):
    pres = _presentation(args)
    p = _element(args, pres.sig)
    closure = suboperad_closure(p, args.max_degree, args.budget)
    quotient = None
    if pres.relations:
        quotient = is_nilpotent_element(pres, p, args.max_degree, max_arity=args.max_arity, budget=args.budget)
    rows = []
    for n in sorted(closure):
        row = {"n": n, "dimFree": len(closure[n])}
        if quotient is not None:
            row["dimQuotient"] = quotient.component_dims.get(n, 1 if n == 1 else None)
        rows.append(row)
    if args.format == "json":
        doc = {"rows": rows}
        if quotient is not None:
            doc["nilpotent_by"] = quotient.nilpotent_by
        out.write(_dump(doc))
    else:
        for row in rows:
            out.write("\t".join(str(row[k]) for k in row) + "\n")
        if quotient is not None:
            out.write(f"nilpotent_by\t{quotient.nilpotent_by}\n")


def _xr(args):
    pres = _presentation(args, required=False)
    if pres is not None:
        X = signature_egf(pres.sig, args.order + 1)
        R = relation_module_series(pres, min(args.order + 1, max((r.arity for r in pres.relations), default=1)))
        return pres, X, R.pad(args.order + 1)
    if args.generators is None or args.relations is None:
        raise InputError("pass --generators and --relations, or a presentation via --input/--signature")
    return None, parse_series(args.generators, args.order + 1), parse_series(args.relations, args.order + 1)


def cmd_gs_check(args, out):
    pres, X, R = _xr(args)
    report = gs_criterion(X, R, args.order)
    report.bound = bound_series(X, R, args.order)
    if pres is not None:
        D = min(args.max_degree, args.order)
        P = quotient_dim_series(pres, D, max_arity=max(args.max_arity, D), budget=args.budget)
        report.euler_defect = euler_defect_from_series(P, X, R, D)
        report.euler_defect_nonnegative = all(c >= 0 for c in report.euler_defect.coeffs)
    if args.format == "json":
        out.write(_dump(report.to_json()))
    else:
        out.write(_series_tsv(report.criterion_series))
        out.write(f"verdict\t{report.verdict}\n")
        if report.euler_defect is not None:
            out.write("euler_defect\t" + ", ".join(_series_json(report.euler_defect)) + "\n")


def cmd_gs_root(args, out):
    _, X, R = _xr(args)
    interval = parse_interval(args.interval)
    br = gs_binary_root(X, R, interval, grid=args.grid)
    doc = None if br is None else {
        "lo": format_rational(br.lo),
        "hi": format_rational(br.hi),
        "derivative_nonzero": br.derivative_nonzero,
    }
    if args.format == "json":
        out.write(_dump({"root": doc}))
    elif doc is None:
        out.write("no sign change\n")
    else:
        out.write(f"{doc['lo']}\t{doc['hi']}\t{doc['derivative_nonzero']}\n")


def _emit(cert: ConstructionCertificate, prefix, out):
    pres_path, cert_path = Path(f"{prefix}.pres"), Path(f"{prefix}.json")
    pres_path.write_text(cert.presentation.to_text(), encoding="utf-8")
    cert_path.write_text(cert.dumps(), encoding="utf-8")
    out.write(_dump({
        "presentation": str(pres_path),
        "certificate": str(cert_path),
        "verdict": cert.gs_report.verdict,
        "processed": cert.to_json()["processed"],
    }))


def _generators_only(args):
    pres = _presentation(args)
    if pres.relations:
        raise InputError("the construction starts from a free operad; the input must not contain relations")
    return pres.sig


def cmd_kurosh_weak(args, out):
    sig = _generators_only(args)
    cert = weak_construct(sig, args.elements, args.order, max_arity=args.max_arity, accounting=args.accounting)
    _emit(cert, args.emit, out)


def cmd_kurosh_strong(args, out):
    sig = _generators_only(args)
    cert = strong_construct(
        sig, args.elements, args.spine_budget, args.order,
        min_length=args.min_length, max_arity=args.max_arity, accounting=args.accounting,
    )
    _emit(cert, args.emit, out)


def cmd_burnside_verify(args, out):
    if not args.input or not args.certificate:
        raise InputError("burnside-verify needs --input PRES and --certificate JSON")
    pres = Presentation.from_text(_read(args.input))
    try:
        data = json.loads(_read(args.certificate))
        cert = ConstructionCertificate.from_json(data, pres)
    except (ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, OperadError):
            raise
        raise InputError(f"malformed certificate: {exc}") from None
    samples = [parse_lincomb(e, pres.sig) for e in args.element or ()]
    report = verify_construction(cert, args.max_degree, samples)
    if args.format == "json":
        out.write(_dump(report.to_json()))
    else:
        for c in report.clauses:
            out.write(f"{c.name}\t{'PASS' if c.passed else 'FAIL'}\t{c.detail}\n")
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {
    "series": cmd_series,
    "free-dim": cmd_free_dim,
    "quotient-dim": cmd_quotient_dim,
    "reduce": cmd_reduce,
    "closure": cmd_closure,
    "gs-check": cmd_gs_check,
    "gs-root": cmd_gs_root,
    "kurosh-weak": cmd_kurosh_weak,
    "kurosh-strong": cmd_kurosh_strong,
    "burnside-verify": cmd_burnside_verify,
}


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_positive, default=12, help="truncation order (default 12)")
    common.add_argument("--max-degree", type=_positive, default=6, help="largest arity examined (default 6)")
    common.add_argument("--max-arity", type=_positive, default=DEFAULT_MAX_ARITY, help="largest component arity computed")
    common.add_argument("--budget", type=_positive, default=DEFAULT_TERM_BUDGET, help="term budget")
    common.add_argument("--format", choices=("tsv", "json"), default=None)
    common.add_argument("--input", metavar="FILE", help="presentation file")
    common.add_argument("--signature", help="generators as 'name:arity,...' instead of --input")

    parser = argparse.ArgumentParser(prog="operadcalc", description="Exact computations with operads given by generators and relations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common], help="exact truncated series arithmetic")
    p.add_argument("series", help="coefficients 'c0, c1, ...'")
    p.add_argument("--op", choices=("show", "reciprocal", "reversion", "add", "mul", "compose"), default="show")
    p.add_argument("--with", dest="with_", metavar="SERIES", help="second operand")

    sub.add_parser("free-dim", parents=[common], help="dimensions of the free operad")

    p = sub.add_parser("quotient-dim", parents=[common], help="dimensions of free operad, ideal and quotient")
    p.add_argument("--arity", type=_positive, help="a single arity instead of 1..order")

    for name, helptext in (("reduce", "normal form of an element"), ("closure", "suboperad generated by an element")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--element", help="linear combination of trees")

    for name, helptext in (("gs-check", "Golod-Shafarevich criterion"), ("gs-root", "bracket the first root of the criterion denominator")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--generators", metavar="EGF", help="X as coefficients")
        p.add_argument("--relations", metavar="EGF", help="R as coefficients")
        if name == "gs-root":
            p.add_argument("--interval", default="0,1", help="search interval 'a/b,c/d'")
            p.add_argument("--grid", type=_positive, default=256)

    for name in ("kurosh-weak", "kurosh-strong"):
        p = sub.add_parser(name, parents=[common], help=f"{name.split('-')[1]} construction with a certificate")
        p.add_argument("--elements", type=int, default=1, help="number of elements to process")
        p.add_argument("--emit", metavar="PREFIX", required=True, help="write PREFIX.pres and PREFIX.json")
        p.add_argument("--accounting", choices=("minimal", "bound"), default="minimal")
        if name == "kurosh-strong":
            p.add_argument("--spine-budget", type=_positive, default=6, help="largest spine length tried")
            p.add_argument("--min-length", type=_positive, default=1, help="smallest spine length tried")

    p = sub.add_parser("burnside-verify", parents=[common], help="check a certificate against its presentation")
    p.add_argument("--certificate", metavar="FILE")
    p.add_argument("--element", action="append", help="extra element to report on (repeatable)")
    return parser


DEFAULT_FORMAT = {"gs-check": "json", "gs-root": "json", "burnside-verify": "json"}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "tsv")
    try:
        status = COMMANDS[args.command](args, out)
    except BudgetExceeded as exc:
        err.write(f"operadcalc: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except ConstructionFailed as exc:
        err.write(f"operadcalc: construction failed: {exc}\n")
        return EXIT_FAILED
    except (ParseError, InputError, OperadError, ValueError) as exc:
        err.write(f"operadcalc: input error: {exc}\n")
        return EXIT_INPUT
    return status or EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
