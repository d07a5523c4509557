"""Command-line entry point: parse, compute, report, exit 0/1/2.

Exit codes: 0 when every check in the report passes, 1 when a check
fails, 2 on input errors (unreadable file, parse diagnostics, violated
operation preconditions, bad flags).  Output is deterministic: two runs
on the same input and flags produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .bch_oracle import bch_group_law
from .errors import FlkError, InputError, InternalConsistencyError, ParseError, PreconditionError
from .fgl_dual import GroupLaw, fgl_axiom_check, group_law_from_uea
from .lie_pair import pair_check_suite, pair_roundtrip_failures, validate_lie_pair
from .liealg import validate_jacobi
from .spec_io import Report, emit_report, parse_spec_file, series_term_list
from .uea_hopf import hopf_axiom_check, primitives_upto

MAX_ORDER = 8


@dataclass(frozen=True)
class Invocation:
    command: str
    path: str
    order: int = 4
    degree: int = 3
    via: str = "both"
    format: str = "text"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flk",
        description="Exact Lie-algebra, enveloping-Hopf, and formal-group-law checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def order_flag(p):
        p.add_argument(
            "--order", type=int, default=4, metavar="N",
            help=f"truncation order, 1..{MAX_ORDER} (default 4)",
        )

    def degree_flag(p):
        p.add_argument(
            "--degree", type=int, default=3, metavar="D",
            help="degree bound for enveloping-algebra slices (default 3)",
        )

    def format_flag(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    for name, needs_order, needs_degree in [
        ("validate", False, False),
        ("grouplaw", True, False),
        ("primitives", False, True),
        ("bch", True, False),
        ("pair-check", False, False),
        ("roundtrip", True, False),
        ("hopf-check", False, True),
    ]:
        p = sub.add_parser(name)
        p.add_argument("path", help="input .flk file")
        if needs_order:
            order_flag(p)
        if needs_degree:
            degree_flag(p)
        if name == "grouplaw":
            p.add_argument("--via", choices=["dual", "bch", "both"], default="both")
        format_flag(p)
    return parser


def _check_ranges(inv: Invocation):
    if not 1 <= inv.order <= MAX_ORDER:
        raise InputError(f"--order must be between 1 and {MAX_ORDER}")
    if inv.degree < 1:
        raise InputError("--degree must be at least 1")


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_spec_file(handle.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _law_payload(law: GroupLaw) -> dict:
    n = law.dim
    names = law.var_names()
    return {
        "order": law.order,
        "basis": list(law.algebra.basis_names),
        "law": [
            {
                "component": law.algebra.basis_names[i],
                "series": law.components[i].to_text(names),
                "terms": series_term_list(law.components[i], n),
            }
            for i in range(n)
        ],
    }


def _cmd_validate(inv: Invocation) -> Report:
    spec = _load(inv.path)
    if spec.is_pair():
        failures = validate_lie_pair(spec.to_pair())
        return Report("validate", checks=[("pair-valid", not failures)], failures=failures)
    failures = validate_jacobi(spec.algebra.to_algebra())
    return Report("validate", checks=[("jacobi", not failures)], failures=failures)


def _cmd_grouplaw(inv: Invocation) -> Report:
    g = _load(inv.path).algebra.to_algebra()
    checks = []
    failures = []
    payload = {"via": inv.via}
    law = None
    if inv.via in ("dual", "both"):
        law = group_law_from_uea(g, inv.order)
    bch_law = None
    if inv.via in ("bch", "both"):
        bch_law = bch_group_law(g, inv.order)
    if inv.via == "both":
        agree = law == bch_law
        checks.append(("oracle-agreement", agree))
        if not agree:
            failures += _law_diff(law, bch_law)
    payload.update(_law_payload(law if law is not None else bch_law))
    return Report("grouplaw", checks=checks, failures=failures, payload=payload)


def _law_diff(a: GroupLaw, b: GroupLaw) -> list[dict]:
    out = []
    for i, (fa, fb) in enumerate(zip(a.components, b.components)):
        keys = sorted(set(fa.terms) | set(fb.terms))
        for exps in keys:
            ca = fa.terms.get(exps)
            cb = fb.terms.get(exps)
            if ca != cb:
                out.append(
                    {
                        "code": "oracle-mismatch",
                        "component": a.algebra.basis_names[i],
                        "exponents": list(exps),
                        "dual": str(ca) if ca is not None else "0",
                        "bch": str(cb) if cb is not None else "0",
                    }
                )
    return out


def _cmd_primitives(inv: Invocation) -> Report:
    g = _load(inv.path).algebra.to_algebra()
    basis = primitives_upto(g, inv.degree)
    payload = {
        "degree_bound": inv.degree,
        "dimension": len(basis),
        "primitive_basis": [str(p) for p in basis],
    }
    checks = [("dimension-matches-algebra", len(basis) == g.dim)]
    return Report("primitives", checks=checks, payload=payload)


def _cmd_bch(inv: Invocation) -> Report:
    g = _load(inv.path).algebra.to_algebra()
    law = bch_group_law(g, inv.order)
    return Report("bch", checks=[("bch-primitivity", True)], payload=_law_payload(law))


def _cmd_pair_check(inv: Invocation) -> Report:
    spec = _load(inv.path)
    pair = spec.to_pair()
    checks, failures = pair_check_suite(pair)
    return Report("pair-check", checks=checks, failures=failures)


def _cmd_roundtrip(inv: Invocation) -> Report:
    spec = _load(inv.path)
    pair = spec.to_pair()
    pre = validate_lie_pair(pair)
    if pre:
        raise PreconditionError("input pair fails validation", pre)
    failures = pair_roundtrip_failures(pair, inv.order)
    payload = {"order": inv.order}
    if not failures:
        payload["result"] = "pair recovered exactly"
    return Report("roundtrip", checks=[("pair-recovered", not failures)],
                  failures=failures, payload=payload)


def _cmd_hopf_check(inv: Invocation) -> Report:
    g = _load(inv.path).algebra.to_algebra()
    failures = hopf_axiom_check(g, inv.degree)
    payload = {"degree_bound": inv.degree}
    return Report("hopf-check", checks=[("hopf-axioms", not failures)],
                  failures=failures, payload=payload)


_COMMANDS = {
    "validate": _cmd_validate,
    "grouplaw": _cmd_grouplaw,
    "primitives": _cmd_primitives,
    "bch": _cmd_bch,
    "pair-check": _cmd_pair_check,
    "roundtrip": _cmd_roundtrip,
    "hopf-check": _cmd_hopf_check,
}


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    inv = Invocation(
        command=args.command,
        path=args.path,
        order=getattr(args, "order", 4),
        degree=getattr(args, "degree", 3),
        via=getattr(args, "via", "both"),
        format=args.format,
    )
    try:
        _check_ranges(inv)
        report = _COMMANDS[inv.command](inv)
    except ParseError as exc:
        print(f"flk: parse error {exc}", file=sys.stderr)
        return 2
    except (InputError, PreconditionError) as exc:
        print(f"flk: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"flk: internal consistency error: {exc}", file=sys.stderr)
        return 2
    except FlkError as exc:
        print(f"flk: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(report, inv.format))
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())
