"""Command-line front end.

Algebra arguments are JSON files or ``catalog:KEY``.  JSON goes to stdout
(one object per line for streams), human-readable tables to stderr unless
``--table`` asks for them on stdout instead.  Exit codes: 0 when every checked
property holds, 1 when one legitimately fails, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .algebra import LeibnizAlgebra, check_leibniz, component, direct_product, is_ideal, quotient_algebra
from .constructions import certify_representation, hemisemidirect, hol, hol_lie, witness_nonperfect
from .derivations import derivation_algebra, derivation_tower, ideal_I, lie_derivations
from .errors import HypothesisError, InputError, LeibnizError, NotAnIdealError
from .exactla import Subspace
from .invariants import center, derived_subalgebra, invariant_report, left_center, leibniz_kernel, lie_center
from .io import (
    algebra_from_json,
    algebra_to_json,
    dumps,
    dumps_algebra,
    parse_json_text,
    read_json,
    representation_from_json,
    subspace_from_json,
)
from .recheck import recheck_lines, recheck_report
from .verify import FAILS, THEOREMS, run_suite, suite_for, summary_table

OK, PROPERTY_FAILS, BAD_INPUT = 0, 1, 2

NAMED_SUBSPACES = {
    "leib": leibniz_kernel,
    "derived": derived_subalgebra,
    "center": center,
    "left-center": left_center,
    "lie-center": lie_center,
}


class _Out:
    def __init__(self, stdout, stderr):
        self.stdout, self.stderr = stdout, stderr

    def json(self, obj):
        self.stdout.write(dumps(obj) + "\n")

    def text(self, s: str, table: bool = False):
        (self.stdout if table else self.stderr).write(s.rstrip("\n") + "\n")


def load(spec: str) -> LeibnizAlgebra:
    """``catalog:KEY`` or a path to an algebra JSON file."""
    if spec.startswith("catalog:"):
        return catalog.get(spec[len("catalog:"):])
    A = algebra_from_json(read_json(spec))
    res = check_leibniz(A)
    if not res:
        # an input file that is not Leibniz is bad input for every command except ``check``
        raise InputError(f"{spec}: not a left Leibniz algebra (first failing triple {res.triple})")
    return A


def _load_unchecked(spec: str) -> LeibnizAlgebra:
    if spec.startswith("catalog:"):
        return catalog.entry(spec[len("catalog:"):]).builder()
    return algebra_from_json(read_json(spec))


def _subspace_arg(A: LeibnizAlgebra, spec: str) -> Subspace:
    """Named subspace, inline JSON list of vectors, or a JSON file holding one."""
    if spec in NAMED_SUBSPACES:
        return NAMED_SUBSPACES[spec](A)
    text = spec if spec.lstrip().startswith("[") else None
    obj = parse_json_text(text, "--ideal") if text is not None else read_json(spec)
    return subspace_from_json(obj, A.dim, A.field)


def _describe_pair(pair) -> str:
    if pair is None:
        return "unknown product"
    i, j, side = pair
    return f"[e_{i}, s_{j}]" if side == "left" else f"[s_{j}, e_{i}]"


# -- commands ------------------------------------------------------------------------

def cmd_check(args, out: _Out) -> int:
    A = _load_unchecked(args.algebra)
    res = check_leibniz(A)
    obj = {"algebra": A.name, "dim": A.dim, "field": A.field.to_json(), "leibniz": res.holds,
           "failing_triple": None if res.holds else list(res.triple)}
    out.json(obj)
    return OK if res.holds else PROPERTY_FAILS


def cmd_info(args, out: _Out) -> int:
    rep = invariant_report(load(args.algebra))
    if args.table:
        out.text(rep.table(), table=True)
    else:
        out.json(rep.to_json())
        out.text(rep.table())
    return OK


def cmd_derivations(args, out: _Out) -> int:
    A = load(args.algebra)
    D = derivation_algebra(A)
    obj = {"algebra": A.name, "dim": D.dim, "basis": [f.to_strings() for f in D.basis]}
    if args.lie:
        J = lie_derivations(A, D)
        obj["lie_derivations"] = {"dim": J.dim, "coordinates": J.space.to_strings()}
    if args.ideal_I:
        J = ideal_I(A, D)
        obj["ideal_I"] = {"dim": J.dim, "coordinates": J.space.to_strings()}
    if args.bracket_table:
        obj["bracket_table"] = algebra_to_json(D.lie)
    out.json(obj)
    return OK


def _emit_algebra(H: LeibnizAlgebra, args, out: _Out, status: dict) -> None:
    if args.output:
        Path(args.output).write_text(dumps_algebra(H), encoding="utf-8")
        out.json(status)
    else:
        out.stdout.write(dumps_algebra(H))
        out.stderr.write(dumps(status) + "\n")


def cmd_holomorph(args, out: _Out) -> int:
    A = load(args.algebra)
    if args.variant == "lie":
        H, _ = hol_lie(A)
    else:
        H, _ = hol(A)
    S = component(0, A.dim, H.dim, A.field)
    status = {"algebra": H.name, "dim": H.dim, "variant": args.variant, "A_is_ideal": is_ideal(H, S)}
    _emit_algebra(H, args, out, status)
    return OK


def cmd_construct(args, out: _Out) -> int:
    if args.kind == "hemisemidirect":
        rep = representation_from_json(read_json(args.rep))
        bad = certify_representation(rep)
        if bad is not None:
            raise InputError(f"not a representation: basis pair (e_{bad[0]}, e_{bad[1]})")
        H = hemisemidirect(rep, args.name or "")
    elif args.kind == "direct-product":
        A, B = load(args.a), load(args.b)
        H = direct_product(A, B, args.name or "")
    else:
        A = load(args.a)
        J = _subspace_arg(A, args.ideal)
        try:
            H, _ = quotient_algebra(A, J, args.name or "")
        except NotAnIdealError as exc:
            raise InputError(f"not an ideal: {_describe_pair(exc.pair)} escapes") from None
    res = check_leibniz(H)
    _emit_algebra(H, args, out, {"algebra": H.name, "dim": H.dim, "leibniz": res.holds})
    return OK if res.holds else PROPERTY_FAILS


def cmd_witness(args, out: _Out) -> int:
    A = load(args.algebra)
    try:
        w = witness_nonperfect(A)
    except HypothesisError as exc:
        out.json({"algebra": A.name, "perfect": True, "error": str(exc)})
        return PROPERTY_FAILS
    obj = w.to_json()
    obj["valid"] = w.valid
    out.json(obj)
    return OK if w.valid else PROPERTY_FAILS


def cmd_tower(args, out: _Out) -> int:
    A = load(args.algebra)
    if args.depth < 0:
        raise InputError("--depth must be nonnegative")
    try:
        T = derivation_tower(A, args.depth)
    except HypothesisError as exc:
        out.json({"algebra": A.name, "error": str(exc), "witness": exc.witness})
        return PROPERTY_FAILS
    out.json({"algebra": A.name, "dims": T.dims(), "levels": T.to_json()})
    return OK


def cmd_verify(args, out: _Out) -> int:
    theorems = None if args.theorem == "all" else [args.theorem]
    if args.file:
        reports = []
        for spec in args.file:
            A = load(spec)
            reports.extend(suite_for(A, A.name or spec, args.depth, theorems))
    else:
        keys = args.catalog
        for k in keys or []:
            catalog.entry(k)
        reports = run_suite(keys, args.depth, theorems)
    failed = 0
    problems = []
    for r in reports:
        obj = r.to_json()
        if not args.table:
            out.json(obj)
        if r.verdict == FAILS:
            failed += 1
        if args.recheck:
            res = recheck_report(obj)
            if not res.ok or (r.verdict == "holds" and not res.checked):
                problems.append(f"recheck {r.theorem} [{r.instance}]: {'; '.join(res.problems)}")
    out.text(summary_table(reports), table=args.table)
    for p in problems:
        out.stderr.write(p + "\n")
    return OK if failed == 0 and not problems else PROPERTY_FAILS


def cmd_recheck(args, out: _Out) -> int:
    if args.reports == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            lines = Path(args.reports).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise InputError(f"cannot read {args.reports}: {exc.strerror}") from None
    for n, line in enumerate(lines, start=1):
        if line.strip():
            parse_json_text(line, f"{args.reports} line {n}")
    results = recheck_lines(lines)
    bad = 0
    for r in results:
        if not r.ok:
            bad += 1
        out.json({"theorem": r.theorem, "instance": r.instance, "verdict": r.verdict,
                  "checked": r.checked, "checks": r.checks, "ok": r.ok, "problems": list(r.problems)})
    return OK if bad == 0 else PROPERTY_FAILS


def cmd_catalog(args, out: _Out) -> int:
    if args.action == "list":
        for k in catalog.keys():
            out.stdout.write(f"{k}\t{catalog.entry(k).notes}\n")
        return OK
    if not args.key:
        raise InputError("catalog emit needs a key")
    A = catalog.get(args.key)
    if args.output:
        Path(args.output).write_text(dumps_algebra(A), encoding="utf-8")
    else:
        out.stdout.write(dumps_algebra(A))
    return OK


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leibniz", description="Exact computations with finite-dimensional Leibniz algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate a file and test the left Leibniz identity")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("info", help="invariant report")
    s.add_argument("algebra")
    s.add_argument("--table", action="store_true", help="print only the human table, on stdout")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("derivations", help="derivation algebra")
    s.add_argument("algebra")
    s.add_argument("--lie", action="store_true", help="include D_Lie(A)")
    s.add_argument("--ideal-I", dest="ideal_I", action="store_true", help="include I = {f : Im f in Leib(A)}")
    s.add_argument("--bracket-table", dest="bracket_table", action="store_true", help="include D(A) as an algebra")
    s.set_defaults(func=cmd_derivations)

    s = sub.add_parser("holomorph", help="build hol_Lie(A) or the holomorph hol(A)")
    s.add_argument("algebra")
    s.add_argument("--variant", choices=("lie", "bms"), default="lie")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_holomorph)

    s = sub.add_parser("construct", help="hemisemidirect product, direct product or quotient")
    csub = s.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("hemisemidirect")
    c.add_argument("--rep", required=True, help="representation JSON file")
    c = csub.add_parser("direct-product")
    c.add_argument("a")
    c.add_argument("b")
    c = csub.add_parser("quotient")
    c.add_argument("a")
    c.add_argument("--ideal", required=True,
                   help=f"one of {', '.join(NAMED_SUBSPACES)}, an inline JSON list of vectors, or a JSON file")
    for c in csub.choices.values():
        c.add_argument("--name")
        c.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("witness", help="non-perfectness witness certificate")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("tower", help="derivation tower of D(A)/I")
    s.add_argument("algebra")
    s.add_argument("--depth", type=int, default=3)
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("verify", help="run theorem verifiers")
    s.add_argument("theorem", choices=("all",) + THEOREMS)
    s.add_argument("--catalog", nargs="*", metavar="KEY", help="catalog keys (default: all)")
    s.add_argument("--file", nargs="*", metavar="ALGEBRA", help="algebra files or catalog:KEY instead of the catalog")
    s.add_argument("--depth", type=int, default=2, help="tower depth for th12 (default 2)")
    s.add_argument("--table", action="store_true", help="print the summary table on stdout instead of JSON lines")
    s.add_argument("--recheck", action="store_true", help="also run the independent re-checker")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("recheck", help="re-validate a JSON-lines report stream")
    s.add_argument("reports", help="file or - for stdin")
    s.set_defaults(func=cmd_recheck)

    s = sub.add_parser("catalog", help="list or emit built-in algebras")
    s.add_argument("action", choices=("list", "emit"))
    s.add_argument("key", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    out = _Out(stdout, stderr)
    try:
        return args.func(args, out)
    except InputError as exc:
        stderr.write(f"error: {exc}\n")
        return BAD_INPUT
    except LeibnizError as exc:
        stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return PROPERTY_FAILS


if __name__ == "__main__":
    sys.exit(main())
