"""Command line front end.

Exit codes: 0 when every selected check passes (or a search completes, or the
lemma holds), 1 when a violation or counterexample is found, 2 on usage,
parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import TextIO

from .algebra import format_linear_map, parse_linear_map
from .category import FIXTURE_NAMES, fixture, irreducibility, run_search
from .checks import (
    characteristic_check,
    is_algebra_homomorphism,
    minimal_characteristic_check,
    nc_characteristic_check,
    roots_of_unity_check,
    verify_root_ratio_lemma,
)
from .errors import CharMorphError
from .fields import QQ, cyclotomic, parse_field

CHECK_NAMES = ("hom", "char", "minchar", "nc", "roots")
MAX_LISTED = 3


class UsageError(Exception):
    pass


def _fixture_params(args) -> dict:
    params = {}
    for key in ("a", "b", "d", "dim"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if getattr(args, "multiplicities", None):
        params["multiplicities"] = [int(x) for x in args.multiplicities.split(",")]
    return params


def _load_map(args):
    field = parse_field(args.field) if args.field else None
    if args.fixture:
        return fixture(args.fixture, field or QQ, **_fixture_params(args))
    with open(args.input, encoding="utf-8") as fh:
        return parse_linear_map(fh.read(), field_override=field)


def _matrix_inline(M) -> str:
    return "[" + ", ".join("[" + ", ".join(r) + "]" for r in M.to_strings()) + "]"


def _emit_report(report, fmt: str, out: TextIO) -> None:
    if fmt == "jsonl":
        out.write(json.dumps(report.to_dict()) + "\n")
        return
    out.write(report.summary() + "\n")
    for v in report.violations[:MAX_LISTED]:
        w = v.witness
        shown = _matrix_inline(w) if hasattr(w, "to_strings") else str(w)
        label = v.kind if v.index is None else f"{v.kind} {v.index}"
        out.write(f"  {label}: {shown}\n")
    if len(report.violations) > MAX_LISTED:
        out.write(f"  ... {len(report.violations) - MAX_LISTED} more\n")


def cmd_check(args, out: TextIO) -> int:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    if not checks:
        raise UsageError("no checks selected")
    unknown = [c for c in checks if c not in CHECK_NAMES]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; choose from {', '.join(CHECK_NAMES)}")
    if "roots" in checks and args.n is None:
        raise UsageError("the roots check needs --n")
    phi = _load_map(args)
    runners = {
        "hom": lambda: is_algebra_homomorphism(phi),
        "char": lambda: characteristic_check(phi),
        "minchar": lambda: minimal_characteristic_check(phi),
        "nc": lambda: nc_characteristic_check(phi, mode=args.nc_mode),
        "roots": lambda: roots_of_unity_check(phi, args.n, mode=args.roots_mode),
    }
    # run everything first so a precondition error leaves no partial output
    reports = [runners[c]() for c in checks]
    for r in reports:
        _emit_report(r, args.output, out)
    if args.classify:
        v = irreducibility(phi)
        if args.output == "jsonl":
            out.write(json.dumps({"irreducibility": v.status, "certificate": v.certificate,
                                  "witness": v.witness.to_strings() if v.witness else None}) + "\n")
        else:
            extra = f" witness {v.witness.to_strings()}" if v.witness else ""
            out.write(f"irreducibility: {v.status}{' (' + v.certificate + ')' if v.certificate else ''}{extra}\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_search(args, out: TextIO) -> int:
    F = parse_field(args.field)
    results, stats = run_search(F, args.d, args.dim, mode=args.mode, budget=args.budget,
                                seed=args.seed, dedupe=not args.no_dedupe)
    for k, res in enumerate(results, start=1):
        irr = res.irreducibility
        if args.output == "jsonl":
            out.write(json.dumps({
                "index": k,
                "alphas": [a.to_strings() for a in res.linear_map.alphas],
                "is_hom": res.is_hom,
                "is_characteristic": res.is_characteristic,
                "irreducibility": irr.status,
                "certificate": irr.certificate,
            }) + "\n")
        else:
            mats = "  ".join(_matrix_inline(a) for a in res.linear_map.alphas)
            out.write(f"#{k}: hom={'yes' if res.is_hom else 'no':<3} {irr.status:<12} {mats}\n")
    if args.output == "jsonl":
        out.write(json.dumps({"summary": stats}) + "\n")
    else:
        out.write(f"{stats['results']} classes from {stats['characteristic']} characteristic "
                  f"tuples out of {stats['tuples']} (pass rate {stats['pass_rate']:.3g})\n")
    return 0


def cmd_lemma(args, out: TextIO) -> int:
    F = parse_field(args.field) if args.field else cyclotomic(args.n)
    bad = verify_root_ratio_lemma(args.n, F, nondegenerate=args.nondegenerate)
    if args.output == "jsonl":
        out.write(json.dumps({"n": args.n, "field": F.describe(), "nondegenerate": args.nondegenerate,
                              "counterexamples": [list(q) for q in bad]}) + "\n")
    else:
        out.write(f"n={args.n} over {F.describe()}: {len(bad)} counterexamples\n")
        for q in bad[:10]:
            out.write(f"  (a, b, c, d) = {q}\n")
        if len(bad) > 10:
            out.write(f"  ... {len(bad) - 10} more\n")
    return 0 if not bad else 1


def cmd_fixtures(args, out: TextIO) -> int:
    F = parse_field(args.field) if args.field else QQ
    out.write(format_linear_map(fixture(args.name, F, **_fixture_params(args))))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charmorph",
                                     description="Exact checks for linear maps k^d -> End(M).")
    sub = parser.add_subparsers(dest="command", required=True)

    def fixture_args(p):
        p.add_argument("--a", help="example1 parameter a")
        p.add_argument("--b", help="example1 parameter b")
        p.add_argument("--d", type=int, help="diag_hom: number of idempotents")
        p.add_argument("--dim", type=int, help="diag_hom: module dimension")
        p.add_argument("--multiplicities", help="diag_hom: comma separated block sizes")

    p = sub.add_parser("check", help="run certification checks on a linear map")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="path to a linear map document")
    src.add_argument("--fixture", choices=FIXTURE_NAMES)
    fixture_args(p)
    p.add_argument("--field", help="field override, e.g. 'cyclotomic 3' or gf:7")
    p.add_argument("--checks", default="hom,char,minchar,nc",
                   help=f"comma separated subset of {','.join(CHECK_NAMES)}")
    p.add_argument("--n", type=int, help="order of the roots of unity (roots check)")
    p.add_argument("--roots-mode", choices=("full", "proof_path"), default=None)
    p.add_argument("--nc-mode", choices=("fast", "naive"), default="fast")
    p.add_argument("--classify", action="store_true", help="also report irreducibility")
    p.add_argument("--output", choices=("text", "jsonl"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="search for characteristic morphisms")
    p.add_argument("--field", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--mode", default="exhaustive")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-dedupe", action="store_true")
    p.add_argument("--output", choices=("text", "jsonl"), default="text")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("lemma", help="exhaustively test the root-ratio dichotomy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", help="default: cyclotomic n")
    p.add_argument("--nondegenerate", action="store_true",
                   help="skip quadruples whose common ratio is zero")
    p.add_argument("--output", choices=("text", "jsonl"), default="text")
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("fixtures", help="print a fixture as a linear map document")
    p.add_argument("--name", required=True, choices=FIXTURE_NAMES)
    p.add_argument("--field")
    fixture_args(p)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (CharMorphError, UsageError, OSError, ValueError) as exc:
        err.write(f"charmorph: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
