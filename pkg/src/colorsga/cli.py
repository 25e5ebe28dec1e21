"""Command-line front end over the exact engine.

Subcommands cover the whole pipeline: building the explicit table,
re-deriving it inside the enveloping algebra, Jacobi and grading scans,
triangular decomposition, conjugation checks, the Fock module, and the
vector-field realization.

Conventions, fixed so reports diff byte for byte across runs:

* ``--format table`` (the default for checks) prints summary lines on
  stdout and one line per violation on stderr; ``--format json`` prints a
  single JSON document on stdout with the violations embedded and writes
  nothing to stderr.
* Exit status 0 means every check passed, 1 means at least one violation
  (or an engine-detected failure), 2 means the request itself was invalid:
  unparsable flags, a central extension at integer spin, a truncation too
  small to certify anything, and the like.
* All ordering is canonical (basis order, sorted matrix entries, sorted
  monomials), never hash order.  ``--jobs`` caps scan parallelism; every
  scan is cheap enough to run on one worker, so the cap is accepted,
  validated, and does not influence output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .algebra import ColorAlgebra, VerificationReport
from .colored import (
    build_colored_explicit,
    compare_algebras,
    derive_colored_from_envelope,
    verify_triangular_closure,
)
from .errors import (
    AlgebraError,
    CentralExtensionUnavailable,
    CutoffTooSmall,
    OddEllRequired,
    SchemaError,
    TruncationTooSmall,
    UndefinedInvolution,
)
from .fock import build_fock_rep, verify_identities, verify_relations
from .galilei import build_galilei_superalgebra
from .involutions import (
    KINDS,
    build_involution,
    extension_compatibility_failures,
    verify_antiinvolution,
)
from .serialization import dumps_algebra, matrix_triplets
from .sqrtfield import format_fraction
from .vectorfields import build_vf_generators, verify_vf_realization

_USAGE_ERRORS = (
    CentralExtensionUnavailable,
    CutoffTooSmall,
    OddEllRequired,
    SchemaError,
    TruncationTooSmall,
    UndefinedInvolution,
    ValueError,
)


def _report_dict(rep: VerificationReport) -> Dict[str, Any]:
    return {
        "label": rep.label,
        "checked": rep.checked,
        "violations": [
            {"kind": v.kind, "items": list(v.items), "detail": v.detail}
            for v in rep.violations
        ],
    }


def _emit_json(doc: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _emit_reports(args, doc: Dict[str, Any], reports: List[VerificationReport]) -> int:
    """Shared tail for every checking command: print, then grade."""
    doc["reports"] = [_report_dict(r) for r in reports]
    if args.format == "json":
        _emit_json(doc)
    else:
        for rep in reports:
            print(rep.summary())
            for v in rep.violations:
                print(f"  {v}", file=sys.stderr)
    return 0 if all(r.ok for r in reports) else 1


def _write_text(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def _algebra_table_text(alg: ColorAlgebra) -> str:
    lines = [f"name: {alg.name}", f"dim: {alg.dim}", "basis:"]
    lines += [f"  {g} {alg.degree(g)}" for g in alg.basis]
    lines.append("table:")
    for (x, y), v in alg.table_items():
        lines.append(f"  [{x}, {y}] = {v}")
    return "\n".join(lines) + "\n"


def _emit_algebra(args, alg: ColorAlgebra) -> int:
    text = dumps_algebra(alg) if args.format == "json" else _algebra_table_text(alg)
    _write_text(text, args.output)
    return 0


# -- subcommands ----------------------------------------------------------------


def cmd_algebra_build(args) -> int:
    return _emit_algebra(args, build_colored_explicit(args.two_ell, central=args.central))


def cmd_verify_jacobi(args) -> int:
    algebras = (
        build_galilei_superalgebra(args.two_ell, central=args.central),
        build_colored_explicit(args.two_ell, central=args.central),
    )
    reports = [alg.check_jacobi() for alg in algebras]
    checked = sum(r.checked for r in reports)
    bad = sum(len(r.violations) for r in reports)
    doc = {
        "command": "verify jacobi",
        "two_ell": args.two_ell,
        "central": args.central,
        "triples_checked": checked,
        "violations": bad,
    }
    code = _emit_reports(args, doc, reports)
    if args.format == "table":
        print(f"triples checked: {checked}, violations: {bad}")
    return code


def cmd_derive_structure(args) -> int:
    derived = derive_colored_from_envelope(args.two_ell, central=args.central)
    if not args.diff:
        return _emit_algebra(args, derived)
    explicit = build_colored_explicit(args.two_ell, central=args.central)
    rep = compare_algebras(explicit, derived)
    doc = {
        "command": "derive structure",
        "two_ell": args.two_ell,
        "central": args.central,
        "diff_empty": rep.ok,
    }
    return _emit_reports(args, doc, [rep])


def cmd_decompose(args) -> int:
    alg = build_colored_explicit(args.two_ell, central=args.central)
    dec, rep = verify_triangular_closure(alg)
    sectors = {
        name: [{"id": str(g), "weight": format_fraction(w)} for g, w in block]
        for name, block in (("plus", dec.plus), ("zero", dec.zero), ("minus", dec.minus))
    }
    doc = {
        "command": "decompose",
        "two_ell": args.two_ell,
        "central": args.central,
        "grader": str(dec.grader),
        "sectors": sectors,
    }
    if args.format == "table":
        print(f"grader: {dec.grader}")
        for name in ("plus", "zero", "minus"):
            row = ", ".join(f"{e['id']} ({e['weight']})" for e in sectors[name])
            print(f"{name}: {row}")
    return _emit_reports(args, doc, [rep])


def cmd_involution_check(args) -> int:
    alg = build_colored_explicit(args.two_ell, central=args.central)
    mode_sign = 1 if args.sign == "plus" else -1
    reports = [verify_antiinvolution(build_involution(alg, args.kind, mode_sign))]
    if args.central:
        # the conjugation must also reverse brackets on the extended
        # superalgebra itself; the twisted kind breaks there, precisely on
        # the pairs whose bracket hits the central generator
        sup = build_galilei_superalgebra(args.two_ell, central=True)
        compat = VerificationReport(f"extension-compat[{args.kind},sign={args.sign}]")
        compat.checked = sup.dim * (sup.dim + 1) // 2
        for x, y in extension_compatibility_failures(args.two_ell, args.kind, mode_sign):
            compat.add(
                "pairing",
                (str(x), str(y)),
                "mode reflection flips the central coefficient of this bracket",
            )
        reports.append(compat)
    doc = {
        "command": "involution check",
        "two_ell": args.two_ell,
        "central": args.central,
        "kind": args.kind,
        "sign": args.sign,
    }
    return _emit_reports(args, doc, reports)


def cmd_fock_build(args) -> int:
    rep = build_fock_rep(args.two_ell, args.cutoff, dual=args.dual)
    doc: Dict[str, Any] = {
        "command": "fock build",
        "two_ell": args.two_ell,
        "cutoff": args.cutoff,
        "dual": args.dual,
        "dim": rep.space.dim,
    }
    if args.format == "json":
        order = sorted(rep.matrices, key=lambda g: g.sort_key)
        doc["matrices"] = {str(g): matrix_triplets(rep.matrices[g]) for g in order}
    else:
        print(f"module: {rep.label()}, dim {rep.space.dim}")
    checks: List[VerificationReport] = []
    if args.check:
        checks = [
            verify_relations(rep, build_galilei_superalgebra(args.two_ell, central=True)),
            verify_relations(rep, build_colored_explicit(args.two_ell, central=True)),
            verify_identities(rep),
        ]
    return _emit_reports(args, doc, checks)


def cmd_vf_check(args) -> int:
    ops = build_vf_generators(args.two_ell)
    doc: Dict[str, Any] = {
        "command": "vf check",
        "two_ell": args.two_ell,
        "pairs": args.pairs,
    }
    rep = verify_vf_realization(args.two_ell, pairs=args.pairs, ops=ops)
    if args.dump_ops:
        doc["operators"] = {str(g): str(op) for g, op in ops.items()}
        if args.format == "table":
            for g, op in ops.items():
                print(f"{g}: {op}")
    return _emit_reports(args, doc, [rep])


# -- parser ----------------------------------------------------------------------


def _common(sub, *, fmt_default: str, output: bool = False, central: bool = True):
    sub.add_argument("--two-ell", type=int, required=True, dest="two_ell",
                     metavar="N", help="twice the half-integer weight")
    if central:
        sub.add_argument("--central", action="store_true",
                         help="include the mass central extension (odd --two-ell only)")
    sub.add_argument("--format", choices=("json", "table"), default=fmt_default)
    sub.add_argument("--jobs", type=int, default=1, metavar="N",
                     help="worker cap for scans; never changes output")
    if output:
        sub.add_argument("--output", metavar="PATH",
                         help="write the document here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="colorsga",
        description="exact checks for a family of color superconformal algebras",
    )
    top.add_argument("--version", action="version", version=f"colorsga {__version__}")
    groups = top.add_subparsers(dest="group", required=True)

    algebra = groups.add_parser("algebra", help="construct structure-constant tables")
    asub = algebra.add_subparsers(dest="sub", required=True)
    build = asub.add_parser("build", help="emit the explicit table")
    _common(build, fmt_default="json", output=True)
    build.set_defaults(fn=cmd_algebra_build)

    verify = groups.add_parser("verify", help="identity scans")
    vsub = verify.add_subparsers(dest="sub", required=True)
    jacobi = vsub.add_parser("jacobi", help="graded Jacobi identity over all triples")
    _common(jacobi, fmt_default="table")
    jacobi.set_defaults(fn=cmd_verify_jacobi)

    derive = groups.add_parser("derive", help="re-derive tables independently")
    dsub = derive.add_subparsers(dest="sub", required=True)
    structure = dsub.add_parser("structure", help="table from the enveloping algebra")
    _common(structure, fmt_default="json", output=True)
    structure.add_argument("--diff", action="store_true",
                           help="compare against the explicit table instead of printing")
    structure.set_defaults(fn=cmd_derive_structure)

    decompose = groups.add_parser("decompose", help="triangular split by scaling weight")
    _common(decompose, fmt_default="table")
    decompose.set_defaults(fn=cmd_decompose)

    involution = groups.add_parser("involution", help="graded conjugation checks")
    isub = involution.add_subparsers(dest="sub", required=True)
    icheck = isub.add_parser("check", help="verify one anti-involution")
    _common(icheck, fmt_default="table")
    icheck.add_argument("--kind", choices=KINDS, required=True)
    icheck.add_argument("--sign", choices=("plus", "minus"), default="plus",
                        help="orientation of the mode reflection")
    icheck.set_defaults(fn=cmd_involution_check)

    fock = groups.add_parser("fock", help="boson-fermion module")
    fsub = fock.add_subparsers(dest="sub", required=True)
    fbuild = fsub.add_parser("build", help="exact truncated matrices")
    _common(fbuild, fmt_default="json", central=False)
    fbuild.add_argument("--cutoff", type=int, required=True, metavar="M",
                        help="largest boson occupation kept exact")
    fbuild.add_argument("--check", action="store_true",
                        help="verify all relations and the pairing identities")
    fbuild.add_argument("--dual", action="store_true",
                        help="build the conjugate module orientation")
    fbuild.set_defaults(fn=cmd_fock_build)

    vf = groups.add_parser("vf", help="first-order differential realization")
    vfsub = vf.add_subparsers(dest="sub", required=True)
    vcheck = vfsub.add_parser("check", help="bracket the realized operators")
    _common(vcheck, fmt_default="table", central=False)
    vcheck.add_argument("--pairs", choices=("core", "all"), default="all",
                        help="conformal block only, or the full triangle")
    vcheck.add_argument("--dump-ops", action="store_true", dest="dump_ops",
                        help="print each operator in canonical text form")
    vcheck.set_defaults(fn=cmd_vf_check)

    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits itself on --version/--help/errors
        return int(exc.code or 0)
    if args.jobs < 1:
        print("colorsga: error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except _USAGE_ERRORS as exc:
        print(f"colorsga: error: {exc}", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        # the engine itself refused: closure failure, basis mismatch, residue
        print(f"colorsga: failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
