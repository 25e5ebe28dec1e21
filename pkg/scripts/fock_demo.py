#!/usr/bin/env python3
"""Exercise the boson-fermion module at one spin and print what it certifies.

Builds the truncated matrices, verifies every bracket of both the base and
the colored table on the exact window, evaluates the two pairing scalars,
and reports which conjugations the module implements by (possibly twisted)
matrix adjoints.

Run:  python3 scripts/fock_demo.py [--two-ell 1] [--cutoff 8] [--dual]
"""

from __future__ import annotations

import argparse
import sys

sys.path.insert(0, "src")

from colorsga.colored import build_colored_explicit
from colorsga.fock import (
    build_fock_rep,
    fermion_parity,
    verify_identities,
    verify_relations,
    verify_star,
)
from colorsga.galilei import P, build_galilei_superalgebra
from colorsga.involutions import build_involution
from colorsga.serialization import matrix_triplets


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--two-ell", type=int, default=1, dest="two_ell")
    ap.add_argument("--cutoff", type=int, default=8)
    ap.add_argument("--dual", action="store_true")
    args = ap.parse_args()

    rep = build_fock_rep(args.two_ell, args.cutoff, dual=args.dual)
    print(f"module {rep.label()}: dimension {rep.space.dim}")
    trips = matrix_triplets(rep.matrix(P(0)))
    print(f"P[0] as sparse triplets ({len(trips)} entries):")
    for t in trips[:6]:
        print(f"  {t}")

    base = build_galilei_superalgebra(args.two_ell, central=True)
    col = build_colored_explicit(args.two_ell, central=True)
    bad = 0
    for check in (
        verify_relations(rep, base),
        verify_relations(rep, col),
        verify_identities(rep),
    ):
        print(check.summary())
        bad += len(check.violations)

    gamma = fermion_parity(rep.space)
    for kind, twist in (("adjoint1", None), ("adjoint2", gamma)):
        star = verify_star(rep, build_involution(col, kind, 1), twist=twist)
        tag = "with parity twist" if twist else "plain"
        print(f"{star.label} ({tag}): {'star' if star.ok else 'NOT a star'}")
        bad += len(star.violations)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
