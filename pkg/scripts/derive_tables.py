#!/usr/bin/env python3
"""Regenerate every structure-constant table from scratch and diff it.

For each requested size the colored table is derived inside the enveloping
algebra of the base superalgebra (composites bracketed out by normal
ordering), compared entry by entry against the explicit closed-form table,
and written to disk in the exchange format.  A nonzero exit means some
size produced a diff, which would indicate a real defect in one of the two
constructions.

Run:  python3 scripts/derive_tables.py [--sizes 1 2 3] [--outdir tables]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, "src")

from colorsga.colored import (
    build_colored_explicit,
    compare_algebras,
    derive_colored_from_envelope,
)
from colorsga.serialization import export_json


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--outdir", default="tables")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for L in args.sizes:
        for central in (False, True):
            if central and L % 2 == 0:
                continue
            t0 = time.perf_counter()
            explicit = build_colored_explicit(L, central=central)
            derived = derive_colored_from_envelope(L, central=central)
            rep = compare_algebras(explicit, derived)
            stem = f"colored{'-central' if central else ''}-{L}.json"
            export_json(explicit, str(outdir / stem))
            status = "ok" if rep.ok else f"DIFF ({len(rep.violations)} entries)"
            print(
                f"{explicit.name}: dim {explicit.dim}, {rep.checked} entries "
                f"compared, {status}, wrote {outdir / stem}  "
                f"[{time.perf_counter() - t0:.1f}s]"
            )
            if not rep.ok:
                failures += 1
                for v in rep.violations[:5]:
                    print(f"  {v}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
