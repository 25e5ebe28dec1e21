"""End-to-end acceptance gate.

One test per advertised guarantee, ordered; each prints a single
``[accept N] ...: PASS`` / ``FAIL`` line on the real terminal (capture is
bypassed) so a full run leaves a nine-line scoreboard regardless of
verbosity flags.  Everything here re-checks behavior that the unit suites
cover piecewise; the point of this file is that the whole chain holds at
the advertised sizes in one process, within the advertised runtimes.
"""

import random
import time
from fractions import Fraction

import pytest

from colorsga.cli import main
from colorsga.colored import (
    build_colored_explicit,
    compare_algebras,
    derive_colored_from_envelope,
    verify_triangular_closure,
)
from colorsga.fock import (
    build_fock_rep,
    fermion_parity,
    verify_identities,
    verify_relations,
    verify_star,
)
from colorsga.galilei import build_galilei_superalgebra
from colorsga.grading import sign
from colorsga.grassmann import GPoly, VarTable
from colorsga.involutions import (
    build_involution,
    central_pairing_pairs,
    extension_compatibility_failures,
    verify_antiinvolution,
)
from colorsga.vectorfields import build_vf_generators, verify_vf_realization, vf_bracket


@pytest.fixture
def announce(capfd):
    def _announce(num: int, title: str, ok: bool) -> bool:
        with capfd.disabled():
            print(f"[accept {num}] {title}: {'PASS' if ok else 'FAIL'}", flush=True)
        return ok

    return _announce


def test_accept_1_jacobi_exact_at_all_sizes(announce, capfd):
    t0 = time.perf_counter()
    ok, triples = True, 0
    invocations = [["verify", "jacobi", "--two-ell", str(L)] for L in (1, 2, 3, 4)]
    invocations += [["verify", "jacobi", "--two-ell", str(L), "--central"] for L in (1, 3)]
    for argv in invocations:
        code = main(argv)
        out = capfd.readouterr().out
        last = out.strip().splitlines()[-1]
        ok = ok and code == 0 and last.endswith("violations: 0")
        triples += int(last.split("triples checked: ")[1].split(",")[0])
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60
    assert announce(
        1, f"graded Jacobi exact everywhere ({triples} triples, {elapsed:.1f}s)", ok
    )


def test_accept_2_dimension_count(announce):
    dims = [build_colored_explicit(L).dim for L in (1, 2, 3, 4)]
    formula = [2 * L * L + 4 * L + 7 for L in (1, 2, 3, 4)]
    ok = dims == [13, 23, 37, 55] == formula
    assert announce(2, f"colored dimension count {dims}", ok)


def test_accept_3_oracle_equivalence(announce):
    bad = []
    for L, central in [(1, False), (2, False), (1, True), (3, True)]:
        explicit = build_colored_explicit(L, central=central)
        derived = derive_colored_from_envelope(L, central=central)
        rep = compare_algebras(explicit, derived)
        if not rep.ok:
            bad.append((L, central, rep.violations[:3]))
    assert announce(
        3, "explicit tables equal the enveloping-algebra derivation", not bad
    ), bad


ZERO_SECTORS = {
    1: ["D", "X[0]", "Pc[0,1]"],
    2: ["D", "P[1]", "Pc[0,2]", "Pc[1,1]", "Xc[0,1]"],
    3: ["D", "X[1]", "Pc[0,3]", "Pc[1,2]", "Xc[0,2]"],
    4: ["D", "P[2]", "Pc[0,4]", "Pc[1,3]", "Pc[2,2]", "Xc[0,3]", "Xc[1,2]"],
}


def test_accept_4_triangular_decomposition(announce):
    ok = True
    for L in (1, 2, 3, 4):
        dec, rep = verify_triangular_closure(build_colored_explicit(L))
        ok = ok and rep.ok
        ok = ok and sorted(str(g) for g, _ in dec.zero) == sorted(ZERO_SECTORS[L])
        ok = ok and len(dec.plus) == len(dec.minus)
    assert announce(
        4, "triangular split: frozen zero sectors, weight-additive brackets", ok
    )


def test_accept_5_involutions(announce):
    ok = True
    for L in (1, 2, 3, 4):
        for central in (False, True):
            if central and L % 2 == 0:
                continue
            alg = build_colored_explicit(L, central=central)
            for kind in ("adjoint1", "adjoint2"):
                for mode_sign in (1, -1):
                    ok = ok and verify_antiinvolution(
                        build_involution(alg, kind, mode_sign)
                    ).ok
    for L in (1, 3):
        ok = ok and verify_antiinvolution(
            build_involution(build_colored_explicit(L), "superadjoint")
        ).ok
        for mode_sign in (1, -1):
            # the twisted kind cannot survive the central extension; the
            # obstruction must be exactly the central pairing pairs
            fails = extension_compatibility_failures(L, "superadjoint", mode_sign)
            ok = ok and fails == central_pairing_pairs(L)
            ok = ok and extension_compatibility_failures(L, "adjoint1", mode_sign) == []
            ok = ok and extension_compatibility_failures(L, "adjoint2", mode_sign) == []
    assert announce(
        5, "conjugations: plain kinds hold, twisted kind breaks on central pairings only", ok
    )


def test_accept_6_fock_module(announce):
    rep = build_fock_rep(1, 8)
    base = build_galilei_superalgebra(1, central=True)
    col = build_colored_explicit(1, central=True)
    reports = [
        verify_relations(rep, base),
        verify_relations(rep, col),
        verify_identities(rep),  # pairing scalars: -1 and 1/2 at this spin
        verify_star(rep, build_involution(col, "adjoint1", 1)),
        verify_star(rep, build_involution(col, "adjoint2", 1), twist=fermion_parity(rep.space)),
    ]
    ok = all(r.ok for r in reports)
    assert announce(
        6, "Fock module: all relations, pairing scalars -1 and 1/2, both adjoints star", ok
    ), [r.summary() for r in reports if not r.ok]


def _all_vars(t: VarTable):
    out = [t.x1, t.x2, t.x3, t.theta(1), t.theta(2)]
    out += [t.psi(n) for n in range(t.two_ell + 1)]
    out += [t.z(n) for n in range(t.two_ell)]
    out += [t.y(n, m) for n in range(t.two_ell + 1) for m in range(n, t.two_ell + 1)]
    out += [t.w(n, m)[0] for n in range(t.two_ell) for m in range(n + 1, t.two_ell)]
    out += [t.sigma(n, m) for n in range(t.two_ell + 1) for m in range(t.two_ell)]
    return out


def test_accept_7_graded_calculus(announce):
    t = VarTable(4)

    def mono(*vars_, c=1):
        return GPoly.monomial([(v, 1) for v in vars_], c=c)

    # frozen single-derivative examples: hop signs and the power rule
    ex1 = mono(t.x2, t.psi(1), t.psi(2)).derive(t.psi(2)) == mono(t.x2, t.psi(1), c=-1)
    ex2 = mono(t.psi(1), t.theta(1), t.z(3)).derive(t.theta(1)) == mono(t.psi(1), t.z(3))
    ex3 = GPoly.monomial([(t.x2, 1), (t.psi(3), 1), (t.z(1), 2)]).derive(t.z(1)) == mono(
        t.x2, t.psi(3), t.z(1), c=-2
    )

    pool = _all_vars(t)
    rng = random.Random(41229)
    checked = 0
    ok = ex1 and ex2 and ex3
    for _ in range(1000):
        chosen = rng.sample(pool, k=rng.randint(0, 6))
        entry = [(v, 1 if v.nilpotent else rng.randint(1, 3)) for v in chosen]
        f = GPoly.monomial(entry, c=rng.choice([1, -1, 2, Fraction(-3, 2)]),
                           weight=Fraction(rng.randint(-4, 4), 2))
        u, v = rng.choice(pool), rng.choice(pool)
        lhs = f.derive(v).derive(u)
        rhs = f.derive(u).derive(v).scaled(sign(u.degree, v.degree))
        ok = ok and (lhs - rhs).is_zero()
        checked += 1
    ok = ok and checked >= 1000
    assert announce(
        7, f"graded derivatives: frozen examples plus {checked} seeded commutation checks", ok
    )


def test_accept_8_vector_field_realization(announce):
    t0 = time.perf_counter()
    full = verify_vf_realization(1, pairs="all")
    cores = [verify_vf_realization(L, pairs="core") for L in (1, 2)]
    # the bracket of two first-order operators must stay first-order: the
    # composition's second-order part has to cancel identically
    ops = list(build_vf_generators(1).values())
    residue_free = True
    for i, a in enumerate(ops):
        for b in ops[i:]:
            br = vf_bracket(a, b)
            residue_free = residue_free and all(len(k) <= 1 for k, _ in br.items())
    elapsed = time.perf_counter() - t0
    ok = full.ok and all(r.ok for r in cores) and residue_free and elapsed < 600
    assert announce(
        8,
        f"vector fields: full size-1 table, conformal cores, no second-order residue ({elapsed:.0f}s)",
        ok,
    ), [full.summary()] + [r.summary() for r in cores]


CLI_MATRIX = [
    ["algebra", "build", "--two-ell", "1", "--central"],
    ["algebra", "build", "--two-ell", "3", "--format", "table"],
    ["verify", "jacobi", "--two-ell", "2"],
    ["derive", "structure", "--two-ell", "1", "--diff"],
    ["derive", "structure", "--two-ell", "1", "--central"],
    ["decompose", "--two-ell", "3", "--format", "json"],
    ["involution", "check", "--two-ell", "1", "--central", "--kind", "superadjoint"],
    ["fock", "build", "--two-ell", "1", "--cutoff", "6", "--check"],
    ["vf", "check", "--two-ell", "1", "--pairs", "core", "--dump-ops"],
]


def test_accept_9_cli_determinism(announce, capfd):
    ok = True
    for argv in CLI_MATRIX:
        runs = []
        for extra in ([], [], ["--jobs", "4"]):
            code = main(argv + extra)
            cap = capfd.readouterr()
            runs.append((code, cap.out, cap.err))
        ok = ok and runs[0] == runs[1] == runs[2]
    assert announce(9, "CLI output byte-identical across repeats and --jobs", ok)
