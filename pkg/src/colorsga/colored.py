"""Four-degree color algebras generated by quadratic mode composites.

Starting from the spin superalgebra, the symmetric pairings of even modes
(Pc), antisymmetric pairings of odd modes (Xc), and mixed pairings (Lam)
close, together with the original generators, into a color algebra over the
four degrees: the conformal core and both composite families sit in (0,0),
the even modes in (0,1), the supercharges and mixed composites in (1,0), and
the odd modes in (1,1).

Two independent constructions are provided.  ``build_colored_explicit``
transcribes the closed-form structure constants.  ``derive_colored_from_envelope``
computes every bracket of composite representatives inside the normal-ordered
envelope and solves for the expansion coefficients.  Agreement of the two
tables is the main correctness check on both.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import (
    ColorAlgebra,
    GeneratorId,
    LinComb,
    TriangularDecomposition,
    VerificationReport,
    ad_eigen_decompose,
)
from .enveloping import EnvElement, PbwKernel, SpanSolver, mode_composites
from .errors import BasisMismatch, ClosureFailure, NotInSpan
from .galilei import CENTRAL, D, H, K, P, Q, S, X, build_galilei_superalgebra, central_data
from .grading import DEG, Degree

__all__ = [
    "COLOR_DEGREE",
    "colored_basis",
    "color_degree",
    "build_colored_explicit",
    "derive_colored_from_envelope",
    "compare_algebras",
    "verify_triangular_closure",
]

# color grading by family; composites inherit the sum of their factors
COLOR_DEGREE = {
    "H": DEG["00"], "D": DEG["00"], "K": DEG["00"],
    "Pc": DEG["00"], "Xc": DEG["00"],
    "P": DEG["01"],
    "Q": DEG["10"], "S": DEG["10"], "Lam": DEG["10"],
    "X": DEG["11"],
}


def Pc(n: int, m: int) -> GeneratorId:
    return GeneratorId("Pc", (n, m))


def Xc(n: int, m: int) -> GeneratorId:
    return GeneratorId("Xc", (n, m))


def Lam(n: int, m: int) -> GeneratorId:
    return GeneratorId("Lam", (n, m))


def color_degree(g: GeneratorId) -> Degree:
    return COLOR_DEGREE[g.family]


def colored_basis(two_ell: int) -> List[GeneratorId]:
    L = two_ell
    basis: List[GeneratorId] = [H, D, K]
    basis += [P(n) for n in range(L + 1)]
    basis += [Q, S]
    basis += [X(n) for n in range(L)]
    basis += [Pc(n, m) for n in range(L + 1) for m in range(n, L + 1)]
    basis += [Xc(n, m) for n in range(L) for m in range(n + 1, L)]
    basis += [Lam(n, m) for n in range(L + 1) for m in range(L)]
    return basis


def build_colored_explicit(two_ell: int, central: bool = False) -> ColorAlgebra:
    """Color algebra from the closed-form structure constants."""
    if not isinstance(two_ell, int) or two_ell < 1:
        raise ValueError(f"two_ell must be a positive integer, got {two_ell!r}")
    L = two_ell
    ell = Fraction(L, 2)
    half = Fraction(1, 2)
    cdata = central_data(L) if central else None

    basis = colored_basis(L)
    degrees = {g: color_degree(g) for g in basis}
    entries: List[Tuple[GeneratorId, GeneratorId, LinComb]] = []

    # term helpers: None flags an out-of-range mode, which is only legal
    # under a vanishing coefficient; the antisymmetric family folds its
    # index order into a sign and its diagonal into zero
    def p(n: int) -> Optional[LinComb]:
        return LinComb.gen(P(n)) if 0 <= n <= L else None

    def x_(n: int) -> Optional[LinComb]:
        return LinComb.gen(X(n)) if 0 <= n <= L - 1 else None

    def pc(n: int, m: int) -> Optional[LinComb]:
        if not (0 <= n <= L and 0 <= m <= L):
            return None
        return LinComb.gen(Pc(min(n, m), max(n, m)))

    def xc(n: int, m: int) -> Optional[LinComb]:
        if not (0 <= n <= L - 1 and 0 <= m <= L - 1):
            return None
        if n == m:
            return LinComb.zero()
        if n < m:
            return LinComb.gen(Xc(n, m))
        return LinComb.gen(Xc(m, n), -1)

    def lam(n: int, m: int) -> Optional[LinComb]:
        if not (0 <= n <= L and 0 <= m <= L - 1):
            return None
        return LinComb.gen(Lam(n, m))

    def atom(g: GeneratorId) -> LinComb:
        return LinComb.gen(g)

    def put(x: GeneratorId, y: GeneratorId, *terms) -> None:
        acc = LinComb.zero()
        for c, t in terms:
            c = Fraction(c)
            if not c:
                continue
            assert t is not None, f"out-of-range mode with nonzero coefficient in [{x},{y}]"
            acc = acc + c * t
        if acc:
            entries.append((x, y, acc))

    # conformal core and supercharges
    put(D, H, (1, atom(H)))
    put(D, K, (-1, atom(K)))
    put(H, K, (2, atom(D)))
    put(D, Q, (half, atom(Q)))
    put(K, Q, (1, atom(S)))
    put(H, S, (1, atom(Q)))
    put(D, S, (-half, atom(S)))
    put(Q, Q, (2, atom(H)))
    put(S, S, (-2, atom(K)))
    put(Q, S, (-2, atom(D)))

    # core action on single modes; both orientations of the supercharge
    # pairs are ingested so the antisymmetry scan has material to compare
    for n in range(L + 1):
        put(H, P(n), (n, p(n - 1)))
        put(D, P(n), (ell - n, p(n)))
        put(K, P(n), (L - n, p(n + 1)))
        put(Q, P(n), (n, x_(n - 1)))
        put(S, P(n), (n - L, x_(n)))
        put(P(n), Q, (-n, x_(n - 1)))
        put(P(n), S, (L - n, x_(n)))
    for n in range(L):
        put(H, X(n), (n, x_(n - 1)))
        put(D, X(n), (ell - half - n, x_(n)))
        put(K, X(n), (L - 1 - n, x_(n + 1)))
        put(Q, X(n), (1, p(n)))
        put(S, X(n), (1, p(n + 1)))

    # mode pairings now close on the composites instead of central scalars
    for n in range(L + 1):
        for m in range(L + 1):
            put(P(n), P(m), (1, pc(n, m)))
    for n in range(L):
        for m in range(L):
            if n != m:
                put(X(n), X(m), (1, xc(n, m)))
        for m in range(L + 1):
            put(P(m), X(n), (1, lam(m, n)))

    # core action on the composites
    for n in range(L + 1):
        for m in range(n, L + 1):
            put(H, Pc(n, m), (n, pc(n - 1, m)), (m, pc(n, m - 1)))
            put(D, Pc(n, m), (L - n - m, pc(n, m)))
            put(K, Pc(n, m), (L - n, pc(n + 1, m)), (L - m, pc(n, m + 1)))
            put(Q, Pc(n, m), (n, lam(m, n - 1)), (m, lam(n, m - 1)))
            put(S, Pc(n, m), (m - L, lam(n, m)), (n - L, lam(m, n)))
    for n in range(L):
        for m in range(n + 1, L):
            put(H, Xc(n, m), (n, xc(n - 1, m)), (m, xc(n, m - 1)))
            put(D, Xc(n, m), (L - 1 - n - m, xc(n, m)))
            put(K, Xc(n, m), (L - 1 - n, xc(n + 1, m)), (L - 1 - m, xc(n, m + 1)))
            put(Q, Xc(n, m), (1, lam(n, m)), (-1, lam(m, n)))
            put(S, Xc(n, m), (1, lam(n + 1, m)), (-1, lam(m + 1, n)))
    for n in range(L + 1):
        for m in range(L):
            put(H, Lam(n, m), (n, lam(n - 1, m)), (m, lam(n, m - 1)))
            put(D, Lam(n, m), (L - n - m - half, lam(n, m)))
            put(K, Lam(n, m), (L - n, lam(n + 1, m)), (L - 1 - m, lam(n, m + 1)))
            put(Q, Lam(n, m), (n, xc(n - 1, m)), (1, pc(n, m)))
            put(S, Lam(n, m), (n - L, xc(n, m)), (1, pc(n, m + 1)))

    if central:
        assert cdata is not None
        ic, ac = cdata.i_coeffs, cdata.alpha_coeffs

        def d(a: int, b: int) -> int:
            return 1 if a + b == L else 0

        def dx(a: int, b: int) -> int:
            return 1 if a + b == L - 1 else 0

        pcs = [(n, m) for n in range(L + 1) for m in range(n, L + 1)]
        xcs = [(n, m) for n in range(L) for m in range(n + 1, L)]
        lams = [(n, m) for n in range(L + 1) for m in range(L)]

        for (n, m) in pcs:
            for (k, r) in pcs:
                put(
                    Pc(n, m), Pc(k, r),
                    (2 * ic[n] * d(n, k), pc(m, r)),
                    (2 * ic[n] * d(n, r), pc(m, k)),
                    (2 * ic[m] * d(m, k), pc(n, r)),
                    (2 * ic[m] * d(m, r), pc(n, k)),
                )
            for k in range(L + 1):
                put(
                    Pc(n, m), P(k),
                    (2 * ic[n] * d(n, k), p(m)),
                    (2 * ic[m] * d(m, k), p(n)),
                )
            for (k, r) in lams:
                put(
                    Pc(n, m), Lam(k, r),
                    (2 * ic[n] * d(n, k), lam(m, r)),
                    (2 * ic[m] * d(m, k), lam(n, r)),
                )
        for (n, m) in xcs:
            for (k, r) in xcs:
                put(
                    Xc(n, m), Xc(k, r),
                    (-2 * ac[n] * dx(n, k), xc(m, r)),
                    (2 * ac[n] * dx(n, r), xc(m, k)),
                    (2 * ac[m] * dx(m, k), xc(n, r)),
                    (-2 * ac[m] * dx(m, r), xc(n, k)),
                )
            for (k, r) in lams:
                put(
                    Xc(n, m), Lam(k, r),
                    (-2 * ac[n] * dx(n, r), lam(k, m)),
                    (2 * ac[m] * dx(m, r), lam(k, n)),
                )
            for k in range(L):
                put(
                    Xc(n, m), X(k),
                    (-2 * ac[n] * dx(n, k), x_(m)),
                    (2 * ac[m] * dx(m, k), x_(n)),
                )
        for n in range(L + 1):
            for (m, k) in lams:
                put(P(n), Lam(m, k), (2 * ic[n] * d(n, m), x_(k)))
        for (n, m) in lams:
            for (k, r) in lams:
                put(
                    Lam(n, m), Lam(k, r),
                    (2 * ic[n] * d(n, k), xc(m, r)),
                    (2 * ac[m] * dx(m, r), pc(n, k)),
                )
            for k in range(L):
                put(Lam(n, m), X(k), (2 * ac[m] * dx(m, k), p(n)))

    name = f"colored-central[{L}/2]" if central else f"colored[{L}/2]"
    return ColorAlgebra(
        name=name,
        two_ell=L,
        basis=basis,
        degrees=degrees,
        entries=entries,
        central=central,
    )


def derive_colored_from_envelope(two_ell: int, central: bool = False) -> ColorAlgebra:
    """Color algebra computed from scratch inside the normal-ordered envelope.

    Every canonical pair of representatives is bracketed with the color sign
    and decomposed over the span of the representatives; failure to land in
    the span raises ClosureFailure with the offending pair and residual.
    """
    L = two_ell
    sup = build_galilei_superalgebra(L, central=central)
    kernel = PbwKernel(sup)
    reps: Dict[GeneratorId, EnvElement] = {}
    for g in sup.basis:
        if g != CENTRAL:
            reps[g] = kernel.gen(g)
    reps.update(mode_composites(kernel))

    basis = colored_basis(L)
    degrees = {g: color_degree(g) for g in basis}
    solver = SpanSolver([(g, reps[g]) for g in basis])

    entries: List[Tuple[GeneratorId, GeneratorId, LinComb]] = []
    for i, x in enumerate(basis):
        for y in basis[i:]:
            val = kernel.colored_bracket(reps[x], reps[y], degrees[x], degrees[y])
            try:
                v = solver.decompose(val)
            except NotInSpan as exc:
                raise ClosureFailure(
                    f"bracket [{x}, {y}] does not close on the composite span",
                    pair=(x, y),
                    residual=exc.residual,
                ) from None
            if v:
                entries.append((x, y, v))

    name = f"derived-central[{L}/2]" if central else f"derived[{L}/2]"
    return ColorAlgebra(
        name=name,
        two_ell=L,
        basis=basis,
        degrees=degrees,
        entries=entries,
        central=central,
    )


def compare_algebras(a: ColorAlgebra, b: ColorAlgebra) -> VerificationReport:
    """Entry-by-entry diff of two tables over the same graded basis."""
    if a.basis != b.basis:
        raise BasisMismatch(
            f"{a.name} and {b.name} have different bases "
            f"({len(a.basis)} vs {len(b.basis)} generators)"
        )
    for g in a.basis:
        if a.degrees[g] != b.degrees[g]:
            raise BasisMismatch(f"degree of {g} differs: {a.degrees[g]} vs {b.degrees[g]}")
    rep = VerificationReport(f"compare[{a.name} vs {b.name}]")
    n = len(a.basis)
    for i in range(n):
        for j in range(i, n):
            x, y = a.basis[i], a.basis[j]
            va = a.pair_bracket(x, y)
            vb = b.pair_bracket(x, y)
            rep.checked += 1
            if va != vb:
                rep.add("mismatch", (str(x), str(y)), f"{va} vs {vb}")
    return rep


def verify_triangular_closure(
    alg: ColorAlgebra, grader: GeneratorId = D
) -> Tuple[TriangularDecomposition, VerificationReport]:
    """Split by the grader's eigenvalue and confirm weight additivity.

    Every term of a bracket must sit at the sum of the two weights, which
    in particular forces the zero sector to act inside each sign sector.
    """
    dec = ad_eigen_decompose(alg, grader)
    rep = VerificationReport(f"triangular[{alg.name}]")
    weight = {}
    for block in (dec.plus, dec.zero, dec.minus):
        for g, w in block:
            weight[g] = w
    for i, x in enumerate(alg.basis):
        for y in alg.basis[i:]:
            want = weight[x] + weight[y]
            rep.checked += 1
            for g, _ in alg.pair_bracket(x, y):
                if weight[g] != want:
                    rep.add(
                        "weight", (str(x), str(y)),
                        f"term {g} has weight {weight[g]}, expected {want}",
                    )
    return dec, rep
