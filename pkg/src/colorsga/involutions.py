"""Conjugation maps on the spin and color algebras.

Three graded anti-involutions are provided, each reflecting the mode ladders
end to end and exchanging the raising and lowering content of the conformal
core.  Over the rationals the antilinearity requirement degenerates to
linearity (conjugation fixes every scalar), so property (ii) below reduces
to compatibility with rational linear combinations.

Verified properties:
  (i)   degree preservation,
  (ii)  (anti)linearity,
  (iii) bracket reversal, plain or with the degree-pairing twist,
  (iv)  squaring to the identity, plain or weighted by total degree parity.

``kind='adjoint1'`` and ``kind='adjoint2'`` use the plain variants of (iii)
and (iv); ``kind='superadjoint'`` uses the twisted variants and exists only
at half-integer spin.  The free sign flips the whole mode sector and never
affects any of the four properties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .algebra import ColorAlgebra, GeneratorId, LinComb, VerificationReport
from .errors import UndefinedInvolution
from .galilei import CENTRAL, D, H, K, P, Q, S, X, build_galilei_superalgebra
from .grading import sign

__all__ = [
    "Involution",
    "KINDS",
    "build_involution",
    "verify_antiinvolution",
    "bracket_reversal_failures",
    "extension_compatibility_failures",
    "central_pairing_pairs",
]

KINDS = ("adjoint1", "adjoint2", "superadjoint")


def _xc_img(a: int, b: int, coeff: Fraction) -> LinComb:
    if a == b:
        return LinComb.zero()
    if a < b:
        return LinComb.gen(GeneratorId("Xc", (a, b)), coeff)
    return LinComb.gen(GeneratorId("Xc", (b, a)), -coeff)


@dataclass(frozen=True)
class Involution:
    """A generator-wise conjugation map over a fixed algebra."""

    alg: ColorAlgebra
    kind: str
    sign: int
    image: Dict[GeneratorId, LinComb]

    @property
    def twisted(self) -> bool:
        """True when (iii) carries the degree-pairing sign and (iv) the
        total-parity sign."""
        return self.kind == "superadjoint"

    def apply(self, elt) -> LinComb:
        if isinstance(elt, GeneratorId):
            elt = LinComb.gen(elt)
        return elt.mapped(lambda g: self.image[g])


def build_involution(alg: ColorAlgebra, kind: str, mode_sign: int = 1) -> Involution:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if mode_sign not in (1, -1):
        raise ValueError(f"mode_sign must be +1 or -1, got {mode_sign!r}")
    L = alg.two_ell
    if kind == "superadjoint" and L % 2 == 0:
        raise UndefinedInvolution(
            "the twisted conjugation needs the mode reflection to flip the "
            f"central pairing coefficients, which requires odd two_ell; got {L}"
        )
    s = Fraction(mode_sign)
    one = Fraction(1)

    def img(g: GeneratorId) -> LinComb:
        f, idx = g.family, g.indices
        if f == "H":
            return LinComb.gen(K, one if kind == "superadjoint" else -one)
        if f == "K":
            return LinComb.gen(H, one if kind == "superadjoint" else -one)
        if f == "D":
            return LinComb.gen(D)
        if f == "I":
            return LinComb.gen(CENTRAL)
        if f == "Q":
            return LinComb.gen(S, -one if kind == "adjoint2" else one)
        if f == "S":
            return LinComb.gen(Q, -one if kind != "adjoint1" else one)
        if f == "P":
            (n,) = idx
            c = s * (-1) ** n if kind == "superadjoint" else s
            return LinComb.gen(P(L - n), c)
        if f == "X":
            (n,) = idx
            if kind == "adjoint1":
                c = s
            elif kind == "adjoint2":
                c = -s
            else:
                c = -s * (-1) ** n
            return LinComb.gen(X(L - 1 - n), c)
        if f == "Pc":
            n, m = idx
            c = (-1) ** (n + m + 1) * one if kind == "superadjoint" else one
            a, b = sorted((L - n, L - m))
            return LinComb.gen(GeneratorId("Pc", (a, b)), c)
        if f == "Xc":
            n, m = idx
            c = (-1) ** (n + m + 1) * one if kind == "superadjoint" else -one
            return _xc_img(L - 1 - n, L - 1 - m, c)
        if f == "Lam":
            n, m = idx
            if kind == "adjoint1":
                c = one
            elif kind == "adjoint2":
                c = -one
            else:
                c = (-1) ** (n + m) * one
            return LinComb.gen(GeneratorId("Lam", (L - n, L - 1 - m)), c)
        raise UndefinedInvolution(f"no conjugation rule for family {f}")

    return Involution(alg, kind, mode_sign, {g: img(g) for g in alg.basis})


def bracket_reversal_failures(inv: Involution) -> List[Tuple[GeneratorId, GeneratorId]]:
    """Canonical pairs violating property (iii) for this involution."""
    alg = inv.alg
    bad = []
    for i, x in enumerate(alg.basis):
        for y in alg.basis[i:]:
            lhs = inv.apply(alg.pair_bracket(x, y))
            rhs = alg.bracket(inv.apply(y), inv.apply(x))
            if inv.twisted:
                rhs = Fraction(sign(alg.degrees[x], alg.degrees[y])) * rhs
            if lhs != rhs:
                bad.append((x, y))
    return bad


def verify_antiinvolution(inv: Involution) -> VerificationReport:
    alg = inv.alg
    rep = VerificationReport(f"involution[{inv.kind},{alg.name}]")

    # (i) degree preservation
    for g in alg.basis:
        rep.checked += 1
        d = alg.degree_of(inv.image[g])
        if d is None or d != alg.degrees[g]:
            rep.add("degree", (str(g),), f"image {inv.image[g]} not in degree {alg.degrees[g]}")

    # (ii) linearity; scalar conjugation on rationals is the identity
    coeffs = (Fraction(2), Fraction(-1, 3))
    for i, g in enumerate(alg.basis):
        h = alg.basis[(i + 1) % alg.dim]
        rep.checked += 1
        combo = LinComb({g: coeffs[0], h: coeffs[1]})
        want = coeffs[0] * inv.apply(g) + coeffs[1] * inv.apply(h)
        if inv.apply(combo) != want:
            rep.add("linearity", (str(g), str(h)), "image of combination mismatches")

    # (iii) bracket reversal
    n = alg.dim
    rep.checked += n * (n + 1) // 2
    for x, y in bracket_reversal_failures(inv):
        lhs = inv.apply(alg.pair_bracket(x, y))
        rhs = alg.bracket(inv.apply(y), inv.apply(x))
        if inv.twisted:
            rhs = Fraction(sign(alg.degrees[x], alg.degrees[y])) * rhs
        rep.add("bracket", (str(x), str(y)), f"{lhs} vs {rhs}")

    # (iv) square
    for g in alg.basis:
        rep.checked += 1
        sq = inv.apply(inv.apply(g))
        want = LinComb.gen(g)
        if inv.twisted:
            d = alg.degrees[g]
            want = Fraction((-1) ** (d.a1 + d.a2)) * want
        if sq != want:
            rep.add("square", (str(g),), f"double image {sq}, expected {want}")

    return rep


def central_pairing_pairs(two_ell: int) -> List[Tuple[GeneratorId, GeneratorId]]:
    """Canonical mode pairs whose superalgebra bracket hits the central term."""
    L = two_ell
    pairs = [(P(n), P(L - n)) for n in range(L + 1) if n <= L - n]
    pairs += [(X(n), X(L - 1 - n)) for n in range(L) if n <= L - 1 - n]
    return pairs


def extension_compatibility_failures(
    two_ell: int, kind: str, mode_sign: int = 1
) -> List[Tuple[GeneratorId, GeneratorId]]:
    """Property (iii) failures on the centrally extended superalgebra.

    The conjugation must fix the central generator (any representation
    sending it to the unit scalar forces that), and with that choice the
    twisted involution cannot respect the central pairings: the mode
    reflection flips their coefficients.  The two plain conjugations are
    compatible.  Callers get the exact failing pair list to compare.
    """
    sup = build_galilei_superalgebra(two_ell, central=True)
    inv = build_involution(sup, kind, mode_sign)
    return bracket_reversal_failures(inv)
