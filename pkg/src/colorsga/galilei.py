"""N=1 superconformal Galilei superalgebra with half-integer spin parameter.

The spin parameter enters as ``two_ell`` (twice the spin, a positive integer)
so every index stays integral.  Generators: the conformal core H, D, K, the
supercharges Q, S, an even spin multiplet P[0..two_ell] and an odd multiplet
X[0..two_ell-1].  The algebra is an ordinary superalgebra; it is embedded in
the four-degree engine by grading bosons (0,0) and fermions (0,1).

With ``central=True`` (odd two_ell only) the extra even generator I appears
and mode pairs whose indices sum to the top weight pick up central terms with
factorial coefficients; even two_ell raises CentralExtensionUnavailable
because those coefficients would divide by zero at the multiplet midpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Tuple

from .algebra import ColorAlgebra, GeneratorId, LinComb
from .errors import CentralExtensionUnavailable
from .grading import DEG

__all__ = [
    "CentralData",
    "central_data",
    "build_galilei_superalgebra",
    "H", "D", "K", "Q", "S", "CENTRAL", "P", "X",
]

H = GeneratorId("H")
D = GeneratorId("D")
K = GeneratorId("K")
Q = GeneratorId("Q")
S = GeneratorId("S")
CENTRAL = GeneratorId("I")


def P(n: int) -> GeneratorId:
    return GeneratorId("P", (n,))


def X(n: int) -> GeneratorId:
    return GeneratorId("X", (n,))


@dataclass(frozen=True)
class CentralData:
    """Central-term coefficients for the even and odd mode pairings.

    i_coeffs[n] weights the central term of [P[n], P[two_ell-n]];
    alpha_coeffs[n] weights the central term of {X[n], X[two_ell-1-n]}.
    """

    two_ell: int
    i_coeffs: Tuple[Fraction, ...]
    alpha_coeffs: Tuple[Fraction, ...]


def central_data(two_ell: int) -> CentralData:
    if two_ell < 1 or two_ell % 2 == 0:
        raise CentralExtensionUnavailable(
            "central extension requires half-integer spin (odd two_ell), "
            f"got two_ell={two_ell}"
        )
    i_coeffs = tuple(
        Fraction((-1) ** n * factorial(n) * factorial(two_ell - n))
        for n in range(two_ell + 1)
    )
    alpha_coeffs = tuple(
        i_coeffs[n] / (two_ell - n) for n in range(two_ell)
    )
    return CentralData(two_ell, i_coeffs, alpha_coeffs)


def build_galilei_superalgebra(two_ell: int, central: bool = False) -> ColorAlgebra:
    """Construct the superalgebra at spin two_ell/2, optionally centrally extended."""
    if not isinstance(two_ell, int) or two_ell < 1:
        raise ValueError(f"two_ell must be a positive integer, got {two_ell!r}")
    cdata: Optional[CentralData] = central_data(two_ell) if central else None

    L = two_ell
    ell = Fraction(L, 2)
    half = Fraction(1, 2)

    basis = [H, D, K] + [P(n) for n in range(L + 1)] + [Q, S] + [X(n) for n in range(L)]
    if central:
        basis.append(CENTRAL)

    even, odd = DEG["00"], DEG["01"]
    degrees = {g: even for g in (H, D, K, CENTRAL)}
    degrees.update({P(n): even for n in range(L + 1)})
    degrees.update({g: odd for g in (Q, S)})
    degrees.update({X(n): odd for n in range(L)})

    entries = []

    def put(x: GeneratorId, y: GeneratorId, *terms) -> None:
        val = {}
        for c, g in terms:
            c = Fraction(c)
            if c == 0:
                continue
            assert g is not None, f"nonzero coefficient on out-of-range mode in [{x},{y}]"
            val[g] = val.get(g, Fraction(0)) + c
        v = LinComb(val)
        if v:
            entries.append((x, y, v))

    def p(n: int) -> Optional[GeneratorId]:
        return P(n) if 0 <= n <= L else None

    def x_(n: int) -> Optional[GeneratorId]:
        return X(n) if 0 <= n <= L - 1 else None

    # conformal core and supercharges
    put(D, H, (1, H))
    put(D, K, (-1, K))
    put(H, K, (2, D))
    put(D, Q, (half, Q))
    put(K, Q, (1, S))
    put(H, S, (1, Q))
    put(D, S, (-half, S))
    put(Q, Q, (2, H))
    put(S, S, (-2, K))
    put(Q, S, (-2, D))

    # action on the even multiplet
    for n in range(L + 1):
        put(H, P(n), (n, p(n - 1)))
        put(D, P(n), (ell - n, P(n)))
        put(K, P(n), (L - n, p(n + 1)))
        put(Q, P(n), (n, x_(n - 1)))
        put(S, P(n), (n - L, x_(n)))

    # action on the odd multiplet
    for n in range(L):
        put(H, X(n), (n, x_(n - 1)))
        put(D, X(n), (ell - half - n, X(n)))
        put(K, X(n), (L - 1 - n, x_(n + 1)))
        put(Q, X(n), (1, P(n)))
        put(S, X(n), (1, P(n + 1)))

    if central:
        assert cdata is not None
        for n in range(L + 1):
            m = L - n
            if n < m:
                put(P(n), P(m), (cdata.i_coeffs[n], CENTRAL))
        for n in range(L):
            m = L - 1 - n
            if n <= m:
                put(X(n), X(m), (cdata.alpha_coeffs[n], CENTRAL))

    name = f"galilei-central[{L}/2]" if central else f"galilei[{L}/2]"
    return ColorAlgebra(
        name=name,
        two_ell=L,
        basis=basis,
        degrees=degrees,
        entries=entries,
        central=central,
    )
