"""Coordinate realization of the colored tower algebra.

Every generator becomes a first-order differential operator in the graded
chart of :class:`~colorsga.grassmann.VarTable`: one coordinate per
one-parameter direction, with the grid coordinates (y, w, sigma) absorbing
the composite directions.  Exponential dependence on the dilation
coordinate is tracked through monomial weights, so operators stay
polynomial.

Brackets of realized generators close onto the structure constants of the
plain colored algebra.  The central pairing sector has no counterpart here
(it needs the quadratic realization in :mod:`colorsga.fock`), so closure
checks target the non-central table.

A few coefficients admit more than one defensible reading.
:class:`Readings` keeps those choices explicit and ``scripts/vf_scan.py``
arbitrates them by brute-force closure; ``CLOSING_READINGS`` records the
unique assignment that makes every bracket close.  The quadratic grid tail
shared by the conformal pair is fixed separately: it is the unique exact
solution of the closure conditions, recovered by a linear solve over the
rationals (see ``_Builder._s_grid``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import GeneratorId, LinComb, VerificationReport
from .colored import Lam, Pc, Xc, build_colored_explicit, color_degree, colored_basis
from .errors import SecondOrderResidue
from .galilei import D, H, K, P, Q, S, X
from .grading import Degree, sign
from .grassmann import GPoly, GVar, VarTable

__all__ = [
    "DiffOperator",
    "Readings",
    "build_vf_generators",
    "realize",
    "vf_bracket",
    "verify_vf_realization",
]

_CORE: Tuple[GeneratorId, ...] = (H, D, K, Q, S)


def _canon2(u: GVar, v: GVar) -> Optional[Tuple[Tuple[GVar, GVar], int]]:
    """Canonical form of d_u d_v: sorted pair plus reorder sign; None when the
    square of a self-anticommuting derivative kills the term."""
    if u == v:
        if u.nilpotent:
            return None
        return (u, v), 1
    if u < v:
        return (u, v), 1
    return (v, u), sign(u.degree, v.degree)


class DiffOperator:
    """Differential operator of order <= 2 with graded polynomial coefficients.

    Terms map a key to a coefficient: () multiplies, (u,) differentiates once,
    (u, v) twice (canonically ordered).  The realization only ever exposes
    first-order operators; order two appears transiently inside compositions
    and must cancel in any bracket.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Tuple[GVar, ...], GPoly]] = None):
        clean: Dict[Tuple[GVar, ...], GPoly] = {}
        if terms:
            for key, p in terms.items():
                if not p.is_zero():
                    clean[key] = p
        self._terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls) -> "DiffOperator":
        return cls()

    @classmethod
    def d(cls, v: GVar, coeff) -> "DiffOperator":
        if not isinstance(coeff, GPoly):
            coeff = GPoly.scalar(coeff)
        return cls({(v,): coeff})

    @classmethod
    def mult(cls, coeff) -> "DiffOperator":
        if not isinstance(coeff, GPoly):
            coeff = GPoly.scalar(coeff)
        return cls({(): coeff})

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> int:
        return max((len(k) for k in self._terms), default=0)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: tuple(v.sort_key for v in kv[0]))

    def coeff(self, *key: GVar) -> GPoly:
        return self._terms.get(tuple(key), GPoly.zero())

    def degree(self) -> Optional[Degree]:
        """Common degree (coefficient degree plus key degrees); None if zero."""
        found: Optional[Degree] = None
        for key, p in self._terms.items():
            d = p.degree()
            if d is None:
                continue
            for v in key:
                d = d + v.degree
            if found is None:
                found = d
            elif found != d:
                raise ValueError(f"inhomogeneous operator: {found} vs {d} on {key}")
        return found

    # -- linear algebra ---------------------------------------------------------

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        out = dict(self._terms)
        for k, p in other._terms.items():
            out[k] = out[k] + p if k in out else p
        return DiffOperator(out)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator({k: -p for k, p in self._terms.items()})

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scaled(self, c) -> "DiffOperator":
        return DiffOperator({k: p.scaled(c) for k, p in self._terms.items()})

    def lmul(self, poly: GPoly) -> "DiffOperator":
        """Multiply every coefficient by ``poly`` from the left."""
        return DiffOperator({k: poly * p for k, p in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset((k, hash(p)) for k, p in self._terms.items()))

    # -- composition -------------------------------------------------------------

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """Operator product, valid when both factors have order <= 1."""
        if self.order() > 1 or other.order() > 1:
            raise ValueError("compose supports first-order operators only")
        out: Dict[Tuple[GVar, ...], GPoly] = {}

        def put(key: Tuple[GVar, ...], p: GPoly) -> None:
            if p.is_zero():
                return
            out[key] = out[key] + p if key in out else p

        for ka, pa in self._terms.items():
            for kb, qb in other._terms.items():
                if not ka:
                    put(kb, pa * qb)
                    continue
                (u,) = ka
                put(kb, pa * qb.derive(u))
                passed = pa * qb.sign_passed(u.degree)
                if not kb:
                    put((u,), passed)
                else:
                    c2 = _canon2(u, kb[0])
                    if c2 is not None:
                        key2, s2 = c2
                        put(key2, passed.scaled(s2))
        return DiffOperator(out)

    def apply(self, f: GPoly) -> GPoly:
        out = GPoly.zero()
        for key, p in self._terms.items():
            g = f
            for v in reversed(key):
                g = g.derive(v)
            out = out + p * g
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for key, p in self.items():
            ds = "".join(f"d_{v}" for v in key)
            chunks.append(f"({p}){ds}" if ds else f"({p})")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"DiffOperator({self})"


def vf_bracket(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Graded bracket of two first-order operators.

    The second-order parts of the two compositions must cancel identically;
    a surviving residue means the calculus was fed inconsistent data and
    raises SecondOrderResidue rather than returning a truncated answer.
    """
    da, db = a.degree(), b.degree()
    if da is None or db is None:
        return DiffOperator.zero()
    c = a.compose(b) - b.compose(a).scaled(sign(da, db))
    residue = {k: p for k, p in c._terms.items() if len(k) == 2}
    if residue:
        sample = next(iter(residue.items()))
        raise SecondOrderResidue(
            f"bracket kept order-two term d_{sample[0][0]}d_{sample[0][1]}: {sample[1]}",
            residue=residue,
        )
    return DiffOperator({k: p for k, p in c._terms.items() if len(k) < 2})


@dataclass(frozen=True)
class Readings:
    """Coefficient choices the coordinate form leaves underdetermined.

    * ``dilation_weight_term``: True realizes the dilation's action on the
      third even coordinate through the exponential weight alone (a bare
      derivative); False keeps the literal coordinate-times-derivative form.
    * ``superconformal_theta2_twist``: sign t in the -(1 + t*theta1*theta2)
      d_theta2 term of the odd conformal charge.
    * ``momentum_z_lowered``: True lowers the z index in the odd cross term
      of the momentum tower (theta1 d_z[n-1]); False keeps d_z[n].

    ``scripts/vf_scan.py`` arbitrates every combination by brute-force
    closure of the bracket table; ``CLOSING_READINGS`` records the unique
    assignment that survives.
    """

    dilation_weight_term: bool = False
    superconformal_theta2_twist: int = 1
    momentum_z_lowered: bool = False


class _Builder:
    def __init__(self, two_ell: int, readings: Readings):
        if not isinstance(two_ell, int) or two_ell < 0:
            raise ValueError(f"two_ell must be a nonnegative integer, got {two_ell!r}")
        self.L = two_ell
        self.ell = Fraction(two_ell, 2)
        self.r = readings
        self.t = VarTable(two_ell)
        self._hats: Dict[Tuple[str, int, int], DiffOperator] = {}
        t = self.t
        self.x1 = GPoly.var(t.x1)
        self.x2 = GPoly.var(t.x2)
        self.th1 = GPoly.var(t.theta(1))
        self.th2 = GPoly.var(t.theta(2))
        self.th12 = self.th1 * self.th2
        self.one = GPoly.scalar(1)
        self.half = Fraction(1, 2)

    # -- coordinate polynomials, None when the index leaves the chart --------

    def psi(self, n: int) -> Optional[GPoly]:
        if 0 <= n <= self.L:
            return GPoly.var(self.t.psi(n))
        return None

    def z(self, n: int) -> Optional[GPoly]:
        if 0 <= n <= self.L - 1:
            return GPoly.var(self.t.z(n))
        return None

    def m(self, *factors) -> Optional[GPoly]:
        """Product in the given order; None if any factor is missing."""
        acc = self.one
        for f in factors:
            if f is None:
                return None
            if isinstance(f, (int, Fraction)):
                acc = acc.scaled(f)
            else:
                acc = acc * f
        return acc

    # -- grid derivative blocks ------------------------------------------------

    def phat(self, r: int, s: int) -> DiffOperator:
        key = ("P", r, s)
        if key not in self._hats:
            L, t = self.L, self.t
            op = DiffOperator.zero()
            if r >= 0 and s >= 0:
                for i in range(L - r + 1):
                    for j in range(L - s + 1):
                        c = math.comb(L - r, i) * math.comb(L - s, j) * (-1) ** (i + j)
                        coeff = GPoly.monomial(
                            [(t.x2, i + j)], c=c, weight=Fraction(r + s + i + j - L)
                        )
                        op = op + DiffOperator.d(t.y(r + i, s + j), coeff)
            self._hats[key] = op
        return self._hats[key]

    def xhat(self, r: int, s: int) -> DiffOperator:
        key = ("X", r, s)
        if key not in self._hats:
            L, t = self.L, self.t
            op = DiffOperator.zero()
            if r >= 0 and s >= 0:
                for i in range(L - 1 - r + 1):
                    for j in range(L - 1 - s + 1):
                        target = t.w(r + i, s + j)
                        if target is None:
                            continue
                        var, sgn = target
                        c = math.comb(L - 1 - r, i) * math.comb(L - 1 - s, j)
                        c *= sgn * (-1) ** (i + j)
                        coeff = GPoly.monomial(
                            [(t.x2, i + j)], c=c, weight=Fraction(r + s + i + j - L + 1)
                        )
                        op = op + DiffOperator.d(var, coeff)
            self._hats[key] = op
        return self._hats[key]

    def lhat(self, r: int, s: int) -> DiffOperator:
        key = ("L", r, s)
        if key not in self._hats:
            L, t = self.L, self.t
            op = DiffOperator.zero()
            if r >= 0 and s >= 0:
                for i in range(L - r + 1):
                    for j in range(L - 1 - s + 1):
                        c = math.comb(L - r, i) * math.comb(L - 1 - s, j) * (-1) ** (i + j)
                        coeff = GPoly.monomial(
                            [(t.x2, i + j)],
                            c=c,
                            weight=Fraction(r + s + i + j - L) + Fraction(1, 2),
                        )
                        op = op + DiffOperator.d(t.sigma(r + i, s + j), coeff)
            self._hats[key] = op
        return self._hats[key]

    # -- translation-group coefficient polynomials -------------------------------

    def bcoef(self, r: int, n: int) -> GPoly:
        return GPoly.monomial([(self.t.x1, r - n)], c=math.comb(r, n) * (-1) ** (r - n))

    def gcoef(self, r: int, s: int, n: int, m: int) -> GPoly:
        e = r + s - n - m
        return GPoly.monomial([(self.t.x1, e)], c=math.comb(r, n) * math.comb(s, m) * (-1) ** e)

    # -- assembly helper ----------------------------------------------------------

    @staticmethod
    def terms(*pieces: Tuple[Optional[GPoly], DiffOperator]) -> DiffOperator:
        op = DiffOperator.zero()
        for coeff, hat in pieces:
            if coeff is None or coeff.is_zero() or hat.is_zero():
                continue
            op = op + hat.lmul(coeff)
        return op

    # -- generators ------------------------------------------------------------

    def op_H(self) -> DiffOperator:
        return DiffOperator.d(self.t.x1, -1)

    def op_D(self) -> DiffOperator:
        t, L, ell = self.t, self.L, self.ell
        op = DiffOperator.d(t.x1, -self.x1) + DiffOperator.d(t.x2, self.x2)
        if self.r.dilation_weight_term:
            op = op + DiffOperator.d(t.x3, -1)
        else:
            op = op + DiffOperator.d(t.x3, -GPoly.var(t.x3))
        op = op + DiffOperator.d(t.theta(1), self.th1.scaled(-self.half))
        op = op + DiffOperator.d(t.theta(2), self.th2.scaled(self.half))
        for n in range(L + 1):
            op = op + DiffOperator.d(t.psi(n), self.psi(n).scaled(-(ell - n)))
        for n in range(L):
            op = op + DiffOperator.d(t.z(n), self.z(n).scaled(-(ell - self.half - n)))
        return op

    def op_Q(self) -> DiffOperator:
        return DiffOperator.d(self.t.theta(1), -1) + DiffOperator.d(self.t.x1, self.th1)

    def _s_grid(self) -> DiffOperator:
        """Grid tail shared by the two conformal-side generators.

        The odd conformal charge carries this operator bare; the conformal
        generator carries the same tail left-multiplied by the first odd
        coordinate.  Every coefficient is the unique exact solution of the
        closure conditions against the momentum and odd towers (rows that
        close on their own), together with the requirement that minus half
        the self-bracket of the odd charge reproduce the conformal
        generator.  The solution is quadratic in the tower coordinates:
        psi*z, z*z and psi*psi cells, each optionally twisted by theta2.
        """
        L, half = self.L, self.half
        th2 = self.th2
        op = DiffOperator.zero()
        for n in range(L + 1):
            for m in range(L):
                pz = self.m(self.psi(n), self.z(m))
                op = op + self.terms(
                    (self.m(-half, pz), self.phat(n, m + 1)),
                    (self.m(half * (L - 1 - m), th2, pz), self.lhat(n, m + 1)),
                    (self.m(half * (L - n), th2, pz), self.lhat(n + 1, m)),
                    (self.m(-half * (L - n), pz), self.xhat(m, n)),
                )
        for n in range(L):
            for m in range(L):
                zz = self.m(self.z(n), self.z(m))
                op = op + self.terms(
                    (self.m(-half, th2, zz), self.phat(n + 1, m + 1)),
                    (self.m(half, zz), self.lhat(m + 1, n)),
                    (self.m(-half * (L - 1 - m), th2, zz), self.xhat(n, m + 1)),
                )
        for n in range(L + 1):
            for m in range(L + 1):
                pp = self.m(self.psi(n), self.psi(m))
                op = op + self.terms(
                    (self.m(-half * (L - m), th2, pp), self.phat(n, m + 1)),
                    (self.m(-half * (L - n), pp), self.lhat(m, n)),
                    (self.m(half * (L - n) * (L - m), th2, pp), self.xhat(n, m)),
                )
        return op

    def op_K(self) -> DiffOperator:
        t, L = self.t, self.L
        th1, th12 = self.th1, self.th12
        op = self.op_D().lmul(self.x1.scaled(-2))
        op = op + DiffOperator.d(t.x1, -(self.x1 * self.x1))
        op = op + DiffOperator.d(t.x2, -(self.one + th12))
        op = op + DiffOperator.d(t.theta(2), -th1)
        # index-lowering block: the conformal generator maps each tower
        # coordinate onto its predecessor, odd-twisting across the parities
        for n in range(L):
            op = op + DiffOperator.d(
                t.psi(n + 1), self.m(th1, self.z(n)) - self.psi(n).scaled(L - n)
            )
            low = self.m(L - n, th1, self.psi(n))
            if n:
                low = low - self.z(n - 1).scaled(L - n)
            op = op + DiffOperator.d(t.z(n), low)
        return op + self._s_grid().lmul(th1)

    def op_S(self) -> DiffOperator:
        t, L = self.t, self.L
        th1, th12 = self.th1, self.th12
        tau = self.r.superconformal_theta2_twist
        op = self.op_Q().lmul(-self.x1)
        op = op + DiffOperator.d(t.x2, self.m(2, self.x2, th1) - self.th2)
        op = op + DiffOperator.d(t.x3, th1.scaled(-2))
        op = op + DiffOperator.d(t.theta(2), -(self.one + th12.scaled(tau)))
        for n in range(L + 1):
            op = op + DiffOperator.d(t.psi(n), self.m(-2 * (self.ell - n), th1, self.psi(n)))
        for n in range(L):
            op = op + DiffOperator.d(t.psi(n + 1), self.z(n))
            op = op + DiffOperator.d(
                t.z(n), self.m(L - 1 - 2 * n, self.z(n), th1) + self.psi(n).scaled(L - n)
            )
        return op + self._s_grid()

    def op_P(self, r: int) -> DiffOperator:
        t, L, half = self.t, self.L, self.half
        th1, th2, th12 = self.th1, self.th2, self.th12
        op = DiffOperator.zero()
        for n in range(r + 1):
            b = self.bcoef(r, n)
            op = op + DiffOperator.d(t.psi(n), -b)
            zi = n - 1 if self.r.momentum_z_lowered else n
            if n and 0 <= zi <= L - 1:
                op = op + DiffOperator.d(t.z(zi), self.m(n, b, th1))
        for m in range(r + 1):
            b = self.bcoef(r, m)
            for n in range(L + 1):
                op = op + self.terms(
                    (self.m(b, GPoly.scalar(half) + th12.scaled(m), self.psi(n)), self.phat(n, m)),
                    (self.m(half * (L - m), b, self.psi(n), th2), self.lhat(n, m)),
                    (self.m(-m, b, th1, self.psi(n)), self.lhat(n, m - 1)),
                )
            for n in range(L):
                op = op + self.terms(
                    (
                        self.m(-m, b, self.m(half, th1, self.z(n)) + self.m(L - n, th12, self.psi(n))),
                        self.xhat(n, m - 1),
                    ),
                )
            for n in range(L):
                op = op + self.terms(
                    (
                        self.m(
                            half,
                            b,
                            self.m(L - n, self.psi(n), th2) + self.m(m, th12, self.z(n)),
                        ),
                        self.lhat(m, n),
                    ),
                    (self.m(-half * m, b, th12, self.z(n)), self.lhat(n + 1, m - 1)),
                )
        return op

    def op_X(self, r: int) -> DiffOperator:
        t, L, half = self.t, self.L, self.half
        th1, th2, th12 = self.th1, self.th2, self.th12
        op = DiffOperator.zero()
        for n in range(r + 1):
            b = self.bcoef(r, n)
            op = op + DiffOperator.d(t.z(n), -b)
            op = op + DiffOperator.d(t.psi(n), b * th1)
        for m in range(r + 1):
            b = self.bcoef(r, m)
            for n in range(L + 1):
                op = op + self.terms(
                    (self.m(-half, b, self.psi(n), th1), self.phat(n, m)),
                    # sign pinned by [P_{r+1}, Q] = -(r+1) X_r against the
                    # momentum and supercharge operators, which close on
                    # every other relation independently
                    (self.m(-1, b, self.psi(n), th2), self.phat(n, m + 1)),
                    (
                        self.m(b, self.psi(n), self.one - th12.scaled(half * (L - m))),
                        self.lhat(n, m),
                    ),
                )
            for n in range(L):
                op = op + self.terms(
                    (
                        self.m(b, self.m(half, self.z(n)) + self.m(L - n, self.psi(n), th2)),
                        self.xhat(n, m),
                    ),
                    (self.m(-half * (L - n), b, th12, self.psi(n)), self.lhat(m, n)),
                    (self.m(-half, b, self.z(n), th2), self.lhat(n + 1, m)),
                    (self.m(half, b, self.z(n), th2), self.lhat(m + 1, n)),
                )
        return op

    def op_Pc(self, r: int, s: int) -> DiffOperator:
        L = self.L
        th1, th2, th12 = self.th1, self.th2, self.th12
        op = DiffOperator.zero()
        for n in range(r + 1):
            for m in range(s + 1):
                g = self.gcoef(r, s, n, m)
                op = op + self.terms(
                    (self.m(-1, g, self.one + th12.scaled(n + m)), self.phat(n, m)),
                    (self.m(n * (L - m), g, th12), self.xhat(m, n - 1)),
                    (self.m(m * (L - n), g, th12), self.xhat(n, m - 1)),
                    (self.m(n, g, th1), self.lhat(m, n - 1)),
                    (self.m(m, g, th1), self.lhat(n, m - 1)),
                    (self.m(-(L - m), g, th2), self.lhat(n, m)),
                    (self.m(-(L - n), g, th2), self.lhat(m, n)),
                )
        return op

    def op_Xc(self, r: int, s: int) -> DiffOperator:
        L = self.L
        th1, th2, th12 = self.th1, self.th2, self.th12
        op = DiffOperator.zero()
        for n in range(r + 1):
            for m in range(s + 1):
                g = self.gcoef(r, s, n, m)
                op = op + self.terms(
                    (self.m(g, th12), self.phat(m, n + 1)),
                    (self.m(-1, g, th12), self.phat(n, m + 1)),
                    (self.m(-1, g, self.one + th12.scaled(n + m - 2 * L)), self.xhat(n, m)),
                    (self.m(g, th1), self.lhat(n, m)),
                    (self.m(-1, g, th1), self.lhat(m, n)),
                    (self.m(g, th2), self.lhat(n + 1, m)),
                    (self.m(-1, g, th2), self.lhat(m + 1, n)),
                )
        return op

    def op_Lam(self, r: int, s: int) -> DiffOperator:
        L = self.L
        th1, th2, th12 = self.th1, self.th2, self.th12
        op = DiffOperator.zero()
        for n in range(r + 1):
            for m in range(s + 1):
                g = self.gcoef(r, s, n, m)
                op = op + self.terms(
                    (self.m(g, th1), self.phat(n, m)),
                    (self.m(g, th2), self.phat(n, m + 1)),
                    (self.m(n, g, th1), self.xhat(n - 1, m)),
                    (self.m(-(L - n), g, th2), self.xhat(n, m)),
                    (self.m(-1, g, self.one + th12.scaled(n + m - L)), self.lhat(n, m)),
                    (self.m(L - n, g, th12), self.lhat(m, n)),
                    (self.m(n, g, th12), self.lhat(m + 1, n - 1)),
                )
        return op


def build_vf_generators(
    two_ell: int, readings: Optional[Readings] = None
) -> Dict[GeneratorId, DiffOperator]:
    """Realize every non-central generator as a first-order operator.

    Raises ValueError if a built operator fails to be homogeneous of its
    generator's color degree (that would be a coefficient bug, not data).
    """
    b = _Builder(two_ell, readings or CLOSING_READINGS)
    L = two_ell
    ops: Dict[GeneratorId, DiffOperator] = {H: b.op_H(), D: b.op_D(), K: b.op_K(), Q: b.op_Q(), S: b.op_S()}
    for r in range(L + 1):
        ops[P(r)] = b.op_P(r)
    for r in range(L):
        ops[X(r)] = b.op_X(r)
    for r in range(L + 1):
        for s in range(r, L + 1):
            ops[Pc(r, s)] = b.op_Pc(r, s)
    for r in range(L):
        for s in range(r + 1, L):
            ops[Xc(r, s)] = b.op_Xc(r, s)
    for r in range(L + 1):
        for s in range(L):
            ops[Lam(r, s)] = b.op_Lam(r, s)
    for g, op in ops.items():
        d = op.degree()
        if d is None:
            raise ValueError(f"realized operator for {g} is zero")
        if d != color_degree(g):
            raise ValueError(f"operator for {g} has degree {d}, expected {color_degree(g)}")
    return ops


def realize(ops: Dict[GeneratorId, DiffOperator], elt: LinComb) -> DiffOperator:
    out = DiffOperator.zero()
    for g, c in elt:
        out = out + ops[g].scaled(c)
    return out


def verify_vf_realization(
    two_ell: int,
    pairs: str = "all",
    readings: Optional[Readings] = None,
    ops: Optional[Dict[GeneratorId, DiffOperator]] = None,
) -> VerificationReport:
    """Bracket every selected operator pair and compare with the table.

    ``pairs``: "all" for the full triangle, "core" for the conformal block
    only, "corerows" for the conformal block against everything.
    """
    alg = build_colored_explicit(two_ell, central=False)
    if ops is None:
        ops = build_vf_generators(two_ell, readings)
    basis = colored_basis(two_ell)
    pos = {g: i for i, g in enumerate(basis)}

    if pairs == "all":
        selected = [(x, y) for i, x in enumerate(basis) for y in basis[i:]]
    elif pairs == "core":
        selected = [(x, y) for i, x in enumerate(_CORE) for y in _CORE[i:]]
    elif pairs == "corerows":
        seen = set()
        selected = []
        for x in _CORE:
            for y in basis:
                key = (x, y) if pos[x] <= pos[y] else (y, x)
                if key not in seen:
                    seen.add(key)
                    selected.append(key)
    else:
        raise ValueError(f"unknown pair selection: {pairs!r}")

    rep = VerificationReport(f"vector-fields[{alg.name}|pairs={pairs}]")
    for x, y in selected:
        rep.checked += 1
        got = vf_bracket(ops[x], ops[y])
        want = realize(ops, alg.pair_bracket(x, y))
        if got != want:
            diff = got - want
            bad = diff.items()
            key, poly = bad[0]
            where = "".join(f"d_{v}" for v in key) or "multiplier"
            rep.add(
                "vf-bracket",
                (str(x), str(y)),
                f"mismatch on {len(bad)} keys; first {where}: surplus {poly}",
            )
    return rep


# The unique assignment under which every bracket closes; see
# scripts/vf_scan.py for the derivation by exhaustion.
CLOSING_READINGS = Readings(
    dilation_weight_term=True,
    superconformal_theta2_twist=-1,
    momentum_z_lowered=True,
)
