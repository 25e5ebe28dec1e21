"""Four-degree graded polynomial calculus.

Variables carry a pair of mod-2 degrees and reorder with the sign rule
(-1)**(a.b): two variables anticommute exactly when the dot product of
their degrees is odd.  Variables whose degree pairs oddly with itself are
nilpotent; the (1,1) family commutes with itself but anticommutes with both
single-one families, so it is commuting yet not central.

Polynomials also carry a group-like weight w per monomial, standing for a
factor e**(w*u) in a distinguished even coordinate u: products add weights,
and the derivative along that coordinate acts as multiplication by w (plus
the ordinary power rule when explicit powers of the coordinate appear).
Weights may be half-integral.

The derivative along any variable moves one copy to the leftmost position,
collecting reorder signs on the way, then strips it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .grading import DEG, Degree

__all__ = ["GVar", "VarTable", "GPoly"]


_GROUP_RANK = {"x1": 0, "x2": 1, "x3": 2, "theta": 3, "psi": 4, "z": 5, "y": 6, "w": 7, "sigma": 8}


@dataclass(frozen=True)
class GVar:
    """One graded coordinate.  ``tracks_weight`` marks the distinguished
    even coordinate whose exponential the monomial weights stand for."""

    group: str
    indices: Tuple[int, ...]
    degree: Degree
    nilpotent: bool
    tracks_weight: bool = False

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (_GROUP_RANK[self.group], self.indices)

    def __lt__(self, other: "GVar") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if not self.indices:
            return self.group
        return f"{self.group}[{','.join(str(i) for i in self.indices)}]"


class VarTable:
    """The coordinate chart for one tower size.

    Even block: x1, x2, x3 plus the symmetric y and antisymmetric w grids;
    first odd row: theta1, theta2 and the sigma grid; second odd row: the
    psi line; the doubly odd line: z.  Antisymmetry of w is handled here:
    ``w(n, m)`` returns the canonical variable together with the sign, and
    None on the diagonal.
    """

    def __init__(self, two_ell: int):
        if two_ell < 0:
            raise ValueError(f"two_ell must be nonnegative, got {two_ell}")
        self.two_ell = two_ell
        self._x1 = GVar("x1", (), DEG["00"], False)
        self._x2 = GVar("x2", (), DEG["00"], False)
        self._x3 = GVar("x3", (), DEG["00"], False, tracks_weight=True)
        self._theta = (GVar("theta", (1,), DEG["10"], True), GVar("theta", (2,), DEG["10"], True))

    @property
    def x1(self) -> GVar:
        return self._x1

    @property
    def x2(self) -> GVar:
        return self._x2

    @property
    def x3(self) -> GVar:
        return self._x3

    def theta(self, i: int) -> GVar:
        if i not in (1, 2):
            raise ValueError(f"theta index must be 1 or 2, got {i}")
        return self._theta[i - 1]

    def psi(self, n: int) -> GVar:
        if not 0 <= n <= self.two_ell:
            raise ValueError(f"psi index out of range: {n}")
        return GVar("psi", (n,), DEG["01"], True)

    def z(self, n: int) -> GVar:
        if not 0 <= n <= self.two_ell - 1:
            raise ValueError(f"z index out of range: {n}")
        return GVar("z", (n,), DEG["11"], False)

    def y(self, n: int, m: int) -> GVar:
        if not (0 <= n <= self.two_ell and 0 <= m <= self.two_ell):
            raise ValueError(f"y index out of range: ({n},{m})")
        lo, hi = min(n, m), max(n, m)
        return GVar("y", (lo, hi), DEG["00"], False)

    def w(self, n: int, m: int) -> Optional[Tuple[GVar, int]]:
        if not (0 <= n <= self.two_ell - 1 and 0 <= m <= self.two_ell - 1):
            raise ValueError(f"w index out of range: ({n},{m})")
        if n == m:
            return None
        if n < m:
            return GVar("w", (n, m), DEG["00"], False), 1
        return GVar("w", (m, n), DEG["00"], False), -1

    def sigma(self, n: int, m: int) -> GVar:
        if not (0 <= n <= self.two_ell and 0 <= m <= self.two_ell - 1):
            raise ValueError(f"sigma index out of range: ({n},{m})")
        return GVar("sigma", (n, m), DEG["10"], True)


Monomial = Tuple[Fraction, Tuple[Tuple[GVar, int], ...]]


def _merge_vars(
    avars: Sequence[Tuple[GVar, int]], bvars: Sequence[Tuple[GVar, int]]
) -> Optional[Tuple[int, Tuple[Tuple[GVar, int], ...]]]:
    """Sorted merge of two monomial variable lists with reorder signs.

    Every b-variable crosses the a-variables that stay to its right; a pair
    of crossing blocks u^e, v^f contributes sign(deg u, deg v)^(e*f).
    Returns None when a nilpotent variable would square.
    """
    out: List[Tuple[GVar, int]] = []
    total = 1
    i, j = 0, 0
    while i < len(avars) and j < len(bvars):
        u, e = avars[i]
        v, f = bvars[j]
        if u < v:
            out.append((u, e))
            i += 1
            continue
        if v < u:
            for uu, ee in avars[i:]:
                if uu.degree.dot(v.degree) and (ee * f) % 2:
                    total = -total
            out.append((v, f))
            j += 1
            continue
        if u.nilpotent:
            return None
        for uu, ee in avars[i + 1 :]:
            if uu.degree.dot(v.degree) and (ee * f) % 2:
                total = -total
        out.append((u, e + f))
        i += 1
        j += 1
    out.extend(avars[i:])
    out.extend(bvars[j:])
    return total, tuple(out)


def _monomial_degree(vars_: Iterable[Tuple[GVar, int]]) -> Degree:
    d = DEG["00"]
    for v, e in vars_:
        if e % 2:
            d = d + v.degree
    return d


class GPoly:
    """Polynomial in graded coordinates with per-monomial group-like weight."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Monomial, Fraction]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[mono] = clean.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in clean.items() if c}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "GPoly":
        return cls()

    @classmethod
    def scalar(cls, c) -> "GPoly":
        return cls({(Fraction(0), ()): Fraction(c)})

    @classmethod
    def var(cls, v: GVar, c=1) -> "GPoly":
        return cls({(Fraction(0), ((v, 1),)): Fraction(c)})

    @classmethod
    def evar(cls, weight, c=1) -> "GPoly":
        return cls({(Fraction(weight), ()): Fraction(c)})

    @classmethod
    def monomial(cls, vars_: Iterable[Tuple[GVar, int]], c=1, weight=0) -> "GPoly":
        ordered = tuple(sorted(((v, e) for v, e in vars_ if e), key=lambda p: p[0].sort_key))
        for v, e in ordered:
            if e < 0:
                raise ValueError(f"negative exponent on {v}")
            if v.nilpotent and e > 1:
                return cls.zero()
        if len({v for v, _ in ordered}) != len(ordered):
            raise ValueError("duplicate variable in monomial constructor")
        return cls({(Fraction(weight), ordered): Fraction(c)})

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def items(self):
        return sorted(
            self._terms.items(),
            key=lambda kv: (kv[0][0], tuple((v.sort_key, e) for v, e in kv[0][1])),
        )

    def coeff(self, vars_: Iterable[Tuple[GVar, int]], weight=0) -> Fraction:
        ordered = tuple(sorted(vars_, key=lambda p: p[0].sort_key))
        return self._terms.get((Fraction(weight), ordered), Fraction(0))

    def degree(self) -> Optional[Degree]:
        found: Optional[Degree] = None
        for _, vars_ in self._terms:
            d = _monomial_degree(vars_)
            if found is None:
                found = d
            elif found != d:
                raise ValueError(f"inhomogeneous polynomial: {found} vs {d}")
        return found

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "GPoly") -> "GPoly":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return GPoly(out)

    def __neg__(self) -> "GPoly":
        return GPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "GPoly") -> "GPoly":
        return self + (-other)

    def scaled(self, c) -> "GPoly":
        c = Fraction(c)
        return GPoly({m: v * c for m, v in self._terms.items()})

    def __rmul__(self, c) -> "GPoly":
        if isinstance(c, (int, Fraction)):
            return self.scaled(c)
        return NotImplemented

    def __mul__(self, other) -> "GPoly":
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        if not isinstance(other, GPoly):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for (ka, va), ca in self._terms.items():
            for (kb, vb), cb in other._terms.items():
                merged = _merge_vars(va, vb)
                if merged is None:
                    continue
                sgn, vars_ = merged
                key = (ka + kb, vars_)
                out[key] = out.get(key, Fraction(0)) + sgn * ca * cb
        return GPoly(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def sign_passed(self, d: Degree) -> "GPoly":
        """Each monomial scaled by the cost of moving a degree-``d`` symbol
        across it: sign(d, monomial degree)."""
        out: Dict[Monomial, Fraction] = {}
        for (k, vars_), c in self._terms.items():
            out[(k, vars_)] = -c if d.dot(_monomial_degree(vars_)) else c
        return GPoly(out)

    # -- derivative -----------------------------------------------------------

    def derive(self, v: GVar) -> "GPoly":
        """Left derivative: move one copy of v leftmost, collect signs, strip.

        On the weight-tracking coordinate the group-like part contributes
        weight * monomial on top of the power rule.
        """
        out: Dict[Monomial, Fraction] = {}

        def put(key: Monomial, c: Fraction) -> None:
            out[key] = out.get(key, Fraction(0)) + c

        for (k, vars_), c in self._terms.items():
            if v.tracks_weight and k:
                put((k, vars_), c * k)
            for pos, (u, e) in enumerate(vars_):
                if u != v:
                    continue
                sgn = 1
                for uu, ee in vars_[:pos]:
                    if uu.degree.dot(v.degree) and ee % 2:
                        sgn = -sgn
                if e == 1:
                    newvars = vars_[:pos] + vars_[pos + 1 :]
                else:
                    newvars = vars_[:pos] + ((u, e - 1),) + vars_[pos + 1 :]
                put((k, newvars), c * e * sgn)
                break
        return GPoly(out)

    # -- rendering --------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for (k, vars_), c in self.items():
            factors = []
            if abs(c) != 1 or (not vars_ and not k):
                factors.append(str(abs(c)))
            for v, e in vars_:
                factors.append(str(v) if e == 1 else f"{v}^{e}")
            if k:
                factors.append(f"E^({k})")
            body = "*".join(factors) if factors else "1"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(("+ " if c > 0 else "- ") + body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"GPoly({self})"
