"""Finite-dimensional Z2 x Z2 color superalgebras over exact rationals.

The bracket table stores one entry per canonically ordered basis pair; a
reversed lookup applies the graded antisymmetry sign on the fly, so the
symmetry relation cannot drift out of sync with the data.  Verification
(antisymmetry of redundantly ingested entries, grading closure, the graded
Jacobi identity over all unordered triples) returns reports instead of
raising, so callers can render every violation.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from .errors import NotDiagonal, UnknownGenerator
from .grading import Degree, sign

__all__ = [
    "GeneratorId",
    "LinComb",
    "ColorAlgebra",
    "Violation",
    "VerificationReport",
    "TriangularDecomposition",
    "ad_eigen_decompose",
    "parse_generator",
]

# Family rank fixes the basis order used everywhere: conformal core, then the
# even spin multiplet, supercharges, odd spin multiplet, quadratic composites,
# and the central generator last.
FAMILY_ORDER = {
    "H": 0, "D": 1, "K": 2, "P": 3, "Q": 4, "S": 5, "X": 6,
    "Pc": 7, "Xc": 8, "Lam": 9, "I": 10,
}
_FAMILY_ARITY = {
    "H": 0, "D": 0, "K": 0, "Q": 0, "S": 0, "I": 0,
    "P": 1, "X": 1, "Pc": 2, "Xc": 2, "Lam": 2,
}


@functools.total_ordering
@dataclass(frozen=True)
class GeneratorId:
    """A named basis generator: scalar family tag plus integer mode indices."""

    family: str
    indices: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.family not in FAMILY_ORDER:
            raise ValueError(f"unknown generator family: {self.family!r}")
        if len(self.indices) != _FAMILY_ARITY[self.family]:
            raise ValueError(
                f"family {self.family} takes {_FAMILY_ARITY[self.family]} indices, "
                f"got {self.indices}"
            )
        if any(i < 0 for i in self.indices):
            raise ValueError(f"negative mode index in {self.family}{self.indices}")

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (FAMILY_ORDER[self.family], self.indices)

    def __lt__(self, other: "GeneratorId") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if not self.indices:
            return self.family
        return f"{self.family}[{','.join(str(i) for i in self.indices)}]"


_GEN_RE = re.compile(r"^([A-Za-z]+)(?:\[(\d+(?:,\d+)*)\])?$")


def parse_generator(text: str) -> GeneratorId:
    m = _GEN_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a generator name: {text!r}")
    idx = tuple(int(p) for p in m.group(2).split(",")) if m.group(2) else ()
    return GeneratorId(m.group(1), idx)


class LinComb:
    """Formal linear combination of generators with Fraction coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[GeneratorId, Fraction] | None = None):
        clean: Dict[GeneratorId, Fraction] = {}
        if terms:
            for g, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[g] = clean.get(g, Fraction(0)) + c
        self._terms = {g: c for g, c in clean.items() if c}

    @classmethod
    def gen(cls, g: GeneratorId, coeff=1) -> "LinComb":
        return cls({g: Fraction(coeff)})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Tuple[GeneratorId, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda t: t[0].sort_key))

    def terms(self):
        return list(self)

    def support(self):
        return sorted(self._terms, key=lambda g: g.sort_key)

    def coeff(self, g: GeneratorId) -> Fraction:
        return self._terms.get(g, Fraction(0))

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self._terms)
        for g, c in other._terms.items():
            out[g] = out.get(g, Fraction(0)) + c
        return LinComb(out)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __neg__(self) -> "LinComb":
        return LinComb({g: -c for g, c in self._terms.items()})

    def __rmul__(self, scalar) -> "LinComb":
        s = Fraction(scalar)
        return LinComb({g: s * c for g, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def mapped(self, image) -> "LinComb":
        """Linearly extend a generator-to-LinComb map over this element."""
        out = LinComb.zero()
        for g, c in self._terms.items():
            out = out + c * image(g)
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for g, c in self:
            mag = abs(c)
            body = str(g) if mag == 1 else f"{mag}*{g}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LinComb({self})"


_ZERO = LinComb.zero()


@dataclass(frozen=True)
class Violation:
    kind: str
    items: Tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(self.items)}): {self.detail}"


@dataclass
class VerificationReport:
    label: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, items: Sequence[str], detail: str) -> None:
        self.violations.append(Violation(kind, tuple(items), detail))

    def summary(self) -> str:
        return f"{self.label}: checked {self.checked}, violations {len(self.violations)}"

    def lines(self) -> list:
        return [self.summary()] + [f"  {v}" for v in self.violations]

    def __str__(self) -> str:
        return "\n".join(self.lines())


class ColorAlgebra:
    """Immutable color superalgebra: ordered basis, degrees, bracket table."""

    def __init__(
        self,
        *,
        name: str,
        two_ell: int,
        basis: Sequence[GeneratorId],
        degrees: Mapping[GeneratorId, Degree],
        entries: Iterable[Tuple[GeneratorId, GeneratorId, LinComb]],
        central: bool = False,
    ):
        self.name = name
        self.two_ell = int(two_ell)
        self.central = bool(central)
        self.basis: Tuple[GeneratorId, ...] = tuple(basis)
        self._pos = {g: i for i, g in enumerate(self.basis)}
        if len(self._pos) != len(self.basis):
            raise ValueError("duplicate generator in basis")
        self.degrees: Dict[GeneratorId, Degree] = {}
        for g in self.basis:
            if g not in degrees:
                raise ValueError(f"missing degree for {g}")
            self.degrees[g] = degrees[g]

        # raw entries keep the orientation they were ingested with, so
        # check_antisymmetry can compare redundant orientations afterwards
        self._raw: Dict[Tuple[GeneratorId, GeneratorId], LinComb] = {}
        for x, y, v in entries:
            self._require(x)
            self._require(y)
            if (x, y) in self._raw:
                raise ValueError(f"duplicate table entry for ({x}, {y})")
            for g, _ in v:
                self._require(g)
            self._raw[(x, y)] = v

        self._table: Dict[Tuple[GeneratorId, GeneratorId], LinComb] = {}
        for (x, y), v in self._raw.items():
            if self._pos[x] <= self._pos[y] and v:
                self._table[(x, y)] = v
        for (x, y), v in self._raw.items():
            if self._pos[x] > self._pos[y]:
                key = (y, x)
                if key not in self._table:
                    w = (-sign(self.degrees[x], self.degrees[y])) * v
                    if w:
                        self._table[key] = w

    # -- basic queries -------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _require(self, g: GeneratorId) -> int:
        try:
            return self._pos[g]
        except KeyError:
            raise UnknownGenerator(f"{g} is not a generator of {self.name}") from None

    def __contains__(self, g: GeneratorId) -> bool:
        return g in self._pos

    def degree(self, g: GeneratorId) -> Degree:
        self._require(g)
        return self.degrees[g]

    def degree_of(self, elt: LinComb) -> Degree | None:
        """Common degree of a homogeneous element, None when elt == 0."""
        degs = {self.degree(g) for g, _ in elt}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: {elt}")
        return degs.pop()

    def element(self, g: GeneratorId, coeff=1) -> LinComb:
        self._require(g)
        return LinComb.gen(g, coeff)

    def table_items(self):
        """Canonical table entries sorted by basis position, for export."""
        return sorted(
            self._table.items(),
            key=lambda kv: (self._pos[kv[0][0]], self._pos[kv[0][1]]),
        )

    # -- bracket -------------------------------------------------------------

    def pair_bracket(self, x: GeneratorId, y: GeneratorId) -> LinComb:
        px, py = self._require(x), self._require(y)
        if px <= py:
            return self._table.get((x, y), _ZERO)
        v = self._table.get((y, x))
        if v is None:
            return _ZERO
        return (-sign(self.degrees[x], self.degrees[y])) * v

    def bracket(self, x, y) -> LinComb:
        if isinstance(x, GeneratorId):
            x = LinComb.gen(x)
        if isinstance(y, GeneratorId):
            y = LinComb.gen(y)
        out = LinComb.zero()
        for gx, cx in x:
            for gy, cy in y:
                v = self.pair_bracket(gx, gy)
                if v:
                    out = out + (cx * cy) * v
        return out

    # -- verification --------------------------------------------------------

    def check_antisymmetry(self) -> VerificationReport:
        rep = VerificationReport(f"antisymmetry[{self.name}]")
        for (x, y), v in sorted(
            self._raw.items(), key=lambda kv: (self._pos[kv[0][0]], self._pos[kv[0][1]])
        ):
            rep.checked += 1
            dx, dy = self.degrees[x], self.degrees[y]
            if x == y:
                if sign(dx, dx) == 1 and v:
                    rep.add(
                        "antisymmetry", (str(x), str(x)),
                        f"commutator of a generator with itself must vanish, got {v}",
                    )
                continue
            if self._pos[x] > self._pos[y]:
                expect = (-sign(dx, dy)) * self._table.get((y, x), _ZERO)
                if v != expect:
                    rep.add(
                        "antisymmetry", (str(x), str(y)),
                        f"reversed entry {v} but sign rule demands {expect}",
                    )
        return rep

    def check_grading(self) -> VerificationReport:
        rep = VerificationReport(f"grading[{self.name}]")
        for (x, y), v in self.table_items():
            rep.checked += 1
            want = self.degrees[x] + self.degrees[y]
            for g, _ in v:
                if self.degrees[g] != want:
                    rep.add(
                        "grading", (str(x), str(y)),
                        f"term {g} has degree {self.degrees[g]}, bracket degree is {want}",
                    )
        return rep

    def check_jacobi(self) -> VerificationReport:
        """Graded Jacobi over every unordered triple, repeats included."""
        rep = VerificationReport(f"jacobi[{self.name}]")
        n = self.dim
        degs = [self.degrees[g] for g in self.basis]
        pm: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for i in range(n):
            for j in range(n):
                v = self.pair_bracket(self.basis[i], self.basis[j])
                if v:
                    pm[(i, j)] = {self._pos[g]: c for g, c in v}

        def brk(i: int, comb: Dict[int, Fraction]) -> Dict[int, Fraction]:
            out: Dict[int, Fraction] = {}
            for j, c in comb.items():
                t = pm.get((i, j))
                if t:
                    for k, c2 in t.items():
                        out[k] = out.get(k, Fraction(0)) + c * c2
            return {k: c for k, c in out.items() if c}

        def acc(res: Dict[int, Fraction], part: Dict[int, Fraction], s: int) -> None:
            for k, c in part.items():
                res[k] = res.get(k, Fraction(0)) + s * c

        empty: Dict[int, Fraction] = {}
        for i in range(n):
            for j in range(i, n):
                for k in range(j, n):
                    rep.checked += 1
                    res: Dict[int, Fraction] = {}
                    acc(res, brk(i, pm.get((j, k), empty)), sign(degs[i], degs[k]))
                    acc(res, brk(j, pm.get((k, i), empty)), sign(degs[j], degs[i]))
                    acc(res, brk(k, pm.get((i, j), empty)), sign(degs[k], degs[j]))
                    res = {p: c for p, c in res.items() if c}
                    if res:
                        residual = LinComb({self.basis[p]: c for p, c in res.items()})
                        rep.add(
                            "jacobi",
                            (str(self.basis[i]), str(self.basis[j]), str(self.basis[k])),
                            f"residual {residual}",
                        )
        return rep


@dataclass
class TriangularDecomposition:
    """Basis split by the sign of the eigenvalue under one grading generator."""

    grader: GeneratorId
    plus: list
    zero: list
    minus: list

    def sector_of(self, g: GeneratorId) -> str:
        for name, block in (("plus", self.plus), ("zero", self.zero), ("minus", self.minus)):
            if any(h == g for h, _ in block):
                return name
        raise UnknownGenerator(str(g))


def ad_eigen_decompose(alg: ColorAlgebra, grader: GeneratorId) -> TriangularDecomposition:
    """Split the basis by ad(grader) eigenvalues; raises NotDiagonal if forced."""
    alg._require(grader)
    plus, zero, minus = [], [], []
    for g in alg.basis:
        v = alg.pair_bracket(grader, g)
        if v.is_zero():
            zero.append((g, Fraction(0)))
            continue
        terms = v.terms()
        if len(terms) != 1 or terms[0][0] != g:
            raise NotDiagonal(f"ad({grader}) does not act diagonally on {g}: {v}")
        lam = terms[0][1]
        (plus if lam > 0 else minus).append((g, lam))
    return TriangularDecomposition(grader, plus, zero, minus)
