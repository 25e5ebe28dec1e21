"""Universal-envelope arithmetic with exact normal ordering.

Elements are rational combinations of words (finite products of generators).
Normal ordering rewrites every word into the basis-ordered form using the
graded commutation rules of the underlying algebra; the central generator, if
present, is sent to a fixed scalar.  The rewriting strategy (which defect to
resolve first) is pluggable so tests can confirm the normal form does not
depend on the rewrite order.

SpanSolver expresses normalized elements in the rational span of a fixed
list of normalized elements, with an exact reconstruction check on every
solve, so a wrong answer can never come back silently.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .algebra import ColorAlgebra, GeneratorId, LinComb
from .errors import NotInSpan
from .grading import DEG, Degree, sign

__all__ = [
    "EnvElement",
    "PbwKernel",
    "SpanSolver",
    "mode_composites",
]

Word = Tuple[GeneratorId, ...]


def _word_key(w: Word):
    return (len(w), tuple(g.sort_key for g in w))


class EnvElement:
    """Rational combination of generator words; the empty word is the unit."""

    __slots__ = ("_words",)

    def __init__(self, words: Mapping[Word, Fraction] | None = None):
        clean: Dict[Word, Fraction] = {}
        if words:
            for w, c in words.items():
                c = Fraction(c)
                if c:
                    clean[w] = clean.get(w, Fraction(0)) + c
        self._words = {w: c for w, c in clean.items() if c}

    @classmethod
    def zero(cls) -> "EnvElement":
        return cls()

    @classmethod
    def scalar(cls, c) -> "EnvElement":
        return cls({(): Fraction(c)})

    @classmethod
    def word(cls, w: Iterable[GeneratorId], c=1) -> "EnvElement":
        return cls({tuple(w): Fraction(c)})

    def is_zero(self) -> bool:
        return not self._words

    def __bool__(self) -> bool:
        return bool(self._words)

    def is_scalar(self) -> bool:
        return all(w == () for w in self._words)

    def scalar_part(self) -> Fraction:
        return self._words.get((), Fraction(0))

    def words(self):
        return sorted(self._words, key=_word_key)

    def items(self):
        return [(w, self._words[w]) for w in self.words()]

    def coeff(self, w: Word) -> Fraction:
        return self._words.get(tuple(w), Fraction(0))

    def __add__(self, other: "EnvElement") -> "EnvElement":
        out = dict(self._words)
        for w, c in other._words.items():
            out[w] = out.get(w, Fraction(0)) + c
        return EnvElement(out)

    def __sub__(self, other: "EnvElement") -> "EnvElement":
        return self + (-other)

    def __neg__(self) -> "EnvElement":
        return EnvElement({w: -c for w, c in self._words.items()})

    def __rmul__(self, scalar) -> "EnvElement":
        s = Fraction(scalar)
        return EnvElement({w: s * c for w, c in self._words.items()})

    def __mul__(self, other: "EnvElement") -> "EnvElement":
        """Word concatenation, bilinear; not normal ordered."""
        out: Dict[Word, Fraction] = {}
        for w1, c1 in self._words.items():
            for w2, c2 in other._words.items():
                w = w1 + w2
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return EnvElement(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EnvElement):
            return NotImplemented
        return self._words == other._words

    def __hash__(self):
        return hash(frozenset(self._words.items()))

    def __str__(self) -> str:
        if not self._words:
            return "0"
        parts = []
        for w, c in self.items():
            body = "*".join(str(g) for g in w) if w else ""
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(("+ " if c > 0 else "- ") + text)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"EnvElement({self})"


_STRATEGIES = ("leftmost", "rightmost", "random")


class PbwKernel:
    """Normal ordering in the universal envelope of a color superalgebra.

    A word is normal when generator positions are non-decreasing and no
    self-anticommuting generator repeats.  The central generator never
    appears in normal words: it is replaced by ``central_value``.
    """

    def __init__(
        self,
        alg: ColorAlgebra,
        *,
        strategy: str = "leftmost",
        seed: int = 0,
        central_value=Fraction(1),
    ):
        if strategy not in _STRATEGIES:
            raise ValueError(f"strategy must be one of {_STRATEGIES}, got {strategy!r}")
        self.alg = alg
        self.strategy = strategy
        self._rng = random.Random(seed)
        self.central_value = Fraction(central_value)
        self._central = GeneratorId("I") if GeneratorId("I") in alg else None
        self._pos = {g: i for i, g in enumerate(alg.basis)}
        self._nilpotent = {
            g: sign(alg.degrees[g], alg.degrees[g]) == -1 for g in alg.basis
        }
        self._memo: Dict[Word, Dict[Word, Fraction]] = {}

    # -- constructors ---------------------------------------------------------

    def gen(self, g: GeneratorId) -> EnvElement:
        if g == self._central:
            return EnvElement.scalar(self.central_value)
        self.alg._require(g)
        return EnvElement.word((g,))

    def from_lincomb(self, v: LinComb) -> EnvElement:
        out = EnvElement.zero()
        for g, c in v:
            out = out + c * self.gen(g)
        return out

    # -- normal ordering ------------------------------------------------------

    def _clean_word(self, w: Word) -> Tuple[Fraction, Word]:
        """Strip central generators, folding them into a scalar factor."""
        if self._central is None or self._central not in w:
            return Fraction(1), w
        kept = tuple(g for g in w if g != self._central)
        k = len(w) - len(kept)
        return self.central_value ** k, kept

    def _defects(self, w: Word) -> List[int]:
        out = []
        for i in range(len(w) - 1):
            u, v = w[i], w[i + 1]
            if self._pos[u] > self._pos[v] or (u == v and self._nilpotent[u]):
                out.append(i)
        return out

    def _pick(self, defects: List[int]) -> int:
        if self.strategy == "leftmost":
            return defects[0]
        if self.strategy == "rightmost":
            return defects[-1]
        return self._rng.choice(defects)

    def _normal_word(self, w: Word) -> Dict[Word, Fraction]:
        cached = self._memo.get(w)
        if cached is not None:
            return cached
        defects = self._defects(w)
        if not defects:
            result = {w: Fraction(1)}
            self._memo[w] = result
            return result
        i = self._pick(defects)
        u, v = w[i], w[i + 1]
        prefix, suffix = w[: i], w[i + 2:]
        acc: Dict[Word, Fraction] = {}

        def add(word: Word, c: Fraction) -> None:
            f, word = self._clean_word(word)
            c = c * f
            if not c:
                return
            for w2, c2 in self._normal_word(word).items():
                acc[w2] = acc.get(w2, Fraction(0)) + c * c2

        if u == v:
            # self-anticommuting square: u*u = (1/2) * bracket(u, u)
            for g, c in self.alg.pair_bracket(u, u):
                add(prefix + (g,) + suffix, Fraction(c, 2))
        else:
            s = sign(self.alg.degrees[u], self.alg.degrees[v])
            add(prefix + (v, u) + suffix, Fraction(s))
            for g, c in self.alg.pair_bracket(u, v):
                add(prefix + (g,) + suffix, c)
        result = {w2: c for w2, c in acc.items() if c}
        self._memo[w] = result
        return result

    def normalize(self, x: EnvElement) -> EnvElement:
        out: Dict[Word, Fraction] = {}
        for w, c in x.items():
            f, w = self._clean_word(w)
            c = c * f
            if not c:
                continue
            for w2, c2 in self._normal_word(w).items():
                out[w2] = out.get(w2, Fraction(0)) + c * c2
        return EnvElement(out)

    def mul(self, a: EnvElement, b: EnvElement) -> EnvElement:
        return self.normalize(a * b)

    # -- graded structure -----------------------------------------------------

    def degree_of(self, x: EnvElement) -> Degree | None:
        """Common degree of a homogeneous element; scalars sit in (0,0)."""
        degs = set()
        for w, _ in x.items():
            d = DEG["00"]
            for g in w:
                d = d + self.alg.degrees[g]
            degs.add(d)
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: {x}")
        return degs.pop()

    def colored_bracket(
        self, a: EnvElement, b: EnvElement, deg_a: Degree, deg_b: Degree
    ) -> EnvElement:
        """a*b - sign(deg_a, deg_b)*b*a, normalized.

        Degrees are passed explicitly: the color grading of composite
        elements differs from the grading of the underlying superalgebra.
        """
        return self.normalize(a * b - Fraction(sign(deg_a, deg_b)) * (b * a))

    def anticommutator(self, a: EnvElement, b: EnvElement) -> EnvElement:
        return self.normalize(a * b + b * a)

    def commutator(self, a: EnvElement, b: EnvElement) -> EnvElement:
        return self.normalize(a * b - b * a)


def mode_composites(kernel: PbwKernel) -> Dict[GeneratorId, EnvElement]:
    """Quadratic mode composites in the envelope of the spin superalgebra.

    Pc[n,m] (n <= m) pairs two even modes symmetrically, Xc[n,m] (n < m)
    pairs two odd modes antisymmetrically, and Lam[n,m] mixes one of each.
    Normal ordering introduces scalar shifts exactly when the mode indices
    hit a central pairing.
    """
    L = kernel.alg.two_ell
    P = lambda n: kernel.gen(GeneratorId("P", (n,)))
    X = lambda n: kernel.gen(GeneratorId("X", (n,)))
    out: Dict[GeneratorId, EnvElement] = {}
    for n in range(L + 1):
        for m in range(n, L + 1):
            out[GeneratorId("Pc", (n, m))] = kernel.anticommutator(P(n), P(m))
    for n in range(L):
        for m in range(n + 1, L):
            out[GeneratorId("Xc", (n, m))] = kernel.commutator(X(n), X(m))
    for n in range(L + 1):
        for m in range(L):
            out[GeneratorId("Lam", (n, m))] = kernel.anticommutator(P(n), X(m))
    return out


class SpanSolver:
    """Expresses elements in the span of labeled, linearly independent vectors.

    Row reduction runs once at construction; each solve is a substitution
    plus an exact reconstruction check against the original vectors.
    """

    def __init__(self, vectors: Sequence[Tuple[GeneratorId, EnvElement]]):
        self.labels = [lab for lab, _ in vectors]
        self.vectors = [vec for _, vec in vectors]
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels in span")

        words = sorted({w for v in self.vectors for w in v.words()}, key=_word_key)
        self._windex = {w: i for i, w in enumerate(words)}
        nrows, ncols = len(words), len(self.vectors)

        # augmented [A | I]: after reduction the right block is the row
        # transform E with E*A in reduced echelon form
        aug = [[Fraction(0)] * (ncols + nrows) for _ in range(nrows)]
        for j, v in enumerate(self.vectors):
            for w, c in v.items():
                aug[self._windex[w]][j] = c
        for i in range(nrows):
            aug[i][ncols + i] = Fraction(1)

        pivots: List[Tuple[int, int]] = []
        row = 0
        for col in range(ncols):
            sel = next((r for r in range(row, nrows) if aug[r][col]), None)
            if sel is None:
                continue
            aug[row], aug[sel] = aug[sel], aug[row]
            inv = 1 / aug[row][col]
            aug[row] = [c * inv for c in aug[row]]
            for r in range(nrows):
                if r != row and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
            pivots.append((row, col))
            row += 1

        if len(pivots) != ncols:
            raise ValueError("span vectors are linearly dependent")
        self._pivots = pivots
        self._transform = [r[ncols:] for r in aug]
        self._ncols = ncols
        self._nrows = nrows

    def decompose(self, elt: EnvElement) -> LinComb:
        """Coefficients expressing elt over the labels; NotInSpan otherwise."""
        b = [Fraction(0)] * self._nrows
        foreign = EnvElement.zero()
        for w, c in elt.items():
            i = self._windex.get(w)
            if i is None:
                foreign = foreign + EnvElement({w: c})
            else:
                b[i] = c

        y = [
            sum((self._transform[r][i] * b[i] for i in range(self._nrows)), Fraction(0))
            for r in range(self._nrows)
        ]
        x = [Fraction(0)] * self._ncols
        for row, col in self._pivots:
            x[col] = y[row]

        recon = EnvElement.zero()
        for j, c in enumerate(x):
            if c:
                recon = recon + c * self.vectors[j]
        if recon != elt or foreign:
            raise NotInSpan(
                f"element has no expansion over the given span: {elt}",
                residual=elt - recon,
            )
        return LinComb({self.labels[j]: x[j] for j in range(self._ncols) if x[j]})
