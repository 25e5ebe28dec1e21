"""Exact truncated Fock modules for the centrally extended algebras.

With the central charge pinned to 1, each mirrored pair of momentum modes
behaves as one boson (their bracket is a nonzero integer) and each mirrored
pair of odd modes as one fermion; the self-paired middle odd mode squares to
a number on its own.  That turns the whole tower into matrices on a
number-state space.  Entries live in Q extended by square roots so the
defining relations hold exactly, not to rounding.

Bosons force a truncation.  Every matrix therefore carries per-boson-mode
bounds saying which columns still agree with the untruncated operator, and
all verification windows are derived from those bounds.  Trusting edge
columns is not a theoretical worry: at cutoff 4 the momentum pair bracket
already disagrees with the central value on the top occupation column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import ColorAlgebra, GeneratorId, LinComb, VerificationReport
from .colored import colored_basis
from .enveloping import EnvElement, PbwKernel
from .errors import CutoffTooSmall, OddEllRequired, TruncationTooSmall, UnknownGenerator
from .galilei import CENTRAL, D, H, K, P, Q, S, X, build_galilei_superalgebra, central_data
from .grading import sign
from .involutions import Involution
from .sqrtfield import SqrtRat

__all__ = [
    "FockSpace",
    "FockMatrix",
    "FockRep",
    "build_fock_rep",
    "fermion_parity",
    "verify_relations",
    "verify_identities",
    "verify_star",
    "symbolic_realization",
    "verify_symbolic_realization",
]


class FockSpace:
    """Truncated number-state space behind a Fock module.

    Boson mode b pairs the momentum modes (b, two_ell - b); fermion slot f
    pairs the odd modes (f, two_ell - 1 - f) except the last slot, which
    holds the self-paired middle mode.  Keeping the middle mode last makes
    its ladder-string sign see every paired slot, which is what lets it stay
    self-adjoint up to one overall sign.

    States are indexed mixed-radix: boson mode 0 varies fastest, fermion
    bits sit above all boson digits.
    """

    __slots__ = ("two_ell", "cutoff", "dual", "n_boson", "n_fermion", "mid", "dim", "_occs")

    def __init__(self, two_ell: int, cutoff: int, dual: bool = False):
        if two_ell < 1 or two_ell % 2 == 0:
            raise OddEllRequired(
                f"Fock module needs half-integer spin (odd two_ell), got two_ell={two_ell}"
            )
        if cutoff < 2:
            raise CutoffTooSmall(f"cutoff must keep at least two states per mode, got {cutoff}")
        self.two_ell = two_ell
        self.cutoff = cutoff
        self.dual = bool(dual)
        self.n_boson = (two_ell + 1) // 2
        self.n_fermion = (two_ell + 1) // 2
        self.mid = (two_ell - 1) // 2
        self.dim = cutoff**self.n_boson * 2**self.n_fermion
        occs = []
        for idx in range(self.dim):
            rest = idx
            bos = []
            for _ in range(self.n_boson):
                rest, k = divmod(rest, cutoff)
                bos.append(k)
            bits = []
            for _ in range(self.n_fermion):
                rest, b = divmod(rest, 2)
                bits.append(b)
            occs.append((tuple(bos), tuple(bits)))
        self._occs = occs

    def occupations(self, idx: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self._occs[idx]

    def index(self, bos: Sequence[int], bits: Sequence[int]) -> int:
        idx = 0
        for b in reversed(tuple(bits)):
            idx = idx * 2 + b
        for k in reversed(tuple(bos)):
            idx = idx * self.cutoff + k
        return idx

    def full_bound(self) -> Tuple[int, ...]:
        return (self.cutoff - 1,) * self.n_boson

    def columns_within(self, bound: Sequence[int]) -> List[int]:
        return [
            i
            for i, (bos, _) in enumerate(self._occs)
            if all(k <= b for k, b in zip(bos, bound))
        ]

    def same_shape(self, other: "FockSpace") -> bool:
        return (self.two_ell, self.cutoff, self.dual) == (
            other.two_ell,
            other.cutoff,
            other.dual,
        )


class FockMatrix:
    """Sparse exact matrix plus truncation bookkeeping.

    ``bound[m]``: columns whose occupation in boson mode m exceeds this may
    disagree with the untruncated operator; everything at or below it is
    exact.  ``netup[m]``: the largest raise the untruncated operator makes
    in mode m, used to push bounds through products:

        (A @ B).bound = min(B.bound, A.bound - B.netup)   componentwise.

    Sums take the componentwise min of bounds and max of netups, which is
    sound (support of a sum is inside the union of supports).
    """

    __slots__ = ("space", "entries", "bound", "netup")

    def __init__(
        self,
        space: FockSpace,
        entries: Dict[Tuple[int, int], SqrtRat],
        bound: Optional[Sequence[int]] = None,
        netup: Optional[Sequence[int]] = None,
    ):
        self.space = space
        self.entries = {rc: v for rc, v in entries.items() if v}
        self.bound = tuple(bound) if bound is not None else space.full_bound()
        self.netup = tuple(netup) if netup is not None else (0,) * space.n_boson

    @classmethod
    def zero(cls, space: FockSpace) -> "FockMatrix":
        return cls(space, {})

    @classmethod
    def identity(cls, space: FockSpace, scale=1) -> "FockMatrix":
        c = scale if isinstance(scale, SqrtRat) else SqrtRat.rational(scale)
        return cls(space, {(i, i): c for i in range(space.dim)})

    def entry(self, r: int, c: int) -> SqrtRat:
        return self.entries.get((r, c), SqrtRat())

    def _check_space(self, other: "FockMatrix") -> None:
        if not self.space.same_shape(other.space):
            raise ValueError("matrices live on different Fock spaces")

    def __add__(self, other: "FockMatrix") -> "FockMatrix":
        self._check_space(other)
        out = dict(self.entries)
        for rc, v in other.entries.items():
            out[rc] = out.get(rc, SqrtRat()) + v
        return FockMatrix(
            self.space,
            out,
            tuple(map(min, self.bound, other.bound)),
            tuple(map(max, self.netup, other.netup)),
        )

    def __neg__(self) -> "FockMatrix":
        return self.scaled(-1)

    def __sub__(self, other: "FockMatrix") -> "FockMatrix":
        return self + (-other)

    def scaled(self, c) -> "FockMatrix":
        c = c if isinstance(c, SqrtRat) else SqrtRat.rational(c)
        return FockMatrix(
            self.space,
            {rc: v * c for rc, v in self.entries.items()},
            self.bound,
            self.netup,
        )

    def __matmul__(self, other: "FockMatrix") -> "FockMatrix":
        self._check_space(other)
        by_col: Dict[int, List[Tuple[int, SqrtRat]]] = {}
        for (r, k), v in self.entries.items():
            by_col.setdefault(k, []).append((r, v))
        out: Dict[Tuple[int, int], SqrtRat] = {}
        for (k, c), bv in other.entries.items():
            for r, av in by_col.get(k, ()):
                rc = (r, c)
                prod = av * bv
                cur = out.get(rc)
                out[rc] = prod if cur is None else cur + prod
        bound = tuple(
            min(bb, ab - nu) for bb, ab, nu in zip(other.bound, self.bound, other.netup)
        )
        netup = tuple(a + b for a, b in zip(self.netup, other.netup))
        return FockMatrix(self.space, out, bound, netup)

    def is_zero_on(self, cols: Iterable[int]) -> bool:
        colset = set(cols)
        return all(c not in colset for (_, c) in self.entries)

    def __str__(self) -> str:
        body = ", ".join(
            f"({r},{c})={v}" for (r, c), v in sorted(self.entries.items())
        )
        return f"FockMatrix[dim={self.space.dim}, bound={self.bound}]{{{body}}}"


def _anti(a: FockMatrix, b: FockMatrix) -> FockMatrix:
    return a @ b + b @ a


def _comm(a: FockMatrix, b: FockMatrix) -> FockMatrix:
    return a @ b - b @ a


def _boson_shift(space: FockSpace, mode: int, create: bool, scale: SqrtRat) -> FockMatrix:
    entries: Dict[Tuple[int, int], SqrtRat] = {}
    for idx in range(space.dim):
        bos, bits = space.occupations(idx)
        k = bos[mode]
        if create:
            if k + 1 >= space.cutoff:
                continue  # raising the top state leaves the space: truncated away
            new = space.index(bos[:mode] + (k + 1,) + bos[mode + 1 :], bits)
            entries[(new, idx)] = scale * SqrtRat.sqrt(k + 1)
        else:
            if k == 0:
                continue
            new = space.index(bos[:mode] + (k - 1,) + bos[mode + 1 :], bits)
            entries[(new, idx)] = scale * SqrtRat.sqrt(k)
    bound = list(space.full_bound())
    netup = [0] * space.n_boson
    if create:
        bound[mode] = space.cutoff - 2
        netup[mode] = 1
    else:
        netup[mode] = -1
    return FockMatrix(space, entries, bound, netup)


def _fermion_shift(space: FockSpace, slot: int, create: bool, scale: SqrtRat) -> FockMatrix:
    entries: Dict[Tuple[int, int], SqrtRat] = {}
    want = 0 if create else 1
    for idx in range(space.dim):
        bos, bits = space.occupations(idx)
        if bits[slot] != want:
            continue
        phase = -1 if sum(bits[:slot]) % 2 else 1
        new = space.index(bos, bits[:slot] + (1 - want,) + bits[slot + 1 :])
        entries[(new, idx)] = scale * phase
    return FockMatrix(space, entries)


def fermion_parity(space: FockSpace) -> List[int]:
    """Diagonal of (-1)**(odd quanta); squares to the identity, so it can
    twist an adjoint without spoiling involutivity."""
    return [-1 if sum(space.occupations(i)[1]) % 2 else 1 for i in range(space.dim)]


@dataclass
class FockRep:
    """A Fock module: one exact matrix per generator, mode matrices through
    the colored composites."""

    space: FockSpace
    matrices: Dict[GeneratorId, FockMatrix]

    @property
    def two_ell(self) -> int:
        return self.space.two_ell

    @property
    def cutoff(self) -> int:
        return self.space.cutoff

    @property
    def dual(self) -> bool:
        return self.space.dual

    def label(self) -> str:
        tag = f"two_ell={self.two_ell},cutoff={self.cutoff}"
        return tag + (",dual" if self.dual else "")

    def matrix(self, g: GeneratorId) -> FockMatrix:
        try:
            return self.matrices[g]
        except KeyError:
            raise UnknownGenerator(f"no Fock matrix for {g}") from None

    def of(self, elt: LinComb) -> FockMatrix:
        total = FockMatrix.zero(self.space)
        for g, c in elt.terms():
            total = total + self.matrix(g).scaled(c)
        return total


def build_fock_rep(two_ell: int, cutoff: int, dual: bool = False) -> FockRep:
    """Assemble the Fock module at half-integer spin.

    Default orientation: the momentum mode with positive scaling weight
    annihilates, its mirror creates.  ``dual=True`` swaps the two roles
    (the mirror then annihilates with a flipped sign so the pair bracket
    keeps its value).  Scalings are exact square roots chosen so every
    mirrored pair closes on exactly its integer weight.
    """
    space = FockSpace(two_ell, cutoff, dual)
    L = two_ell
    cd = central_data(two_ell)
    mats: Dict[GeneratorId, FockMatrix] = {}

    for b in range(space.n_boson):
        weight = cd.i_coeffs[b]  # bracket of the pair (P_b, P_{L-b})
        root = SqrtRat.sqrt(abs(weight))
        sgn = 1 if weight > 0 else -1
        if dual:
            mats[P(b)] = _boson_shift(space, b, create=True, scale=root)
            mats[P(L - b)] = _boson_shift(space, b, create=False, scale=root * (-sgn))
        else:
            mats[P(b)] = _boson_shift(space, b, create=False, scale=root)
            mats[P(L - b)] = _boson_shift(space, b, create=True, scale=root * sgn)

    for f in range(space.n_fermion - 1):
        weight = cd.alpha_coeffs[f]  # anticommutator of the pair (X_f, X_{L-1-f})
        root = SqrtRat.sqrt(abs(weight))
        sgn = 1 if weight > 0 else -1
        mats[X(f)] = _fermion_shift(space, f, create=False, scale=root)
        mats[X(L - 1 - f)] = _fermion_shift(space, f, create=True, scale=root * sgn)

    # middle odd mode: anticommutes with itself to its own weight, realized
    # as lower + raiser on the last slot (sign on the raiser when the weight
    # is negative, so the square lands on weight/2 exactly)
    amid = cd.alpha_coeffs[space.mid]
    root = SqrtRat.sqrt(Fraction(abs(amid), 2))
    last = space.n_fermion - 1
    lower = _fermion_shift(space, last, create=False, scale=root)
    raiser = _fermion_shift(space, last, create=True, scale=root if amid > 0 else -root)
    mats[X(space.mid)] = lower + raiser

    mats[CENTRAL] = FockMatrix.identity(space)

    def pp(i: int, j: int) -> FockMatrix:
        return mats[P(i)] @ mats[P(j)]

    def xx(i: int, j: int) -> FockMatrix:
        return mats[X(i)] @ mats[X(j)]

    def px(i: int, j: int) -> FockMatrix:
        return mats[P(i)] @ mats[X(j)]

    def tot(terms) -> FockMatrix:
        acc = FockMatrix.zero(space)
        for c, m in terms:
            acc = acc + m.scaled(c)
        return acc

    half = Fraction(1, 2)
    mats[H] = tot(
        [(-half * Fraction(n) / cd.i_coeffs[n], pp(L - n, n - 1)) for n in range(1, L + 1)]
        + [(-half * Fraction(n) / cd.alpha_coeffs[n], xx(L - 1 - n, n - 1)) for n in range(1, L)]
    )
    mats[D] = tot(
        [(half * Fraction(2 * n - L, 2) / cd.i_coeffs[n], pp(L - n, n)) for n in range(L + 1)]
        + [(half * Fraction(2 * n + 1 - L, 2) / cd.alpha_coeffs[n], xx(L - 1 - n, n)) for n in range(L)]
    )
    mats[K] = tot(
        [(half * Fraction(n) / cd.i_coeffs[n], pp(L + 1 - n, n)) for n in range(1, L + 1)]
        + [(half * Fraction(n) / cd.alpha_coeffs[n], xx(L - n, n)) for n in range(1, L)]
    )
    mats[Q] = tot([(-Fraction(n) / cd.i_coeffs[n], px(L - n, n - 1)) for n in range(1, L + 1)])
    mats[S] = tot([(-Fraction(n) / cd.i_coeffs[n], px(L + 1 - n, n - 1)) for n in range(1, L + 1)])

    for g in colored_basis(two_ell):
        if g in mats:
            continue
        n, m = g.indices
        if g.family == "Pc":
            mats[g] = _anti(mats[P(n)], mats[P(m)])
        elif g.family == "Xc":
            mats[g] = _comm(mats[X(n)], mats[X(m)])
        elif g.family == "Lam":
            mats[g] = _anti(mats[P(n)], mats[X(m)])

    return FockRep(space, mats)


def verify_relations(rep: FockRep, alg: ColorAlgebra) -> VerificationReport:
    """Check every canonical bracket of ``alg`` as a matrix identity.

    Each pair is compared only on columns that both the computed bracket and
    the tabulated value represent exactly; a pair with no such column raises
    TruncationTooSmall, because silently skipping it would report an empty
    check as a pass.
    """
    space = rep.space
    report = VerificationReport(f"fock-relations[{alg.name}|{rep.label()}]")
    basis = alg.basis
    for i, x in enumerate(basis):
        for y in basis[i:]:
            a, b = rep.matrix(x), rep.matrix(y)
            s = sign(alg.degree(x), alg.degree(y))
            if x == y and s == 1:
                # xy - yx with identical factors cancels exactly even when
                # truncated, so the product bounds do not constrain it
                got = FockMatrix.zero(space)
            else:
                got = (a @ b) - (b @ a).scaled(s)
            want = rep.of(alg.pair_bracket(x, y))
            window = tuple(map(min, got.bound, want.bound))
            cols = set(space.columns_within(window))
            if not cols:
                raise TruncationTooSmall(
                    f"no exact column for pair ({x}, {y}) at cutoff {space.cutoff}"
                )
            report.checked += 1
            for r, c in sorted(set(got.entries) | set(want.entries)):
                if c in cols and got.entry(r, c) != want.entry(r, c):
                    report.add(
                        "relation",
                        [str(x), str(y)],
                        f"entry ({r},{c}): got {got.entry(r, c)}, want {want.entry(r, c)}",
                    )
                    break
    return report


def verify_identities(rep: FockRep) -> VerificationReport:
    """The two scalar pairing sums collapse to numbers on the exact window."""
    space = rep.space
    L = space.two_ell
    cd = central_data(L)
    report = VerificationReport(f"fock-identities[{rep.label()}]")

    def check(name: str, total: FockMatrix, value: Fraction) -> None:
        want = FockMatrix.identity(space, value)
        cols = set(space.columns_within(total.bound))
        if not cols:
            raise TruncationTooSmall(f"no exact column for {name} at cutoff {space.cutoff}")
        report.checked += 1
        for r, c in sorted(set(total.entries) | set(want.entries)):
            if c in cols and total.entry(r, c) != want.entry(r, c):
                report.add(
                    "identity",
                    [name],
                    f"entry ({r},{c}): got {total.entry(r, c)}, want {want.entry(r, c)}",
                )
                return

    s1 = FockMatrix.zero(space)
    for n in range(L + 1):
        s1 = s1 + (rep.matrix(P(L - n)) @ rep.matrix(P(n))).scaled(Fraction(1) / cd.i_coeffs[n])
    check("momentum-pairing", s1, -Fraction(L + 1, 2))

    s2 = FockMatrix.zero(space)
    for n in range(L):
        s2 = s2 + (rep.matrix(X(L - 1 - n)) @ rep.matrix(X(n))).scaled(Fraction(1) / cd.alpha_coeffs[n])
    check("odd-pairing", s2, Fraction(L, 2))
    return report


def verify_star(
    rep: FockRep, inv: Involution, twist: Optional[Sequence[int]] = None
) -> VerificationReport:
    """Check the matrices implement ``inv`` by adjoints.

    For each generator g the matrix of inv(g) must equal dagger of the
    matrix of g; with ``twist`` (a +-1 diagonal squaring to one, e.g. the
    odd-quanta parity) the right side becomes twist * dagger * twist.
    Entries are compared where both sides are exact: the dagger entry
    (r, c) comes from column r of the original matrix, so rows range over
    the original's exact columns and columns over the image's.
    """
    space = rep.space
    gamma = list(twist) if twist is not None else [1] * space.dim
    tag = "+" if inv.sign > 0 else "-"
    twist_tag = ",twist" if twist is not None else ""
    report = VerificationReport(
        f"fock-star[{inv.kind},sign={tag}{twist_tag}|{rep.label()}]"
    )
    for g in inv.alg.basis:
        orig = rep.matrix(g)
        image = rep.of(inv.apply(g))
        rows = set(space.columns_within(orig.bound))
        cols = set(space.columns_within(image.bound))
        if not rows or not cols:
            raise TruncationTooSmall(
                f"no exact window for star check of {g} at cutoff {space.cutoff}"
            )
        report.checked += 1
        pairs = set(image.entries) | {(c, r) for (r, c) in orig.entries}
        for r, c in sorted(pairs):
            if r not in rows or c not in cols:
                continue
            lhs = image.entry(r, c)
            rhs = orig.entry(c, r) * (gamma[r] * gamma[c])  # real entries: dagger = transpose
            if lhs != rhs:
                report.add(
                    "star",
                    [str(g)],
                    f"entry ({r},{c}): image {lhs}, twisted dagger {rhs}",
                )
                break
    return report


def symbolic_realization(two_ell: int) -> Tuple[PbwKernel, Dict[GeneratorId, EnvElement]]:
    """Conformal part as exact quadratics in the mode generators.

    Works inside the normal-ordering kernel of the centrally extended
    algebra with the charge pinned to 1, so no truncation is involved:
    these are the operators whose matrices :func:`build_fock_rep` takes.
    """
    if two_ell < 1 or two_ell % 2 == 0:
        raise OddEllRequired(
            f"quadratic realization needs half-integer spin, got two_ell={two_ell}"
        )
    L = two_ell
    cd = central_data(two_ell)
    kernel = PbwKernel(build_galilei_superalgebra(two_ell, central=True))

    def pw(n: int) -> EnvElement:
        return kernel.gen(P(n))

    def xw(n: int) -> EnvElement:
        return kernel.gen(X(n))

    def tot(terms) -> EnvElement:
        acc = EnvElement.zero()
        for c, e in terms:
            acc = acc + c * e
        return kernel.normalize(acc)

    half = Fraction(1, 2)
    images = {
        H: tot(
            [(-half * Fraction(n) / cd.i_coeffs[n], kernel.mul(pw(L - n), pw(n - 1))) for n in range(1, L + 1)]
            + [(-half * Fraction(n) / cd.alpha_coeffs[n], kernel.mul(xw(L - 1 - n), xw(n - 1))) for n in range(1, L)]
        ),
        D: tot(
            [(half * Fraction(2 * n - L, 2) / cd.i_coeffs[n], kernel.mul(pw(L - n), pw(n))) for n in range(L + 1)]
            + [(half * Fraction(2 * n + 1 - L, 2) / cd.alpha_coeffs[n], kernel.mul(xw(L - 1 - n), xw(n))) for n in range(L)]
        ),
        K: tot(
            [(half * Fraction(n) / cd.i_coeffs[n], kernel.mul(pw(L + 1 - n), pw(n))) for n in range(1, L + 1)]
            + [(half * Fraction(n) / cd.alpha_coeffs[n], kernel.mul(xw(L - n), xw(n))) for n in range(1, L)]
        ),
        Q: tot([(-Fraction(n) / cd.i_coeffs[n], kernel.mul(pw(L - n), xw(n - 1))) for n in range(1, L + 1)]),
        S: tot([(-Fraction(n) / cd.i_coeffs[n], kernel.mul(pw(L + 1 - n), xw(n - 1))) for n in range(1, L + 1)]),
    }
    return kernel, images


def verify_symbolic_realization(two_ell: int) -> VerificationReport:
    """Exact, truncation-free check that the quadratic realization closes.

    Every canonical bracket of the centrally extended algebra must hold
    verbatim after substituting the quadratics for the conformal part, and
    the two pairing sums must collapse to their scalar values.
    """
    kernel, images = symbolic_realization(two_ell)
    alg = kernel.alg
    L = two_ell
    cd = central_data(two_ell)
    report = VerificationReport(f"symbolic-realization[two_ell={two_ell}]")

    def img(g: GeneratorId) -> EnvElement:
        found = images.get(g)
        return found if found is not None else kernel.gen(g)

    def realize(v: LinComb) -> EnvElement:
        acc = EnvElement.zero()
        for g, c in v.terms():
            acc = acc + c * img(g)
        return kernel.normalize(acc)

    basis = alg.basis
    for i, x in enumerate(basis):
        for y in basis[i:]:
            got = kernel.colored_bracket(img(x), img(y), alg.degree(x), alg.degree(y))
            want = realize(alg.pair_bracket(x, y))
            report.checked += 1
            if got != want:
                report.add("realization", [str(x), str(y)], f"got {got}, want {want}")

    s1 = EnvElement.zero()
    for n in range(L + 1):
        s1 = s1 + (Fraction(1) / cd.i_coeffs[n]) * kernel.mul(kernel.gen(P(L - n)), kernel.gen(P(n)))
    report.checked += 1
    if kernel.normalize(s1) != EnvElement.scalar(-Fraction(L + 1, 2)):
        report.add("identity", ["momentum-pairing"], f"got {kernel.normalize(s1)}")

    s2 = EnvElement.zero()
    for n in range(L):
        s2 = s2 + (Fraction(1) / cd.alpha_coeffs[n]) * kernel.mul(kernel.gen(X(L - 1 - n)), kernel.gen(X(n)))
    report.checked += 1
    if kernel.normalize(s2) != EnvElement.scalar(Fraction(L, 2)):
        report.add("identity", ["odd-pairing"], f"got {kernel.normalize(s2)}")

    return report
