"""Exact arithmetic in the real ring Q[sqrt(2), sqrt(3), sqrt(5), ...].

Fock mode matrices need entries like sqrt(6*k) with the defining relations
holding exactly, so floating point is out.  An element is stored as a finite
sum  sum_t  q_t * sqrt(t)  over squarefree positive integers t (t = 1 is the
rational part).  Products reduce with the gcd rule
sqrt(a)*sqrt(b) = g*sqrt(a*b/g^2), g = gcd(a, b), which keeps every key
squarefree.  The ring is real, so conjugation is the identity.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Union

from .errors import SchemaError

__all__ = ["SqrtRat", "format_fraction", "parse_fraction"]

Rational = Union[int, Fraction]


def _split_square(n: int) -> tuple[int, int]:
    """n = s*s * t with t squarefree; returns (s, t).  n must be positive."""
    s, t, d = 1, 1, 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                t *= d
        d += 1 if d == 2 else 2
    return s, t * n


def format_fraction(q: Fraction) -> str:
    """Canonical 'p/q' with q > 0, always explicit denominator."""
    return f"{q.numerator}/{q.denominator}"


_FRACTION_RE = re.compile(r"^(-?\d+)/(\d+)$")


def parse_fraction(text: str) -> Fraction:
    m = _FRACTION_RE.match(text.strip())
    if not m:
        raise SchemaError(f"not a canonical rational: {text!r}")
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise SchemaError(f"zero denominator: {text!r}")
    q = Fraction(num, den)
    if q.numerator != num or q.denominator != den:
        raise SchemaError(f"rational not in lowest terms: {text!r}")
    return q


class SqrtRat:
    """Immutable element of Q extended by square roots of positive integers."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[int, Fraction] | None = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for t, c in terms.items():
                if t <= 0:
                    raise ValueError(f"radicand must be positive: {t}")
                c = Fraction(c)
                if c:
                    clean[t] = clean.get(t, Fraction(0)) + c
        self._terms = {t: c for t, c in clean.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, q: Rational) -> "SqrtRat":
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, q: Rational) -> "SqrtRat":
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError(f"negative radicand: {q}")
        if q == 0:
            return cls()
        # sqrt(p/q) = sqrt(p*q) / q
        s, t = _split_square(q.numerator * q.denominator)
        return cls({t: Fraction(s, q.denominator)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_rational(self) -> bool:
        return all(t == 1 for t in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self._terms.get(1, Fraction(0))

    def conjugate(self) -> "SqrtRat":
        return self  # real ring

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "SqrtRat":
        if isinstance(other, SqrtRat):
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtRat({1: Fraction(other)})
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "SqrtRat":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for t, c in o._terms.items():
            out[t] = out.get(t, Fraction(0)) + c
        return SqrtRat(out)

    __radd__ = __add__

    def __neg__(self) -> "SqrtRat":
        return SqrtRat({t: -c for t, c in self._terms.items()})

    def __sub__(self, other) -> "SqrtRat":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "SqrtRat":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "SqrtRat":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for t1, c1 in self._terms.items():
            for t2, c2 in o._terms.items():
                g = math.gcd(t1, t2)
                t = (t1 // g) * (t2 // g)  # coprime squarefree parts
                c = c1 * c2 * g
                out[t] = out.get(t, Fraction(0)) + c
        return SqrtRat(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SqrtRat":
        # only rational divisors are needed (mode normalizations)
        if isinstance(other, (int, Fraction)) and other != 0:
            inv = Fraction(1, 1) / Fraction(other)
            return SqrtRat({t: c * inv for t, c in self._terms.items()})
        if isinstance(other, SqrtRat) and other.is_rational():
            return self / other.as_fraction()
        raise TypeError(f"cannot divide SqrtRat by {other!r}")

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0/1"
        parts = []
        for t in sorted(self._terms):
            c = self._terms[t]
            body = format_fraction(abs(c)) if t == 1 else f"{format_fraction(abs(c))}*sqrt({t})"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+" if c > 0 else "-") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"SqrtRat({self})"

    @classmethod
    def parse(cls, text: str) -> "SqrtRat":
        """Inverse of str(); accepts the canonical sum-of-roots form."""
        s = text.strip().replace(" ", "")
        if not s:
            raise SchemaError("empty numeric literal")
        # split into signed chunks
        chunks = re.findall(r"[+-]?[^+-]+", s)
        if "".join(chunks) != s:
            raise SchemaError(f"malformed numeric literal: {text!r}")
        terms: Dict[int, Fraction] = {}
        for chunk in chunks:
            sgn = 1
            if chunk[0] in "+-":
                sgn = -1 if chunk[0] == "-" else 1
                chunk = chunk[1:]
            m = re.match(r"^(\d+)/(\d+)(?:\*sqrt\((\d+)\))?$", chunk)
            if not m:
                raise SchemaError(f"malformed numeric term: {chunk!r} in {text!r}")
            q = sgn * parse_fraction(f"{m.group(1)}/{m.group(2)}")
            t = int(m.group(3)) if m.group(3) else 1
            if t != 1:
                _, sf = _split_square(t)
                if sf != t:
                    raise SchemaError(f"radicand not squarefree: {t}")
            terms[t] = terms.get(t, Fraction(0)) + q
        out = cls(terms)
        # accept only canonical spellings so round trips are byte stable
        if text.strip() != str(out):
            raise SchemaError(f"non-canonical numeric literal: {text!r}")
        return out
