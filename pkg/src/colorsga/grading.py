"""Z2 x Z2 degree arithmetic and the sign rule used by every bracket here.

A degree is a pair of bits added componentwise mod 2.  The pairing
``dot(a, b) = a1*b1 + a2*b2 (mod 2)`` decides the symmetry of a bracket
between homogeneous elements: pairs with ``dot = 1`` anticommute, all other
pairs commute.  Degrees are totally ordered (0,0) < (0,1) < (1,0) < (1,1) so
reports and exports iterate deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Degree", "DEG", "ALL_DEGREES", "sign", "parse_degree"]


@dataclass(frozen=True, order=True)
class Degree:
    a1: int
    a2: int

    def __post_init__(self) -> None:
        if self.a1 not in (0, 1) or self.a2 not in (0, 1):
            raise ValueError(f"degree bits must be 0 or 1, got ({self.a1}, {self.a2})")

    def __add__(self, other: "Degree") -> "Degree":
        return Degree((self.a1 + other.a1) & 1, (self.a2 + other.a2) & 1)

    def dot(self, other: "Degree") -> int:
        return (self.a1 * other.a1 + self.a2 * other.a2) & 1

    @property
    def parity(self) -> int:
        """Total parity a1 + a2 mod 2 (drives the squared anti-involution)."""
        return (self.a1 + self.a2) & 1

    def anticommutes_with(self, other: "Degree") -> bool:
        """True when the bracket between these degrees is the symmetric one."""
        return bool(self.dot(other))

    def __str__(self) -> str:
        return f"{self.a1}{self.a2}"


def parse_degree(text: str) -> Degree:
    """Accept '01', '(0,1)', '0 1' and friends."""
    t = "".join(ch for ch in text if ch not in "(), \t")
    if len(t) != 2 or t[0] not in "01" or t[1] not in "01":
        raise ValueError(f"not a Z2xZ2 degree: {text!r}")
    return Degree(int(t[0]), int(t[1]))


def sign(a: Degree, b: Degree) -> int:
    """(-1)**dot(a, b): the reordering sign for homogeneous elements."""
    return -1 if a.dot(b) else 1


DEG = {
    "00": Degree(0, 0),
    "01": Degree(0, 1),
    "10": Degree(1, 0),
    "11": Degree(1, 1),
}

ALL_DEGREES = (DEG["00"], DEG["01"], DEG["10"], DEG["11"])
