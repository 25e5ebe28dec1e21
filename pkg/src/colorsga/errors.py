"""Error types raised by the algebra engine.

Everything derives from AlgebraError so callers (the CLI in particular) can
distinguish engine-level failures from programming errors.  Errors that carry
structured payloads (residuals, offending pairs) keep them as attributes.
"""

from __future__ import annotations

__all__ = [
    "AlgebraError",
    "UnknownGenerator",
    "NotDiagonal",
    "CentralExtensionUnavailable",
    "NotInSpan",
    "ClosureFailure",
    "BasisMismatch",
    "UndefinedInvolution",
    "TruncationTooSmall",
    "OddEllRequired",
    "CutoffTooSmall",
    "SecondOrderResidue",
    "SchemaError",
]


class AlgebraError(Exception):
    """Base class for all engine errors."""


class UnknownGenerator(AlgebraError):
    """An element references a generator outside the algebra's basis."""


class NotDiagonal(AlgebraError):
    """The chosen grading element does not act diagonally on the basis."""


class CentralExtensionUnavailable(AlgebraError):
    """The mass central extension only exists for half-integer spin."""


class NotInSpan(AlgebraError):
    """A normal-ordered element failed to decompose over the requested span.

    The exact residual (what is left after subtracting the best span
    combination) is kept in ``residual``.
    """

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class ClosureFailure(AlgebraError):
    """A derived bracket left the expected span; names the offending pair."""

    def __init__(self, message: str, pair=None, residual=None):
        super().__init__(message)
        self.pair = pair
        self.residual = residual


class BasisMismatch(AlgebraError):
    """Two algebras under comparison do not share basis and degree data."""


class UndefinedInvolution(AlgebraError):
    """Requested anti-involution does not exist at this spin value."""


class TruncationTooSmall(AlgebraError):
    """No Fock column survives truncation for the requested comparison."""


class OddEllRequired(AlgebraError):
    """The construction needs half-integer spin (odd doubled index)."""


class CutoffTooSmall(AlgebraError):
    """Fock truncation must keep at least two states per boson mode."""


class SecondOrderResidue(AlgebraError):
    """A commutator of first-order operators kept a second-order term."""

    def __init__(self, message: str, residue=None):
        super().__init__(message)
        self.residue = residue


class SchemaError(AlgebraError):
    """Serialized data violates the exchange schema."""
