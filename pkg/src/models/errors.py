"""
Exceptions for the etale-modules toolkit
Every failure raised by the algebra layer derives from EtaleError.
"""

from typing import Optional


class EtaleError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(EtaleError, ValueError):
    """Shapes, vector lengths or acting algebras do not fit together."""


class InvalidAlgebraError(EtaleError, ValueError):
    """A Lie algebra, family or argument outside its admissible range."""


class NotNilpotentError(EtaleError, ValueError):
    """An operator expected to be nilpotent has a non-zero power of order dim V."""


class CastlingError(EtaleError, ValueError):
    """The castling transform is undefined for the given shape (m <= n)."""


class ChainMismatchError(EtaleError, ValueError):
    """Factor sizes do not form a chain m, m-1, ..., 1."""


class SummandIndexError(EtaleError, IndexError):
    """A summand index outside the direct-sum structure of a module."""


class SpecSyntaxError(EtaleError, ValueError):
    """Module description text that does not parse."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")

    def __reduce__(self):
        return type(self), (self.message, self.line, self.column)


class StabilizerChainError(EtaleError):
    """A chain level whose stabilizer does not match the expected dimension or shape."""

    def __init__(self, level: str, expected: Optional[int], actual: Optional[int], reason: str = ""):
        self.level = level
        self.expected = expected
        self.actual = actual
        self.reason = reason
        detail = reason or f"expected kernel dimension {expected}, got {actual}"
        super().__init__(f"stabilizer chain failed at level {level}: {detail}")

    def __reduce__(self):
        return type(self), (self.level, self.expected, self.actual, self.reason)
