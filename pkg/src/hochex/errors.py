"""Exception types shared across the package."""


class HochexError(Exception):
    """Base class for all package errors."""


class BadPrime(HochexError, ValueError):
    """A denominator vanishes modulo the requested prime."""


class SizeLimit(HochexError):
    """A tensor carrier exceeds the configured column cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} columns exceeds size cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class NotAConflation(HochexError, ValueError):
    """Degreewise maps fail the injective/surjective/composite-zero laws."""


class NotCommutative(HochexError, ValueError):
    pass


class UnknownModel(HochexError, ValueError):
    pass


class ValidationError(HochexError, ValueError):
    """Input data violates a structural invariant."""


class ParseError(HochexError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column


class TruncationWarning(UserWarning):
    """Homology was requested at a degree whose incoming boundary is missing."""
