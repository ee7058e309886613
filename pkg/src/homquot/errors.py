"""Exception hierarchy shared by every module."""


class HomQuotError(Exception):
    """Base class for library errors."""


class ParseError(HomQuotError, ValueError):
    """Malformed scalar, vector or JSON document."""


class DimensionMismatch(HomQuotError, ValueError):
    """Operands live in different ambient spaces or over different fields."""


class EnumerationTooLarge(HomQuotError):
    """A finite scan would exceed the configured enumeration cap."""


class LatticeTooLarge(EnumerationTooLarge):
    """The ideal lattice exceeds the configured size cap."""


class UnsupportedMode(HomQuotError):
    """The requested decision mode is not available for this field."""


class PreconditionFailed(HomQuotError):
    """An operation was called on input that violates its preconditions."""


class NotVerified(PreconditionFailed):
    """The algebra does not satisfy the Hom-Lie axioms and multiplicativity."""


class NotASubalgebra(PreconditionFailed):
    """A proposed subspace is not a Hom-subalgebra."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StructureViolation(HomQuotError):
    """An internal consistency assertion derived from the theory failed.

    This always indicates either an implementation bug or a genuine gap in
    the underlying mathematics; it must never be swallowed.
    """
