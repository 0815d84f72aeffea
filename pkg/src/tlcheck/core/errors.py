"""Exception hierarchy shared by all modules."""


class TLCheckError(Exception):
    """Base class for errors raised by this package."""


class UndefinedInputError(TLCheckError, ValueError):
    """An operation was called outside its domain of definition."""


class DomainError(TLCheckError, TypeError):
    """Operation not available for the given coefficient domain."""


class PrecisionError(TLCheckError):
    """Not enough known series coefficients to decide the question."""


class CoverageError(TLCheckError, LookupError):
    """A Hankel cell outside the computed grid was requested."""
