"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so the hierarchy is deliberately flat.
"""


class MVTopoError(Exception):
    """Base class for all library errors."""


class InvalidInputError(MVTopoError, ValueError):
    """Malformed arguments: wrong dimension, bad parameter range, non-total map."""


class DomainError(InvalidInputError):
    """A point was queried outside the image it must belong to."""


class ParseError(InvalidInputError):
    """A document could not be decoded into a value."""


class PreconditionError(InvalidInputError):
    """A mathematical hypothesis of a construction does not hold.

    The message names the hypothesis that failed.
    """


class UnreachableError(PreconditionError):
    """A point has no path to the target set inside its image."""


class ResourceLimitError(MVTopoError):
    """An exhaustive enumeration would exceed its configured cap."""
