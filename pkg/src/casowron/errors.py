"""Exception types shared across the package."""


class CasowronError(Exception):
    """Base class for every error this package raises deliberately."""


class ArgumentError(CasowronError, ValueError):
    """A caller-supplied argument is malformed or out of range."""


class DomainError(CasowronError, ValueError):
    """A function was evaluated outside its declared domain."""


class UnsupportedOperationError(CasowronError, TypeError):
    """The requested operation is not defined for this object."""


class NumericError(CasowronError, ArithmeticError):
    """A floating computation produced a non-finite or untrustworthy value."""


class DegenerateSweepError(CasowronError):
    """Every grid point of a ratio sweep fell below the degeneracy floor."""


class InconsistentInputError(CasowronError, ValueError):
    """Input samples do not satisfy the equation they were claimed to solve."""


class ManifestError(ArgumentError):
    """A family manifest failed to parse; the message is line-precise."""


class NumericalWarning(UserWarning):
    """Emitted when a pivot is small enough to make a result questionable."""
