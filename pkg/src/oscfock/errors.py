"""Exception types shared across the package."""


class OscFockError(Exception):
    """Base class for all package errors."""


class DomainError(OscFockError, ValueError):
    """A parameter lies outside the domain an operation accepts."""


class DimensionError(OscFockError, ValueError):
    """Incompatible truncations or an index outside the truncated basis."""


class DegenerateStateError(OscFockError, ValueError):
    """Operation needs a non-zero state."""


class UsageError(OscFockError, ValueError):
    """Invalid request, e.g. an unknown operator label or a refused state."""


class NumericError(OscFockError, ArithmeticError):
    """Non-finite input or output in a numerical kernel."""


class ConvergenceError(OscFockError, RuntimeError):
    """The truncation is too small for the requested accuracy.

    ``suggested_cutoff`` carries a value that is expected to work, when one
    can be estimated.
    """

    def __init__(self, message, suggested_cutoff=None):
        super().__init__(message)
        self.suggested_cutoff = suggested_cutoff
