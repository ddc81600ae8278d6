"""Exception hierarchy shared by all modules."""


class CasimirError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CasimirError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(CasimirError, ValueError):
    """Argument outside the supported evaluation range (caller must rescale)."""


class UnsupportedModelError(CasimirError, ValueError):
    """Material model not supported by the requested operation."""


class LimitError(CasimirError, ValueError):
    """A singular limit was requested that has no finite value here."""


class AccuracyError(CasimirError, ArithmeticError):
    """Requested accuracy not reached within the evaluation budget.

    The best available estimate is kept in ``best`` and its error estimate
    in ``error``.
    """

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error


class ContinuationError(CasimirError, ArithmeticError):
    """Analytic continuation left the principal sheet or lost reality."""


class RoundTripError(CasimirError, ArithmeticError):
    """Round-trip operator has spectral radius >= 1 or 1 - M is singular."""


class RegimeError(CasimirError, ValueError):
    """Requested quantity does not exist (or diverges) in this regime."""


class MissingCoefficientError(CasimirError, LookupError):
    """A coefficient needed for the requested assembly is not available."""


class ConfigError(CasimirError, ValueError):
    """Malformed or incomplete configuration."""
