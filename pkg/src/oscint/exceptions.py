from typing import Optional


class OscintError(Exception):
    """Base class of all errors raised by oscint."""


class DomainError(OscintError, ValueError):
    """Argument outside the natural domain of a function."""


class ConvergenceError(OscintError):
    """An iterative scheme stopped before reaching its tolerance.

    Args:
        - message: Human readable description.
        - best_estimate: The last (best) available estimate.
        - last_correction: Size of the last correction, usable as an error indication.
    """

    def __init__(self, message: str, best_estimate=None, last_correction=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.last_correction = last_correction


class DegenerateSeriesError(OscintError):
    """The leading Taylor coefficient vanishes."""


class SeriesTooShortError(OscintError):
    """Not enough usable Taylor coefficients to build a continued fraction."""


class PoleError(OscintError, ZeroDivisionError):
    def __init__(self, message: str, k: Optional[int] = None):
        super().__init__(message)
        self.k = k


class PartitionError(OscintError):
    """Not enough sign changes to build an alternating partition."""


class UnknownIntegralError(OscintError, KeyError):
    """Catalog id that is not registered."""

    def __str__(self) -> str:
        # KeyError would quote the message
        return str(self.args[0]) if self.args else ""
