"""Exception types shared across the package."""


class StrfitError(Exception):
    """Base class for all strfit errors."""


class DataError(StrfitError):
    """Raised for malformed input tables, manifests, or degenerate datasets."""


class NoValidSplitError(StrfitError):
    """Raised when no split strictly reduces residual SSE."""


class ConvergenceError(StrfitError):
    """Raised when an iterative solver exhausts its iteration budget.

    Carries the last iterate so callers can inspect or salvage it.
    """

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class EvaluatorError(StrfitError):
    """Raised when an evaluator backend fails after all retries."""


class SuiteError(StrfitError):
    """Raised for invalid simulatability-suite definition files."""
