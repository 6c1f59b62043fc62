"""Exception types shared across the package."""


class QscrambleError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedGateError(QscrambleError, ValueError):
    """Gate cannot be applied on the requested backend (e.g. T on a tableau)."""


class InvalidGateError(QscrambleError, ValueError):
    """Gate payload is malformed (e.g. a non-unitary matrix)."""


class InvalidSubsetError(QscrambleError, ValueError):
    """Qubit subset is empty, out of range, or contains duplicates."""


class InvalidConfigError(QscrambleError, ValueError):
    """Experiment or circuit parameters are inconsistent."""


class ResourceLimitError(QscrambleError, RuntimeError):
    """Requested computation exceeds a hard size cap."""


class InsufficientDataError(QscrambleError, ValueError):
    """Too few samples or curves for the requested statistic."""


class DegenerateSampleError(QscrambleError, ValueError):
    """Sample is constant; the requested statistic is undefined."""


class SingularFitError(QscrambleError, ValueError):
    """Fit design matrix is singular (e.g. all x values equal)."""


class NumericalStateError(QscrambleError, RuntimeError):
    """State vector has lost normalization beyond repair."""
