"""Exception types shared across the package."""


class SigmethodError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(SigmethodError, ValueError):
    """Operands do not share the required dimension or depth."""


class NotGroupLikeError(SigmethodError, ValueError):
    """Tensor logarithm applied to a tensor whose level-0 coefficient is not 1."""


class TooShortError(SigmethodError, ValueError):
    """A time series with fewer than two observations where a path is required."""


class InvalidInputError(SigmethodError, ValueError):
    """Malformed numerical input (non-finite values, bad shapes, bad timestamps)."""


class InvalidProjectionError(SigmethodError, ValueError):
    """A coordinate projection that cannot be formed (e.g. tuple size exceeds d)."""


class EmptyWindowError(SigmethodError, ValueError):
    """A window specification that produces no windows for the given length."""


class FeatureBudgetError(SigmethodError, RuntimeError):
    """Predicted feature count exceeds the configured limit."""


class ParseError(SigmethodError, ValueError):
    """Dataset file could not be parsed.  Carries a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FitError(SigmethodError, ValueError):
    """Normalization statistics requested from an unusable dataset."""


class ConfigError(SigmethodError, ValueError):
    """Run configuration failed validation."""
