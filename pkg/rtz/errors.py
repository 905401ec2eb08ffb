"""
Exception hierarchy for rtz

Library code raises these; only the CLI turns them into exit codes.
A failed mathematical check is a verdict, not an exception.
"""


class RTZError(Exception):
    """Base error, carries the CLI exit code it maps to"""

    exit_code = 3


class DomainError(RTZError, ValueError):
    """An operation was called outside its precondition"""

    exit_code = 2


class ConfigError(RTZError):
    """Malformed environment configuration"""

    exit_code = 2


class UndecidedComparison(RTZError):
    """An enclosure was too wide to decide a strict inequality"""

    def __init__(self, message, digits=None):
        super().__init__(message)
        self.digits = digits


class PrecisionExhausted(RTZError):
    """The precision ladder hit its cap"""

    def __init__(self, message, last_digits=None):
        super().__init__(message)
        self.last_digits = last_digits


class NumericConvergenceError(RTZError):
    """Numeric stage did not reach its target; partial results attached"""

    def __init__(self, message, partial=None, radii=None, digits=None):
        super().__init__(message)
        self.partial = partial or []
        self.radii = radii or []
        self.digits = digits
