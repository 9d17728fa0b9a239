"""Exception types raised by the sensitivity engine."""


class QfogError(Exception):
    """Base class for all package errors."""


class LossSingular(QfogError, ValueError):
    """Raised when the transmissivity is zero and no signal survives the loop."""


class TruncationError(QfogError):
    """Raised when a truncated Fock vector carries non-negligible tail mass."""


class Indeterminate(QfogError, ArithmeticError):
    """Raised when a ratio has both constituent sensitivities divergent (0/0)."""


class NoMinimum(QfogError):
    """Raised when the objective is flat to tolerance over the search bracket."""


class ConfigError(QfogError, ValueError):
    """Raised for an invalid sweep or optimizer configuration.

    The message always names the offending field.
    """

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
