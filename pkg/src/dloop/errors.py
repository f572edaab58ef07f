"""Exception types raised by the toolkit."""


class DoubleLoopError(ValueError):
    """Base class for all errors raised by :mod:`dloop`."""


class DomainError(DoubleLoopError):
    """An argument lies outside the physical domain of a formula."""


class UndefinedFringeError(DoubleLoopError):
    """Visibility requested for a fringe with zero total intensity."""


class UnboundedAbsorptionError(DoubleLoopError):
    """No finite absorber balances the two output beams."""


class ConfigError(DoubleLoopError):
    """Quadrature configuration is too coarse or malformed."""
