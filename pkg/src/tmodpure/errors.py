"""Exception hierarchy shared by all modules."""


class TModError(Exception):
    """Base class for errors raised by tmodpure."""


class FieldError(TModError, ValueError):
    """Invalid finite-field configuration (non-prime p, reducible modulus, ...)."""


class ParseError(TModError, ValueError):
    """A field-element or t-module description could not be parsed."""


class DivisionByZero(TModError, ZeroDivisionError):
    pass


class ZeroSeries(TModError, ArithmeticError):
    """The operation needs a nonzero series but got the exact zero series."""


class PrecisionExhausted(TModError, ArithmeticError):
    """A truncated series cannot certify the quantity that was asked for.

    Callers are expected to restart the computation at a higher precision.
    """

    def __init__(self, message="precision exhausted", needed=None):
        super().__init__(message)
        self.needed = needed


class NonUnit(TModError, ArithmeticError):
    """A scaling coefficient is not invertible in K((sigma))[t]."""


class ShapeError(TModError, ValueError):
    pass


class NilpotencyViolation(TModError, ValueError):
    """``(A_0 - theta*I)^d`` is not zero."""

    def __init__(self, message, power=None):
        super().__init__(message)
        self.power = power


class ConfigMismatch(TModError, ValueError):
    """Two t-modules live over different fields or use different theta."""


class InternalError(TModError, RuntimeError):
    pass
