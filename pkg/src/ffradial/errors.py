"""Exception hierarchy shared by every ffradial module."""


class FFRadialError(Exception):
    """Base class for all library errors."""


class NotPrimePower(FFRadialError, ValueError):
    pass


class Unsupported(FFRadialError, ValueError):
    pass


class DivisionByZero(FFRadialError, ZeroDivisionError):
    pass


class DimensionMismatch(FFRadialError, ValueError):
    pass


class IndexOutOfRange(FFRadialError, IndexError):
    pass


class SizeTooLarge(FFRadialError, ValueError):
    pass


class InvalidRange(FFRadialError, ValueError):
    pass


class BudgetExceeded(FFRadialError, RuntimeError):
    pass


class PreconditionViolated(FFRadialError, ValueError):
    pass


class TrialsExhausted(FFRadialError, RuntimeError):
    pass


class ContainmentFailure(FFRadialError, AssertionError):
    """A proved inclusion failed to hold: always an implementation bug."""


class ConfigInvalid(FFRadialError, ValueError):
    pass


class ParseError(FFRadialError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HeaderMismatch(ParseError):
    pass
