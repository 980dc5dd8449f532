"""Exceptions raised by the exact scalar layer."""


class SymcoreError(Exception):
    """Base class for errors in exact arithmetic and parsing."""


class ExpressionSyntaxError(SymcoreError, SyntaxError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class UnboundParameter(SymcoreError, NameError):
    pass


class FractionalExponentOnNonDistinguishedVariable(SymcoreError, ValueError):
    pass


class UnknownVariable(SymcoreError, KeyError):
    pass


class DivisionByZero(SymcoreError, ZeroDivisionError):
    pass


class IllegalFractionalSubstitution(SymcoreError, ValueError):
    pass


class ShapeMismatch(SymcoreError, ValueError):
    pass


class NotSymmetric(SymcoreError, ValueError):
    pass


class ChartMismatch(SymcoreError, ValueError):
    pass
