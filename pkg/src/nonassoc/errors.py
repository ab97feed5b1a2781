"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class for all errors raised by nonassoc."""


class FieldMismatch(AlgebraError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class NotEnoughElements(AlgebraError):
    """The ground field has fewer elements than requested."""


class DimensionMismatch(AlgebraError):
    pass


class ParseError(AlgebraError):
    """Syntax error; ``position`` is the 0-based character offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        self.message = message
        super().__init__(self._render())

    def _render(self):
        if not self.text:
            return self.message
        return f"{self.message} at position {self.position}\n  {self.text}\n  {' ' * self.position}^"


class NotMultiplicative(AlgebraError):
    """A linear map fails f(e_i e_j) = f(e_i) f(e_j) for some basis pair."""

    def __init__(self, i, j, lhs, rhs, message=None):
        self.i, self.j, self.lhs, self.rhs = i, j, lhs, rhs
        super().__init__(message or f"not multiplicative on basis pair ({i}, {j}): f(e_i e_j) = {lhs} but f(e_i) f(e_j) = {rhs}")


class NotAnIdeal(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    pass


class NotComposable(AlgebraError):
    pass


class DiagramInvalid(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    pass


class DegreeTooSmall(AlgebraError):
    pass


class ModeUnsoundWarning(UserWarning):
    """Symbolic identity check over a finite field was not conclusive."""
