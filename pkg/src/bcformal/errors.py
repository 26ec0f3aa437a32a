"""Exception types raised by the engine."""

from __future__ import annotations


class BCFormalError(Exception):
    """Base class for all engine errors."""


class WeightOverflow(BCFormalError):
    """A product produced a character weight outside the model's window."""

    def __init__(self, weight, window):
        self.weight = weight
        self.window = window
        super().__init__(f"weight {tuple(weight)} leaves the window {window}; enlarge the window")


class InhomogeneousForm(BCFormalError):
    """An operation needing a pure bidegree received a mixed form."""


class InvalidTheoryDegree(BCFormalError):
    pass


class NotACocycle(BCFormalError):
    pass


class ProductNotExact(BCFormalError):
    """A Massey product is undefined because a pairwise product is non-zero in H_BC."""


class SectorMismatch(BCFormalError):
    pass


class NotAMorphism(BCFormalError):
    pass


class BudgetExceeded(BCFormalError):
    pass


class UnknownModel(BCFormalError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ModelValidationError(BCFormalError):
    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class ParseError(BCFormalError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")
