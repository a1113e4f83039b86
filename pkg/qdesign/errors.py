"""Exception hierarchy.

Every input error subclasses ``ValueError`` so callers (and the handler) can treat bad
input, infeasible parameters and exhausted budgets the same way. A failed internal
cross-check is a ``RuntimeError`` instead and surfaces as an internal error.
"""


class QDesignError(ValueError):
    """Base class for all qdesign errors."""


class FormatError(QDesignError):
    """A text or JSON input could not be parsed."""


class NotPrime(QDesignError):
    pass


class BudgetExceeded(QDesignError):
    """An enumeration, closure or search would exceed its budget."""


class SizeExceeded(BudgetExceeded):
    pass


class FieldMismatch(QDesignError):
    pass


class OrderMismatch(QDesignError):
    pass


class NotCoprimeCharacteristic(QDesignError):
    pass


class DivisionByZeroPoly(QDesignError, ZeroDivisionError):
    pass


class NonSplittingDenominator(QDesignError):
    pass


class DegreeOrder(QDesignError):
    pass


class AmbientMismatch(QDesignError):
    pass


class NotInvertible(QDesignError):
    pass


class DegenerateField(QDesignError):
    pass


class DimensionMismatch(QDesignError):
    pass


class NotTwoByTwo(QDesignError):
    pass


class NotSubset(QDesignError):
    pass


class NotAbelian(QDesignError):
    pass


class BadParameters(QDesignError):
    pass


class MixedParameters(QDesignError):
    pass


class DuplicatePoints(QDesignError):
    pass


class BadDimension(QDesignError):
    pass


class NotADivisor(QDesignError):
    pass


class RootInLocatorSet(QDesignError):
    pass


class UnsupportedSubfield(QDesignError):
    pass


class DegenerateGroup(QDesignError):
    pass


class NotInCyclicSubgroup(QDesignError):
    pass


class UnsupportedRow(QDesignError):
    pass


class VerificationMismatch(RuntimeError):
    """An independent check disagreed with a construction (always a bug)."""
