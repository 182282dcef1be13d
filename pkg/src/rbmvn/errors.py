"""Exception types shared across the package.

Everything derives from ValueError so that callers who do not care about
the fine-grained type can catch a single base class.
"""


class DomainError(ValueError):
    """An argument fell outside the mathematical domain of a function."""


class NotPositiveDefiniteError(ValueError):
    """A matrix expected to be positive definite is not.

    Attributes
    ----------
    pivot : int
        Index of the first pivot that failed during factorization.
    """

    def __init__(self, message, pivot):
        super().__init__(message)
        self.pivot = pivot


class UndefinedCorrelationError(ValueError):
    """Rank correlation is undefined (too few rows or a constant column)."""


class InvalidWeightsError(ValueError):
    """A weight vector is not a probability vector."""


class InvalidConfigError(ValueError):
    """A configuration value violates a hard constraint."""


class InsufficientDataError(ValueError):
    """The data matrix is too small for the requested operation."""


class CsvFormatError(ValueError):
    """A CSV file could not be parsed as a numeric matrix.

    Attributes
    ----------
    row : int or None
        1-based row number of the offending record.
    column : int or None
        1-based column number of the offending field.
    """

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column
