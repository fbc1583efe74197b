class FuzzyCoverError(Exception):
    """Base class for errors raised by this package."""


class DomainError(FuzzyCoverError, ValueError):
    """A point (or a family row) lies outside the domain of a map.

    ``element`` names the offending family element when the error comes from a
    family-level operation, ``row`` gives the row index of the offending point.
    """

    def __init__(self, message, *, element=None, row=None):
        super().__init__(message)
        self.element = element
        self.row = row


class KindError(FuzzyCoverError, ValueError):
    """A family does not satisfy the kind required by a functor."""


class BudgetExceeded(FuzzyCoverError, RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


class ParseError(FuzzyCoverError, ValueError):
    """An input document does not match the expected JSON layout."""
