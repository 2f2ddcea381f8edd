"""Exception hierarchy.

``InputError`` covers violated preconditions (the CLI maps it to exit 2);
``NumericalError`` covers computations that ran but produced unusable
numbers (exit 3).
"""


class PolyanalyticError(Exception):
    pass


class InputError(PolyanalyticError, ValueError):
    pass


class NumericalError(PolyanalyticError, ArithmeticError):
    pass


class CenterMismatchError(InputError):
    pass


class OrderMismatchError(InputError):
    pass


class TaylorDomainError(InputError):
    """A truncated series was evaluated outside its declared radius."""


class NotInvertibleError(InputError):
    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class RankDeficientError(InputError):
    pass


class RegionSyntaxError(InputError):
    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset


class ParseError(InputError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
