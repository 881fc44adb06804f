"""Exception types raised across plab."""


class PlabError(Exception):
    """Base class for all plab errors."""


class DimensionMismatch(PlabError, ValueError):
    pass


class KindError(PlabError):
    """An input lacks a structure (kind tag, verified axiom) an operation needs."""


class SearchSpaceTooLarge(PlabError):
    pass


class PartitionError(PlabError, ValueError):
    pass


class SingularForm(PlabError):
    pass


class ZeroWeight(PlabError, ValueError):
    pass


class PreconditionFailed(PlabError):
    """A construction's hypothesis check failed; ``report`` holds the failing check."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotBalanced(PreconditionFailed):
    pass


class TheoremViolation(PlabError):
    """A construction produced output that fails the check its theorem guarantees."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(PlabError):
    def __init__(self, message, line=0, column=0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class UnknownObject(PlabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownCheck(PlabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
