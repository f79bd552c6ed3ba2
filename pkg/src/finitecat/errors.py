"""Exception hierarchy shared by every module."""


class FiniteCatError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class ParseError(FiniteCatError):
    pass


class DuplicateLabel(FiniteCatError):
    pass


class UnknownLabel(FiniteCatError):
    pass


class CycleDetected(FiniteCatError):
    pass


class IndexOutOfRange(FiniteCatError, IndexError):
    pass


class EmptyGenerator(FiniteCatError):
    pass


class EmptySubset(FiniteCatError):
    pass


class BadParameter(FiniteCatError, ValueError):
    pass


class StaleBeatPoint(FiniteCatError):
    pass


class HeightMismatch(FiniteCatError):
    pass


class Disconnected(FiniteCatError):
    pass


class NotDominating(FiniteCatError):
    pass


class IncompatibleCover(FiniteCatError):
    pass


class UncoverableVertex(FiniteCatError):
    pass


class PreconditionViolated(FiniteCatError):
    pass


class BudgetExceeded(FiniteCatError):
    """A search gave up before finishing.

    ``lower`` and ``upper`` carry whatever bounds were known at the time, so
    callers can degrade to an interval instead of failing outright.
    """

    def __init__(self, message, lower=None, upper=None, witness=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.witness = witness


class SizeBudgetExceeded(BudgetExceeded):
    pass
