"""Exception hierarchy shared by all modules."""


class PosetError(ValueError):
    """Base class for every error raised by posettww."""


class CycleDetected(PosetError):
    """The supplied relation contains a directed cycle."""


class IdOutOfRange(PosetError):
    pass


class InvalidPartition(PosetError):
    """A chain partition does not fit the poset or the algorithm."""


class VertexNotLive(PosetError):
    pass


class NoSuccessor(PosetError):
    pass


class NotRed(PosetError):
    pass


class MalformedSequence(PosetError):
    pass


class MalformedInput(PosetError):
    """A text or JSON input file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BadParameters(PosetError):
    pass


class BudgetExceeded(PosetError):
    pass


class NoEligibleContraction(PosetError):
    pass


class InvariantBroken(AssertionError):
    """An internal algorithm invariant failed; indicates a bug."""
