"""Exception hierarchy shared by all modules."""


class IntervalLengthsError(Exception):
    """Base class for every error raised by this package."""


class PosetError(IntervalLengthsError, ValueError):
    pass


class DuplicateElement(PosetError):
    pass


class UnknownElement(PosetError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CycleDetected(PosetError):
    pass


class NotTransitive(PosetError):
    pass


class NotIntervalOrder(IntervalLengthsError):
    """The poset contains an induced 2+2; ``witness`` holds it."""

    def __init__(self, witness):
        super().__init__(f"not an interval order: induced 2+2 on {witness.elements}")
        self.witness = witness


class WeightOutOfRange(IntervalLengthsError, ValueError):
    pass


class NegativeCyclePresent(IntervalLengthsError):
    pass


class NoBadPattern(IntervalLengthsError):
    pass


class UnclassifiableCycle(IntervalLengthsError):
    """A minimum-arc cycle matched none of the four cycle templates.

    This can only happen through an implementation bug; valid inputs are
    always classifiable.
    """


class InvariantViolation(IntervalLengthsError, AssertionError):
    """An internal consistency check failed."""


class TooManyVariables(IntervalLengthsError):
    pass


class SizeLimit(IntervalLengthsError, ValueError):
    pass


class MissingElement(IntervalLengthsError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


def check(condition, message):
    """Raise :class:`InvariantViolation` unless ``condition`` holds.

    Used instead of ``assert`` so the checks survive ``python -O``.
    """
    if not condition:
        raise InvariantViolation(message)
