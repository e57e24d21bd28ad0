"""Exception hierarchy shared by every latgal module."""


class LatgalError(Exception):
    """Base class for all errors raised by latgal."""


class NotALattice(LatgalError):
    def __init__(self, pair, kind):
        self.pair = pair
        self.kind = kind
        super().__init__(f"elements {pair[0]!r} and {pair[1]!r} have no unique {kind}")


class NotBounded(LatgalError):
    pass


class CycleInCovers(LatgalError):
    pass


class EmptyInterval(LatgalError):
    pass


class DegenerateInterval(LatgalError):
    pass


class NotBelow(LatgalError):
    pass


class NotCyclicallyGenerated(LatgalError):
    pass


class NoClosure(LatgalError):
    pass


class MultipleClosures(LatgalError):
    def __init__(self, element, closures):
        self.element = element
        self.closures = frozenset(closures)
        super().__init__(f"element {element} has closures {sorted(self.closures)}")


class NotModular(LatgalError):
    pass


class NotMonotone(LatgalError):
    def __init__(self, pair, side=""):
        self.pair = pair
        self.side = side
        super().__init__(f"map {side} is not order-preserving on pair {pair}".replace("  ", " "))


class NotAdjoint(LatgalError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"adjunction fails at (a, b) = {pair}")


class HypothesisNotMet(LatgalError):
    """A verifier was called on an instance outside its hypotheses.

    This is not a verification failure; ``failed`` lists the unmet conditions.
    """

    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("hypotheses not met: " + ", ".join(self.failed))


class TheoremViolation(LatgalError):
    """A proved statement failed on a verified instance (internal alarm)."""


class NonUniqueClosure(LatgalError):
    pass


class TooLarge(LatgalError):
    pass


class NotTClosed(LatgalError):
    pass


class BoundExceeded(LatgalError):
    pass


class BudgetExceeded(LatgalError):
    pass


class ParseError(LatgalError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}".strip())
