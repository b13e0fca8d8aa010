"""Exception types shared across the solver modules."""


class SolverError(Exception):
    """Base class for all domain errors raised by stablelab."""


class ParseError(SolverError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class TooManyAtoms(SolverError):
    """An exhaustive sweep was requested over more atoms than the configured limit."""


class EnumerationTimeout(SolverError):
    """Model enumeration ran out of time; `partial` holds the incomplete model list."""

    def __init__(self, partial):
        super().__init__(f"model enumeration timed out after {len(partial)} models")
        self.partial = list(partial)
        self.complete = False


class NotHorn(SolverError):
    """A Horn-only operation was given a clause with a negative body."""


class NotCCHorn(SolverError):
    """A CC-Horn-only operation was given a clause with upper constraints."""


class NotPurelyNegative(SolverError):
    """Clark completion requires every clause to have an empty positive body."""


class SupportExplosion(SolverError):
    """Support saturation exceeded the configured cap; nothing was truncated."""


class NotAntimonotone(SolverError):
    def __init__(self, witness):
        x, y = witness
        super().__init__(f"operator is not antimonotone: witness X={sorted(x)} Y={sorted(y)}")
        self.witness = witness


class NotDecreasing(SolverError):
    """Chain argument was not monotonically decreasing."""


class EqualSets(SolverError):
    """The support order is only defined on distinct sets."""


class CompoundHead(SolverError):
    """CC clause heads must be single atoms."""
