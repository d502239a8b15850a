"""Exception hierarchy.

Every error raised on purpose by the library derives from ``VinbergError``,
so callers (the CLI in particular) can separate input problems from bugs.
Names follow the vocabulary of the operations that raise them.
"""


class VinbergError(Exception):
    """Base class for all library errors."""


# -- input validation -------------------------------------------------------

class InvalidInput(VinbergError, ValueError):
    """Malformed data: wrong shape, unparsable entries."""


class NonSymmetric(InvalidInput):
    pass


class BadDiagonal(InvalidInput):
    pass


class BadOffDiagonal(InvalidInput):
    pass


class PositiveOffDiagonal(InvalidInput):
    pass


class ZeroAsymmetry(InvalidInput):
    pass


class RankMismatch(InvalidInput):
    pass


class ZeroPatternMismatch(InvalidInput):
    pass


class UnsupportedLabel(InvalidInput):
    """A finite Coxeter label whose 4cos^2(pi/m) is irrational."""


# -- preconditions of individual operations ---------------------------------

class PreconditionViolated(VinbergError):
    pass


class NotLarge(PreconditionViolated):
    pass


class NotLargeIrreducible(PreconditionViolated):
    pass


class NotIrreducible(PreconditionViolated):
    pass


class Decomposable(PreconditionViolated):
    pass


class Incompatible(PreconditionViolated):
    pass


class NotTree(PreconditionViolated):
    pass


class IsTree(PreconditionViolated):
    pass


class NotRightAngled(PreconditionViolated):
    pass


class RankTooSmall(PreconditionViolated):
    pass


class DegreeTooSmall(PreconditionViolated):
    pass


class RankGapTooSmall(PreconditionViolated):
    pass


class TargetTooSmall(PreconditionViolated):
    pass


class BadLabels(PreconditionViolated):
    pass


class NoSuitableCycle(PreconditionViolated):
    pass


class ComplementNotAdmissible(PreconditionViolated):
    pass


class DegenerateRepresentation(PreconditionViolated):
    """One-dimensional representations are rejected everywhere."""


# -- computational outcomes -------------------------------------------------

class NotAReflection(VinbergError):
    pass


class UnsupportedPairing(VinbergError):
    pass


class RelationViolation(VinbergError):
    def __init__(self, message, pair=None, power=None):
        super().__init__(message)
        self.pair = pair
        self.power = power


class CycleBudgetExceeded(VinbergError):
    pass


class NoConvergence(VinbergError):
    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class CyclicProductObstruction(VinbergError):
    def __init__(self, message, cycle=None, value=None):
        super().__init__(message)
        self.cycle = cycle
        self.value = value


class NoInfinitePairInK(VinbergError):
    pass


class SearchExhausted(VinbergError):
    """A parameter scan hit its cap without finding a certificate."""
