"""Exception hierarchy shared by all tanglekit modules."""

from __future__ import annotations


class TangleError(Exception):
    """Base class for every error raised by tanglekit."""


# --- list validation -------------------------------------------------------


class ListError(TangleError, ValueError):
    pass


class NegativeCount(ListError):
    pass


class SelfPair(ListError):
    pass


class OutOfRange(ListError):
    pass


class DuplicatePair(ListError):
    pass


class TooFewWires(ListError):
    pass


# --- moves and tangles -----------------------------------------------------


class MoveError(TangleError, ValueError):
    pass


class OverlappingPositions(MoveError):
    pass


class PositionOutOfRange(MoveError):
    pass


class InvalidTangle(TangleError, ValueError):
    pass


class WireCountMismatch(TangleError, ValueError):
    pass


class CyclicOrder(TangleError):
    """The parity tournament of a list has a directed 3-cycle.

    ``cycle`` holds wires ``(a, b, c)`` that must finish with a before b,
    b before c and c before a.
    """

    def __init__(self, message: str, cycle: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.cycle = cycle


class FormatError(TangleError, ValueError):
    """A text file does not follow the expected line format."""


# --- search ----------------------------------------------------------------


class BudgetExhausted(TangleError):
    """The node budget ran out before a verdict was reached.

    This is *not* an infeasibility verdict.
    """

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class LimitReached(TangleError):
    pass


class InfeasibleList(TangleError):
    pass


# --- simple lists ----------------------------------------------------------


class NotSimple(TangleError, ValueError):
    pass


class LengthMismatch(TangleError, ValueError):
    pass


# --- reduction -------------------------------------------------------------


class FormulaError(TangleError, ValueError):
    pass


class TooManyVariables(TangleError, ValueError):
    pass


class NotNAE(TangleError):
    pass


class ArmInterleaving(TangleError):
    pass
