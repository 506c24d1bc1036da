"""Exception types shared across the package."""

from __future__ import annotations


class MBGError(Exception):
    """Base class for all package-specific errors."""


class InvalidParams(MBGError):
    """A game, board, or instance parameter is out of range or inconsistent."""


class EdgeAlreadyClaimed(MBGError):
    """An edge was claimed twice.  The board is left untouched."""


class NoFreeEdge(MBGError):
    """A strategy was asked to move on a board with no free edge left."""


class StrategyViolation(MBGError):
    """A strategy returned an edge it is not allowed to claim."""


class StrategyInfeasible(MBGError):
    """A strategy's preconditions do not hold for the given parameters."""


class StageBlocked(MBGError):
    """A staged strategy has no legal move left in its current stage."""


class BoxesExhausted(MBGError):
    """Every box of a box-playing state has been destroyed."""


class TooLarge(MBGError):
    """An exact oracle was invoked beyond its configured size cap."""


class NotConnected(MBGError):
    """An oracle requiring a connected graph was given a disconnected one."""


class PreconditionFailed(MBGError):
    """A closed-form bound was evaluated outside its domain of validity."""


class TraceIncompatible(MBGError):
    """A game trace lacks the structure an auditor needs."""
