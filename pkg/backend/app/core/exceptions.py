"""
Exception hierarchy for the chip game engine.

Every error raised on purpose by the application derives from ChipGameError,
so the command line can map whole families of failures onto exit codes.
"""

from typing import Any, Dict, List, Optional


class ChipGameError(Exception):
    """Base exception for chip game errors."""
    pass


class InvalidConfigError(ChipGameError):
    """Raised when a game configuration or variant is malformed."""
    pass


class InvalidMoveError(ChipGameError):
    """Raised when a Pusher move violates a MoveSet invariant."""
    pass


class InvalidRemovalError(ChipGameError):
    """Raised when a Remover action is not legal for the current round."""
    pass


class RoundLimitExceededError(ChipGameError):
    """Raised when a match runs longer than any legal game can."""
    pass


class TranscriptMismatchError(ChipGameError):
    """Raised when replaying a transcript does not reproduce its recorded result."""
    pass


class StrategyError(ChipGameError):
    """
    Raised when a strategy produces an illegal action or cannot be built.

    Attributes:
        strategy (Optional[str]): Name of the offending strategy
    """

    def __init__(self, message: str, strategy: Optional[str] = None):
        super().__init__(message if strategy is None else f"[{strategy}] {message}")
        self.strategy = strategy


class StrategyFailure(ChipGameError):
    """
    Raised when a strategy reports that it cannot continue.

    This is distinct from losing the game: the strategy ran out of the
    resources its construction relies on (for example an empty bucket).
    """

    def __init__(self, message: str, strategy: Optional[str] = None):
        super().__init__(message if strategy is None else f"[{strategy}] {message}")
        self.strategy = strategy


class StrategyInvariantError(ChipGameError):
    """Raised when an invariant a strategy is built on does not hold."""

    def __init__(self, message: str, strategy: Optional[str] = None):
        super().__init__(message if strategy is None else f"[{strategy}] {message}")
        self.strategy = strategy


class PhaseAuditError(StrategyInvariantError):
    """
    Raised when a doubling phase does not match its distance tables.

    Attributes:
        trace (Dict[str, Any]): Full phase record for diagnosis
    """

    def __init__(self, message: str, trace: Dict[str, Any]):
        super().__init__(message, strategy="doubling")
        self.trace = trace


class BudgetExceededError(ChipGameError):
    """
    Raised when a search exhausts its memo budget.

    Attributes:
        budget (int): The configured entry cap
        frontier (List[Any]): Positions that were open when the budget ran out
        explored (int): Entries created before giving up
    """

    def __init__(self, budget: int, explored: int, frontier: Optional[List[Any]] = None):
        super().__init__(f"State budget of {budget} entries exceeded after exploring {explored}")
        self.budget = budget
        self.explored = explored
        self.frontier = frontier or []


class UnsolvedInstanceError(ChipGameError):
    """Raised when solver-backed play is requested for an instance that was not solved."""
    pass


class ReductionDesyncError(ChipGameError):
    """Raised when a reduction's two state machines disagree."""
    pass


class PresentationError(ChipGameError):
    """Raised when an on-line hypergraph presentation breaks the game rules."""
    pass


class MalformedHypergraphError(ChipGameError):
    """Raised when a hypergraph document is structurally invalid."""
    pass


class StorageError(ChipGameError):
    """Base exception for storage-related errors."""
    pass


class StoragePermissionError(StorageError):
    """Raised when there are permission issues."""
    pass


class StorageNotFoundError(StorageError):
    """Raised when a file is not found."""
    pass
