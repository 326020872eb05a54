"""
Pusher and Remover strategy contracts.

A strategy instance plays exactly one game. Pusher strategies are told the
Remover's answer through `observe`; Remover strategies see the board as it was
before the move together with the move itself.

`state_digest` must be equal for instances in the same internal state, since
exhaustive verification memoizes on (board, digest). `clone` gives an
independent copy for branching in tree search.
"""

import copy
from abc import ABC, abstractmethod
from typing import Mapping

from ...models.schemas import BoardState, GameConfig, MoveSet, RemovalAction


class PusherStrategy(ABC):
    """Base class for Pusher strategies."""

    name: str = "pusher"

    def __init__(self, config: GameConfig):
        self.config = config

    @abstractmethod
    def next_move(self, state: BoardState) -> MoveSet:
        """Return the move for this round, or raise StrategyFailure."""

    def observe(self, removal: RemovalAction) -> None:
        """Learn the Remover's answer to the last move."""

    def state_digest(self) -> bytes:
        return b""

    def clone(self) -> "PusherStrategy":
        return copy.deepcopy(self)


class RemoverStrategy(ABC):
    """Base class for Remover strategies."""

    name: str = "remover"

    def __init__(self, config: GameConfig):
        self.config = config

    @abstractmethod
    def choose(self, state: BoardState, move: MoveSet) -> RemovalAction:
        """Answer `move`; `state` is the board before the move."""

    def state_digest(self) -> bytes:
        return b""

    def clone(self) -> "RemoverStrategy":
        return copy.deepcopy(self)


def digest_of(*parts) -> bytes:
    """Canonical byte string of nested tuples of ints and strings."""
    return repr(parts).encode()


def move_from_positions(k: int, first: Mapping[int, int], second: Mapping[int, int]) -> MoveSet:
    """Build a MoveSet from {position: chips} maps, one per path."""
    def vector(chosen: Mapping[int, int]):
        advance = [0] * (k + 1)
        for position, n in chosen.items():
            advance[position] += n
        return tuple(advance)

    return MoveSet.from_pair((vector(first), vector(second)))
