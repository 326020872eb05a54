"""
Fibonacci Remover for the 1-restricted chip game.

A chip on vertex i weighs fib(2(k-i)+2) on the first path and fib(2(k-i)+1)
on the second. Removing the lower of the two moved chips (the first path's on
a tie) never increases the total, and a chip on vertex 0 alone would weigh at
least fib(2k+1). So with N <= (fib(2k+1) - 1) / 2 chips per path Pusher never
gets a chip to vertex 0.
"""

from typing import Union

from ...core.exceptions import StrategyError, StrategyInvariantError
from ...models.schemas import BoardState, ChipChoice, MoveSet, Pair, PathChoice, PathId, RemovalAction
from ..game_engine import apply_pair, fib
from .base import RemoverStrategy


def fibonacci_design_size(k: int) -> int:
    """Largest N the potential argument covers: floor((fib(2k+1) - 1) / 2)."""
    return (fib(2 * k + 1) - 1) // 2


def fibonacci_potential(state: Union[BoardState, Pair]) -> int:
    """Total Fibonacci weight of the chips on the board."""
    first, second = state.pair if isinstance(state, BoardState) else state
    k = len(first) - 1
    total = sum(n * fib(2 * (k - i) + 2) for i, n in enumerate(first))
    return total + sum(n * fib(2 * (k - i) + 1) for i, n in enumerate(second))


class FibonacciRemover(RemoverStrategy):
    """Removes the moved chip that landed lower, the first path's on a tie."""

    name = "fib-remover"

    def __init__(self, config, check_potential: bool = True):
        super().__init__(config)
        self.check_potential = check_potential

    def _moved_chip(self, move: MoveSet, path: int):
        advance = move[path]
        if sum(advance) > 1:
            raise StrategyError(f"move advances {sum(advance)} chips on path {path + 1}, "
                                f"expected a 1-restricted move", strategy=self.name)
        for position, n in enumerate(advance):
            if n:
                return position - 1
        return None

    def choose(self, state: BoardState, move: MoveSet) -> RemovalAction:
        landed = (self._moved_chip(move, 0), self._moved_chip(move, 1))
        if landed[0] is None:
            target = 1
        elif landed[1] is None:
            target = 0
        else:
            target = 1 if landed[1] < landed[0] else 0

        path = PathId.from_index(target)
        if self.config.chip_removal:
            removal: RemovalAction = ChipChoice(path=path, position=landed[target])
            raw = (target, landed[target])
        else:
            removal = PathChoice(path=path)
            raw = (target, None)

        if self.check_potential:
            before = fibonacci_potential(state)
            after = fibonacci_potential(apply_pair(state.pair, move.pair, raw))
            if after > before:
                raise StrategyInvariantError(f"potential rose from {before} to {after}", strategy=self.name)
        return removal
