"""
Brick Pusher for the general (k, k * 2^(k-1)) chip game.

A brick on vertex i is a group of exactly 2^(i-1) chips, so every brick has
scaled weight 2^(k-1). Each path starts with k bricks on vertex k. Every round
Pusher moves the lowest brick of each path; the brick that survives the removal
lands one vertex lower, where it counts as two bricks of half the size.
Chips beyond k * 2^(k-1) per path stay on vertex k and are never moved.
"""

import logging
from typing import List, Optional, Tuple

from ...core.exceptions import StrategyError, StrategyInvariantError
from ...models.schemas import BoardState, BrickState, ChipChoice, GameConfig, MoveSet, PathCounts, RemovalAction, VariantKind
from .base import PusherStrategy, digest_of, move_from_positions

logger = logging.getLogger(__name__)


def brick_chips(position: int) -> int:
    """Chips in one brick on `position`."""
    return 1 << (position - 1)


def brick_design_size(k: int) -> int:
    return k * (1 << (k - 1))


class BrickPusher(PusherStrategy):
    """Moves the lowest brick on each path every round."""

    name = "brick"

    def __init__(self, config: GameConfig):
        super().__init__(config)
        if config.variant is not VariantKind.GENERAL:
            raise StrategyError("brick strategy plays the general variant only", strategy=self.name)
        needed = brick_design_size(config.k)
        if config.N < needed:
            raise StrategyError(f"needs N >= {needed} for k={config.k}, got {config.N}", strategy=self.name)
        self.k = config.k
        self.bricks: List[List[int]] = [[0] * (self.k + 1), [0] * (self.k + 1)]
        self.bricks[0][self.k] = self.k
        self.bricks[1][self.k] = self.k
        self.pending: Optional[Tuple[int, int]] = None
        self.won = False

    def _lowest(self, path: int) -> Optional[int]:
        for position in range(1, self.k + 1):
            if self.bricks[path][position]:
                return position
        return None

    def _check_mirror(self, state: BoardState) -> None:
        for p in (0, 1):
            counts = state[p]
            for position in range(self.k):
                owned = self.bricks[p][position] * brick_chips(position) if position else 0
                if counts[position] != owned:
                    raise StrategyInvariantError(
                        f"board has {counts[position]} chips on vertex {position} of path {p + 1}, "
                        f"bricks account for {owned}",
                        strategy=self.name,
                    )
            if counts[self.k] < self.bricks[p][self.k] * brick_chips(self.k):
                raise StrategyInvariantError(f"bricks on vertex {self.k} of path {p + 1} went missing",
                                             strategy=self.name)

    def next_move(self, state: BoardState) -> MoveSet:
        self._check_mirror(state)
        first, second = self._lowest(0), self._lowest(1)
        if first is None or second is None:
            logger.error(f"Brick layout without a brick on some path: {self.bricks}")
            raise StrategyInvariantError("a path ran out of bricks before Pusher won", strategy=self.name)
        self.pending = (first, second)
        return move_from_positions(
            self.k,
            {first: brick_chips(first)},
            {second: brick_chips(second)},
        )

    def observe(self, removal: RemovalAction) -> None:
        if isinstance(removal, ChipChoice):
            raise StrategyError("single-chip removals are not part of the general game", strategy=self.name)
        for p, position in enumerate(self.pending):
            self.bricks[p][position] -= 1
            if p == removal.path.index:
                continue
            if position == 1:
                # The chip reached vertex 0 and survived
                self.won = True
            else:
                self.bricks[p][position - 1] += 2
        self.pending = None
        if not self.won:
            self.check_invariant()

    def check_invariant(self) -> None:
        """
        At most two bricks on the lowest occupied vertex i < k, at most one on
        each vertex between i and k, and 2k bricks in total.
        """
        total = sum(self.bricks[0]) + sum(self.bricks[1])
        if total != 2 * self.k:
            raise StrategyInvariantError(f"{total} bricks on the board, expected {2 * self.k}",
                                         strategy=self.name)
        for p in (0, 1):
            lowest = self._lowest(p)
            if lowest is None or lowest == self.k:
                continue
            if self.bricks[p][lowest] > 2 or any(self.bricks[p][j] > 1 for j in range(lowest + 1, self.k)):
                raise StrategyInvariantError(f"brick distribution broken on path {p + 1}: {self.bricks[p]}",
                                             strategy=self.name)

    def brick_state(self) -> BrickState:
        return BrickState(bricks=PathCounts(first=tuple(self.bricks[0]), second=tuple(self.bricks[1])))

    def state_digest(self) -> bytes:
        return digest_of(tuple(self.bricks[0]), tuple(self.bricks[1]))
