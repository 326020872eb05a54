"""
Tower Pusher for the 1-restricted chip game.

An (a, b)-tower owns one chip on each of the vertices k..k-a+1 of the first
path and k..k-b+1 of the second. Every other chip sits on vertex k in the
bucket of its path. The strategy starts with `towers` (1, 1)-towers and, before
each board move, applies free bookkeeping until nothing changes:

  Rebuild   an (a, 0)- or (0, b)-tower takes a chip from the bucket
  Exchange  an (a, b)- and an (a', b')-tower of equal size with a != a'
            become an (a, b')- and an (a', b)-tower

Then it issues one board move:

  Strike    when it owns a chip on vertex 1 of both paths it moves both,
            one of them survives on vertex 0
  Advance   the two earliest-created identical towers of maximum size; the
            first one moves its top-most chip on each path, the surviving chip
            joins the second tower

Towers of size s weigh fib(s). Advance leaves the total weight unchanged,
exchange and rebuild never lower it, and once it exceeds tower_bound no
rebuild happens again.

Rebuilding a (1, 0)-tower adds nothing to that weight, so the buckets are sized
with fib(s + 1) per tower instead: advance keeps that sum too, exchange never
lowers it and every rebuild raises it by at least 1. Rebuilds only happen while
no two towers share a size of k + 2 or more, which caps the sum and so the
number of rebuilds (tower_withdrawal_bound).

The default of 2k - 1 towers always leaves an action: without a strike every
tower has sides 1..k and at most one side equal to k, so sizes fall in 2..2k-1.
"""

import logging
from typing import List, Optional, Tuple

from ...core.exceptions import StrategyError, StrategyFailure, StrategyInvariantError
from ...models.schemas import BoardState, ChipChoice, GameConfig, MoveSet, RemovalAction, TowerState
from ..game_engine import fib
from .base import PusherStrategy, digest_of, move_from_positions

logger = logging.getLogger(__name__)

MAX_BOOKKEEPING_STEPS = 100_000


def tower_design_size(k: int) -> int:
    """
    fib(2k) + 2k * fib(k+1), raised where 2k - 1 towers need more chips than that
    to cover tower_withdrawal_bound (k >= 4).
    """
    count = 2 * k - 1
    return max(fib(2 * k) + 2 * k * fib(k + 1), count + tower_withdrawal_bound(k, count))


def tower_bound(k: int, towers: Optional[int] = None) -> int:
    """K = towers * fib(k+1) + fib(k+2) + ... + fib(2k-1); towers defaults to 2k - 1."""
    towers = 2 * k - 1 if towers is None else towers
    return towers * fib(k + 1) + sum(fib(s) for s in range(k + 2, 2 * k))


def tower_withdrawal_bound(k: int, towers: Optional[int] = None) -> int:
    """Most rebuilds, and so most withdrawals from either bucket, in one game."""
    towers = 2 * k - 1 if towers is None else towers
    large = list(range(2 * k - 1, k + 1, -1))[:towers]
    ceiling = sum(fib(s + 1) for s in large) + (towers - len(large)) * fib(k + 2)
    # Every tower starts at size 2, fib(3) = 2
    return max(0, ceiling - 2 * towers + 1)


class TowerPusher(PusherStrategy):
    """Rebuild / exchange / advance with a closing strike."""

    name = "tower"

    def __init__(self, config: GameConfig, towers: Optional[int] = None):
        super().__init__(config)
        self.k = config.k
        count = 2 * self.k - 1 if towers is None else towers
        if count < 1:
            raise StrategyError("needs at least one tower", strategy=self.name)
        if config.N < count:
            raise StrategyError(f"{count} towers need N >= {count}, got {config.N}", strategy=self.name)
        self.towers: List[List[int]] = [[1, 1] for _ in range(count)]
        self.buckets = [config.N - count, config.N - count]
        self.withdrawals = [0, 0]
        self.weight = count * fib(2)
        self.bound = tower_bound(self.k, count)
        self.withdrawal_bound = tower_withdrawal_bound(self.k, count)
        self.rebuilds = 0
        self.pending: Optional[Tuple[str, int, int]] = None
        self.won = False

    @staticmethod
    def _size(tower: List[int]) -> int:
        return tower[0] + tower[1]

    def _recount(self) -> int:
        return sum(fib(self._size(t)) for t in self.towers)

    def _set_weight(self, action: str, exact: bool = False) -> None:
        weight = self._recount()
        if weight < self.weight or (exact and weight != self.weight):
            logger.error(f"Tower weight went from {self.weight} to {weight} on {action}")
            raise StrategyInvariantError(f"{action} changed the tower weight from {self.weight} to {weight}",
                                         strategy=self.name)
        self.weight = weight

    def _check_mirror(self, state: BoardState) -> None:
        for p in (0, 1):
            counts = state[p]
            for position in range(self.k + 1):
                depth = self.k - position + 1
                owned = sum(1 for t in self.towers if t[p] >= depth)
                if position == self.k:
                    owned += self.buckets[p]
                if counts[position] != owned:
                    raise StrategyInvariantError(
                        f"board has {counts[position]} chips on vertex {position} of path {p + 1}, "
                        f"towers and bucket account for {owned}",
                        strategy=self.name,
                    )

    # Free actions
    def _rebuild(self) -> bool:
        for tower in self.towers:
            if tower[0] and tower[1]:
                continue
            if self.weight > self.bound:
                raise StrategyInvariantError(f"rebuild needed although the weight {self.weight} exceeds "
                                             f"K = {self.bound}", strategy=self.name)
            if self.rebuilds >= self.withdrawal_bound:
                raise StrategyInvariantError(f"rebuild {self.rebuilds + 1} exceeds the bound "
                                             f"{self.withdrawal_bound}", strategy=self.name)
            for p in (0, 1):
                if tower[p] == 0:
                    if self.buckets[p] == 0:
                        logger.warning(f"Tower strategy: bucket {p + 1} is empty after "
                                       f"{self.withdrawals[p]} withdrawals")
                        raise StrategyFailure(f"bucket {p + 1} is empty", strategy=self.name)
                    self.buckets[p] -= 1
                    self.withdrawals[p] += 1
                    tower[p] = 1
            self.rebuilds += 1
            self._set_weight("rebuild")
            return True
        return False

    def _exchange(self) -> bool:
        for i, left in enumerate(self.towers):
            for right in self.towers[i + 1:]:
                if self._size(left) == self._size(right) and left[0] != right[0]:
                    left[1], right[1] = right[1], left[1]
                    self._set_weight("exchange")
                    return True
        return False

    def _bookkeeping(self) -> None:
        for _ in range(MAX_BOOKKEEPING_STEPS):
            if not (self._rebuild() or self._exchange()):
                return
        raise StrategyInvariantError("bookkeeping did not reach a fixpoint", strategy=self.name)

    # Board moves
    def _strike(self) -> Optional[Tuple[int, int]]:
        first = next((i for i, t in enumerate(self.towers) if t[0] == self.k), None)
        second = next((i for i, t in enumerate(self.towers) if t[1] == self.k), None)
        if first is None or second is None:
            return None
        return first, second

    def _advance_pair(self) -> Optional[Tuple[int, int]]:
        best: Optional[Tuple[int, int]] = None
        best_size = -1
        for i, tower in enumerate(self.towers):
            size = self._size(tower)
            if size <= best_size:
                continue
            for j in range(i + 1, len(self.towers)):
                if self.towers[j] == tower:
                    best, best_size = (i, j), size
                    break
        return best

    def next_move(self, state: BoardState) -> MoveSet:
        self._check_mirror(state)
        strike = self._strike()
        if strike is None:
            self._bookkeeping()
            strike = self._strike()
        if strike is not None:
            self.pending = ("strike", strike[0], strike[1])
            return move_from_positions(self.k, {1: 1}, {1: 1})

        pair = self._advance_pair()
        if pair is None:
            logger.error(f"Tower strategy has no action: towers {self.towers}")
            raise StrategyInvariantError(f"no advance possible with towers {self.towers}", strategy=self.name)
        a, b = self.towers[pair[0]]
        self.pending = ("advance", pair[0], pair[1])
        return move_from_positions(self.k, {self.k - a + 1: 1}, {self.k - b + 1: 1})

    def observe(self, removal: RemovalAction) -> None:
        action, i, j = self.pending
        self.pending = None
        if action == "strike":
            self.won = True
            return

        a, b = self.towers[i]
        landing = (self.k - a, self.k - b)
        survivors = [True, True]
        if isinstance(removal, ChipChoice):
            p = removal.path.index
            if removal.position == landing[p]:
                survivors[p] = False
            elif removal.position == self.k and self.buckets[p] > 0:
                self.buckets[p] -= 1
            else:
                raise StrategyFailure(f"removal of an unmoved chip on vertex {removal.position} "
                                      f"of path {p + 1} breaks the towers", strategy=self.name)
        else:
            survivors[removal.path.index] = False

        self.towers[i] = [a - 1, b - 1]
        for p in (0, 1):
            if survivors[p]:
                self.towers[j][p] += 1
                if landing[p] == 0:
                    self.won = True
        self._set_weight("advance", exact=not all(survivors))

    def tower_state(self) -> TowerState:
        return TowerState(
            towers=[(a, b) for a, b in self.towers],
            buckets=(self.buckets[0], self.buckets[1]),
            total_weight=self.weight,
            withdrawals=(self.withdrawals[0], self.withdrawals[1]),
        )

    def state_digest(self) -> bytes:
        return digest_of(tuple(tuple(t) for t in self.towers), tuple(self.buckets))
