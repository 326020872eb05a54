"""
Baseline adversaries: random, greedy, push-all, solver-backed and interactive.
"""

import copy
import random
from typing import Callable, List, Optional

from ...core.exceptions import UnsolvedInstanceError
from ...models.schemas import BoardState, GameConfig, MoveSet, RemovalAction
from ..game_engine import moves_pair, removal_from_raw, removals_pair
from .base import PusherStrategy, RemoverStrategy, digest_of


class RandomPusher(PusherStrategy):
    """
    Uniformly random valid move from a seeded generator.

    The general variant has too many moves to list, so each position count is
    drawn uniformly from 0..count and the empty move is redrawn. Capped
    variants pick from the full move list.
    """

    name = "random"

    def __init__(self, config: GameConfig, seed: int = 0):
        super().__init__(config)
        self.seed = seed
        self.rng = random.Random(seed)

    def next_move(self, state: BoardState) -> MoveSet:
        if self.config.move_cap is None:
            while True:
                advance = tuple(
                    (0,) + tuple(self.rng.randint(0, n) for n in state[p][1:]) for p in (0, 1)
                )
                if any(advance[0]) or any(advance[1]):
                    return MoveSet.from_pair(advance)
        return MoveSet.from_pair(self.rng.choice(moves_pair(state.pair, self.config.move_cap)))

    def state_digest(self) -> bytes:
        return digest_of(self.rng.getstate())


class RandomRemover(RemoverStrategy):
    """Uniformly random legal removal."""

    name = "random"

    def __init__(self, config: GameConfig, seed: int = 0):
        super().__init__(config)
        self.seed = seed
        self.rng = random.Random(seed)

    def choose(self, state: BoardState, move: MoveSet) -> RemovalAction:
        options = removals_pair(state.pair, move.pair, self.config.chip_removal)
        return removal_from_raw(self.rng.choice(options))

    def state_digest(self) -> bytes:
        return digest_of(self.rng.getstate())


class GreedyWeightRemover(RemoverStrategy):
    """
    Clears the path whose moved chips weigh more after the move (path one on a
    tie). In the mmb variant it deletes the heaviest moved chip instead.
    """

    name = "greedy"

    def choose(self, state: BoardState, move: MoveSet) -> RemovalAction:
        k = self.config.k
        if self.config.chip_removal:
            landed = [(i - 1, p) for p in (0, 1) for i, n in enumerate(move[p]) if n]
            position, path = min(landed)
            return removal_from_raw((path, position))

        weights = [sum(n << (k - (i - 1)) for i, n in enumerate(move[p]) if n) for p in (0, 1)]
        if not any(move[1]):
            return removal_from_raw((0, None))
        if not any(move[0]):
            return removal_from_raw((1, None))
        return removal_from_raw((1 if weights[1] > weights[0] else 0, None))


class PushAllPusher(PusherStrategy):
    """Moves every chip it may: everything in the general game, the c lowest chips per path otherwise."""

    name = "push-all"

    def next_move(self, state: BoardState) -> MoveSet:
        cap = self.config.move_cap
        advance = []
        for p in (0, 1):
            counts = state[p]
            if cap is None:
                advance.append((0,) + tuple(counts[1:]))
                continue
            vector = [0] * len(counts)
            left = cap
            for position in range(1, len(counts)):
                take = min(counts[position], left)
                vector[position] = take
                left -= take
            advance.append(tuple(vector))
        return MoveSet.from_pair((advance[0], advance[1]))


class SolverPusher(PusherStrategy):
    """Plays a winning move from solved positions, any move elsewhere."""

    name = "solver"

    def __init__(self, config: GameConfig, solver):
        super().__init__(config)
        if not solver.is_solved(config):
            raise UnsolvedInstanceError(f"solver has not solved {config}")
        self.solver = solver

    def next_move(self, state: BoardState) -> MoveSet:
        return MoveSet.from_pair(self.solver.best_move_pair(self.config, state.pair))

    def clone(self) -> "SolverPusher":
        # Stateless; the solver's table is shared on purpose
        return copy.copy(self)


class SolverRemover(RemoverStrategy):
    """Answers with a refuting removal whenever one exists."""

    name = "solver"

    def __init__(self, config: GameConfig, solver):
        super().__init__(config)
        if not solver.is_solved(config):
            raise UnsolvedInstanceError(f"solver has not solved {config}")
        self.solver = solver

    def choose(self, state: BoardState, move: MoveSet) -> RemovalAction:
        return removal_from_raw(self.solver.best_removal_pair(self.config, state.pair, move.pair))

    def clone(self) -> "SolverRemover":
        return copy.copy(self)


class HumanRemover(RemoverStrategy):
    """Asks a person for every removal through injectable prompt/output callables."""

    name = "human"

    def __init__(self, config: GameConfig, prompt: Callable[[str], str] = input,
                 out: Optional[Callable[[str], None]] = None):
        super().__init__(config)
        self.prompt = prompt
        self.out = out or print

    @staticmethod
    def _describe(k: int, counts) -> str:
        return " ".join(f"{i}:{counts[i]}" for i in range(k, -1, -1))

    def choose(self, state: BoardState, move: MoveSet) -> RemovalAction:
        k = self.config.k
        options: List[RemovalAction] = [
            removal_from_raw(r) for r in removals_pair(state.pair, move.pair, self.config.chip_removal)
        ]
        self.out(f"board   first [{self._describe(k, state[0])}]  second [{self._describe(k, state[1])}]")
        self.out(f"move    first [{self._describe(k, move[0])}]  second [{self._describe(k, move[1])}]")
        for number, option in enumerate(options, start=1):
            label = option.path.value if option.kind == "path" else f"{option.path.value}@{option.position}"
            self.out(f"  {number}) {label}")
        while True:
            answer = self.prompt("remove> ").strip()
            if answer.isdigit() and 1 <= int(answer) <= len(options):
                return options[int(answer) - 1]
            self.out(f"enter a number between 1 and {len(options)}")
