"""
Exact solver for small chip game instances.

Pusher nodes are OR over all valid moves, Remover nodes AND over all legal
removals. Results are memoized per rule set on a canonical key that identifies
a board with its path-swapped mirror image; the rules do not distinguish the
paths, so both have the same value. Entries are written once and the table is
shared across N, since boards carry absolute counts.

The search runs on tuple pairs through the `*_pair` helpers of the game
engine. `naive_outcome` is an independent plain minimax with its own move
generation and no memo, used to cross-check the solver.
"""

import itertools
import logging
import multiprocessing
import sys
from typing import Dict, Iterable, List, Optional, Tuple

from ..core.exceptions import BudgetExceededError
from ..core.settings import settings
from ..models.schemas import (
    BoardState,
    GameConfig,
    GameVariant,
    MoveSet,
    Outcome,
    Pair,
    RemovalAction,
    SolveReport,
    ThresholdResult,
    VariantKind,
)
from .game_engine import (
    RawRemoval,
    apply_pair,
    initial_pair,
    moves_pair,
    removal_from_raw,
    removals_pair,
    terminal_pair,
)
from .strategies.tower import tower_design_size

logger = logging.getLogger(__name__)

CanonicalKey = Pair
RuleSet = Tuple[Optional[int], bool, bool]


def canonicalize(state) -> CanonicalKey:
    """Order the two paths so a board and its swap share one key."""
    first, second = state.pair if isinstance(state, BoardState) else state
    return (first, second) if first <= second else (second, first)


def ensure_recursion_limit() -> None:
    if sys.getrecursionlimit() < settings.RECURSION_LIMIT:
        sys.setrecursionlimit(settings.RECURSION_LIMIT)


class SolveResult:
    """
    Solved value of one instance plus handles for perfect play.

    Attributes:
        config (GameConfig): The solved instance
        outcome (Outcome): Value under optimal play
        states_explored (int): Table entries created while solving
    """

    def __init__(self, solver: "Solver", config: GameConfig, outcome: Outcome, states_explored: int):
        self.solver = solver
        self.config = config
        self.outcome = outcome
        self.states_explored = states_explored

    def best_move(self, state: BoardState) -> MoveSet:
        return MoveSet.from_pair(self.solver.best_move_pair(self.config, state.pair))

    def best_removal(self, state: BoardState, move: MoveSet) -> RemovalAction:
        return removal_from_raw(self.solver.best_removal_pair(self.config, state.pair, move.pair))

    def report(self) -> SolveReport:
        return SolveReport(
            k=self.config.k,
            N=self.config.N,
            variant=self.config.variant,
            c=self.config.c,
            outcome=self.outcome,
            states_explored=self.states_explored,
        )


class Solver:
    """
    Memoized minimax over chip game positions.

    Args:
        budget: Cap on table entries, defaults to settings.BUDGET
        allow_dominated: Let Remover clear paths without moved chips (audit mode)
    """

    def __init__(self, budget: Optional[int] = None, allow_dominated: bool = False):
        self.budget = budget or settings.BUDGET
        self.allow_dominated = allow_dominated
        self.tables: Dict[RuleSet, Dict[CanonicalKey, bool]] = {}
        self.entries = 0
        self.solved: Dict[GameConfig, Outcome] = {}
        self._stack: List[CanonicalKey] = []
        self._rules: RuleSet = (None, False, allow_dominated)
        self._table: Dict[CanonicalKey, bool] = {}

    def _use(self, config: GameConfig) -> None:
        self._rules = (config.move_cap, config.chip_removal, self.allow_dominated)
        self._table = self.tables.setdefault(self._rules, {})

    def _pusher_wins(self, pair: Pair) -> bool:
        key = pair if pair[0] <= pair[1] else (pair[1], pair[0])
        known = self._table.get(key)
        if known is not None:
            return known

        cap, chip_removal, dominated = self._rules
        self._stack.append(key)
        result = False
        for move in moves_pair(pair, cap):
            for removal in removals_pair(pair, move, chip_removal, dominated):
                after = apply_pair(pair, move, removal)
                first, second = after
                if first[0] or second[0]:
                    continue
                if not any(first) and not any(second):
                    break
                if not self._pusher_wins(after):
                    break
            else:
                result = True
                break
        self._stack.pop()

        if self.entries >= self.budget:
            logger.warning(f"Solver budget of {self.budget} entries exhausted")
            raise BudgetExceededError(self.budget, self.entries,
                                      frontier=[BoardState.from_pair(k) for k in self._stack])
        self._table[key] = result
        self.entries += 1
        return result

    def _line_wins(self, pair: Pair, move: Pair, removal: RawRemoval) -> bool:
        after = apply_pair(pair, move, removal)
        outcome = terminal_pair(after)
        if outcome is not None:
            return outcome is Outcome.PUSHER_WIN
        return self._pusher_wins(after)

    def solve(self, config: GameConfig) -> SolveResult:
        """
        Value of the instance under optimal play.

        Raises:
            BudgetExceededError: If the table outgrows the budget
        """
        ensure_recursion_limit()
        self._use(config)
        before = self.entries
        self._stack = []
        pair = initial_pair(config.k, config.N)
        outcome = terminal_pair(pair)
        if outcome is None:
            outcome = Outcome.PUSHER_WIN if self._pusher_wins(pair) else Outcome.REMOVER_WIN
        self.solved[config] = outcome
        explored = self.entries - before
        logger.info(f"Solved {config}: {outcome.value} ({explored} new states, {self.entries} total)")
        return SolveResult(self, config, outcome, explored)

    def is_solved(self, config: GameConfig) -> bool:
        return config in self.solved

    def pusher_wins(self, config: GameConfig, state: BoardState) -> bool:
        """Value of an arbitrary position under the rules of `config`."""
        ensure_recursion_limit()
        self._use(config)
        outcome = terminal_pair(state.pair)
        if outcome is not None:
            return outcome is Outcome.PUSHER_WIN
        return self._pusher_wins(state.pair)

    def best_move_pair(self, config: GameConfig, pair: Pair) -> Pair:
        """A winning move when one exists, otherwise the first valid move."""
        self._use(config)
        cap, chip_removal, dominated = self._rules
        moves = moves_pair(pair, cap)
        for move in moves:
            if all(self._line_wins(pair, move, r) for r in removals_pair(pair, move, chip_removal, dominated)):
                return move
        return moves[0]

    def best_removal_pair(self, config: GameConfig, pair: Pair, move: Pair) -> RawRemoval:
        """A refuting removal when one exists, otherwise the first legal one."""
        self._use(config)
        _, chip_removal, dominated = self._rules
        removals = removals_pair(pair, move, chip_removal, dominated)
        for removal in removals:
            if not self._line_wins(pair, move, removal):
                return removal
        return removals[0]


def naive_outcome(config: GameConfig) -> Outcome:
    """
    Plain minimax without memo or canonical keys.

    Written independently of the solver and the engine's move helpers so the
    two can be compared. Exponential; meant for k <= 2 and N <= 3.
    """
    k, cap, chip_removal = config.k, config.move_cap, config.chip_removal

    def moves(board):
        per_path = []
        for counts in board:
            choices = [v for v in itertools.product(*(range(c + 1) for c in counts[1:]))
                       if cap is None or sum(v) <= cap]
            per_path.append(choices)
        for a, b in itertools.product(*per_path):
            if sum(a) + sum(b):
                yield a, b

    def step(board, move):
        paths = []
        for counts, chosen in zip(board, move):
            path = list(counts)
            for i, n in enumerate(chosen, start=1):
                path[i] -= n
                path[i - 1] += n
            paths.append(path)
        return paths

    def answers(board, move):
        moved = step(board, move)
        if chip_removal:
            for p in (0, 1):
                for i in range(k + 1):
                    if moved[p][i]:
                        hit = [list(moved[0]), list(moved[1])]
                        hit[p][i] -= 1
                        yield hit
            return
        for p in (0, 1):
            if sum(move[p]):
                cleared = [list(moved[0]), list(moved[1])]
                cleared[p] = [c - (move[p][i - 1] if i else 0) for i, c in enumerate(board[p])]
                yield cleared

    def pusher_wins(board) -> bool:
        if board[0][0] or board[1][0]:
            return True
        if not any(board[0]) and not any(board[1]):
            return False
        return any(all(pusher_wins(after) for after in answers(board, move)) for move in moves(board))

    ensure_recursion_limit()
    start = [[0] * k + [config.N], [0] * k + [config.N]]
    return Outcome.PUSHER_WIN if pusher_wins(start) else Outcome.REMOVER_WIN


def known_upper_bound(k: int, variant: GameVariant) -> Optional[int]:
    """Smallest N at which a verified strategy wins for Pusher, if any is known."""
    if variant.kind is VariantKind.GENERAL:
        return k * (1 << (k - 1))
    if variant.kind is VariantKind.RESTRICTED:
        return tower_design_size(k)
    return None


def monotonicity_report(outcomes: Dict[int, Outcome]) -> List[str]:
    """Pairs N < M with a Pusher win at N and a Remover win at M."""
    problems = []
    wins = sorted(n for n, o in outcomes.items() if o is Outcome.PUSHER_WIN)
    for n, outcome in sorted(outcomes.items()):
        if outcome is Outcome.REMOVER_WIN and wins and wins[0] < n:
            problems.append(f"PusherWin at N={wins[0]} but RemoverWin at N={n}")
    return problems


def _solve_one(args: Tuple[int, int, str, Optional[int], int]) -> Tuple[int, Optional[Outcome], int]:
    k, N, kind, c, budget = args
    config = GameConfig(k=k, N=N, variant=VariantKind(kind), c=c)
    try:
        result = Solver(budget=budget).solve(config)
    except BudgetExceededError as e:
        return N, None, e.explored
    return N, result.outcome, result.states_explored


def threshold(k: int, variant: GameVariant, n_max: Optional[int] = None, solver: Optional[Solver] = None,
              jobs: Optional[int] = None, budget: Optional[int] = None) -> ThresholdResult:
    """
    Least N at which Pusher wins, scanning N upward.

    A Pusher win at N implies one at N + 1 (extra chips stay put), so the first
    win is the threshold. When the budget runs out at N the result is the
    bracket [N, known upper bound].

    Args:
        n_max: Last N to try; defaults to the known upper bound, or twice the
            restricted one for the mmb variant
        solver: Shared solver for the sequential scan
        jobs: Worker processes; each solves its N values with a private table
    """
    jobs = jobs or settings.JOBS
    upper = known_upper_bound(k, variant)
    if n_max is None:
        n_max = upper if upper is not None else 2 * tower_design_size(k)
    outcomes: Dict[int, Outcome] = {}
    explored = 0
    logger.info(f"Threshold search for k={k}, {variant}, N up to {n_max}, {jobs} job(s)")

    def finish(point: Optional[int] = None, lo: Optional[int] = None) -> ThresholdResult:
        if point is None:
            hi = upper if upper is not None and lo is not None and upper >= lo else None
            bracket = (lo, hi)
            logger.info(f"Threshold k={k}, {variant}: bracket {bracket}")
        else:
            bracket = None
            logger.info(f"Threshold k={k}, {variant}: {point}")
        return ThresholdResult(
            k=k, variant=variant.kind, c=variant.c, threshold=point, bracket=bracket,
            outcomes=outcomes, states_explored=explored,
        )

    if jobs <= 1:
        solver = solver or Solver(budget=budget)
        for N in range(1, n_max + 1):
            try:
                result = solver.solve(GameConfig.of(k, N, variant))
            except BudgetExceededError as e:
                explored += e.explored
                return finish(lo=N)
            explored += result.states_explored
            outcomes[N] = result.outcome
            if result.outcome is Outcome.PUSHER_WIN:
                return finish(point=N)
        return finish(lo=n_max + 1)

    with multiprocessing.Pool(processes=jobs) as pool:
        for start in range(1, n_max + 1, jobs):
            batch = [(k, N, variant.kind.value, variant.c, budget or settings.BUDGET)
                     for N in range(start, min(start + jobs, n_max + 1))]
            for N, outcome, count in pool.map(_solve_one, batch):
                explored += count
                if outcome is None:
                    return finish(lo=N)
                outcomes[N] = outcome
                if outcome is Outcome.PUSHER_WIN:
                    return finish(point=N)
    return finish(lo=n_max + 1)


def solve_many(configs: Iterable[GameConfig], jobs: int = 1, budget: Optional[int] = None) -> List[SolveReport]:
    """Solve independent instances, in parallel when jobs > 1."""
    configs = list(configs)
    args = [(c.k, c.N, c.variant.value, c.c, budget or settings.BUDGET) for c in configs]
    if jobs <= 1:
        results = [_solve_one(a) for a in args]
    else:
        with multiprocessing.Pool(processes=jobs) as pool:
            results = pool.map(_solve_one, args)
    reports = []
    for config, (_, outcome, count) in zip(configs, results):
        if outcome is None:
            raise BudgetExceededError(budget or settings.BUDGET, count)
        reports.append(SolveReport(k=config.k, N=config.N, variant=config.variant, c=config.c,
                                   outcome=outcome, states_explored=count))
    return reports
