"""
Strategy verification against every adversary line or against seeded random opponents.

The exhaustive check walks the game tree in which the fixed strategy plays one
side and the other side branches over all its legal actions. Positions are
memoized on (exact board, strategy state digest); boards are not canonicalized
because strategies are allowed to treat the two paths differently. Each memo
entry holds the length of the shortest line the strategy loses, so the
counterexample reported is a shortest one.
"""

import logging
import multiprocessing
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import BudgetExceededError, StrategyError, StrategyFailure, StrategyInvariantError
from ..core.settings import settings
from ..models.schemas import (
    BoardState,
    GameConfig,
    MoveSet,
    Outcome,
    PathCounts,
    Round,
    Side,
    Transcript,
    VariantKind,
    VerificationReport,
)
from .game_engine import (
    RawRemoval,
    apply_pair,
    initial_pair,
    move_violation,
    moves_pair,
    play_match,
    removal_from_raw,
    removal_to_raw,
    removal_violation,
    removals_pair,
    terminal_pair,
)
from .solver import ensure_recursion_limit

logger = logging.getLogger(__name__)

MemoKey = Tuple[tuple, bytes]
# (rounds to loss, move, removal, next key) or None when the strategy wins every line
MemoEntry = Optional[Tuple[int, tuple, RawRemoval, Optional[MemoKey]]]


class _Search:
    def __init__(self, config: GameConfig, budget: int, allow_dominated: bool):
        self.config = config
        self.budget = budget
        self.allow_dominated = allow_dominated
        self.memo: Dict[MemoKey, MemoEntry] = {}
        self.stack: List[tuple] = []

    def _store(self, key: MemoKey, entry: MemoEntry) -> MemoEntry:
        if len(self.memo) >= self.budget:
            logger.warning(f"Verification budget of {self.budget} entries exhausted")
            raise BudgetExceededError(self.budget, len(self.memo),
                                      frontier=[BoardState.from_pair(p) for p in self.stack])
        self.memo[key] = entry
        return entry

    @staticmethod
    def _better(current: MemoEntry, length: int) -> bool:
        return current is None or length < current[0]

    def pusher(self, pair, strategy) -> MemoEntry:
        """Fixed Pusher, Remover branches over every legal removal."""
        key = (pair, strategy.state_digest())
        if key in self.memo:
            return self.memo[key]
        self.stack.append(pair)

        move = strategy.next_move(BoardState.from_pair(pair))
        violation = move_violation(pair, move.pair, self.config.move_cap)
        if violation:
            raise StrategyError(f"invalid move: {violation}", strategy=strategy.name)

        worst: MemoEntry = None
        for removal in removals_pair(pair, move.pair, self.config.chip_removal, self.allow_dominated):
            after = apply_pair(pair, move.pair, removal)
            outcome = terminal_pair(after)
            if outcome is Outcome.PUSHER_WIN:
                continue
            if outcome is Outcome.REMOVER_WIN:
                if self._better(worst, 1):
                    worst = (1, move.pair, removal, None)
                continue
            child = strategy.clone()
            child.observe(removal_from_raw(removal))
            line = self.pusher(after, child)
            if line is not None and self._better(worst, line[0] + 1):
                worst = (line[0] + 1, move.pair, removal, (after, child.state_digest()))

        self.stack.pop()
        return self._store(key, worst)

    def remover(self, pair, strategy) -> MemoEntry:
        """Fixed Remover, Pusher branches over every valid move."""
        key = (pair, strategy.state_digest())
        if key in self.memo:
            return self.memo[key]
        self.stack.append(pair)

        state = BoardState.from_pair(pair)
        worst: MemoEntry = None
        for move in moves_pair(pair, self.config.move_cap):
            child = strategy.clone()
            removal = removal_to_raw(child.choose(state, MoveSet.from_pair(move)))
            violation = removal_violation(pair, move, removal, self.config.chip_removal, self.allow_dominated)
            if violation:
                raise StrategyError(f"invalid removal: {violation}", strategy=strategy.name)
            after = apply_pair(pair, move, removal)
            outcome = terminal_pair(after)
            if outcome is Outcome.REMOVER_WIN:
                continue
            if outcome is Outcome.PUSHER_WIN:
                if self._better(worst, 1):
                    worst = (1, move, removal, None)
                continue
            line = self.remover(after, child)
            if line is not None and self._better(worst, line[0] + 1):
                worst = (line[0] + 1, move, removal, (after, child.state_digest()))

        self.stack.pop()
        return self._store(key, worst)

    def line(self, entry: MemoEntry) -> List[Round]:
        rounds = []
        while entry is not None:
            _, move, removal, following = entry
            rounds.append(Round(advance=PathCounts.from_pair(move), removal=removal_from_raw(removal)))
            entry = self.memo[following] if following is not None else None
        return rounds


def verify_strategy_exhaustive(strategy, side: Side, config: GameConfig, budget: Optional[int] = None,
                               allow_dominated: bool = False) -> VerificationReport:
    """
    Check that a deterministic strategy wins against every adversary line.

    Args:
        strategy: Fresh PusherStrategy or RemoverStrategy for `config`
        side: Which side `strategy` plays
        budget: Cap on memo entries, defaults to settings.BUDGET

    Returns:
        VerificationReport; a negative verdict carries a shortest counterexample
        Transcript, or the failure message when the strategy gave up or broke
        one of its own invariants

    Raises:
        BudgetExceededError: With the boards on the current search path as frontier
        StrategyError: If the strategy returns an illegal action
    """
    ensure_recursion_limit()
    search = _Search(config, budget or settings.BUDGET, allow_dominated)
    pair = initial_pair(config.k, config.N)
    logger.info(f"Exhaustive verification of {strategy.name} as {side.value} on {config}")

    try:
        if side is Side.PUSHER:
            entry = search.pusher(pair, strategy)
        else:
            entry = search.remover(pair, strategy)
    except (StrategyFailure, StrategyInvariantError) as e:
        logger.warning(f"{strategy.name} failed on {config} at depth {len(search.stack)}: {e}")
        return VerificationReport(strategy=strategy.name, side=side, config=config, mode="exhaustive",
                                  verdict=False, failure=str(e), states_explored=len(search.memo))

    counterexample = None
    if entry is not None:
        rounds = search.line(entry)
        winner = Outcome.REMOVER_WIN if side is Side.PUSHER else Outcome.PUSHER_WIN
        counterexample = Transcript(config=config, rounds=rounds, outcome=winner, round_count=len(rounds))
        logger.info(f"{strategy.name} loses on {config}; shortest line has {len(rounds)} rounds")
    else:
        logger.info(f"{strategy.name} always wins on {config} ({len(search.memo)} states)")

    return VerificationReport(
        strategy=strategy.name,
        side=side,
        config=config,
        mode="exhaustive",
        verdict=entry is None,
        counterexample=counterexample,
        states_explored=len(search.memo),
    )


def default_opponents(side: Side, config: GameConfig) -> Tuple[str, ...]:
    """Adversary ids cycled through by randomized trials."""
    if side is Side.PUSHER:
        return ("random", "greedy")
    if config.variant is VariantKind.GENERAL:
        return ("random", "push-all")
    return ("random",)


def _trial(args: Tuple[str, str, str, dict, int]) -> Tuple[str, Optional[dict], Optional[str]]:
    from .strategies.registry import build_pusher, build_remover

    strategy_id, side_value, opponent, config_data, seed = args
    config = GameConfig(**config_data)
    side = Side(side_value)
    opponent_id = f"{opponent}:seed={seed}" if opponent == "random" else opponent
    if side is Side.PUSHER:
        pusher, remover = build_pusher(strategy_id, config), build_remover(opponent_id, config)
    else:
        pusher, remover = build_pusher(opponent_id, config), build_remover(strategy_id, config)
    try:
        transcript = play_match(pusher, remover, config)
    except (StrategyFailure, StrategyInvariantError) as e:
        return "failure", None, f"seed {seed} vs {opponent}: {e}"
    own = Outcome.PUSHER_WIN if side is Side.PUSHER else Outcome.REMOVER_WIN
    lost = transcript.outcome is not own
    return transcript.outcome.value, transcript.model_dump(mode="json", by_alias=True) if lost else None, None


def verify_strategy_random(strategy_id: str, side: Side, config: GameConfig, trials: Optional[int] = None,
                           seed: int = 0, jobs: Optional[int] = None,
                           opponents: Optional[Sequence[str]] = None) -> VerificationReport:
    """
    Play a strategy against seeded random and heuristic opponents.

    Game i uses opponent opponents[i % len(opponents)] and seed `seed + i`, so
    reruns are reproducible for any number of workers.
    """
    trials = trials or settings.TRIALS
    jobs = jobs or settings.JOBS
    opponents = tuple(opponents or default_opponents(side, config))
    config_data = config.model_dump(mode="json")
    work = [(strategy_id, side.value, opponents[i % len(opponents)], config_data, seed + i)
            for i in range(trials)]
    logger.info(f"Random verification of {strategy_id} as {side.value} on {config}: "
                f"{trials} games vs {', '.join(opponents)} with {jobs} job(s)")

    if jobs <= 1:
        results = [_trial(w) for w in work]
    else:
        with multiprocessing.Pool(processes=jobs) as pool:
            results = pool.map(_trial, work, chunksize=max(1, trials // (jobs * 4)))

    counts = {Outcome.PUSHER_WIN.value: 0, Outcome.REMOVER_WIN.value: 0}
    counterexample = None
    failure = None
    for outcome, lost, message in results:
        if message is not None:
            failure = failure or message
            continue
        counts[outcome] += 1
        if lost is not None and counterexample is None:
            counterexample = Transcript.model_validate(lost)

    verdict = counterexample is None and failure is None
    logger.info(f"{strategy_id} on {config}: {'won all' if verdict else 'lost some'} of {trials} games")
    return VerificationReport(
        strategy=strategy_id,
        side=side,
        config=config,
        mode="random",
        verdict=verdict,
        counterexample=counterexample,
        failure=failure,
        games=trials,
        pusher_wins=counts[Outcome.PUSHER_WIN.value],
        remover_wins=counts[Outcome.REMOVER_WIN.value],
    )
