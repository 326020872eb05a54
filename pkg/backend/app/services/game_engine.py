"""
Chip game rules, round sequencing and match execution.

The (k, N) chip game is played on two directed paths with vertices k..0.
Pusher advances a nonempty set of chips by one vertex; Remover then clears
the chips moved on one path (or, in the mmb variant, deletes any single chip).
The terminal check happens only after the removal step: Pusher wins when a
chip survives on vertex 0, Remover wins when the board is empty.

Public operations take and return the pydantic models from app.models.schemas.
The `*_pair` helpers implement the same rules on plain tuple pairs; the solver
and the exhaustive verifier use them directly.
"""

import itertools
import logging
from functools import lru_cache
from typing import Callable, List, Optional, Tuple, Union

from ..core.exceptions import (
    InvalidConfigError,
    InvalidMoveError,
    InvalidRemovalError,
    RoundLimitExceededError,
    StrategyError,
    TranscriptMismatchError,
)
from ..core.settings import settings
from ..models.schemas import (
    BoardState,
    ChipChoice,
    GameConfig,
    MoveSet,
    Outcome,
    Pair,
    PathChoice,
    PathId,
    RemovalAction,
    Round,
    Transcript,
)

logger = logging.getLogger(__name__)

# (path index, position or None for a PathChoice)
RawRemoval = Tuple[int, Optional[int]]

RoundObserver = Callable[[int, BoardState, MoveSet, RemovalAction, BoardState], None]


def fib(n: int) -> int:
    """Fibonacci number with F_0 = 0, F_1 = 1."""
    if n < 0:
        raise InvalidConfigError(f"fib is defined for n >= 0, got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def chip_weight(position: int, k: int) -> int:
    """Weight 2^-position of a chip, scaled by 2^k."""
    if not 0 <= position <= k:
        raise InvalidConfigError(f"position {position} outside 0..{k}")
    return 1 << (k - position)


def _pair_of(state: Union[BoardState, Pair]) -> Pair:
    return state.pair if isinstance(state, BoardState) else state


def initial_pair(k: int, N: int) -> Pair:
    path = (0,) * k + (N,)
    return (path, path)


def initial_state(config: GameConfig) -> BoardState:
    """Both paths start with N chips on vertex k."""
    return BoardState.from_pair(initial_pair(config.k, config.N))


def terminal_pair(pair: Pair) -> Optional[Outcome]:
    first, second = pair
    if first[0] or second[0]:
        return Outcome.PUSHER_WIN
    if not any(first) and not any(second):
        return Outcome.REMOVER_WIN
    return None


def terminal(state: Union[BoardState, Pair]) -> Optional[Outcome]:
    """PusherWin if a chip sits on vertex 0, RemoverWin on an empty board, else None."""
    return terminal_pair(_pair_of(state))


def position_sum(state: Union[BoardState, Pair]) -> int:
    return sum(i * c for path in _pair_of(state) for i, c in enumerate(path))


def path_weight(state: Union[BoardState, Pair], path: Union[PathId, int]) -> int:
    """Scaled total weight of one path."""
    pair = _pair_of(state)
    index = path.index if isinstance(path, PathId) else path
    counts = pair[index]
    k = len(counts) - 1
    return sum(c << (k - i) for i, c in enumerate(counts))


def swap_paths(state: BoardState) -> BoardState:
    first, second = state.pair
    return BoardState.from_pair((second, first))


@lru_cache(maxsize=200_000)
def path_options(counts: Tuple[int, ...], cap: Optional[int]) -> Tuple[Tuple[int, ...], ...]:
    """
    Every per-path advance vector for one path, the empty one first.

    Args:
        counts: Chips per position 0..k on the path
        cap: Maximum chips moved on this path, None for unlimited

    Returns:
        Tuple of advance vectors indexed 0..k (index 0 always 0)
    """
    if cap is None:
        ranges = [range(c + 1) for c in counts[1:]]
        return tuple((0,) + combo for combo in itertools.product(*ranges))

    options: List[Tuple[int, ...]] = []

    def extend(prefix: Tuple[int, ...], position: int, left: int) -> None:
        if position == len(counts):
            options.append(prefix)
            return
        for take in range(min(counts[position], left) + 1):
            extend(prefix + (take,), position + 1, left - take)

    extend((0,), 1, cap)
    return tuple(options)


def moves_pair(pair: Pair, cap: Optional[int]) -> List[Pair]:
    """All valid moves on a non-terminal board as tuple pairs."""
    if terminal_pair(pair) is not None:
        return []
    first = path_options(pair[0], cap)
    second = path_options(pair[1], cap)
    moves = [(a, b) for a in first for b in second]
    # The empty move is the product of the two empty options
    return moves[1:]


def enumerate_moves(state: BoardState, config: GameConfig) -> List[MoveSet]:
    """Every valid Pusher move, each once; empty on terminal states."""
    return [MoveSet.from_pair(m) for m in moves_pair(state.pair, config.move_cap)]


def move_violation(pair: Pair, move: Pair, cap: Optional[int]) -> Optional[str]:
    """Name the MoveSet invariant a move breaks, or None when it is valid."""
    if terminal_pair(pair) is not None:
        return "the state is terminal"
    total = 0
    for p in (0, 1):
        counts, advance = pair[p], move[p]
        if len(advance) != len(counts):
            return f"path {p + 1} move has {len(advance)} entries, expected {len(counts)}"
        if advance[0]:
            return "chips on vertex 0 never move"
        for i, (n, c) in enumerate(zip(advance, counts)):
            if n < 0:
                return f"negative advance on path {p + 1} at position {i}"
            if n > c:
                return f"advance[{p + 1}][{i}] = {n} exceeds the {c} chips there"
        moved = sum(advance)
        if cap is not None and moved > cap:
            return f"{moved} chips moved on path {p + 1}, cap is {cap}"
        total += moved
    if total < 1:
        return "the move is empty"
    return None


def validate_move(state: BoardState, move: MoveSet, config: GameConfig) -> bool:
    return move_violation(state.pair, move.pair, config.move_cap) is None


def advance_pair(pair: Pair, move: Pair) -> Pair:
    """Board after the chips in `move` stepped one vertex forward."""
    result = []
    for counts, advance in zip(pair, move):
        path = list(counts)
        for i in range(1, len(path)):
            n = advance[i]
            if n:
                path[i] -= n
                path[i - 1] += n
        result.append(tuple(path))
    return (result[0], result[1])


def removals_pair(pair: Pair, move: Pair, chip_removal: bool,
                  allow_dominated: bool = False) -> List[RawRemoval]:
    """Legal Remover answers to a move, as (path, position-or-None)."""
    if chip_removal:
        moved = advance_pair(pair, move)
        return [(p, i) for p in (0, 1) for i, c in enumerate(moved[p]) if c]
    return [(p, None) for p in (0, 1) if allow_dominated or any(move[p])]


def removal_violation(pair: Pair, move: Pair, removal: RawRemoval, chip_removal: bool,
                      allow_dominated: bool = False) -> Optional[str]:
    path, position = removal
    if chip_removal:
        if position is None:
            return "the mmb variant removes single chips (ChipChoice)"
        moved = advance_pair(pair, move)
        if not 0 <= position < len(moved[path]):
            return f"position {position} is off the board"
        if not moved[path][position]:
            return f"vertex {position} of path {path + 1} holds no chip"
        return None
    if position is not None:
        return "only the mmb variant removes single chips"
    if not allow_dominated and not any(move[path]):
        return f"path {path + 1} has no chip moved this round"
    return None


def apply_pair(pair: Pair, move: Pair, removal: RawRemoval) -> Pair:
    """Apply a validated move and removal."""
    path, position = removal
    if position is None:
        # Cleared path returns to its pre-move counts minus the moved chips
        kept = advance_pair(pair, move)
        cleared = tuple(c - n for c, n in zip(pair[path], move[path]))
        return (cleared, kept[1]) if path == 0 else (kept[0], cleared)
    moved = advance_pair(pair, move)
    hit = list(moved[path])
    hit[position] -= 1
    return (tuple(hit), moved[1]) if path == 0 else (moved[0], tuple(hit))


def removal_to_raw(removal: RemovalAction) -> RawRemoval:
    if isinstance(removal, ChipChoice):
        return (removal.path.index, removal.position)
    return (removal.path.index, None)


def removal_from_raw(raw: RawRemoval) -> RemovalAction:
    path, position = raw
    if position is None:
        return PathChoice(path=PathId.from_index(path))
    return ChipChoice(path=PathId.from_index(path), position=position)


def valid_removals(state: BoardState, move: MoveSet, config: GameConfig,
                   allow_dominated: bool = False) -> List[RemovalAction]:
    """Every legal Remover response for this state and move."""
    raws = removals_pair(state.pair, move.pair, config.chip_removal, allow_dominated)
    return [removal_from_raw(r) for r in raws]


def apply_round(state: BoardState, move: MoveSet, removal: RemovalAction, config: GameConfig,
                allow_dominated: bool = False) -> BoardState:
    """
    Advance the moved chips, then apply the removal.

    Raises:
        InvalidMoveError: If the move breaks a MoveSet invariant
        InvalidRemovalError: If the removal is not legal for this round
    """
    pair = state.pair
    violation = move_violation(pair, move.pair, config.move_cap)
    if violation:
        raise InvalidMoveError(violation)
    raw = removal_to_raw(removal)
    violation = removal_violation(pair, move.pair, raw, config.chip_removal, allow_dominated)
    if violation:
        raise InvalidRemovalError(violation)
    return BoardState.from_pair(apply_pair(pair, move.pair, raw))


def play_match(pusher, remover, config: GameConfig, round_limit: Optional[int] = None,
               allow_dominated: bool = False, on_round: Optional[RoundObserver] = None) -> Transcript:
    """
    Play one game to the end and record it.

    Args:
        pusher: PusherStrategy
        remover: RemoverStrategy
        config: Instance to play
        round_limit: Defaults to 2*N*k times DEFAULT_ROUND_LIMIT_FACTOR
        allow_dominated: Let Remover clear a path without moved chips
        on_round: Called as on_round(index, before, move, removal, after)

    Raises:
        StrategyError: If a strategy returns an invalid move or removal
        RoundLimitExceededError: If the game outlives every legal game
    """
    limit = round_limit or config.round_limit(settings.DEFAULT_ROUND_LIMIT_FACTOR)
    state = initial_state(config)
    rounds: List[Round] = []
    logger.debug(f"Match {pusher.name} vs {remover.name} on {config}")

    while (outcome := terminal(state)) is None:
        if len(rounds) >= limit:
            logger.error(f"Round limit {limit} exceeded on {config}")
            raise RoundLimitExceededError(f"game on {config} exceeded {limit} rounds")

        move = pusher.next_move(state)
        violation = move_violation(state.pair, move.pair, config.move_cap)
        if violation:
            raise StrategyError(f"invalid move: {violation}", strategy=pusher.name)

        removal = remover.choose(state, move)
        raw = removal_to_raw(removal)
        violation = removal_violation(state.pair, move.pair, raw, config.chip_removal, allow_dominated)
        if violation:
            raise StrategyError(f"invalid removal: {violation}", strategy=remover.name)

        after = BoardState.from_pair(apply_pair(state.pair, move.pair, raw))
        pusher.observe(removal)
        rounds.append(Round.model_construct(advance=move.advance, removal=removal))
        if on_round is not None:
            on_round(len(rounds), state, move, removal, after)
        state = after

    logger.debug(f"Match on {config} ended: {outcome.value} after {len(rounds)} rounds")
    return Transcript(config=config, rounds=rounds, outcome=outcome, round_count=len(rounds))


def replay_transcript(transcript: Transcript, allow_dominated: bool = False) -> List[BoardState]:
    """
    Re-apply every recorded round from the initial state.

    Returns:
        All states, initial one first

    Raises:
        InvalidMoveError / InvalidRemovalError: If a recorded round is illegal
        TranscriptMismatchError: If the game ends early, late, or with another winner
    """
    config = transcript.config
    states = [initial_state(config)]
    for index, record in enumerate(transcript.rounds, start=1):
        if terminal(states[-1]) is not None:
            raise TranscriptMismatchError(f"game was already over before round {index}")
        try:
            states.append(apply_round(states[-1], record.move, record.removal, config, allow_dominated))
        except (InvalidMoveError, InvalidRemovalError) as e:
            raise type(e)(f"round {index}: {e}") from e

    outcome = terminal(states[-1])
    if outcome is None:
        raise TranscriptMismatchError("transcript ends before the game is over")
    if outcome is not transcript.outcome:
        raise TranscriptMismatchError(
            f"recorded outcome {transcript.outcome.value}, replay gives {outcome.value}"
        )
    return states
