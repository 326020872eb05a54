"""Tests for the chip game rules and match execution."""

import logging

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from app.core.exceptions import (
    InvalidConfigError,
    InvalidMoveError,
    InvalidRemovalError,
    RoundLimitExceededError,
    StrategyError,
    TranscriptMismatchError,
)
from app.models.schemas import (
    BoardState,
    ChipChoice,
    GameConfig,
    MoveSet,
    Outcome,
    PathChoice,
    PathId,
    Transcript,
    VariantKind,
)
from app.services.game_engine import (
    apply_round,
    chip_weight,
    enumerate_moves,
    fib,
    initial_state,
    path_weight,
    play_match,
    position_sum,
    replay_transcript,
    swap_paths,
    terminal,
    valid_removals,
)
from app.services.strategies import GreedyWeightRemover, PushAllPusher, PusherStrategy, RandomPusher, RandomRemover

logger = logging.getLogger(__name__)


def board(first, second):
    return BoardState.from_pair((tuple(first), tuple(second)))


def move(first, second):
    return MoveSet.from_pair((tuple(first), tuple(second)))


@pytest.mark.parametrize("n, expected", [(0, 0), (1, 1), (2, 1), (5, 5), (10, 55), (20, 6765)])
def test_fib_values(n, expected):
    assert fib(n) == expected


def test_fib_rejects_negative():
    with pytest.raises(InvalidConfigError):
        fib(-1)


@given(st.integers(min_value=0, max_value=300))
def test_fib_recurrence_and_prefix_sum(n):
    assert fib(n + 2) == fib(n + 1) + fib(n)
    assert sum(fib(i) for i in range(1, n + 1)) == fib(n + 2) - 1


@given(st.integers(min_value=1, max_value=40), st.data())
def test_chip_weight_halves_per_step(k, data):
    position = data.draw(st.integers(min_value=1, max_value=k))
    assert chip_weight(position - 1, k) == 2 * chip_weight(position, k)
    assert chip_weight(k, k) == 1


def test_initial_state_and_terminal(config_of):
    state = initial_state(config_of(3, 4))
    assert state.pair == ((0, 0, 0, 4), (0, 0, 0, 4))
    assert terminal(state) is None
    assert terminal(board([1, 0], [0, 0])) is Outcome.PUSHER_WIN
    assert terminal(board([0, 0, 0], [0, 0, 0])) is Outcome.REMOVER_WIN


def test_weights_and_position_sum():
    state = board([0, 1, 2], [1, 0, 0])
    assert position_sum(state) == 1 + 4
    assert path_weight(state, PathId.FIRST) == 2 + 2 * 1
    assert path_weight(state, 1) == 4
    assert swap_paths(state).pair == ((1, 0, 0), (0, 1, 2))


@pytest.mark.parametrize("k, N, variant, expected", [
    (2, 1, "general", 3),
    (1, 2, "general", 8),
    (1, 2, "restricted", 3),
    (1, 2, "mmb", 3),
])
def test_enumerate_moves_counts(config_of, k, N, variant, expected):
    config = config_of(k, N, variant)
    moves = enumerate_moves(initial_state(config), config)
    assert len(moves) == expected
    assert len({m.pair for m in moves}) == expected


def test_enumerate_moves_empty_on_terminal(config_of):
    assert enumerate_moves(board([1, 0], [0, 1]), config_of(1, 1)) == []


def test_removals_respect_dominance(config_of):
    config = config_of(1, 1)
    state = initial_state(config)
    one_sided = move([0, 1], [0, 0])
    assert valid_removals(state, one_sided, config) == [PathChoice(path=PathId.FIRST)]
    assert len(valid_removals(state, one_sided, config, allow_dominated=True)) == 2


def test_mmb_removals_cover_every_chip(config_of):
    config = config_of(1, 2, "mmb")
    removals = valid_removals(initial_state(config), move([0, 1], [0, 1]), config)
    assert all(isinstance(r, ChipChoice) for r in removals)
    assert {(r.path, r.position) for r in removals} == {
        (PathId.FIRST, 0), (PathId.FIRST, 1), (PathId.SECOND, 0), (PathId.SECOND, 1)
    }


def test_apply_round_path_choice_discards_moved_chips_only(config_of):
    config = config_of(2, 3)
    state = board([0, 1, 2], [0, 0, 3])
    after = apply_round(state, move([0, 1, 1], [0, 0, 2]), PathChoice(path=PathId.FIRST), config)
    assert after.pair == ((0, 0, 1), (0, 2, 1))


def test_apply_round_chip_choice_may_hit_vertex_zero(config_of):
    config = config_of(1, 1, "mmb")
    after = apply_round(initial_state(config), move([0, 1], [0, 1]),
                        ChipChoice(path=PathId.SECOND, position=0), config)
    assert after.pair == ((1, 0), (0, 0))
    assert terminal(after) is Outcome.PUSHER_WIN


@pytest.mark.parametrize("bad_move", [
    ([0, 0], [0, 0]),
    ([0, 2], [0, 0]),
    ([1, 0], [0, 1]),
])
def test_apply_round_rejects_invalid_moves(config_of, bad_move):
    config = config_of(1, 1)
    with pytest.raises(InvalidMoveError):
        apply_round(initial_state(config), move(*bad_move), PathChoice(path=PathId.FIRST), config)


def test_apply_round_rejects_cap_and_dominated_removal(config_of):
    restricted = config_of(1, 2, "restricted", 1)
    with pytest.raises(InvalidMoveError):
        apply_round(initial_state(restricted), move([0, 2], [0, 0]), PathChoice(path=PathId.FIRST), restricted)

    general = config_of(1, 1)
    with pytest.raises(InvalidRemovalError):
        apply_round(initial_state(general), move([0, 1], [0, 0]), PathChoice(path=PathId.SECOND), general)
    with pytest.raises(InvalidRemovalError):
        apply_round(initial_state(general), move([0, 1], [0, 1]),
                    ChipChoice(path=PathId.FIRST, position=0), general)


def test_push_all_wins_k1_n1(config_of):
    config = config_of(1, 1)
    transcript = play_match(PushAllPusher(config), GreedyWeightRemover(config), config)
    logger.info(f"Transcript: {transcript.model_dump(by_alias=True)}")
    assert transcript.outcome is Outcome.PUSHER_WIN
    assert transcript.round_count == 1


def test_round_limit_is_enforced(general_2_1):
    with pytest.raises(RoundLimitExceededError):
        play_match(PushAllPusher(general_2_1), GreedyWeightRemover(general_2_1), general_2_1, round_limit=1)


class EmptyMovePusher(PusherStrategy):
    name = "empty"

    def next_move(self, state):
        return move([0] * len(state[0]), [0] * len(state[1]))


def test_invalid_strategy_move_names_the_strategy(general_2_1):
    with pytest.raises(StrategyError, match=r"\[empty\]"):
        play_match(EmptyMovePusher(general_2_1), GreedyWeightRemover(general_2_1), general_2_1)


def test_on_round_sees_every_round(general_2_1):
    seen = []
    transcript = play_match(PushAllPusher(general_2_1), GreedyWeightRemover(general_2_1), general_2_1,
                            on_round=lambda i, before, m, r, after: seen.append((i, after.pair)))
    assert [i for i, _ in seen] == list(range(1, transcript.round_count + 1))
    assert terminal(BoardState.from_pair(seen[-1][1])) is transcript.outcome


def test_replay_reproduces_states(general_2_1):
    transcript = play_match(PushAllPusher(general_2_1), GreedyWeightRemover(general_2_1), general_2_1)
    states = replay_transcript(transcript)
    assert len(states) == transcript.round_count + 1
    assert terminal(states[-1]) is transcript.outcome


def test_replay_detects_wrong_outcome(general_2_1):
    transcript = play_match(PushAllPusher(general_2_1), GreedyWeightRemover(general_2_1), general_2_1)
    flipped = Outcome.PUSHER_WIN if transcript.outcome is Outcome.REMOVER_WIN else Outcome.REMOVER_WIN
    forged = Transcript(config=transcript.config, rounds=transcript.rounds, outcome=flipped,
                        round_count=transcript.round_count)
    with pytest.raises(TranscriptMismatchError):
        replay_transcript(forged)


def test_replay_detects_truncation(general_2_1):
    transcript = play_match(PushAllPusher(general_2_1), GreedyWeightRemover(general_2_1), general_2_1)
    assert transcript.round_count >= 2
    truncated = Transcript(config=transcript.config, rounds=transcript.rounds[:1], outcome=transcript.outcome,
                           round_count=1)
    with pytest.raises(TranscriptMismatchError):
        replay_transcript(truncated)


@hypothesis_settings(max_examples=40, deadline=None)
@given(
    k=st.integers(min_value=1, max_value=4),
    N=st.integers(min_value=1, max_value=6),
    variant=st.sampled_from(["general", "restricted", "mmb"]),
    seed=st.integers(min_value=0, max_value=10_000),
)
def test_random_games_shrink_position_sum_and_replay(k, N, variant, seed):
    kind = VariantKind(variant)
    config = GameConfig(k=k, N=N, variant=kind, c=1 if kind is VariantKind.RESTRICTED else None)
    sums = []
    transcript = play_match(RandomPusher(config, seed), RandomRemover(config, seed + 1), config,
                            on_round=lambda i, before, m, r, after: sums.append(
                                (position_sum(before), position_sum(after))))
    assert all(after < before for before, after in sums)
    assert transcript.round_count <= config.round_limit()
    assert terminal(replay_transcript(transcript)[-1]) is transcript.outcome
