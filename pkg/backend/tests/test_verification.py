"""Tests for exhaustive and randomized strategy verification."""

import logging

import pytest

from app.core.exceptions import BudgetExceededError, StrategyError, StrategyFailure
from app.models.schemas import Outcome, Side
from app.services.game_engine import replay_transcript, terminal
from app.services.strategies import (
    FibonacciRemover,
    GreedyWeightRemover,
    PushAllPusher,
    PusherStrategy,
    TowerPusher,
    doubling_design_size,
    fibonacci_design_size,
    tower_design_size,
)
from app.services.strategies.base import move_from_positions
from app.services.verification import default_opponents, verify_strategy_exhaustive, verify_strategy_random

logger = logging.getLogger(__name__)


def test_push_all_counterexample_is_shortest_and_replays(general_2_1):
    report = verify_strategy_exhaustive(PushAllPusher(general_2_1), Side.PUSHER, general_2_1)
    logger.info(f"Counterexample: {report.counterexample}")
    assert not report.verdict
    assert report.mode == "exhaustive"
    assert report.counterexample.outcome is Outcome.REMOVER_WIN
    assert report.counterexample.round_count == 2
    states = replay_transcript(report.counterexample)
    assert terminal(states[-1]) is Outcome.REMOVER_WIN


def test_push_all_wins_when_solver_says_so(config_of):
    config = config_of(1, 1)
    report = verify_strategy_exhaustive(PushAllPusher(config), Side.PUSHER, config)
    assert report.verdict
    assert report.states_explored >= 1


def test_greedy_remover_loses_to_some_pusher(config_of):
    config = config_of(2, 4)
    report = verify_strategy_exhaustive(GreedyWeightRemover(config), Side.REMOVER, config)
    assert not report.verdict
    assert report.counterexample.outcome is Outcome.PUSHER_WIN
    replay_transcript(report.counterexample)


def test_dominated_removals_only_widen_the_search(config_of):
    config = config_of(2, tower_design_size(2), "restricted", 1)
    strict = verify_strategy_exhaustive(TowerPusher(config), Side.PUSHER, config)
    audit = verify_strategy_exhaustive(TowerPusher(config), Side.PUSHER, config, allow_dominated=True)
    assert strict.verdict
    assert audit.states_explored >= strict.states_explored


class GivingUpPusher(PusherStrategy):
    name = "quitter"

    def next_move(self, state):
        if state[0][self.config.k] < self.config.N:
            raise StrategyFailure("out of ideas", strategy=self.name)
        return move_from_positions(self.config.k, {self.config.k: 1}, {self.config.k: 1})


def test_strategy_failure_is_a_negative_verdict(config_of):
    config = config_of(2, 3, "restricted", 1)
    report = verify_strategy_exhaustive(GivingUpPusher(config), Side.PUSHER, config)
    assert not report.verdict
    assert report.counterexample is None
    assert "[quitter] out of ideas" in report.failure


class OverreachingPusher(PusherStrategy):
    name = "overreach"

    def next_move(self, state):
        return move_from_positions(self.config.k, {1: 2}, {})


def test_illegal_moves_raise(config_of):
    config = config_of(1, 2, "restricted", 1)
    with pytest.raises(StrategyError, match="overreach"):
        verify_strategy_exhaustive(OverreachingPusher(config), Side.PUSHER, config)


def test_budget_is_enforced(config_of):
    config = config_of(3, 6, "restricted", 1)
    with pytest.raises(BudgetExceededError) as excinfo:
        verify_strategy_exhaustive(FibonacciRemover(config), Side.REMOVER, config, budget=10)
    assert excinfo.value.explored == 10
    assert excinfo.value.frontier


def test_default_opponents(config_of):
    assert default_opponents(Side.PUSHER, config_of(2, 4)) == ("random", "greedy")
    assert default_opponents(Side.REMOVER, config_of(2, 4)) == ("random", "push-all")
    assert default_opponents(Side.REMOVER, config_of(2, 4, "restricted", 1)) == ("random",)


def test_random_trials_for_fibonacci_remover(config_of):
    config = config_of(3, fibonacci_design_size(3), "restricted", 1)
    report = verify_strategy_random("fib-remover", Side.REMOVER, config, trials=30, seed=5)
    assert report.verdict
    assert report.mode == "random"
    assert report.games == 30
    assert report.remover_wins == 30


def test_random_trials_for_tower(config_of):
    config = config_of(3, tower_design_size(3), "restricted", 1)
    report = verify_strategy_random("tower", Side.PUSHER, config, trials=20)
    assert report.verdict
    assert report.pusher_wins == 20


def test_random_trials_report_first_loss(general_2_1):
    report = verify_strategy_random("push-all", Side.PUSHER, general_2_1, trials=4, opponents=["greedy"])
    assert not report.verdict
    assert report.remover_wins == 4
    assert report.counterexample.outcome is Outcome.REMOVER_WIN


def test_random_trials_are_reproducible_across_workers(config_of):
    config = config_of(2, 3)
    single = verify_strategy_random("random", Side.PUSHER, config, trials=12, seed=9, jobs=1)
    pooled = verify_strategy_random("random", Side.PUSHER, config, trials=12, seed=9, jobs=2)
    assert (single.pusher_wins, single.remover_wins) == (pooled.pusher_wins, pooled.remover_wins)
    assert single.counterexample == pooled.counterexample


@pytest.mark.slow
@pytest.mark.parametrize("k", [4, 5, 6])
def test_fibonacci_remover_random_sweep(config_of, k):
    config = config_of(k, fibonacci_design_size(k), "restricted", 1)
    report = verify_strategy_random("fib-remover", Side.REMOVER, config, trials=10_000, jobs=4)
    assert report.verdict, report.failure


@pytest.mark.slow
@pytest.mark.parametrize("k", [4, 5, 6])
def test_tower_random_sweep(config_of, k):
    config = config_of(k, tower_design_size(k), "restricted", 1)
    report = verify_strategy_random("tower", Side.PUSHER, config, trials=10_000, jobs=4)
    assert report.verdict, report.failure


@pytest.mark.slow
@pytest.mark.parametrize("k", [3, 4])
def test_doubling_random_sweep(config_of, k):
    config = config_of(k, doubling_design_size(k))
    report = verify_strategy_random("doubling", Side.PUSHER, config, trials=10_000, jobs=4)
    assert report.verdict, report.failure
