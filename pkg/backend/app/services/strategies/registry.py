"""
Build strategies from command-line ids such as `tower:towers=5` or `random:seed=7`.
"""

import logging
from typing import Callable, Dict, Optional, Tuple

from ...core.exceptions import StrategyError
from ...models.schemas import GameConfig
from .base import PusherStrategy, RemoverStrategy
from .baseline import (
    GreedyWeightRemover,
    HumanRemover,
    PushAllPusher,
    RandomPusher,
    RandomRemover,
    SolverPusher,
    SolverRemover,
)
from .brick import BrickPusher
from .doubling import DoublingPusher
from .fibonacci import FibonacciRemover
from .tower import TowerPusher

logger = logging.getLogger(__name__)

PUSHER_IDS = ("brick", "doubling", "tower", "random", "push-all", "solver")
REMOVER_IDS = ("fib-remover", "greedy", "random", "solver", "human")


def parse_strategy_id(spec: str) -> Tuple[str, Dict[str, int]]:
    """Split `name:key=value,key=value` into the name and integer options."""
    name, _, rest = spec.strip().partition(":")
    options: Dict[str, int] = {}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise StrategyError(f"option '{item}' of '{spec}' is not key=value")
        try:
            options[key.strip()] = int(value)
        except ValueError:
            raise StrategyError(f"option '{key}' of '{spec}' needs an integer, got '{value}'")
    return name, options


def _solved(config: GameConfig, solver):
    from ..solver import Solver

    solver = solver or Solver()
    if not solver.is_solved(config):
        solver.solve(config)
    return solver


def _check_options(name: str, options: Dict[str, int], allowed: Tuple[str, ...]) -> None:
    unknown = sorted(set(options) - set(allowed))
    if unknown:
        raise StrategyError(f"'{name}' does not take option(s) {', '.join(unknown)}")


def build_pusher(spec: str, config: GameConfig, solver=None) -> PusherStrategy:
    """
    Pusher strategy for an id.

    Raises:
        StrategyError: On unknown ids or options, or an instance the strategy does not support
    """
    name, options = parse_strategy_id(spec)
    if name == "brick":
        _check_options(name, options, ())
        return BrickPusher(config)
    if name == "doubling":
        _check_options(name, options, ())
        return DoublingPusher(config)
    if name == "tower":
        _check_options(name, options, ("towers",))
        return TowerPusher(config, towers=options.get("towers"))
    if name == "random":
        _check_options(name, options, ("seed",))
        return RandomPusher(config, seed=options.get("seed", 0))
    if name == "push-all":
        _check_options(name, options, ())
        return PushAllPusher(config)
    if name == "solver":
        _check_options(name, options, ())
        return SolverPusher(config, _solved(config, solver))
    raise StrategyError(f"unknown Pusher strategy '{name}', expected one of {', '.join(PUSHER_IDS)}")


def build_remover(spec: str, config: GameConfig, solver=None,
                  prompt: Optional[Callable[[str], str]] = None,
                  out: Optional[Callable[[str], None]] = None) -> RemoverStrategy:
    """
    Remover strategy for an id.

    Raises:
        StrategyError: On unknown ids or options
    """
    name, options = parse_strategy_id(spec)
    if name == "fib-remover":
        _check_options(name, options, ())
        return FibonacciRemover(config)
    if name == "greedy":
        _check_options(name, options, ())
        return GreedyWeightRemover(config)
    if name == "random":
        _check_options(name, options, ("seed",))
        return RandomRemover(config, seed=options.get("seed", 0))
    if name == "solver":
        _check_options(name, options, ())
        return SolverRemover(config, _solved(config, solver))
    if name == "human":
        _check_options(name, options, ())
        return HumanRemover(config, prompt=prompt or input, out=out)
    raise StrategyError(f"unknown Remover strategy '{name}', expected one of {', '.join(REMOVER_IDS)}")
