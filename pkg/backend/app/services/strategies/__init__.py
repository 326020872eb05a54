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
from .brick import BrickPusher, brick_design_size
from .doubling import DoublingPusher, doubling_design_size, doubling_phase_audit
from .fibonacci import FibonacciRemover, fibonacci_design_size, fibonacci_potential
from .registry import PUSHER_IDS, REMOVER_IDS, build_pusher, build_remover, parse_strategy_id
from .tower import TowerPusher, tower_bound, tower_design_size, tower_withdrawal_bound

__all__ = [
    "PusherStrategy",
    "RemoverStrategy",
    "BrickPusher",
    "DoublingPusher",
    "TowerPusher",
    "FibonacciRemover",
    "RandomPusher",
    "RandomRemover",
    "GreedyWeightRemover",
    "PushAllPusher",
    "SolverPusher",
    "SolverRemover",
    "HumanRemover",
    "brick_design_size",
    "doubling_design_size",
    "doubling_phase_audit",
    "fibonacci_design_size",
    "fibonacci_potential",
    "tower_bound",
    "tower_design_size",
    "tower_withdrawal_bound",
    "PUSHER_IDS",
    "REMOVER_IDS",
    "build_pusher",
    "build_remover",
    "parse_strategy_id",
]
