"""
Solver and verification commands: solve, threshold, bracket, verify.
"""

import argparse

from ..core.exceptions import InvalidConfigError
from ..core.logging import logger
from ..models.schemas import GameVariant, Side, ThresholdResult, VariantKind, VerificationReport
from ..services.reductions import m_ol_bracket
from ..services.solver import Solver, threshold
from ..services.strategies import build_pusher, build_remover
from ..services.verification import verify_strategy_exhaustive, verify_strategy_random
from .common import EXIT_NEGATIVE, EXIT_OK, emit, game_config, require, seeded


def _variant(args: argparse.Namespace) -> GameVariant:
    kind = VariantKind(args.variant)
    if kind is VariantKind.RESTRICTED:
        if args.c is None:
            raise InvalidConfigError("the restricted variant needs --c")
        return GameVariant.restricted(args.c)
    return GameVariant(kind=kind)


def _describe_threshold(result: ThresholdResult) -> str:
    if result.threshold is not None:
        return str(result.threshold)
    lo, hi = result.bracket
    return f"[{lo}, {hi if hi is not None else 'inf'}]"


def run_solve(args: argparse.Namespace) -> int:
    config = game_config(args)
    result = Solver(budget=args.budget, allow_dominated=args.allow_dominated).solve(config)
    report = result.report()
    emit(args, report, lambda: f"{config}: {report.outcome.value} ({report.states_explored} states)")
    return EXIT_OK


def run_threshold(args: argparse.Namespace) -> int:
    require(args, "k")
    result = threshold(args.k, _variant(args), n_max=args.n_max, jobs=args.jobs, budget=args.budget)
    emit(args, result, lambda: _describe_threshold(result))
    return EXIT_OK


def run_bracket(args: argparse.Namespace) -> int:
    require(args, "k")
    result = m_ol_bracket(args.k, n_max=args.n_max, budget=args.budget, jobs=args.jobs)
    emit(args, result, lambda: f"[{result.lo}, {result.hi if result.hi is not None else 'inf'}]")
    return EXIT_OK


def _describe_verification(report: VerificationReport) -> str:
    verdict = "always wins" if report.verdict else "LOSES"
    lines = [f"{report.strategy} as {report.side.value} on {report.config}: {verdict}"]
    if report.mode == "random":
        lines.append(f"{report.games} games, Pusher {report.pusher_wins}, Remover {report.remover_wins}")
    else:
        lines.append(f"{report.states_explored} states explored")
    if report.failure:
        lines.append(f"failure: {report.failure}")
    if report.counterexample is not None:
        lines.append(f"counterexample of {report.counterexample.round_count} rounds")
    return "\n".join(lines)


def run_verify(args: argparse.Namespace) -> int:
    config = game_config(args)
    side = Side(args.side)
    if args.trials:
        report = verify_strategy_random(args.strategy, side, config, trials=args.trials, seed=args.seed,
                                        jobs=args.jobs)
    else:
        spec = seeded(args.strategy, args.seed)
        strategy = build_pusher(spec, config) if side is Side.PUSHER else build_remover(spec, config)
        report = verify_strategy_exhaustive(strategy, side, config, budget=args.budget,
                                            allow_dominated=args.allow_dominated)
    logger.info(f"Verification verdict for {args.strategy}: {report.verdict}")
    emit(args, report, lambda: _describe_verification(report))
    return EXIT_OK if report.verdict else EXIT_NEGATIVE


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    solve = subparsers.add_parser("solve", parents=[parent], help="Solve one instance exactly")
    solve.add_argument("--allow-dominated", action="store_true", help="Audit mode without removal pruning")
    solve.set_defaults(handler=run_solve)

    thresh = subparsers.add_parser("threshold", parents=[parent], help="Least N with a Pusher win")
    thresh.add_argument("--n-max", type=int, help="Largest N to try")
    thresh.set_defaults(handler=run_threshold)

    bracket = subparsers.add_parser("bracket", parents=[parent],
                                    help="Bounds on the on-line property-B number of k-uniform hypergraphs")
    bracket.add_argument("--n-max", type=int, help="Largest N for the underlying threshold search")
    bracket.set_defaults(handler=run_bracket)

    verify = subparsers.add_parser("verify", parents=[parent], help="Check that a strategy always wins")
    verify.add_argument("--side", choices=[s.value for s in Side], required=True)
    verify.add_argument("--strategy", required=True, help="Strategy id, e.g. tower or fib-remover")
    verify.add_argument("--trials", type=int, help="Play this many seeded games instead of searching exhaustively")
    verify.add_argument("--allow-dominated", action="store_true",
                        help="Let the adversary Remover clear paths without moved chips")
    verify.set_defaults(handler=run_verify)
