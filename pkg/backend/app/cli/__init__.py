"""
Command-line interface.

This package contains the command handlers organized by functionality:
- games: play, replay
- analysis: solve, threshold, bracket, verify
- hypergraphs: emit

Results go to stdout (or --output), diagnostics to stderr. Exit codes:
0 success or positive verdict, 1 negative verdict, 2 usage or input
error, 3 state budget exceeded.
"""

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from ..core.exceptions import BudgetExceededError, ChipGameError
from ..core.logging import logger, set_level
from . import analysis, games, hypergraphs
from .common import EXIT_BUDGET, EXIT_USAGE, fail, instance_parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chipgame",
        description="Chip games on two paths: play, verify strategies, solve, and build hypergraphs",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parent = instance_parser()
    games.register(subparsers, parent)
    analysis.register(subparsers, parent)
    hypergraphs.register(subparsers, parent)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse `argv` and run the command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.log_level:
        set_level(args.log_level)
    logger.debug(f"chipgame {args.command}: {vars(args)}")

    try:
        return args.handler(args)
    except BudgetExceededError as e:
        fail(f"error: {e}")
        if e.frontier:
            fail(f"frontier depth {len(e.frontier)}, deepest board {e.frontier[-1].pair}")
        return EXIT_BUDGET
    except (ChipGameError, ValidationError) as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        fail(f"error: {e}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
