"""
Shared flags and helpers for the command modules.

This module provides:
1. The parent parser holding the instance and output flags
2. GameConfig construction from parsed flags
3. Result output (stdout or --output file, JSON or text)
4. Exit codes
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional

from pydantic import BaseModel, ValidationError

from ..core.config import PathConfig
from ..core.exceptions import InvalidConfigError
from ..core.logging import logger
from ..core.settings import settings
from ..models.schemas import GameConfig, VariantKind
from ..services.storage import dump_json, file_storage

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def instance_parser() -> argparse.ArgumentParser:
    """Flags shared by every command."""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("instance")
    group.add_argument("--k", type=int, help="Path length k")
    group.add_argument("--n", type=int, help="Chips per path N")
    group.add_argument("--c", type=int, help="Per-path move cap for the restricted variant")
    group.add_argument("--variant", choices=[v.value for v in VariantKind], default=VariantKind.GENERAL.value)

    run = parser.add_argument_group("run")
    run.add_argument("--format", choices=["json", "text"], default="json", help="Output format")
    run.add_argument("--output", help="Write the primary result to this file instead of stdout")
    run.add_argument("--budget", type=int, help=f"Memo entry cap (default {settings.BUDGET})")
    run.add_argument("--jobs", type=int, help=f"Worker processes (default {settings.JOBS})")
    run.add_argument("--seed", type=int, default=0, help="Seed for random strategies")
    run.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    return parser


def require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise InvalidConfigError(f"missing required flag(s): {', '.join(missing)}")


def game_config(args: argparse.Namespace) -> GameConfig:
    """
    Raises:
        InvalidConfigError: When flags are missing or do not form a valid instance
    """
    require(args, "k", "n")
    try:
        return GameConfig(k=args.k, N=args.n, variant=VariantKind(args.variant),
                          c=args.c if args.variant == VariantKind.RESTRICTED.value else None)
    except ValidationError as e:
        raise InvalidConfigError(f"invalid instance: {e.errors()[0]['msg']}")


def emit(args: argparse.Namespace, model: BaseModel, text: Optional[Callable[[], str]] = None) -> None:
    """Print a result, or write it to --output."""
    if args.output:
        path = PathConfig().resolve_output(args.output)
        if args.format == "text" and text is not None:
            file_storage.write_text(path, text() + "\n")
        else:
            file_storage.save_model(path, model)
        logger.info(f"Wrote {PathConfig().make_relative_to_root(path)}")
        return
    print(text() if args.format == "text" and text is not None else dump_json(model))


def write_side_file(name: str, text: str) -> Path:
    path = PathConfig().resolve_output(name)
    file_storage.write_text(path, text)
    return path


def fail(message: str) -> None:
    print(message, file=sys.stderr)


def seeded(spec: str, seed: int) -> str:
    """Attach --seed to a bare `random` strategy id."""
    return f"random:seed={seed}" if spec == "random" else spec
