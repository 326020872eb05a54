"""
Hypergraph emission from a Pusher strategy.
"""

import argparse

from ..core.logging import logger
from ..models.schemas import Hypergraph
from ..services.reductions import (
    build_colorer,
    edge_list_text,
    pad_to_uniform,
    play_online,
    presenter_from_pusher,
    verify_two_coloring,
)
from ..services.strategies import build_pusher
from .common import EXIT_NEGATIVE, EXIT_OK, emit, game_config, seeded, write_side_file


def _describe(hypergraph: Hypergraph, monochromatic) -> str:
    lines = [f"{len(hypergraph.edges)} edges, {len(hypergraph.colors)} vertices, "
             f"{len(monochromatic)} monochromatic {hypergraph.k}-edge(s)"]
    lines.extend(" ".join(str(v) for v in edge) for edge in monochromatic)
    return "\n".join(lines)


def run_emit(args: argparse.Namespace) -> int:
    config = game_config(args)
    pusher = build_pusher(seeded(args.pusher, args.seed), config)
    colorer = build_colorer(seeded(args.colorer, args.seed), config.k, 2 * config.N)
    hypergraph = play_online(presenter_from_pusher(pusher, config.k, config.N), colorer)
    if args.pad:
        hypergraph = pad_to_uniform(hypergraph, colorer)

    monochromatic = verify_two_coloring(hypergraph)
    if args.edge_list:
        path = write_side_file(args.edge_list, edge_list_text(hypergraph))
        logger.info(f"Edge list written to {path}")
    emit(args, hypergraph, lambda: _describe(hypergraph, monochromatic))
    return EXIT_OK if monochromatic else EXIT_NEGATIVE


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    emit_parser = subparsers.add_parser("emit", parents=[parent],
                                        help="Present a hypergraph driven by a Pusher strategy")
    emit_parser.add_argument("--pusher", default="brick", help="Pusher strategy id")
    emit_parser.add_argument("--colorer", default="random",
                             help="random[:seed=N], constant[:value=0|1] or a Remover id")
    emit_parser.add_argument("--pad", action="store_true", help="Fill unfinished edges up to k vertices")
    emit_parser.add_argument("--edge-list", help="Also write a plain-text edge list to this file")
    emit_parser.set_defaults(handler=run_emit)
