"""
Match play and transcript/hypergraph replay.
"""

import argparse

from ..core.logging import logger
from ..models.schemas import Hypergraph, Transcript
from ..services.game_engine import play_match, replay_transcript
from ..services.reductions import verify_two_coloring
from ..services.storage import dump_json, file_storage
from ..services.strategies import build_pusher, build_remover
from .common import EXIT_OK, emit, game_config, seeded


def _describe_transcript(transcript: Transcript) -> str:
    lines = [f"{transcript.config}: {transcript.outcome.value} after {transcript.round_count} rounds"]
    for index, record in enumerate(transcript.rounds, start=1):
        removal = record.removal
        target = removal.path.value if removal.kind == "path" else f"{removal.path.value}@{removal.position}"
        lines.append(f"{index:4d}  first {list(record.advance.first)}  second {list(record.advance.second)}"
                     f"  -> {target}")
    return "\n".join(lines)


def run_play(args: argparse.Namespace) -> int:
    config = game_config(args)
    remover_id = "human" if args.human == "remover" else args.remover
    pusher = build_pusher(seeded(args.pusher, args.seed), config)
    remover = build_remover(seeded(remover_id, args.seed), config)
    logger.info(f"Playing {pusher.name} vs {remover.name} on {config}")
    transcript = play_match(pusher, remover, config)
    emit(args, transcript, lambda: _describe_transcript(transcript))
    return EXIT_OK


def run_replay(args: argparse.Namespace) -> int:
    if args.hypergraph:
        hypergraph = file_storage.load_model(args.hypergraph, Hypergraph)
        monochromatic = verify_two_coloring(hypergraph)
        result = {"k": hypergraph.k, "edges": len(hypergraph.edges), "monochromatic": monochromatic}
        if args.format == "text":
            print(f"{len(monochromatic)} monochromatic {hypergraph.k}-edge(s) among {len(hypergraph.edges)}")
        else:
            print(dump_json(data=result))
        return EXIT_OK

    transcript = file_storage.load_model(args.transcript, Transcript)
    states = replay_transcript(transcript, allow_dominated=args.allow_dominated)
    final = states[-1]
    result = {
        "outcome": transcript.outcome.value,
        "roundCount": transcript.round_count,
        "final": {"first": list(final[0]), "second": list(final[1])},
    }
    if args.format == "text":
        print(f"valid transcript: {transcript.outcome.value} after {transcript.round_count} rounds")
    else:
        print(dump_json(data=result))
    return EXIT_OK


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    play = subparsers.add_parser("play", parents=[parent], help="Play one match and print its transcript")
    play.add_argument("--pusher", default="random", help="Pusher strategy id")
    play.add_argument("--remover", default="random", help="Remover strategy id")
    play.add_argument("--human", choices=["remover"], help="Prompt for the Remover's choices")
    play.set_defaults(handler=run_play)

    replay = subparsers.add_parser("replay", parents=[parent], help="Validate a transcript or hypergraph file")
    source = replay.add_mutually_exclusive_group(required=True)
    source.add_argument("--transcript", help="Transcript JSON file")
    source.add_argument("--hypergraph", help="Hypergraph JSON file")
    replay.add_argument("--allow-dominated", action="store_true",
                        help="Accept PathChoice removals of paths without moved chips")
    replay.set_defaults(handler=run_replay)
