"""
Chip game correspondences with on-line coloring games.

List coloring of K_{N,N}: every vertex is a chip, the chip's position is k
minus the number of colors offered to the vertex so far. A Pusher move is the
Lister's offer, the path Remover clears is the part the Painter colors.

On-line 2-coloring of k-uniform hypergraphs: an edge that can still become
monochromatic in color 1 is a chip on the first path, one that can still
become monochromatic in color 0 is a chip on the second. A chip on vertex
k - i stands for such an edge with i vertices. Clearing the first path means
coloring the revealed vertex 0, clearing the second means coloring it 1.

Both adapters keep the chip board next to the coloring-side state and
recompute one from the other after every round.
"""

import logging
import random
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..core.exceptions import (
    InvalidConfigError,
    MalformedHypergraphError,
    PresentationError,
    ReductionDesyncError,
    RoundLimitExceededError,
    StrategyError,
)
from ..models.schemas import (
    BoardState,
    GameConfig,
    GameVariant,
    Hypergraph,
    ListColoringRound,
    ListColoringTranscript,
    MoveSet,
    OnlineBracket,
    Outcome,
    Pair,
    PathId,
    PresentationStep,
    Transcript,
    VertexRef,
)
from .game_engine import (
    apply_pair,
    initial_pair,
    move_violation,
    play_match,
    removal_from_raw,
    removal_to_raw,
    removal_violation,
    terminal_pair,
)
from .solver import threshold

logger = logging.getLogger(__name__)


def _check_instance(config: GameConfig, k: int, N: int, role: str) -> None:
    if (config.k, config.N) != (k, N):
        raise InvalidConfigError(f"{role} plays ({config.k}, {config.N}), adapter built for ({k}, {N})")
    if config.chip_removal:
        raise InvalidConfigError(f"{role}: the mmb variant has no coloring counterpart")


# List coloring of K_{N,N}

class _ListColoringMirror:
    """Painter/Lister bookkeeping driven by the rounds of a chip game."""

    def __init__(self, k: int, N: int):
        self.k = k
        self.permissible = [[0] * N, [0] * N]
        self.colored = [[False] * N, [False] * N]
        self.rounds: List[ListColoringRound] = []

    def _uncolored_at(self, part: int, position: int) -> List[int]:
        return [v for v, n in enumerate(self.permissible[part])
                if not self.colored[part][v] and self.k - n == position]

    def board(self) -> Pair:
        counts = [[0] * (self.k + 1), [0] * (self.k + 1)]
        for part in (0, 1):
            for v, n in enumerate(self.permissible[part]):
                if not self.colored[part][v]:
                    counts[part][self.k - n] += 1
        return tuple(counts[0]), tuple(counts[1])

    def on_round(self, index: int, before: BoardState, move: MoveSet, removal, after: BoardState) -> None:
        offered: List[VertexRef] = []
        for part in (0, 1):
            for position, n in enumerate(move[part]):
                if not n:
                    continue
                chosen = self._uncolored_at(part, position)[:n]
                if len(chosen) < n:
                    raise ReductionDesyncError(f"round {index}: {n} chips moved from vertex {position} of "
                                               f"path {part + 1}, only {len(chosen)} vertices match")
                offered.extend(VertexRef(part=PathId.from_index(part), index=v) for v in chosen)

        colored_part = removal.path.index
        colored: List[VertexRef] = []
        for ref in offered:
            part = ref.part.index
            self.permissible[part][ref.index] += 1
            if part == colored_part:
                self.colored[part][ref.index] = True
                colored.append(ref)

        if len({ref.part for ref in colored}) > 1:
            raise ReductionDesyncError(f"round {index}: colored set spans both parts")
        self.rounds.append(ListColoringRound(offered=offered, colored=colored))

        if self.board() != after.pair:
            logger.error(f"List coloring mirror out of sync after round {index}")
            raise ReductionDesyncError(f"round {index}: list coloring state gives {self.board()}, "
                                       f"chip game has {after.pair}")

    def out_of_colors(self) -> List[VertexRef]:
        return [VertexRef(part=PathId.from_index(part), index=v)
                for part in (0, 1) for v, n in enumerate(self.permissible[part])
                if not self.colored[part][v] and n >= self.k]


def simulate_list_coloring(pusher, remover, k: int, N: int) -> Tuple[ListColoringTranscript, Transcript]:
    """
    Play a chip game and mirror it as on-line list coloring of K_{N,N} with lists of size k.

    Lister offers the vertices of the moved chips, Painter colors every offered
    vertex of the part whose path Remover cleared.

    Raises:
        InvalidConfigError: For the mmb variant or mismatched instances
        ReductionDesyncError: If the two games disagree after any round
    """
    _check_instance(pusher.config, k, N, pusher.name)
    mirror = _ListColoringMirror(k, N)
    transcript = play_match(pusher, remover, pusher.config, on_round=mirror.on_round)

    stuck = mirror.out_of_colors()
    everything_colored = all(all(part) for part in mirror.colored)
    winner = "Lister" if stuck else "Painter"
    if (transcript.outcome is Outcome.PUSHER_WIN) != bool(stuck) or (not stuck and not everything_colored):
        raise ReductionDesyncError(f"chip game ended {transcript.outcome.value}, list coloring ended "
                                   f"with {len(stuck)} vertices out of colors")
    logger.info(f"List coloring of K_{{{N},{N}}} with {k} colors: {winner} wins "
                f"after {len(mirror.rounds)} rounds")
    return ListColoringTranscript(k=k, N=N, rounds=mirror.rounds, winner=winner,
                                  uncolored_out_of_colors=stuck), transcript


# On-line hypergraph 2-coloring

class Colorer(ABC):
    """Colors each revealed vertex given the edges it joins."""

    name = "colorer"

    @abstractmethod
    def color(self, vertex: int, edges: Sequence[int]) -> int:
        """Return 0 or 1."""


class RandomColorer(Colorer):
    name = "random"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def color(self, vertex: int, edges: Sequence[int]) -> int:
        return self.rng.randint(0, 1)


class ConstantColorer(Colorer):
    name = "constant"

    def __init__(self, value: int = 0):
        self.value = value

    def color(self, vertex: int, edges: Sequence[int]) -> int:
        return self.value


def random_colorer(seed: int = 0) -> RandomColorer:
    return RandomColorer(seed)


class RemoverColorer(Colorer):
    """
    Colorer backed by a Remover strategy on a chip game with one chip pair per edge.

    Vertices in no live edge get color 0 and the chip game sees no round.
    Under a c-restricted Remover a vertex may join at most c live edges per
    color; larger presentations raise PresentationError instead of playing on.
    """

    def __init__(self, remover, k: int, N: int):
        _check_instance(remover.config, k, N, remover.name)
        self.remover = remover
        self.config: GameConfig = remover.config
        self.name = f"{remover.name}-colorer"
        self.k = k
        self.N = N
        self.members: Dict[int, List[int]] = {}
        self.colors: Dict[int, int] = {}
        self.pair: Pair = initial_pair(k, N)
        self.outcome: Optional[Outcome] = None
        self.rounds = 0

    def _counts(self, edge: int) -> Tuple[int, int]:
        colors = [self.colors[v] for v in self.members[edge]]
        return colors.count(0), colors.count(1)

    def _board(self) -> Pair:
        counts = [[0] * (self.k + 1), [0] * (self.k + 1)]
        for edge in self.members:
            zeros, ones = self._counts(edge)
            if not zeros:
                counts[0][self.k - ones] += 1
            if not ones:
                counts[1][self.k - zeros] += 1
        fresh = self.N - len(self.members)
        counts[0][self.k] += fresh
        counts[1][self.k] += fresh
        return tuple(counts[0]), tuple(counts[1])

    def color(self, vertex: int, edges: Sequence[int]) -> int:
        if len(set(edges)) != len(edges):
            raise PresentationError(f"vertex {vertex} lists an edge twice")
        for edge in edges:
            if edge not in self.members:
                if len(self.members) >= self.N:
                    raise PresentationError(f"edge {edge} would be edge {self.N + 1}, the Colorer handles {self.N}")
                self.members[edge] = []
            elif len(self.members[edge]) >= self.k:
                raise PresentationError(f"edge {edge} already has {self.k} vertices")

        advance = [[0] * (self.k + 1), [0] * (self.k + 1)]
        for edge in edges:
            zeros, ones = self._counts(edge)
            if not zeros:
                advance[0][self.k - ones] += 1
            if not ones:
                advance[1][self.k - zeros] += 1
        move = (tuple(advance[0]), tuple(advance[1]))

        cap = self.config.move_cap
        if cap is not None and max(sum(advance[0]), sum(advance[1])) > cap:
            raise PresentationError(f"vertex {vertex} joins more than {cap} live edge(s) of one color")

        finished = self.outcome is not None
        if finished or not (any(advance[0]) or any(advance[1])):
            value = 0
        else:
            violation = move_violation(self.pair, move, cap)
            if violation:
                raise ReductionDesyncError(f"vertex {vertex} maps to an invalid move: {violation}")
            removal = removal_to_raw(self.remover.choose(BoardState.from_pair(self.pair), MoveSet.from_pair(move)))
            violation = removal_violation(self.pair, move, removal, False)
            if violation:
                raise StrategyError(f"invalid removal: {violation}", strategy=self.remover.name)
            value = 0 if removal[0] == 0 else 1
            self.pair = apply_pair(self.pair, move, removal)
            self.outcome = terminal_pair(self.pair)
            self.rounds += 1

        self.colors[vertex] = value
        for edge in edges:
            self.members[edge].append(vertex)
        if not finished and self._board() != self.pair:
            logger.error(f"Colorer chip board out of sync at vertex {vertex}")
            raise ReductionDesyncError(f"vertex {vertex}: edges give {self._board()}, chip game has {self.pair}")
        return value


def colorer_from_remover(remover, k: int, N: int) -> RemoverColorer:
    """Colorer for up to N edges of size k that follows `remover`."""
    return RemoverColorer(remover, k, N)


class Presenter(ABC):
    """Reveals vertices one at a time; `present` returns None when done."""

    @abstractmethod
    def present(self) -> Optional[List[int]]:
        """Edges of the next vertex."""

    @abstractmethod
    def record(self, vertex: int, color: int) -> None:
        """Learn the color of the vertex just presented."""

    @abstractmethod
    def hypergraph(self) -> Hypergraph:
        """Everything presented so far."""


class _PresentationLog:
    def __init__(self, k: int, edge_count: int):
        self.k = k
        self.edges: List[List[int]] = [[] for _ in range(edge_count)]
        self.colors: Dict[int, int] = {}
        self.steps: List[PresentationStep] = []

    def add(self, vertex: int, edges: Sequence[int], color: int) -> None:
        for edge in edges:
            self.edges[edge].append(vertex)
        self.colors[vertex] = color
        self.steps.append(PresentationStep(vertex=vertex, edges=list(edges), color=color))

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(k=self.k, edges=[list(e) for e in self.edges], colors=dict(self.colors),
                          presentation=list(self.steps))


class PusherPresenter(Presenter):
    """
    Presenter backed by a Pusher strategy: 2N edges, edge e < N is the e-th
    chip of the first path, edge N + e the e-th chip of the second.
    """

    def __init__(self, pusher, k: int, N: int):
        _check_instance(pusher.config, k, N, pusher.name)
        self.pusher = pusher
        self.k = k
        self.N = N
        self.pair: Pair = initial_pair(k, N)
        self.position = [k] * (2 * N)
        self.live: Set[int] = set(range(2 * N))
        self.log = _PresentationLog(k, 2 * N)
        self.pending: Optional[Tuple[Pair, List[int]]] = None
        self.outcome: Optional[Outcome] = None

    def _path(self, edge: int) -> int:
        return 0 if edge < self.N else 1

    def present(self) -> Optional[List[int]]:
        if self.outcome is not None:
            return None
        move = self.pusher.next_move(BoardState.from_pair(self.pair))
        violation = move_violation(self.pair, move.pair, self.pusher.config.move_cap)
        if violation:
            raise StrategyError(f"invalid move: {violation}", strategy=self.pusher.name)

        chosen: List[int] = []
        for path in (0, 1):
            for position, n in enumerate(move[path]):
                if n:
                    here = sorted(e for e in self.live if self._path(e) == path and self.position[e] == position)
                    chosen.extend(here[:n])
        self.pending = (move.pair, sorted(chosen))
        return self.pending[1]

    def record(self, vertex: int, color: int) -> None:
        move, chosen = self.pending
        self.pending = None
        cleared = 0 if color == 0 else 1
        self.log.add(vertex, chosen, color)
        for edge in chosen:
            if self._path(edge) == cleared:
                self.live.discard(edge)
            else:
                self.position[edge] -= 1

        removal = (cleared, None)
        self.pair = apply_pair(self.pair, move, removal)
        self.pusher.observe(removal_from_raw(removal))
        self._check_sync(vertex)
        self.outcome = terminal_pair(self.pair)

    def _check_sync(self, vertex: int) -> None:
        counts = [[0] * (self.k + 1), [0] * (self.k + 1)]
        for edge in self.live:
            path = self._path(edge)
            members = self.log.edges[edge]
            target = 1 if path == 0 else 0
            if any(self.log.colors[v] != target for v in members) or self.position[edge] != self.k - len(members):
                raise ReductionDesyncError(f"vertex {vertex}: live edge {edge} is not monochromatic "
                                           f"in color {target} with {self.k - self.position[edge]} vertices")
            counts[path][self.position[edge]] += 1
        if (tuple(counts[0]), tuple(counts[1])) != self.pair:
            logger.error(f"Presenter chip board out of sync at vertex {vertex}")
            raise ReductionDesyncError(f"vertex {vertex}: edges give {counts}, chip game has {self.pair}")

    def hypergraph(self) -> Hypergraph:
        return self.log.hypergraph()


def presenter_from_pusher(pusher, k: int, N: int) -> PusherPresenter:
    """
    Presenter with 2N edges of size k that follows `pusher`.

    A Colorer's answer may clear a path on which the Pusher moved nothing, so
    the strategy must cope with dominated removals.
    """
    return PusherPresenter(pusher, k, N)


class RandomPresenter(Presenter):
    """
    Reveals vertices in up to `max_degree` random unfinished edges until every
    edge is full or one is a monochromatic k-edge.
    """

    def __init__(self, k: int, edge_count: int, seed: int = 0, max_degree: int = 1):
        self.k = k
        self.rng = random.Random(seed)
        self.max_degree = max_degree
        self.log = _PresentationLog(k, edge_count)
        self.pending: List[int] = []

    def present(self) -> Optional[List[int]]:
        if monochromatic_edges(self.log.hypergraph()):
            return None
        open_edges = [e for e, members in enumerate(self.log.edges) if len(members) < self.k]
        if not open_edges:
            return None
        degree = self.rng.randint(1, min(self.max_degree, len(open_edges)))
        self.pending = sorted(self.rng.sample(open_edges, degree))
        return self.pending

    def record(self, vertex: int, color: int) -> None:
        self.log.add(vertex, self.pending, color)

    def hypergraph(self) -> Hypergraph:
        return self.log.hypergraph()


def play_online(presenter: Presenter, colorer: Colorer, vertex_limit: int = 100_000) -> Hypergraph:
    """Run an on-line 2-coloring game to its end."""
    for vertex in range(vertex_limit):
        edges = presenter.present()
        if edges is None:
            break
        color = colorer.color(vertex, edges)
        if color not in (0, 1):
            raise PresentationError(f"{colorer.name} returned color {color}")
        presenter.record(vertex, color)
    else:
        raise RoundLimitExceededError(f"presentation exceeded {vertex_limit} vertices")
    hypergraph = presenter.hypergraph()
    logger.info(f"On-line game vs {colorer.name}: {len(hypergraph.colors)} vertices, "
                f"{len(monochromatic_edges(hypergraph))} monochromatic {hypergraph.k}-edges")
    return hypergraph


def pad_to_uniform(hypergraph: Hypergraph, colorer: Colorer) -> Hypergraph:
    """
    Fill every edge with fewer than k vertices with fresh vertices of degree
    one, colored by `colorer`, so the result is k-uniform.
    """
    padded = _PresentationLog(hypergraph.k, len(hypergraph.edges))
    for step in hypergraph.presentation:
        padded.add(step.vertex, step.edges, step.color)
    vertex = max(hypergraph.colors, default=-1) + 1
    for edge, members in enumerate(hypergraph.edges):
        for _ in range(hypergraph.k - len(members)):
            padded.add(vertex, [edge], colorer.color(vertex, [edge]))
            vertex += 1
    return padded.hypergraph()


def validate_hypergraph(hypergraph: Hypergraph) -> None:
    """
    Raises:
        MalformedHypergraphError: On oversized edges, repeated or uncolored
            vertices, or a presentation log that disagrees with the edges
    """
    memberships: Dict[int, List[int]] = {}
    for index, edge in enumerate(hypergraph.edges):
        if len(edge) > hypergraph.k:
            raise MalformedHypergraphError(f"edge {index} has {len(edge)} vertices, k = {hypergraph.k}")
        if len(set(edge)) != len(edge):
            raise MalformedHypergraphError(f"edge {index} contains a vertex twice")
        for vertex in edge:
            if vertex not in hypergraph.colors:
                raise MalformedHypergraphError(f"vertex {vertex} of edge {index} has no color")
            memberships.setdefault(vertex, []).append(index)

    if hypergraph.presentation:
        seen = set()
        for step in hypergraph.presentation:
            if step.vertex in seen:
                raise MalformedHypergraphError(f"vertex {step.vertex} presented twice")
            seen.add(step.vertex)
            if sorted(step.edges) != sorted(memberships.get(step.vertex, [])):
                raise MalformedHypergraphError(f"vertex {step.vertex} was presented in edges {step.edges}, "
                                               f"edge lists give {memberships.get(step.vertex, [])}")
            if hypergraph.colors.get(step.vertex) != step.color:
                raise MalformedHypergraphError(f"vertex {step.vertex} color differs from its presentation")


def monochromatic_edges(hypergraph: Hypergraph) -> List[int]:
    return [index for index, edge in enumerate(hypergraph.edges)
            if len(edge) == hypergraph.k and len({hypergraph.colors[v] for v in edge}) == 1]


def verify_two_coloring(hypergraph: Hypergraph) -> List[List[int]]:
    """Full edges whose vertices all share one color; empty means the coloring is proper."""
    validate_hypergraph(hypergraph)
    return [list(hypergraph.edges[i]) for i in monochromatic_edges(hypergraph)]


def edge_list_text(hypergraph: Hypergraph) -> str:
    """One edge per line, vertex ids separated by spaces."""
    return "".join(" ".join(str(v) for v in edge) + "\n" for edge in hypergraph.edges)


def m_ol_bracket(k: int, n_max: Optional[int] = None, budget: Optional[int] = None,
                 jobs: Optional[int] = None) -> OnlineBracket:
    """
    Bounds on the least number of edges with which Presenter wins the on-line
    2-coloring game on k-uniform hypergraphs, from the general chip game threshold t:
    Colorer survives fewer than t edges, Presenter wins with 2t.
    """
    result = threshold(k, GameVariant.general(), n_max=n_max, budget=budget, jobs=jobs)
    if result.threshold is not None:
        lo, hi = result.threshold, 2 * result.threshold
    else:
        lo = result.lower
        hi = 2 * result.upper if result.upper is not None else None
    logger.info(f"On-line edge bound for k={k}: [{lo}, {hi}]")
    return OnlineBracket(k=k, lo=lo, hi=hi, threshold=result)


def build_colorer(spec: str, k: int, edge_count: int, solver=None) -> Colorer:
    """
    Colorer for an id: `random[:seed=N]`, `constant[:value=0|1]`, or any
    Remover id, which plays a chip game with one chip pair per edge
    (1-restricted for fib-remover, general otherwise).
    """
    from .strategies.registry import build_remover, parse_strategy_id

    name, options = parse_strategy_id(spec)
    if name == "random" and set(options) <= {"seed"}:
        return random_colorer(options.get("seed", 0))
    if name == "constant" and set(options) <= {"value"}:
        value = options.get("value", 0)
        if value not in (0, 1):
            raise StrategyError(f"constant colorer needs value 0 or 1, got {value}")
        return ConstantColorer(value)
    variant = GameVariant.restricted(1) if name == "fib-remover" else GameVariant.general()
    config = GameConfig.of(k, edge_count, variant)
    return colorer_from_remover(build_remover(spec, config, solver=solver), k, edge_count)
