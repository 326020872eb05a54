"""
Data models and schemas for the chip game engine.

This module defines:
1. Game Models: variants, configurations, board states, moves and removals
2. Record Models: transcripts, hypergraph presentations, list-coloring logs
3. Strategy Models: bookkeeping snapshots exposed by the proof-backed strategies
4. Report Models: solver, threshold and verification results

All models use Pydantic for:
- Data validation
- Schema generation (the storage layer validates files against these schemas)
- Serialization/deserialization

Each model has strict validation with ConfigDict(extra="forbid") to prevent
unexpected fields from being processed. Game values are frozen, so states and
moves can be shared between strategies, the solver and transcripts.

Hot paths (solver, exhaustive verification) work on plain tuple pairs and only
wrap them with the `from_pair` constructors, which skip validation.
"""

from enum import Enum
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# A per-path pair of count sequences indexed by position 0..k
Pair = Tuple[Tuple[int, ...], Tuple[int, ...]]


class VariantKind(str, Enum):
    """Rule families of the chip game."""
    GENERAL = "general"
    RESTRICTED = "restricted"
    MAKER_BREAKER = "mmb"


class PathId(str, Enum):
    """One of the two directed paths."""
    FIRST = "first"
    SECOND = "second"

    @property
    def index(self) -> int:
        return 0 if self is PathId.FIRST else 1

    @property
    def other(self) -> "PathId":
        return PathId.SECOND if self is PathId.FIRST else PathId.FIRST

    @classmethod
    def from_index(cls, index: int) -> "PathId":
        return cls.FIRST if index == 0 else cls.SECOND


class Side(str, Enum):
    """The two players of the chip game."""
    PUSHER = "pusher"
    REMOVER = "remover"


class Outcome(str, Enum):
    """Winner of a finished game."""
    PUSHER_WIN = "PusherWin"
    REMOVER_WIN = "RemoverWin"


# Game Models
class GameVariant(BaseModel):
    """
    Rule variant with its per-path move cap.

    Attributes:
        kind (VariantKind): general, restricted or mmb
        c (Optional[int]): Per-path cap; absent for general, forced to 1 for mmb
    """
    kind: VariantKind = Field(VariantKind.GENERAL, description="Variant family")
    c: Optional[int] = Field(None, ge=1, description="Chips movable per path and round")
    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="after")
    def _check_cap(self) -> "GameVariant":
        if self.kind is VariantKind.GENERAL and self.c is not None:
            raise ValueError("general variant takes no move cap")
        if self.kind is VariantKind.RESTRICTED and self.c is None:
            raise ValueError("restricted variant requires c >= 1")
        if self.kind is VariantKind.MAKER_BREAKER and self.c not in (None, 1):
            raise ValueError("mmb variant is defined over the 1-restricted move rule")
        if self.kind is VariantKind.MAKER_BREAKER and self.c is None:
            object.__setattr__(self, "c", 1)
        return self

    @classmethod
    def general(cls) -> "GameVariant":
        return cls(kind=VariantKind.GENERAL)

    @classmethod
    def restricted(cls, c: int) -> "GameVariant":
        return cls(kind=VariantKind.RESTRICTED, c=c)

    @classmethod
    def maker_breaker(cls) -> "GameVariant":
        return cls(kind=VariantKind.MAKER_BREAKER, c=1)

    @property
    def move_cap(self) -> Optional[int]:
        return self.c

    @property
    def chip_removal(self) -> bool:
        """True when Remover deletes single chips instead of clearing a path."""
        return self.kind is VariantKind.MAKER_BREAKER

    def __str__(self) -> str:
        if self.kind is VariantKind.RESTRICTED:
            return f"restricted(c={self.c})"
        return self.kind.value


class GameConfig(BaseModel):
    """
    A (k, N) chip game instance.

    Serialized flat as {k, N, variant, c}, which is the transcript format.

    Attributes:
        k (int): Path length, vertices indexed k..0
        N (int): Chips initially on vertex k of each path
        variant (VariantKind): Rule family
        c (Optional[int]): Per-path move cap
    """
    k: int = Field(..., ge=1, description="Path length")
    N: int = Field(..., ge=0, description="Initial chips per path")
    variant: VariantKind = Field(VariantKind.GENERAL, description="Rule family")
    c: Optional[int] = Field(None, ge=1, description="Per-path move cap")
    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="after")
    def _check_variant(self) -> "GameConfig":
        # Reuses the variant rules, including the mmb default of c = 1
        variant = GameVariant(kind=self.variant, c=self.c)
        if variant.c != self.c:
            object.__setattr__(self, "c", variant.c)
        return self

    @classmethod
    def of(cls, k: int, N: int, variant: Optional[GameVariant] = None) -> "GameConfig":
        variant = variant or GameVariant.general()
        return cls(k=k, N=N, variant=variant.kind, c=variant.c)

    @property
    def game_variant(self) -> GameVariant:
        return GameVariant(kind=self.variant, c=self.c)

    @property
    def move_cap(self) -> Optional[int]:
        return self.c

    @property
    def chip_removal(self) -> bool:
        return self.variant is VariantKind.MAKER_BREAKER

    def with_chips(self, N: int) -> "GameConfig":
        return GameConfig(k=self.k, N=N, variant=self.variant, c=self.c)

    def round_limit(self, factor: int = 1) -> int:
        """Upper bound on the length of any legal game (position sum 2*N*k)."""
        return max(1, 2 * self.N * self.k) * factor

    def __str__(self) -> str:
        return f"(k={self.k}, N={self.N}, {self.game_variant})"


class PathCounts(BaseModel):
    """
    Per-path integer sequences indexed by position 0..k.

    Attributes:
        first (Tuple[int, ...]): Values on the first path
        second (Tuple[int, ...]): Values on the second path
    """
    first: Tuple[int, ...] = Field(..., min_length=2, description="First path, positions 0..k")
    second: Tuple[int, ...] = Field(..., min_length=2, description="Second path, positions 0..k")
    model_config = ConfigDict(extra="forbid", frozen=True)

    @field_validator("first", "second")
    @classmethod
    def _non_negative(cls, values: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(v < 0 for v in values):
            raise ValueError("counts must be non-negative")
        return values

    @model_validator(mode="after")
    def _same_length(self) -> "PathCounts":
        if len(self.first) != len(self.second):
            raise ValueError("both paths must have k+1 entries")
        return self

    @classmethod
    def from_pair(cls, pair: Pair) -> "PathCounts":
        return cls.model_construct(first=tuple(pair[0]), second=tuple(pair[1]))

    @property
    def pair(self) -> Pair:
        return (self.first, self.second)

    def __getitem__(self, path: Union[PathId, int]) -> Tuple[int, ...]:
        index = path.index if isinstance(path, PathId) else path
        return self.first if index == 0 else self.second


class BoardState(BaseModel):
    """
    The entire game position: chips per position on both paths.

    Attributes:
        counts (PathCounts): counts[p][i] = chips on vertex i of path p
    """
    counts: PathCounts = Field(..., description="Chip counts per path and position")
    model_config = ConfigDict(extra="forbid", frozen=True)

    @classmethod
    def from_pair(cls, pair: Pair) -> "BoardState":
        return cls.model_construct(counts=PathCounts.from_pair(pair))

    @property
    def pair(self) -> Pair:
        return self.counts.pair

    @property
    def k(self) -> int:
        return len(self.counts.first) - 1

    def __getitem__(self, path: Union[PathId, int]) -> Tuple[int, ...]:
        return self.counts[path]


class MoveSet(BaseModel):
    """
    One Pusher move: chips to advance from each position.

    Attributes:
        advance (PathCounts): advance[p][i] chips go from i to i-1; index 0 is always 0
    """
    advance: PathCounts = Field(..., description="Chips advanced per path and position")
    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="after")
    def _nothing_leaves_zero(self) -> "MoveSet":
        if self.advance.first[0] or self.advance.second[0]:
            raise ValueError("chips on vertex 0 never move")
        return self

    @classmethod
    def from_pair(cls, pair: Pair) -> "MoveSet":
        return cls.model_construct(advance=PathCounts.from_pair(pair))

    @property
    def pair(self) -> Pair:
        return self.advance.pair

    def __getitem__(self, path: Union[PathId, int]) -> Tuple[int, ...]:
        return self.advance[path]

    def moved_on(self, path: Union[PathId, int]) -> int:
        return sum(self.advance[path])


class PathChoice(BaseModel):
    """Remover clears every chip moved this round on one path."""
    kind: Literal["path"] = "path"
    path: PathId
    model_config = ConfigDict(extra="forbid", frozen=True)


class ChipChoice(BaseModel):
    """Remover deletes one chip anywhere on the board (mmb variant)."""
    kind: Literal["chip"] = "chip"
    path: PathId
    position: int = Field(..., ge=0)
    model_config = ConfigDict(extra="forbid", frozen=True)


RemovalAction = Annotated[Union[PathChoice, ChipChoice], Field(discriminator="kind")]


# Record Models
class Round(BaseModel):
    """One recorded round: the move and the Remover's answer."""
    advance: PathCounts
    removal: RemovalAction
    model_config = ConfigDict(extra="forbid", frozen=True)

    @property
    def move(self) -> MoveSet:
        return MoveSet.model_construct(advance=self.advance)


class Transcript(BaseModel):
    """
    Replayable record of a finished game.

    Attributes:
        config (GameConfig): The instance that was played
        rounds (List[Round]): Every move/removal pair in order
        outcome (Outcome): Recorded winner
        round_count (int): Number of rounds, serialized as roundCount
    """
    config: GameConfig
    rounds: List[Round] = Field(default_factory=list)
    outcome: Outcome
    round_count: int = Field(..., ge=0, alias="roundCount")
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    @model_validator(mode="after")
    def _count_matches(self) -> "Transcript":
        if self.round_count != len(self.rounds):
            raise ValueError("roundCount does not match the number of rounds")
        if self.round_count > self.config.round_limit():
            raise ValueError("roundCount exceeds 2*N*k")
        return self


class PresentationStep(BaseModel):
    """One revealed vertex: the edges it joins and the color it received."""
    vertex: int = Field(..., ge=0)
    edges: List[int] = Field(default_factory=list)
    color: Literal[0, 1]
    model_config = ConfigDict(extra="forbid")


class Hypergraph(BaseModel):
    """
    On-line presented hypergraph with its coloring.

    Attributes:
        k (int): Edge size of a full edge
        edges (List[List[int]]): Vertex ids per edge, in presentation order
        colors (Dict[int, int]): Color of every presented vertex
        presentation (List[PresentationStep]): Full step log
    """
    k: int = Field(..., ge=1)
    edges: List[List[int]] = Field(default_factory=list)
    colors: Dict[int, Literal[0, 1]] = Field(default_factory=dict)
    presentation: List[PresentationStep] = Field(default_factory=list)
    model_config = ConfigDict(extra="forbid")


class VertexRef(BaseModel):
    """A vertex of K_{N,N}: its part and index within the part."""
    part: PathId
    index: int = Field(..., ge=0)
    model_config = ConfigDict(extra="forbid", frozen=True)


class ListColoringRound(BaseModel):
    """Lister's offered set V_j and Painter's colored set X_j for one round."""
    offered: List[VertexRef]
    colored: List[VertexRef]
    model_config = ConfigDict(extra="forbid")


class ListColoringTranscript(BaseModel):
    """On-line list coloring game on K_{N,N} with lists of size k."""
    k: int = Field(..., ge=1)
    N: int = Field(..., ge=0)
    rounds: List[ListColoringRound] = Field(default_factory=list)
    winner: Literal["Lister", "Painter"]
    uncolored_out_of_colors: List[VertexRef] = Field(default_factory=list)
    model_config = ConfigDict(extra="forbid")


# Strategy Models
class BrickState(BaseModel):
    """Brick layout: bricks[p][i] = number of bricks on vertex i of path p."""
    bricks: PathCounts
    model_config = ConfigDict(extra="forbid", frozen=True)


class PhaseCase(str, Enum):
    NOT_STARTED = "NotStarted"
    CASE1 = "Case1"
    CASE2 = "Case2"


class DoublingPhaseState(BaseModel):
    """
    Snapshot of the doubling strategy, in roles (first = higher distance).

    Weights and distances are scaled by 2^k.
    """
    h1: int
    h2: int
    W1: int
    W2: int
    D1: int
    D2: int
    omega: int
    total1: int
    total2: int
    phase_case: PhaseCase = PhaseCase.NOT_STARTED
    round_in_phase: int = 0
    running_chips: List[Tuple[PathId, int]] = Field(default_factory=list)
    path_order: Tuple[PathId, PathId] = (PathId.FIRST, PathId.SECOND)
    model_config = ConfigDict(extra="forbid", frozen=True)


class PhaseAudit(BaseModel):
    """Comparison of a phase's distance decreases with the case tables."""
    phase_case: PhaseCase
    m: int
    drawn: int
    expected_first: Optional[int]
    decrease_first: int
    decrease_second: int
    branch: str
    verdict: bool
    problems: List[str] = Field(default_factory=list)
    model_config = ConfigDict(extra="forbid", frozen=True)


class PhaseRecord(BaseModel):
    """Audit trail entry for one completed doubling phase."""
    index: int
    pre: DoublingPhaseState
    post: DoublingPhaseState
    drawn_first: int
    drawn_second: int
    audit: PhaseAudit
    model_config = ConfigDict(extra="forbid", frozen=True)


class TowerState(BaseModel):
    """
    Tower bookkeeping.

    Attributes:
        towers (List[Tuple[int, int]]): (a, b) sides in creation order
        buckets (Tuple[int, int]): Reserve chips parked on vertex k per path
        total_weight (int): Sum of fib(a + b) over towers
        withdrawals (Tuple[int, int]): Chips taken from each bucket so far
    """
    towers: List[Tuple[int, int]]
    buckets: Tuple[int, int]
    total_weight: int
    withdrawals: Tuple[int, int] = (0, 0)
    model_config = ConfigDict(extra="forbid", frozen=True)


# Report Models
class SolveReport(BaseModel):
    """Exported solver result."""
    k: int
    N: int
    variant: VariantKind
    c: Optional[int] = None
    outcome: Outcome
    states_explored: int = Field(..., alias="statesExplored")
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class ThresholdResult(BaseModel):
    """
    Least N with a Pusher win, or a bracket when the search stopped early.

    Attributes:
        threshold (Optional[int]): Exact value when known
        bracket (Optional[Tuple[int, Optional[int]]]): [lo, hi] otherwise; hi None when unbounded
        outcomes (Dict[int, Outcome]): Outcome of every N that was solved
    """
    k: int
    variant: VariantKind
    c: Optional[int] = None
    threshold: Optional[int] = None
    bracket: Optional[Tuple[int, Optional[int]]] = None
    outcomes: Dict[int, Outcome] = Field(default_factory=dict)
    states_explored: int = Field(0, alias="statesExplored")
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    @property
    def lower(self) -> int:
        return self.threshold if self.threshold is not None else self.bracket[0]

    @property
    def upper(self) -> Optional[int]:
        return self.threshold if self.threshold is not None else self.bracket[1]


class OnlineBracket(BaseModel):
    """Bracket [lo, hi] on the on-line property-B number m^OL(k)."""
    k: int
    lo: int
    hi: Optional[int]
    threshold: ThresholdResult
    model_config = ConfigDict(extra="forbid")


class VerificationReport(BaseModel):
    """Verdict of an exhaustive or randomized strategy check."""
    strategy: str
    side: Side
    config: GameConfig
    mode: Literal["exhaustive", "random"]
    verdict: bool
    counterexample: Optional[Transcript] = None
    failure: Optional[str] = Field(None, description="Message of a StrategyFailure or broken invariant")
    states_explored: int = Field(0, alias="statesExplored")
    games: int = 0
    pusher_wins: int = 0
    remover_wins: int = 0
    model_config = ConfigDict(extra="forbid", populate_by_name=True)
