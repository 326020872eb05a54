"""
Doubling-phase Pusher for the general (k, 8 * 2^k) chip game.

Weights are scaled by 2^k: a chip on vertex i weighs 2^(k-i), each path starts
with 8 * 2^k on vertex k. The strategy plays in phases. At every phase boundary
each path has total weight 8 * 2^k, occupies at most the two vertices h and h-1,
and the distances D = 8h * 2^k + W (W = weight on vertex h) differ by at most
8 * 2^k.

In the first round of a phase Pusher draws 8w from the path with the higher
distance and 2w from the other one, w being the weight of a chip on the highest
vertex of the lower-distance path. The Remover's answer selects the case:

  Case 1 (first path cleared): one chip moved on the second path is the running
  chip. Round i draws 4 * 2^(i-1) * w from the first path and moves it with the
  running chip. The phase ends when the running chip is removed.

  Case 2 (second path cleared): chips of total weight 2w on the rearmost vertex
  reached by the first-round chips of the first path are the running chips.
  Round i draws 3 * 2^(i-1) * w from the first path and 2^(i-1) * w from the
  second. The phase ends when the running chips are removed.

Every completed phase is audited against the distance tables of its case and
stored as a PhaseRecord.
"""

import logging
from typing import Dict, List, Optional, Tuple

from ...core.exceptions import PhaseAuditError, StrategyError, StrategyInvariantError
from ...models.schemas import (
    BoardState,
    ChipChoice,
    DoublingPhaseState,
    GameConfig,
    MoveSet,
    PathId,
    PhaseAudit,
    PhaseCase,
    PhaseRecord,
    RemovalAction,
    VariantKind,
)
from .base import PusherStrategy, digest_of

logger = logging.getLogger(__name__)


def doubling_design_size(k: int) -> int:
    return 8 * (1 << k)


def _table_case1(B: int, W1: int) -> List[Tuple[str, bool, int]]:
    return [
        ("B<=W1", B <= W1, B),
        ("B/2<=W1<=B", B <= 2 * W1 and W1 <= B, 2 * B - W1),
        ("W1<=B/2", 2 * W1 <= B, B + W1),
    ]


def _table_case2(A: int, W1: int, w: int) -> List[Tuple[str, bool, int]]:
    return [
        ("A+2w<=W1", A + 2 * w <= W1, A + 2 * w),
        ("A/2+2w<=W1<=A+2w", A + 4 * w <= 2 * W1 and W1 <= A + 2 * w, W1),
        ("W1<=A/2+2w", 2 * W1 <= A + 4 * w, A + 4 * w - W1),
    ]


def doubling_phase_audit(pre: DoublingPhaseState, post: DoublingPhaseState, drawn: int, k: int) -> PhaseAudit:
    """
    Check one phase against the distance tables of its case.

    Args:
        pre: Snapshot at the phase start (roles fixed for the whole phase)
        post: Snapshot at the phase end, same roles, carrying the case and m
        drawn: B = 4 * 2^m * w in Case 1, A = 3 * 2^m * w in Case 2 (scaled)
        k: Path length, for the scale 2^k

    Returns:
        PhaseAudit; at a boundary point both adjacent branches agree, the first one is named
    """
    w = pre.omega
    W1 = pre.W1
    m = post.round_in_phase
    decrease_first = pre.D1 - post.D1
    decrease_second = pre.D2 - post.D2
    problems: List[str] = []

    if post.phase_case is PhaseCase.CASE1:
        table = _table_case1(drawn, W1)
        if drawn != 4 * (1 << m) * w:
            problems.append(f"B = {drawn} is not 4 * 2^{m} * w")
        if not 4 * w <= decrease_first <= 6 * (1 << k):
            problems.append(f"first path decrease {decrease_first} outside [4w, 6]")
        if decrease_second != 2 * w:
            problems.append(f"second path decrease {decrease_second} is not 2w = {2 * w}")
    elif post.phase_case is PhaseCase.CASE2:
        table = _table_case2(drawn, W1, w)
        if drawn != 3 * (1 << m) * w:
            problems.append(f"A = {drawn} is not 3 * 2^{m} * w")
        # The last branch reaches A + 4w - W1, above 2w + A when W1 < 2w
        low = 2 * w + 3 * (1 << (m - 1)) * w
        high = drawn + 4 * w
        if not low <= decrease_first < high:
            problems.append(f"first path decrease {decrease_first} outside [{low}, {high})")
        if decrease_second > 3 * (1 << (m - 1)) * w:
            problems.append(f"second path decrease {decrease_second} above 3 * 2^(m-1) * w")
    else:
        raise StrategyError("cannot audit a phase that never started", strategy="doubling")

    fired = [(name, value) for name, applies, value in table if applies]
    branch, expected = "none", None
    for name, value in fired:
        if value == decrease_first:
            branch, expected = name, value
            break
    if expected is None:
        expected = fired[0][1] if fired else None
        problems.append(f"first path decrease {decrease_first} does not match the table (expected {expected})")
    if len(fired) > 1:
        logger.debug(f"Audit at a boundary point: branches {[n for n, _ in fired]} fire, used {branch}")

    return PhaseAudit(
        phase_case=post.phase_case,
        m=m,
        drawn=drawn,
        expected_first=expected,
        decrease_first=decrease_first,
        decrease_second=decrease_second,
        branch=branch,
        verdict=not problems,
        problems=problems,
    )


class DoublingPusher(PusherStrategy):
    """Phase-based Pusher keeping both paths at total weight 8."""

    name = "doubling"

    def __init__(self, config: GameConfig, audit: bool = True):
        super().__init__(config)
        if config.variant is not VariantKind.GENERAL:
            raise StrategyError("doubling strategy plays the general variant only", strategy=self.name)
        needed = doubling_design_size(config.k)
        if config.N < needed:
            raise StrategyError(f"needs N >= {needed} for k={config.k}, got {config.N}", strategy=self.name)
        self.k = config.k
        self.audit = audit
        self.owned: List[List[int]] = [[0] * (self.k + 1), [0] * (self.k + 1)]
        self.owned[0][self.k] = needed
        self.owned[1][self.k] = needed

        self.phase_case = PhaseCase.NOT_STARTED
        self.round_in_phase = 0
        self.roles: Tuple[int, int] = (0, 1)
        self.omega = 0
        self.running: List[Tuple[int, int]] = []
        self.drawn = [0, 0]
        self.pre: Optional[DoublingPhaseState] = None
        self.pending: Optional[List[Dict[int, int]]] = None
        self.records: List[PhaseRecord] = []
        self.won = False
        self._check_boundary(self._snapshot((0, 1), 0))

    # Weights and snapshots
    def _weight(self, position: int) -> int:
        return 1 << (self.k - position)

    def _height(self, path: int) -> int:
        for position in range(self.k, 0, -1):
            if self.owned[path][position]:
                return position
        raise StrategyInvariantError(f"path {path + 1} has no chips left", strategy=self.name)

    def _total(self, path: int) -> int:
        return sum(n * self._weight(i) for i, n in enumerate(self.owned[path]))

    def _distance(self, path: int) -> Tuple[int, int, int]:
        h = self._height(path)
        W = self.owned[path][h] * self._weight(h)
        return h, W, 8 * h * (1 << self.k) + W

    def _snapshot(self, roles: Tuple[int, int], omega: int) -> DoublingPhaseState:
        first, second = roles
        h1, W1, D1 = self._distance(first)
        h2, W2, D2 = self._distance(second)
        return DoublingPhaseState(
            h1=h1, h2=h2, W1=W1, W2=W2, D1=D1, D2=D2,
            omega=omega,
            total1=self._total(first),
            total2=self._total(second),
            phase_case=self.phase_case,
            round_in_phase=self.round_in_phase,
            running_chips=[(PathId.from_index(p), i) for p, i in self.running],
            path_order=(PathId.from_index(first), PathId.from_index(second)),
        )

    def phase_state(self) -> DoublingPhaseState:
        return self._snapshot(self.roles, self.omega)

    def _check_boundary(self, snap: DoublingPhaseState) -> None:
        target = doubling_design_size(self.k)
        problems = []
        if snap.total1 != target or snap.total2 != target:
            problems.append(f"path weights {snap.total1}, {snap.total2} differ from {target}")
        for p in (0, 1):
            h = self._height(p)
            if any(self.owned[p][i] for i in range(1, h - 1)):
                problems.append(f"path {p + 1} occupies more than vertices {h} and {h - 1}")
        if abs(snap.D1 - snap.D2) > 8 * (1 << self.k):
            problems.append(f"distance difference |{snap.D1} - {snap.D2}| above 8")
        high, low = max(snap.h1, snap.h2), min(snap.h1, snap.h2)
        if high > low + 1:
            problems.append(f"heights {snap.h1}, {snap.h2} more than one apart")
        if problems:
            logger.error(f"Doubling invariants broken at a phase boundary: {problems}")
            raise StrategyInvariantError("; ".join(problems), strategy=self.name)

    def _check_mirror(self, state: BoardState) -> None:
        for p in (0, 1):
            counts = state[p]
            for i in range(self.k):
                if counts[i] != self.owned[p][i]:
                    raise StrategyInvariantError(
                        f"board has {counts[i]} chips on vertex {i} of path {p + 1}, expected {self.owned[p][i]}",
                        strategy=self.name,
                    )
            if counts[self.k] < self.owned[p][self.k]:
                raise StrategyInvariantError(f"chips on vertex {self.k} of path {p + 1} went missing",
                                             strategy=self.name)

    # Drawing
    def _draw(self, path: int, target: int) -> Dict[int, int]:
        """Select chips of total weight `target`, highest vertex first, skipping running chips."""
        reserved = [0] * (self.k + 1)
        for p, i in self.running:
            if p == path:
                reserved[i] += 1
        chosen: Dict[int, int] = {}
        left = target
        for position in range(self.k, 0, -1):
            available = self.owned[path][position] - reserved[position]
            n = min(available, left // self._weight(position))
            if n > 0:
                chosen[position] = n
                left -= n * self._weight(position)
        if left:
            logger.error(f"Cannot draw {target} from path {path + 1}: {self.owned[path]}")
            raise StrategyInvariantError(f"draw of weight {target} from path {path + 1} is infeasible",
                                         strategy=self.name)
        return chosen

    def _start_phase(self) -> None:
        _, _, D0 = self._distance(0)
        _, _, D1 = self._distance(1)
        self.roles = (0, 1) if D0 >= D1 else (1, 0)
        self.omega = self._weight(self._height(self.roles[1]))
        self.phase_case = PhaseCase.NOT_STARTED
        self.round_in_phase = 0
        self.running = []
        self.drawn = [0, 0]
        self.pre = self._snapshot(self.roles, self.omega)

    def next_move(self, state: BoardState) -> MoveSet:
        self._check_mirror(state)
        if self.round_in_phase == 0:
            self._start_phase()
        self.round_in_phase += 1
        i, w = self.round_in_phase, self.omega
        first, second = self.roles

        if i == 1:
            targets = {first: 8 * w, second: 2 * w}
        elif self.phase_case is PhaseCase.CASE1:
            targets = {first: 4 * (1 << (i - 1)) * w, second: 0}
        else:
            targets = {first: 3 * (1 << (i - 1)) * w, second: (1 << (i - 1)) * w}

        pending: List[Dict[int, int]] = [{}, {}]
        for path, target in targets.items():
            if target:
                pending[path] = self._draw(path, target)
                self.drawn[0 if path == first else 1] += target
        running: List[Dict[int, int]] = [{}, {}]
        for path, position in self.running:
            running[path][position] = running[path].get(position, 0) + 1

        advance = []
        for path in (0, 1):
            vector = [0] * (self.k + 1)
            for source in (pending[path], running[path]):
                for position, n in source.items():
                    vector[position] += n
            advance.append(tuple(vector))
        self.pending = pending
        return MoveSet.from_pair((advance[0], advance[1]))

    def observe(self, removal: RemovalAction) -> None:
        if isinstance(removal, ChipChoice):
            raise StrategyError("single-chip removals are not part of the general game", strategy=self.name)
        cleared = removal.path.index
        first, second = self.roles

        moving = [dict(self.pending[0]), dict(self.pending[1])]
        for path, position in self.running:
            moving[path][position] = moving[path].get(position, 0) + 1
        landed: List[Dict[int, int]] = [{}, {}]
        for path in (0, 1):
            for position, n in moving[path].items():
                self.owned[path][position] -= n
                if path != cleared:
                    self.owned[path][position - 1] += n
                    landed[path][position - 1] = landed[path].get(position - 1, 0) + n
                    if position == 1:
                        self.won = True
        self.pending = None
        if self.won:
            return

        if self.round_in_phase == 1:
            if cleared == first:
                self.phase_case = PhaseCase.CASE1
                self.running = [(second, max(landed[second]))]
            else:
                self.phase_case = PhaseCase.CASE2
                self.running = self._pick_running(first, landed[first])
            return

        carrier = second if self.phase_case is PhaseCase.CASE1 else first
        if cleared == carrier:
            self.running = []
            self._end_phase()
        else:
            self.running = [(p, i - 1) for p, i in self.running]

    def _pick_running(self, path: int, landed: Dict[int, int]) -> List[Tuple[int, int]]:
        """
        Running chips of weight 2w taken from the rearmost landed vertex: one chip of
        weight 2w there, or two of weight w.
        """
        w = self.omega
        for position, n in sorted(landed.items(), reverse=True):
            if self._weight(position) == 2 * w and n >= 1:
                return [(path, position)]
            if self._weight(position) == w and n >= 2:
                return [(path, position), (path, position)]
        raise StrategyInvariantError(f"no running chips of weight {2 * w} among {landed}", strategy=self.name)

    def _end_phase(self) -> None:
        post = self._snapshot(self.roles, self.omega)
        m = post.round_in_phase
        drawn_first = self.drawn[0]
        if self.phase_case is PhaseCase.CASE1:
            drawn = drawn_first
        else:
            drawn = drawn_first - 2 * self.omega
        audit = doubling_phase_audit(self.pre, post, drawn, self.k)
        record = PhaseRecord(
            index=len(self.records) + 1,
            pre=self.pre,
            post=post,
            drawn_first=drawn_first,
            drawn_second=self.drawn[1],
            audit=audit,
        )
        self.records.append(record)
        logger.debug(f"Doubling phase {record.index}: {audit.phase_case.value}, m={m}, branch {audit.branch}")
        if self.audit and not audit.verdict:
            logger.error(f"Doubling phase {record.index} failed its audit: {audit.problems}")
            raise PhaseAuditError("; ".join(audit.problems), trace=record.model_dump(mode="json"))

        self._check_boundary(post)
        self.phase_case = PhaseCase.NOT_STARTED
        self.round_in_phase = 0

    def state_digest(self) -> bytes:
        pre = None
        if self.pre is not None and self.round_in_phase:
            pre = (self.pre.D1, self.pre.D2, self.pre.W1)
        return digest_of(
            tuple(self.owned[0]), tuple(self.owned[1]),
            self.phase_case.value, self.round_in_phase, self.roles, self.omega,
            tuple(self.running), tuple(self.drawn), pre,
        )
