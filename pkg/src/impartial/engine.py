"""Game-agnostic solving core: outcome search, Grundy values, periodicity.

Every game in this package plugs into the solver through the
:class:`GamePosition` interface.  The solver never looks inside a
position; it only asks for terminality, successors, a canonical cache
key, and (optionally) a split into independent components.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

DEFAULT_NODE_BUDGET = 10**8


class Outcome(enum.Enum):
    """P: the previous player wins; N: the next player wins."""

    P = "P"
    N = "N"


class NodeBudgetExceeded(RuntimeError):
    """Raised when a solve visits more positions than its budget allows."""


class GamePosition:
    """Contract every solvable position implements.

    Successor order must be deterministic per game: best-move selection
    and the documented examples rely on it.  Terminal positions report
    no successors and count as previous-player wins (normal play).
    """

    def is_terminal(self) -> bool:
        raise NotImplementedError

    def successors(self) -> Sequence[tuple[object, "GamePosition"]]:
        """Legal moves as (move descriptor, resulting position) pairs."""
        raise NotImplementedError

    def canonical_key(self) -> bytes:
        """Cache key, equal for positions the game declares equivalent."""
        raise NotImplementedError

    def components(self) -> Optional[Sequence["GamePosition"]]:
        """Split into independent sub-positions, or None if indivisible.

        When a split is returned, the position's Grundy value is the
        XOR of the component values.
        """
        return None


@dataclass
class SolveCache:
    """Write-once memo table keyed by canonical position keys."""

    store: dict = field(default_factory=dict)
    hits: int = 0
    misses: int = 0

    def get(self, key: bytes):
        value = self.store.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key: bytes, value) -> None:
        old = self.store.setdefault(key, value)
        if old != value:
            raise ValueError(f"cache entry for {key!r} rewritten: {old} -> {value}")

    def __len__(self) -> int:
        return len(self.store)

    def __contains__(self, key: bytes) -> bool:
        return key in self.store


def mex(values: Iterable[int]) -> int:
    """Least non-negative integer not in ``values``."""
    present = set(values)
    n = 0
    while n in present:
        n += 1
    return n


def nim_sum(values: Iterable[int]) -> int:
    """XOR fold of Grundy values; empty input gives 0."""
    total = 0
    for v in values:
        total ^= v
    return total


class Solver:
    """Memoized solver bundling a Grundy cache and an outcome cache.

    A solver instance is meant for sequential use; independent solves
    can each run on their own instance.  Both caches are write-once, so
    sharing a solver across many starting positions of the same game is
    safe and is the intended batch pattern.
    """

    def __init__(self, node_budget: int = DEFAULT_NODE_BUDGET):
        self.node_budget = node_budget
        self.grundy_cache = SolveCache()
        self.outcome_cache = SolveCache()
        self._expanded = 0
        self._depth = 0

    def _enter(self) -> None:
        # Budget is per top-level call; nested engine calls share the count.
        if self._depth == 0:
            self._expanded = 0
        self._depth += 1

    def _exit(self) -> None:
        self._depth -= 1

    def _spend(self) -> None:
        self._expanded += 1
        if self._expanded > self.node_budget:
            raise NodeBudgetExceeded(
                f"solve exceeded node budget of {self.node_budget} positions"
            )

    def grundy(self, pos: GamePosition) -> int:
        """Grundy value: 0 for terminals, XOR over components, else mex."""
        self._enter()
        try:
            return self._grundy(pos)
        finally:
            self._exit()

    def _grundy(self, pos: GamePosition) -> int:
        cache = self.grundy_cache
        root_key = pos.canonical_key()
        cached = cache.get(root_key)
        if cached is not None:
            return cached
        # Frames: [position, key, child positions or None, combine-with-xor].
        stack: list[list] = [[pos, root_key, None, False]]
        while stack:
            frame = stack[-1]
            cur, key, children, use_xor = frame
            if key in cache:
                stack.pop()
                continue
            if children is None:
                self._spend()
                if cur.is_terminal():
                    cache.put(key, 0)
                    stack.pop()
                    continue
                comps = cur.components()
                if comps is not None and len(comps) > 1:
                    children = list(comps)
                    frame[3] = True
                else:
                    children = [child for _, child in cur.successors()]
                frame[2] = children
                use_xor = frame[3]
            unsolved = [c for c in children if c.canonical_key() not in cache]
            if unsolved:
                for c in unsolved:
                    stack.append([c, c.canonical_key(), None, False])
                continue
            values = [cache.store[c.canonical_key()] for c in children]
            cache.put(key, nim_sum(values) if use_xor else mex(values))
            stack.pop()
        return cache.store[root_key]

    def outcome(self, pos: GamePosition) -> Outcome:
        """P/N label via win-loss search, short-circuiting on a P reply.

        Positions that split into components are routed through the
        Grundy path (a sum is P exactly when the XOR is zero); plain
        positions never have Grundy values computed for them.
        """
        self._enter()
        try:
            return self._outcome(pos)
        finally:
            self._exit()

    def _outcome(self, pos: GamePosition) -> Outcome:
        cache = self.outcome_cache
        root_key = pos.canonical_key()
        cached = cache.get(root_key)
        if cached is not None:
            return cached
        # Frames: [position, key, successor list or None, next index].
        stack: list[list] = [[pos, root_key, None, 0]]
        while stack:
            frame = stack[-1]
            cur, key, succs, idx = frame
            if key in cache:
                stack.pop()
                continue
            if succs is None:
                self._spend()
                if cur.is_terminal():
                    cache.put(key, Outcome.P)
                    stack.pop()
                    continue
                comps = cur.components()
                if comps is not None and len(comps) > 1:
                    value = nim_sum(self.grundy(c) for c in comps)
                    cache.put(key, Outcome.N if value else Outcome.P)
                    stack.pop()
                    continue
                succs = frame[2] = [child for _, child in cur.successors()]
            verdict = Outcome.P
            while idx < len(succs):
                child = succs[idx]
                child_key = child.canonical_key()
                child_outcome = cache.store.get(child_key)
                if child_outcome is None:
                    frame[3] = idx
                    stack.append([child, child_key, None, 0])
                    break
                idx += 1
                if child_outcome is Outcome.P:
                    verdict = Outcome.N
                    break
            else:
                cache.put(key, verdict)
                stack.pop()
                continue
            if verdict is Outcome.N:
                cache.put(key, verdict)
                stack.pop()
        return cache.store[root_key]

    def best_move(self, pos: GamePosition):
        """Optimal move descriptor for a non-terminal position.

        From an N-position: the first move (successor order) that leaves
        a P-position.  From a P-position: the first move whose successor
        gives the opponent the fewest winning replies.
        """
        if pos.is_terminal():
            raise ValueError("best_move called on a terminal position")
        self._enter()
        try:
            succs = list(pos.successors())
            for move, child in succs:
                if self._outcome(child) is Outcome.P:
                    return move
            best = None
            best_count = None
            for move, child in succs:
                count = sum(
                    1
                    for _, reply in child.successors()
                    if self._outcome(reply) is Outcome.P
                )
                if best_count is None or count < best_count:
                    best, best_count = move, count
            return best
        finally:
            self._exit()

    def play_out(self, pos: GamePosition) -> list:
        """Both sides play best_move until the game ends; returns the moves."""
        moves = []
        while not pos.is_terminal():
            move = self.best_move(pos)
            for m, child in pos.successors():
                if m == move:
                    pos = child
                    break
            else:
                raise AssertionError("best_move returned an unknown move")
            moves.append(move)
        return moves


@dataclass
class PeriodicityReport:
    """Result of eventual-period detection over an integer sequence.

    ``preperiod`` counts leading entries excluded from the repetition;
    both indices are 0-based positions into the sequence as given.
    """

    preperiod: Optional[int]
    period: Optional[int]
    confirmed_through: Optional[int]
    status: str  # "confirmed" | "not_found"

    @property
    def confirmed(self) -> bool:
        return self.status == "confirmed"


def detect_period(
    seq: Sequence[int],
    max_preperiod: Optional[int] = None,
    min_confirm: int = 2,
) -> PeriodicityReport:
    """Find the minimal eventual period supported by the data.

    A period p with preperiod s is confirmed when seq[i] == seq[i+p]
    for every i >= s, s <= max_preperiod, and the tail holds at least
    ``min_confirm`` full repetitions beyond the fundamental segment
    (len(seq) - s >= (min_confirm + 1) * p).  Candidate periods are
    scanned in increasing order, so the report is minimal in period
    first and, for that period, minimal in preperiod.
    """
    n = len(seq)
    if max_preperiod is None:
        max_preperiod = n // 2
    if min_confirm < 1:
        raise ValueError("min_confirm must be at least 1")
    for period in range(1, n // (min_confirm + 1) + 1):
        preperiod = 0
        for i in range(n - period - 1, -1, -1):
            if seq[i] != seq[i + period]:
                preperiod = i + 1
                break
        if preperiod > max_preperiod:
            continue
        if n - preperiod >= (min_confirm + 1) * period:
            return PeriodicityReport(
                preperiod=preperiod,
                period=period,
                confirmed_through=n - 1,
                status="confirmed",
            )
    return PeriodicityReport(
        preperiod=None, period=None, confirmed_through=None, status="not_found"
    )
