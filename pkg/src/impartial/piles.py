"""The four single-pile / number-set games.

Chocolate Stones: from a pile of n with modulus m, take between
(n mod m, or m when that is 0) and m stones.  Demon Money: from a pile
of n coins take the integer square root rounded either way.
Sum-from-Product: replace n by n - a - b for any factorization
a * b = n with a positive result.  No-Factor: from the written-out
numbers 1..n remove any nonempty set of numbers none of which has a
proper factor still on the board.

All rule arithmetic is exact integer arithmetic; no floats anywhere.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import accumulate
from typing import Optional

from .engine import GamePosition, Outcome, Solver


# ---------------------------------------------------------------------------
# Chocolate Stones


class ChocolatePosition(GamePosition):
    """Pile of n stones with fixed modulus m; successor takes ascending."""

    __slots__ = ("m", "n", "_key")

    def __init__(self, m: int, n: int):
        if m < 1:
            raise ValueError("modulus m must be >= 1")
        if n < 0:
            raise ValueError("pile size must be >= 0")
        self.m = m
        self.n = n
        self._key = b"choc:%d:%d" % (m, n)

    def is_terminal(self) -> bool:
        return self.n == 0

    def successors(self):
        return [(t, ChocolatePosition(self.m, self.n - t)) for t in chocolate_moves(self)]

    def canonical_key(self) -> bytes:
        return self._key

    def __repr__(self):
        return f"ChocolatePosition(m={self.m}, n={self.n})"


def chocolate_moves(pos: ChocolatePosition) -> list[int]:
    """Legal take amounts, ascending.

    The minimum take is n mod m (or m when n divides evenly); the
    maximum is m, capped at n so the function stays total even for
    positions unreachable from legal play.
    """
    m, n = pos.m, pos.n
    if n <= 0:
        raise ValueError("no moves from an empty pile")
    a = n % m or m
    return list(range(a, min(m, n) + 1))


def chocolate_value(n: int, m: int) -> int:
    """Ceiling of n / m; decreases by exactly 1 on every legal move."""
    if m < 1:
        raise ValueError("modulus m must be >= 1")
    return -(-n // m)


def chocolate_outcome_closed(n: int, m: int) -> Outcome:
    """P exactly when the chocolate value is even."""
    return Outcome.P if chocolate_value(n, m) % 2 == 0 else Outcome.N


# ---------------------------------------------------------------------------
# Demon Money


class DemonPosition(GamePosition):
    """Pile of n coins; take isqrt(n) rounded down or up."""

    __slots__ = ("n", "_key")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("pile size must be >= 0")
        self.n = n
        self._key = b"demon:%d" % n

    def is_terminal(self) -> bool:
        return self.n == 0

    def successors(self):
        return [(t, DemonPosition(self.n - t)) for t in demon_moves(self)]

    def canonical_key(self) -> bytes:
        return self._key

    def __repr__(self):
        return f"DemonPosition(n={self.n})"


def demon_moves(pos: DemonPosition) -> list[int]:
    """The one or two legal take amounts, ascending."""
    n = pos.n
    if n <= 0:
        raise ValueError("no moves from an empty pile")
    root = math.isqrt(n)
    if root * root == n:
        return [root]
    return [root, root + 1]


def demon_interval(n: int) -> tuple[int, str]:
    """Locate n in the interval partition: (k, "P") or (k, "N").

    For k >= 1 the P-interval is [k^2 - 1, k^2 + k - 2] and the
    N-interval is [k^2 + k - 1, (k + 1)^2 - 2]; together they tile the
    non-negative integers.  k is found by scanning the isqrt
    neighborhood rather than through a closed floor formula.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    base = math.isqrt(n + 1)
    for k in (base - 1, base, base + 1):
        if k < 1:
            continue
        if k * k - 1 <= n <= k * k + k - 2:
            return k, "P"
        if k * k + k - 1 <= n <= (k + 1) * (k + 1) - 2:
            return k, "N"
    raise AssertionError(f"interval scan missed n={n}")


def demon_outcome_closed(n: int) -> Outcome:
    return Outcome.N if demon_interval(n)[1] == "N" else Outcome.P


def demon_move_count(n: int) -> int:
    """Length of any optimal playout: 2k-1 from N-intervals, 2k-2 from P."""
    k, label = demon_interval(n)
    return 2 * k - 1 if label == "N" else 2 * k - 2


# ---------------------------------------------------------------------------
# Sum-from-Product


class SfpPosition(GamePosition):
    """Positive integer n; moves subtract a + b for factorizations a*b = n."""

    __slots__ = ("n", "_key")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self._key = b"sfp:%d" % n

    def is_terminal(self) -> bool:
        return not sfp_moves(self)

    def successors(self):
        return [(self.n - nxt, SfpPosition(nxt)) for nxt in sfp_moves(self)]

    def canonical_key(self) -> bytes:
        return self._key

    def __repr__(self):
        return f"SfpPosition(n={self.n})"


@lru_cache(maxsize=None)
def _sfp_targets(n: int) -> tuple[int, ...]:
    targets = set()
    a = 1
    while a * a <= n:
        if n % a == 0:
            result = n - a - n // a
            if result >= 1:
                targets.add(result)
        a += 1
    return tuple(sorted(targets))


def sfp_moves(pos: SfpPosition) -> list[int]:
    """Reachable successor values, deduplicated and ascending.

    Only positive results count, which is what makes 1, 4, and the
    primes the terminal positions.
    """
    return list(_sfp_targets(pos.n))


def sfp_classify_range(limit: int, solver: Optional[Solver] = None) -> tuple[list[int], list[int]]:
    """Partition 1..limit into (P-list, N-list) by solved outcome."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    solver = solver or Solver()
    p_list, n_list = [], []
    for n in range(1, limit + 1):
        if solver.outcome(SfpPosition(n)) is Outcome.P:
            p_list.append(n)
        else:
            n_list.append(n)
    return p_list, n_list


# ---------------------------------------------------------------------------
# No-Factor


@lru_cache(maxsize=None)
def _proper_divisor_masks(n: int) -> tuple[int, ...]:
    # masks[x] has bit d-1 set for every proper divisor d of x (1 <= d < x)
    masks = [0] * (n + 1)
    for d in range(1, n + 1):
        for multiple in range(2 * d, n + 1, d):
            masks[multiple] |= 1 << (d - 1)
    return tuple(masks)


class NoFactorPosition(GamePosition):
    """Remaining subset of 1..n, encoded as a bit-set (bit x-1 = x present)."""

    __slots__ = ("n", "mask", "_key")

    def __init__(self, n: int, mask: Optional[int] = None):
        if n < 0:
            raise ValueError("n must be >= 0")
        self.n = n
        self.mask = (1 << n) - 1 if mask is None else mask
        self._key = b"nf:%d:%d" % (n, self.mask)

    @property
    def remaining(self) -> frozenset:
        return frozenset(x for x in range(1, self.n + 1) if self.mask >> (x - 1) & 1)

    def is_terminal(self) -> bool:
        return self.mask == 0

    def successors(self):
        moves = []
        removable = sorted(nofactor_removable(self))
        for pattern in range(1, 1 << len(removable)):
            chosen = tuple(
                removable[i] for i in range(len(removable)) if pattern >> i & 1
            )
            cleared = 0
            for x in chosen:
                cleared |= 1 << (x - 1)
            moves.append((chosen, NoFactorPosition(self.n, self.mask & ~cleared)))
        return moves

    def canonical_key(self) -> bytes:
        return self._key

    def __repr__(self):
        return f"NoFactorPosition(n={self.n}, remaining={sorted(self.remaining)})"


def nofactor_removable(pos: NoFactorPosition) -> frozenset:
    """Numbers whose proper divisors have all left the board already."""
    masks = _proper_divisor_masks(pos.n)
    return frozenset(
        x
        for x in range(1, pos.n + 1)
        if pos.mask >> (x - 1) & 1 and not masks[x] & pos.mask
    )


def nofactor_moves(pos: NoFactorPosition) -> list:
    """Successor list, one per nonempty removable subset, bit-pattern order."""
    return pos.successors()


def nofactor_outcome_closed(n: int) -> Outcome:
    """Predictor: the first player wins only the one-number game."""
    return Outcome.N if n == 1 else Outcome.P


def nofactor_outcome(n: int, solver: Optional[Solver] = None) -> Outcome:
    """Solved outcome of the full starting board (outcome-only search)."""
    solver = solver or Solver()
    return solver.outcome(NoFactorPosition(n))


# ---------------------------------------------------------------------------
# Prime support


def sieve(limit: int) -> bytearray:
    """Byte-per-number prime sieve; sieve[i] is 1 when i is prime."""
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return flags


def bertrand_holds_through(limit: int) -> bool:
    """Check there is a prime in (n/2, n] for every 2 <= n <= limit."""
    flags = sieve(limit)
    counts = list(accumulate(flags))
    return all(counts[n] - counts[n // 2] >= 1 for n in range(2, limit + 1))
