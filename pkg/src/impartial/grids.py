"""The two planar games.

Line removal: tokens sit on lattice points; a move takes every token in
one occupied row or column.  Ships closed forms for diamond, cross, and
rectangle starts plus the two published second-player strategies
(pure mirroring, and the full diamond strategy) with exhaustive
verifiers.

Square removal: a shape of unit cells; a move removes a full k-by-k
block.  Ships the dedicated 2-by-n Grundy recursion next to the general
brute-force position type.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .engine import GamePosition, Outcome, mex


class StrategyError(Exception):
    """A strategy was invoked outside the positions it is defined for."""


# ---------------------------------------------------------------------------
# Line-removal game on token configurations


@dataclass(frozen=True, order=True)
class LineMove:
    axis: str  # "row" (a horizontal line, fixed y) or "col" (fixed x)
    coord: int

    def __post_init__(self):
        if self.axis not in ("row", "col"):
            raise ValueError(f"bad axis {self.axis!r}")

    def mirrored(self) -> "LineMove":
        return LineMove(self.axis, -self.coord)


class TokenConfig(GamePosition):
    """Finite set of lattice tokens; moves remove whole occupied lines.

    Successor order: rows by ascending y, then columns by ascending x.
    Canonical keys are invariant under independent relabeling of the
    occupied x-values and y-values (sound for caching because line
    removal commutes with row/column permutations; not guaranteed to
    merge every equivalent pair).
    """

    __slots__ = ("tokens", "_key")

    def __init__(self, tokens: Iterable[tuple[int, int]]):
        self.tokens = frozenset((int(x), int(y)) for x, y in tokens)
        self._key = None

    def is_terminal(self) -> bool:
        return not self.tokens

    def row(self, y: int) -> frozenset:
        return frozenset(t for t in self.tokens if t[1] == y)

    def col(self, x: int) -> frozenset:
        return frozenset(t for t in self.tokens if t[0] == x)

    def line(self, move: LineMove) -> frozenset:
        return self.row(move.coord) if move.axis == "row" else self.col(move.coord)

    def apply(self, move: LineMove) -> "TokenConfig":
        line = self.line(move)
        if not line:
            raise ValueError(f"illegal move: {move} hits no tokens")
        return TokenConfig(self.tokens - line)

    def successors(self):
        return [(move, self.apply(move)) for move in diamond_moves(self)]

    def components(self):
        return None

    def canonical_key(self) -> bytes:
        if self._key is None:
            self._key = _token_canonical_key(self.tokens)
        return self._key

    def __eq__(self, other):
        return isinstance(other, TokenConfig) and self.tokens == other.tokens

    def __hash__(self):
        return hash(self.tokens)

    def __repr__(self):
        return f"TokenConfig({sorted(self.tokens)})"


def _token_canonical_key(tokens: frozenset) -> bytes:
    if not tokens:
        return b"tok:empty"
    xs = sorted({x for x, _ in tokens})
    ys = sorted({y for _, y in tokens})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    state = [0] * len(ys)
    for x, y in tokens:
        state[yi[y]] |= 1 << xi[x]
    # Alternate row and column sorting until stable; every pass is a
    # permutation, so the result stays equivalent to the input.
    for _ in range(2 * (len(xs) + len(ys)) + 4):
        rows_sorted = sorted(state)
        cols = [0] * len(xs)
        for r, rowbits in enumerate(rows_sorted):
            for c in range(len(xs)):
                if rowbits >> c & 1:
                    cols[c] |= 1 << r
        order = sorted(range(len(xs)), key=lambda c: cols[c])
        new_state = [
            sum(1 << j for j, c in enumerate(order) if rowbits >> c & 1)
            for rowbits in rows_sorted
        ]
        if new_state == state:
            break
        state = new_state
    return b"tok:%d:%d:" % (len(xs), len(ys)) + ",".join(map(str, state)).encode()


def diamond_moves(pos: TokenConfig) -> list[LineMove]:
    """One move per occupied row, then per occupied column."""
    ys = sorted({y for _, y in pos.tokens})
    xs = sorted({x for x, _ in pos.tokens})
    return [LineMove("row", y) for y in ys] + [LineMove("col", x) for x in xs]


def diamond_config(c: int) -> TokenConfig:
    """All lattice points with |x| + |y| <= c (2c^2 + 2c + 1 tokens)."""
    if c < 0:
        raise ValueError("c must be >= 0")
    return TokenConfig(
        (x, y)
        for x in range(-c, c + 1)
        for y in range(-(c - abs(x)), c - abs(x) + 1)
    )


def cross_config(m: int, n: int) -> TokenConfig:
    """A horizontal segment of m tokens and a vertical one of n tokens,
    each consecutive and passing through the origin."""
    if m < 1 or n < 1:
        raise ValueError("cross arms must have at least one token")
    h0 = -((m - 1) // 2)
    v0 = -((n - 1) // 2)
    horizontal = {(x, 0) for x in range(h0, h0 + m)}
    vertical = {(0, y) for y in range(v0, v0 + n)}
    return TokenConfig(horizontal | vertical)


def rect_config(m: int, n: int) -> TokenConfig:
    """An m-by-n block of tokens (m rows, n columns)."""
    if m < 1 or n < 1:
        raise ValueError("rectangle sides must be >= 1")
    return TokenConfig((x, y) for x in range(n) for y in range(m))


def diamond_outcome_closed(kind: str, *dims: int) -> Outcome:
    """Closed-form outcome for the three analyzed start families."""
    if kind == "diamond":
        (c,) = dims
        if c < 0:
            raise ValueError("c must be >= 0")
        return Outcome.N if c == 0 else Outcome.P
    if kind in ("cross", "rect"):
        m, n = dims
        if m < 1 or n < 1:
            raise ValueError(f"{kind} sides must be >= 1")
        return Outcome.P if (m + n) % 2 == 0 and m > 1 and n > 1 else Outcome.N
    raise ValueError(f"unknown shape kind {kind!r}")


# --- Second-player strategies ----------------------------------------------


def check_mirror_preconditions(pos: TokenConfig) -> None:
    """Raise unless the configuration is axis-free and doubly symmetric."""
    tokens = pos.tokens
    if any(x == 0 or y == 0 for x, y in tokens):
        raise StrategyError("mirroring needs a configuration clear of both axes")
    if not all((x, -y) in tokens and (-x, y) in tokens for x, y in tokens):
        raise StrategyError("mirroring needs symmetry in both axes")


def mirror_strategy(pos: TokenConfig, opponent_move: LineMove) -> LineMove:
    """Reflect the opponent's line across the parallel axis.

    ``pos`` is the position the opponent moved FROM: it must be
    symmetric in both axes with no tokens on either axis, which makes
    the reflected line occupied and disjoint from the removed one.
    """
    check_mirror_preconditions(pos)
    if not pos.line(opponent_move):
        raise StrategyError(f"opponent move {opponent_move} is not legal here")
    return opponent_move.mirrored()


def diamond_reply(pos: TokenConfig, opponent_move: LineMove) -> LineMove:
    """Second-player reply for diamond starts, after the opponent's move.

    End game first: a single remaining line is taken outright; two
    parallel lines are answered with a perpendicular line chosen so
    both lines stay nonempty (single-token lines preferred, which keeps
    a two-token perpendicular line on the board).  Otherwise: an axis
    take is answered with the other axis, and any other line with its
    mirror image across the parallel axis.
    """
    tokens = pos.tokens
    if not tokens:
        raise StrategyError("no reply exists: the board is already empty")
    ys = sorted({y for _, y in tokens})
    xs = sorted({x for x, _ in tokens})
    if len(ys) == 1:
        return LineMove("row", ys[0])
    if len(xs) == 1:
        return LineMove("col", xs[0])
    if len(ys) == 2:
        return _two_line_reply(pos, parallel_axis="row")
    if len(xs) == 2:
        return _two_line_reply(pos, parallel_axis="col")
    if opponent_move.coord == 0:
        other = LineMove("col", 0) if opponent_move.axis == "row" else LineMove("row", 0)
        if pos.line(other):
            return other
        raise StrategyError("axis answer unavailable: the other axis is empty")
    mirrored = opponent_move.mirrored()
    if pos.line(mirrored):
        return mirrored
    raise StrategyError(f"mirror line {mirrored} is empty")


def _two_line_reply(pos: TokenConfig, parallel_axis: str) -> LineMove:
    # Tokens lie in exactly two parallel lines; answer perpendicular.
    if parallel_axis == "row":
        line_of = {t: t[1] for t in pos.tokens}
        perp_of = {t: t[0] for t in pos.tokens}
        perp_axis = "col"
    else:
        line_of = {t: t[0] for t in pos.tokens}
        perp_of = {t: t[1] for t in pos.tokens}
        perp_axis = "row"
    lines = sorted(set(line_of.values()))
    counts = {}
    for t in pos.tokens:
        counts.setdefault(perp_of[t], []).append(line_of[t])
    singles = sorted(c for c, hit in counts.items() if len(hit) == 1)
    doubles = sorted(c for c, hit in counts.items() if len(hit) == 2)
    for coord in singles + doubles:
        survivors = {
            line: sum(1 for t in pos.tokens if line_of[t] == line and perp_of[t] != coord)
            for line in lines
        }
        if all(survivors[line] > 0 for line in lines):
            return LineMove(perp_axis, coord)
    raise StrategyError("no perpendicular line keeps both lines alive")


def verify_strategy_never_loses(start: TokenConfig, reply_fn) -> Optional[list]:
    """Exhaustive adversary walk with the strategy fixing the replies.

    The adversary moves first and tries everything.  Returns None when
    the strategy player makes the last move on every line of play, or
    a counterexample move list.
    """
    memo: dict = {}

    def walk(pos: TokenConfig) -> Optional[list]:
        key = pos.tokens
        if key in memo:
            return memo[key]
        memo[key] = None  # positions reachable twice share the verdict
        result = None
        for move in diamond_moves(pos):
            after = pos.apply(move)
            if after.is_terminal():
                result = [move]
                break
            try:
                reply = reply_fn(pos, move, after)
            except StrategyError:
                result = [move]
                break
            replied = after.apply(reply)
            if replied.is_terminal():
                continue
            deeper = walk(replied)
            if deeper is not None:
                result = [move, reply] + deeper
                break
        memo[key] = result
        return result

    return walk(start)


def verify_mirror_strategy(start: TokenConfig) -> Optional[list]:
    """Adversary walk for pure mirroring from a doubly-symmetric,
    axis-free configuration; None means the second player always won."""
    return verify_strategy_never_loses(
        start, lambda pos, move, after: mirror_strategy(pos, move)
    )


def verify_diamond_strategy(c: int) -> Optional[list]:
    """Adversary walk for the full diamond strategy from a c-diamond."""
    if c < 1:
        raise ValueError("the diamond strategy applies from c >= 1")
    return verify_strategy_never_loses(
        diamond_config(c), lambda pos, move, after: diamond_reply(after, move)
    )


def symmetric_axis_free_configs(max_tokens: int = 12, coord_bound: int = 3):
    """All doubly-symmetric, axis-free configurations up to relabeling.

    Tokens off the axes come in orbits of four (+-x, +-y) with x, y >= 1,
    so max_tokens tokens allow max_tokens // 4 orbits; bounding the
    representative coordinates by the orbit count loses no equivalence
    class because occupied coordinate values can be relabeled
    symmetrically without changing the game.
    """
    from itertools import combinations

    orbit_reps = [
        (x, y) for x in range(1, coord_bound + 1) for y in range(1, coord_bound + 1)
    ]
    configs = [TokenConfig([])]
    for size in range(1, max_tokens // 4 + 1):
        for combo in combinations(orbit_reps, size):
            tokens = set()
            for x, y in combo:
                tokens |= {(x, y), (x, -y), (-x, y), (-x, -y)}
            configs.append(TokenConfig(tokens))
    return configs


# ---------------------------------------------------------------------------
# Square-removal game on cell configurations


@dataclass(frozen=True, order=True)
class SquareMove:
    x: int  # lower-left cell of the removed block
    y: int
    k: int

    def cells(self) -> frozenset:
        return frozenset(
            (self.x + i, self.y + j) for i in range(self.k) for j in range(self.k)
        )


class CellConfig(GamePosition):
    """Finite set of unit cells; moves remove full k-by-k blocks.

    Successor order: block size ascending, then origin lexicographic.
    Canonical keys are translation-normalized.  Components follow
    square-sharing connectivity: cells that no legal block covers
    together can never interact, so they split into independent
    subgames (this is what turns a 2-by-n bar into clean rectangle
    fragments as it is chipped apart).
    """

    __slots__ = ("cells", "_key", "_moves")

    def __init__(self, cells: Iterable[tuple[int, int]]):
        self.cells = frozenset((int(x), int(y)) for x, y in cells)
        self._key = None
        self._moves = None

    def is_terminal(self) -> bool:
        return not self.cells

    def moves(self) -> list[SquareMove]:
        if self._moves is None:
            self._moves = ras_moves(self)
        return self._moves

    def apply(self, move: SquareMove) -> "CellConfig":
        block = move.cells()
        if not block <= self.cells:
            raise ValueError(f"illegal move: {move} is not fully present")
        return CellConfig(self.cells - block)

    def successors(self):
        return [(move, self.apply(move)) for move in self.moves()]

    def components(self):
        if len(self.cells) < 2:
            return None
        parent = {cell: cell for cell in self.cells}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for move in self.moves():
            cells = list(move.cells())
            anchor = find(cells[0])
            for cell in cells[1:]:
                parent[find(cell)] = anchor
        groups: dict = {}
        for cell in self.cells:
            groups.setdefault(find(cell), []).append(cell)
        if len(groups) < 2:
            return None
        return [CellConfig(cells) for _, cells in sorted(groups.items())]

    def canonical_key(self) -> bytes:
        if self._key is None:
            if not self.cells:
                self._key = b"cell:empty"
            else:
                min_x = min(x for x, _ in self.cells)
                min_y = min(y for _, y in self.cells)
                normalized = sorted((x - min_x, y - min_y) for x, y in self.cells)
                self._key = b"cell:" + repr(normalized).encode()
        return self._key

    def __eq__(self, other):
        return isinstance(other, CellConfig) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"CellConfig({sorted(self.cells)})"


def rect_cells(m: int, n: int) -> CellConfig:
    """An m-by-n rectangle of cells (m rows, n columns)."""
    if m < 0 or n < 0:
        raise ValueError("rectangle sides must be >= 0")
    return CellConfig((x, y) for x in range(n) for y in range(m))


def ras_moves(pos: CellConfig) -> list[SquareMove]:
    """Every fully-present block, size ascending then origin lexicographic."""
    cells = pos.cells
    if not cells:
        return []
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    max_k = min(max(xs) - min(xs), max(ys) - min(ys)) + 1
    moves = []
    for k in range(1, max_k + 1):
        found = False
        for x, y in sorted(cells):
            if all(
                (x + i, y + j) in cells for i in range(k) for j in range(k)
            ):
                moves.append(SquareMove(x, y, k))
                found = True
        if k > 1 and not found:
            break  # no k-block fits, so no larger block can either
    return moves


@dataclass
class RasGrundyTable:
    """Grundy values G(n) for 2-by-n rectangles, index 0..computed_through."""

    values: list
    computed_through: int

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def zeros(self) -> list:
        return [n for n in range(1, self.computed_through + 1) if self.values[n] == 0]


def ras_grundy_2xn(n_max: int) -> RasGrundyTable:
    """Dedicated 2-by-n recursion via the two split families.

    Removing a 2-by-2 block after i full columns leaves 2-by-i plus
    2-by-(n-i-2); removing a single cell from column j+1 leaves
    2-by-j, a lone cell (value 1), and 2-by-(n-j-1).  End cuts
    (i = 0, j = 0) are included.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    g = [0, 0]
    for n in range(2, n_max + 1):
        seen = set()
        for i in range(0, n - 1):
            seen.add(g[i] ^ g[n - i - 2])
        for j in range(0, n):
            seen.add(g[j] ^ 1 ^ g[n - j - 1])
        g.append(mex(seen))
    return RasGrundyTable(values=g[: n_max + 1], computed_through=n_max)


def ras_p_positions(n_max: int) -> list[int]:
    """All n <= n_max whose 2-by-n rectangle is a P-position."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return ras_grundy_2xn(n_max).zeros()


# ---------------------------------------------------------------------------
# Point-list text format ("x y" per line), shared by CLI and service


def parse_points(text: str) -> list[tuple[int, int]]:
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 'x y', got {raw!r}")
        points.append((int(fields[0]), int(fields[1])))
    return points


def render_points(points: Iterable[tuple[int, int]]) -> str:
    return "".join(f"{x} {y}\n" for x, y in sorted(points))
