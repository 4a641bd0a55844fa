"""Remove-an-Edge on simple graphs.

A move removes two neighboring vertices together with all incident
edges; the player without a move loses.  Closed forms cover complete,
star, path, and cycle graphs; everything else goes through the general
bit-set solver.  The path game matches the domino-covering game, and
the related edge-delete game (deleting an edge that isolates a vertex
loses immediately) is implemented as an independent oracle for that
equivalence chain.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache
from typing import Iterable, Optional

from .engine import GamePosition, Outcome, Solver, mex

GENERAL_SOLVE_VERTEX_BOUND = 24


class SimpleGraph:
    """Vertices 0..n-1 with an undirected edge set; no loops, no multi-edges."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        canonical = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            canonical.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = frozenset(canonical)
        self.adjacency = [0] * n
        for u, v in canonical:
            self.adjacency[u] |= 1 << v
            self.adjacency[v] |= 1 << u
        digest = hashlib.md5(
            repr((n, sorted(canonical))).encode()
        ).hexdigest()[:12]
        self._tag = digest.encode()

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={sorted(self.edges)})"


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(n: int) -> SimpleGraph:
    """One center (vertex 0) plus n-1 leaves; n total vertices."""
    return SimpleGraph(n, [(0, v) for v in range(1, n)])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(v, v + 1) for v in range(n - 1)])


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph(n, [(v, (v + 1) % n) for v in range(n)])


class RaePosition(GamePosition):
    """Live-vertex subset of a fixed base graph.

    Cache keys use the bit-set of supported vertices (live vertices
    that still have a live neighbor); isolated live vertices can never
    take part in a move, so dropping them is sound and lets fragments
    that differ only in dead weight share cache entries.  Components of
    the live induced subgraph are independent subgames.
    """

    __slots__ = ("graph", "alive", "_supported", "_key")

    def __init__(self, graph: SimpleGraph, alive: Optional[int] = None):
        self.graph = graph
        self.alive = (1 << graph.n) - 1 if alive is None else alive
        self._supported = None
        self._key = None

    def supported(self) -> int:
        if self._supported is None:
            adjacency = self.graph.adjacency
            alive = self.alive
            mask = 0
            for u in _bits(alive):
                if adjacency[u] & alive:
                    mask |= 1 << u
            self._supported = mask
        return self._supported

    def is_terminal(self) -> bool:
        return self.supported() == 0

    def moves(self) -> list[tuple[int, int]]:
        alive = self.alive
        pairs = []
        for u in _bits(self.supported()):
            higher = self.graph.adjacency[u] & alive
            for v in _bits(higher):
                if v > u:
                    pairs.append((u, v))
        pairs.sort()
        return pairs

    def apply(self, move: tuple[int, int]) -> "RaePosition":
        u, v = move
        bit_u, bit_v = 1 << u, 1 << v
        if not (self.alive & bit_u and self.alive & bit_v):
            raise ValueError(f"move {move}: vertex already removed")
        if not self.graph.adjacency[u] & bit_v:
            raise ValueError(f"move {move}: vertices are not adjacent")
        return RaePosition(self.graph, self.alive & ~(bit_u | bit_v))

    def successors(self):
        return [(move, self.apply(move)) for move in self.moves()]

    def components(self):
        supported = self.supported()
        if not supported:
            return None
        adjacency = self.graph.adjacency
        seen = 0
        parts = []
        for u in _bits(supported):
            if seen >> u & 1:
                continue
            frontier = 1 << u
            comp = 0
            while frontier:
                comp |= frontier
                expand = 0
                for w in _bits(frontier):
                    expand |= adjacency[w] & supported
                frontier = expand & ~comp
            seen |= comp
            parts.append(comp)
        if len(parts) < 2:
            return None
        return [RaePosition(self.graph, comp) for comp in sorted(parts)]

    def canonical_key(self) -> bytes:
        if self._key is None:
            self._key = b"rae:%s:%x" % (self.graph._tag, self.supported())
        return self._key

    def __repr__(self):
        return f"RaePosition(alive={sorted(_bits(self.alive))})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def rae_moves(pos: RaePosition) -> list[tuple[int, int]]:
    """All live adjacent pairs, sorted."""
    return pos.moves()


def a215721_member(x: int) -> bool:
    """Membership in the path-game P-position set: {0, 1, 15, 35} plus
    positives congruent to 5, 9, 21, 25, or 29 mod 34."""
    return x in (0, 1, 15, 35) or (x > 0 and x % 34 in (5, 9, 21, 25, 29))


def rae_outcome_closed(family: str, n: int) -> Outcome:
    """Closed forms for the four analyzed families."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if family == "complete":
        return Outcome.N if n % 4 in (2, 3) else Outcome.P
    if family == "star":
        # a single move empties every star with more than one vertex
        return Outcome.N if n > 1 else Outcome.P
    if family == "path":
        return Outcome.P if a215721_member(n) else Outcome.N
    if family == "cycle":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return Outcome.N if a215721_member(n - 2) else Outcome.P
    raise ValueError(f"unknown family {family!r}")


def cycle_outcome(n: int) -> Outcome:
    """First-player view of the cycle: the opening move leaves a path of
    n-2 vertices, so C_n is N exactly when that path is a P-position."""
    return rae_outcome_closed("cycle", n)


def path_grundy(n_max: int) -> list[int]:
    """Grundy values of the path game via the split recursion.

    Removing an adjacent pair after i surviving vertices leaves
    independent paths of i and n-i-2 vertices, so
    G(n) = mex over i of G(i) xor G(n-i-2), with G(0) = G(1) = 0.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    g = [0, 0]
    for n in range(2, n_max + 1):
        g.append(mex(g[i] ^ g[n - i - 2] for i in range(n - 1)))
    return g[: n_max + 1]


def rae_solve_general(
    graph: SimpleGraph,
    solver: Optional[Solver] = None,
    max_vertices: int = GENERAL_SOLVE_VERTEX_BOUND,
) -> tuple[Outcome, int]:
    """Outcome and Grundy value of the full starting graph."""
    if graph.n > max_vertices:
        raise ValueError(
            f"graph has {graph.n} vertices, above the solve bound {max_vertices}"
        )
    solver = solver or Solver()
    value = solver.grundy(RaePosition(graph))
    return (Outcome.N if value else Outcome.P), value


def rae_playout_lengths(graph: SimpleGraph) -> set[int]:
    """Every possible playout length under arbitrary (not optimal) play."""
    memo: dict = {}

    def lengths(pos: RaePosition) -> frozenset:
        key = pos.canonical_key()
        if key not in memo:
            if pos.is_terminal():
                memo[key] = frozenset({0})
            else:
                acc = set()
                for _, child in pos.successors():
                    acc |= {1 + l for l in lengths(child)}
                memo[key] = frozenset(acc)
        return memo[key]

    return set(lengths(RaePosition(graph)))


# ---------------------------------------------------------------------------
# Edge-delete and domino-covering oracles (path equivalence chain)


def edge_delete_outcome(path_n: int, max_n: int = 14) -> Outcome:
    """Edge-delete game on the path P_n, solved exhaustively.

    Players delete one edge per turn; a deletion that isolates a vertex
    loses the mover immediately, and a player left only with isolating
    deletions must still move and so loses.
    """
    if path_n < 2:
        raise ValueError("the edge-delete oracle needs a path with an edge")
    if path_n > max_n:
        raise ValueError(f"path size {path_n} above the oracle bound {max_n}")
    edge_count = path_n - 1

    @lru_cache(maxsize=None)
    def mover_wins(mask: int) -> bool:
        for e in range(edge_count):
            if not mask >> e & 1:
                continue
            # deleting e can only isolate its own endpoints
            left_isolated = e == 0 or not mask >> (e - 1) & 1
            right_isolated = e == edge_count - 1 or not mask >> (e + 1) & 1
            if left_isolated or right_isolated:
                continue  # immediate loss, never chosen voluntarily
            if not mover_wins(mask & ~(1 << e)):
                return True
        return False

    return Outcome.N if mover_wins((1 << edge_count) - 1) else Outcome.P


def domino_strip_outcome(length: int, max_length: int = 24) -> Outcome:
    """Domino-covering game on a 1-by-length strip, solved exhaustively.

    Players place non-overlapping dominoes; the first player unable to
    place loses.  Implemented directly on cell bit-sets as an oracle
    independent of the path-game code.
    """
    if length < 0:
        raise ValueError("strip length must be >= 0")
    if length > max_length:
        raise ValueError(f"strip {length} above the oracle bound {max_length}")

    @lru_cache(maxsize=None)
    def mover_wins(free: int) -> bool:
        for i in range(length - 1):
            pair = 0b11 << i
            if free & pair == pair and not mover_wins(free & ~pair):
                return True
        return False

    return Outcome.N if mover_wins((1 << length) - 1) else Outcome.P


# ---------------------------------------------------------------------------
# Edge-list text format: header "n <edge count>", then one "u v" per line


def parse_graph(text: str) -> SimpleGraph:
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise ValueError("empty graph description")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"header must be 'n <edge count>', got {lines[0]!r}")
    n, edge_count = int(header[0]), int(header[1])
    if len(lines) - 1 != edge_count:
        raise ValueError(
            f"header announces {edge_count} edges, found {len(lines) - 1}"
        )
    edges = []
    for line in lines[1:]:
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"expected 'u v', got {line!r}")
        edges.append((int(fields[0]), int(fields[1])))
    return SimpleGraph(n, edges)


def render_graph(graph: SimpleGraph) -> str:
    lines = [f"{graph.n} {len(graph.edges)}"]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.edges))
    return "\n".join(lines) + "\n"
