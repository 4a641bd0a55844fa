"""Uniform adapters over the seven games.

Each adapter knows how to validate parameters, build a starting
position, translate moves to and from JSON payloads, and render a
position both as JSON (for the service and UI) and as text (for the
terminal).  Rule logic stays in the game modules; adapters are pure
plumbing, and everything downstream (CLI play, HTTP service, web UI)
speaks only to this registry.
"""

from __future__ import annotations

from typing import Optional

from .engine import GamePosition
from .graphs import (
    RaePosition,
    SimpleGraph,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from .grids import (
    CellConfig,
    LineMove,
    SquareMove,
    TokenConfig,
    cross_config,
    diamond_config,
    rect_cells,
    rect_config,
)
from .piles import ChocolatePosition, DemonPosition, NoFactorPosition, SfpPosition


class ParamError(ValueError):
    """Parameters do not satisfy the game's schema."""


class TooLargeError(ValueError):
    """Parameters are valid but the instance is too large to solve."""


def _int_param(params: dict, name: str, minimum: int, maximum: Optional[int] = None) -> int:
    if name not in params:
        raise ParamError(f"missing parameter {name!r}")
    value = params[name]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParamError(f"parameter {name!r} must be an integer")
    if value < minimum:
        raise ParamError(f"parameter {name!r} must be >= {minimum}")
    if maximum is not None and value > maximum:
        raise TooLargeError(
            f"parameter {name!r} capped at {maximum} for solvable sessions"
        )
    return value


def _point_list(params: dict, name: str, limit: int) -> list[tuple[int, int]]:
    raw = params.get(name)
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ParamError(f"parameter {name!r} must be a nonempty list of pairs")
    points = []
    for item in raw:
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or any(isinstance(c, bool) or not isinstance(c, int) for c in item)
        ):
            raise ParamError(f"{name!r} entries must be integer pairs")
        points.append((item[0], item[1]))
    if len(set(points)) > limit:
        raise TooLargeError(f"at most {limit} {name} supported")
    return points


class GameAdapter:
    """Interface between one game's rule module and the generic drivers."""

    id: str = ""
    name: str = ""
    grundy_supported: bool = True
    move_help: str = ""

    def schema(self) -> dict:
        raise NotImplementedError

    def create(self, params: dict) -> GamePosition:
        raise NotImplementedError

    def position_json(self, pos: GamePosition) -> dict:
        raise NotImplementedError

    def move_to_json(self, move) -> dict:
        raise NotImplementedError

    def move_from_json(self, payload: dict):
        """Payload to move descriptor; legality is checked by the caller
        against the position's successor list."""
        raise NotImplementedError

    def parse_move_text(self, text: str):
        raise NotImplementedError

    def format_move(self, move) -> str:
        raise NotImplementedError

    def render_text(self, pos: GamePosition) -> str:
        raise NotImplementedError


class _TakeGameAdapter(GameAdapter):
    """Shared plumbing for the three take-a-number pile games."""

    pile_field = "n"
    move_help = "enter the number to take"

    def position_json(self, pos):
        return {self.pile_field: pos.n}

    def move_to_json(self, move):
        return {"take": move}

    def move_from_json(self, payload):
        take = payload.get("take")
        if isinstance(take, bool) or not isinstance(take, int):
            raise ParamError("move payload needs an integer 'take'")
        return take

    def parse_move_text(self, text):
        return int(text.strip())

    def format_move(self, move):
        return f"take {move}"

    def render_text(self, pos):
        return f"pile: {pos.n}"


class ChocolateAdapter(_TakeGameAdapter):
    id = "chocolate"
    name = "Chocolate Stones"
    pile_field = "stones"

    def schema(self):
        return {
            "type": "fields",
            "fields": [
                {"name": "m", "type": "int", "min": 1, "max": 12, "default": 2},
                {"name": "stones", "type": "int", "min": 0, "max": 100_000, "default": 10},
            ],
        }

    def create(self, params):
        m = _int_param(params, "m", 1, 12)
        stones = _int_param(params, "stones", 0, 100_000)
        return ChocolatePosition(m, stones)

    def position_json(self, pos):
        return {"m": pos.m, "stones": pos.n}

    def render_text(self, pos):
        return f"pile: {pos.n} stones (m={pos.m})"


class DemonAdapter(_TakeGameAdapter):
    id = "demon"
    name = "Demon Money"
    pile_field = "coins"

    def schema(self):
        return {
            "type": "fields",
            "fields": [
                {"name": "coins", "type": "int", "min": 0, "max": 1_000_000, "default": 10},
            ],
        }

    def create(self, params):
        return DemonPosition(_int_param(params, "coins", 0, 1_000_000))

    def render_text(self, pos):
        return f"pile: {pos.n} coins"


class SfpAdapter(_TakeGameAdapter):
    id = "sfp"
    name = "Sum-from-Product"

    def schema(self):
        return {
            "type": "fields",
            "fields": [
                {"name": "n", "type": "int", "min": 1, "max": 100_000, "default": 30},
            ],
        }

    def create(self, params):
        return SfpPosition(_int_param(params, "n", 1, 100_000))

    def render_text(self, pos):
        return f"number: {pos.n}"


class NoFactorAdapter(GameAdapter):
    id = "nofactor"
    name = "No-Factor"
    grundy_supported = False  # outcome-only search; subset moves explode
    move_help = "enter the numbers to remove, separated by spaces"

    def schema(self):
        return {
            "type": "fields",
            "fields": [
                {"name": "n", "type": "int", "min": 0, "max": 12, "default": 6},
            ],
        }

    def create(self, params):
        return NoFactorPosition(_int_param(params, "n", 0, 12))

    def position_json(self, pos):
        from .piles import nofactor_removable

        return {
            "n": pos.n,
            "remaining": sorted(pos.remaining),
            "removable": sorted(nofactor_removable(pos)),
        }

    def move_to_json(self, move):
        return {"numbers": list(move)}

    def move_from_json(self, payload):
        numbers = payload.get("numbers")
        if not isinstance(numbers, (list, tuple)) or not numbers:
            raise ParamError("move payload needs a nonempty 'numbers' list")
        if any(isinstance(x, bool) or not isinstance(x, int) for x in numbers):
            raise ParamError("'numbers' must all be integers")
        return tuple(sorted(set(numbers)))

    def parse_move_text(self, text):
        return tuple(sorted({int(tok) for tok in text.replace(",", " ").split()}))

    def format_move(self, move):
        return "remove {" + ", ".join(map(str, move)) + "}"

    def render_text(self, pos):
        from .piles import nofactor_removable

        removable = nofactor_removable(pos)
        marks = [
            f"[{x}]" if x in removable else f" {x} "
            for x in sorted(pos.remaining)
        ]
        return "board: " + " ".join(marks) + "   ([x] = removable)"


class DiamondAdapter(GameAdapter):
    id = "diamond"
    name = "Diamond (line removal)"
    move_help = "enter 'row <y>' or 'col <x>'"

    def schema(self):
        return {
            "type": "variants",
            "selector": "shape",
            "variants": {
                "diamond": {"fields": [{"name": "c", "type": "int", "min": 0, "max": 4, "default": 2}]},
                "cross": {
                    "fields": [
                        {"name": "m", "type": "int", "min": 1, "max": 8, "default": 3},
                        {"name": "n", "type": "int", "min": 1, "max": 8, "default": 3},
                    ]
                },
                "rect": {
                    "fields": [
                        {"name": "m", "type": "int", "min": 1, "max": 8, "default": 2},
                        {"name": "n", "type": "int", "min": 1, "max": 8, "default": 2},
                    ]
                },
                "custom": {"fields": [{"name": "tokens", "type": "points", "max_count": 20}]},
            },
        }

    def create(self, params):
        shape = params.get("shape")
        if shape == "diamond":
            return diamond_config(_int_param(params, "c", 0, 4))
        if shape == "cross":
            return cross_config(
                _int_param(params, "m", 1, 8), _int_param(params, "n", 1, 8)
            )
        if shape == "rect":
            return rect_config(
                _int_param(params, "m", 1, 8), _int_param(params, "n", 1, 8)
            )
        if shape == "custom":
            return TokenConfig(_point_list(params, "tokens", 20))
        raise ParamError("shape must be one of diamond, cross, rect, custom")

    def position_json(self, pos):
        return {"tokens": [list(t) for t in sorted(pos.tokens)]}

    def move_to_json(self, move):
        return {"axis": move.axis, "coord": move.coord}

    def move_from_json(self, payload):
        axis = payload.get("axis")
        coord = payload.get("coord")
        if axis not in ("row", "col"):
            raise ParamError("move payload needs axis 'row' or 'col'")
        if isinstance(coord, bool) or not isinstance(coord, int):
            raise ParamError("move payload needs an integer 'coord'")
        return LineMove(axis, coord)

    def parse_move_text(self, text):
        fields = text.split()
        if len(fields) != 2 or fields[0] not in ("row", "col"):
            raise ValueError("expected 'row <y>' or 'col <x>'")
        return LineMove(fields[0], int(fields[1]))

    def format_move(self, move):
        return f"take {move.axis} {move.coord}"

    def render_text(self, pos):
        if not pos.tokens:
            return "(empty board)"
        xs = range(min(x for x, _ in pos.tokens), max(x for x, _ in pos.tokens) + 1)
        ys = range(min(y for _, y in pos.tokens), max(y for _, y in pos.tokens) + 1)
        lines = []
        for y in reversed(list(ys)):
            row = " ".join("o" if (x, y) in pos.tokens else "." for x in xs)
            lines.append(f"y={y:>3}  {row}")
        lines.append("      " + " ".join(f"{x}"[-1] for x in xs) + "   (x, last digit)")
        return "\n".join(lines)


class RemoveSquareAdapter(GameAdapter):
    id = "remove-a-square"
    name = "Remove-a-Square"
    move_help = "enter '<x> <y> <k>' for the k-by-k block at (x, y)"

    def schema(self):
        return {
            "type": "variants",
            "selector": "shape",
            "variants": {
                "rect": {
                    "fields": [
                        {"name": "m", "type": "int", "min": 1, "max": 64, "default": 2},
                        {"name": "n", "type": "int", "min": 1, "max": 64, "default": 6},
                    ]
                },
                "custom": {"fields": [{"name": "cells", "type": "points", "max_count": 20}]},
            },
        }

    def create(self, params):
        shape = params.get("shape")
        if shape == "rect":
            m = _int_param(params, "m", 1, 64)
            n = _int_param(params, "n", 1, 64)
            if min(m, n) > 2 and m * n > 18:
                raise TooLargeError(
                    "rectangles beyond 2-wide are brute forced; keep m*n <= 18"
                )
            if min(m, n) <= 2 and m * n > 128:
                raise TooLargeError("bars are capped at 128 cells")
            return rect_cells(m, n)
        if shape == "custom":
            return CellConfig(_point_list(params, "cells", 20))
        raise ParamError("shape must be one of rect, custom")

    def position_json(self, pos):
        return {"cells": [list(c) for c in sorted(pos.cells)]}

    def move_to_json(self, move):
        return {"x": move.x, "y": move.y, "k": move.k}

    def move_from_json(self, payload):
        values = []
        for field in ("x", "y", "k"):
            value = payload.get(field)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParamError(f"move payload needs integer {field!r}")
            values.append(value)
        if values[2] < 1:
            raise ParamError("block size k must be >= 1")
        return SquareMove(*values)

    def parse_move_text(self, text):
        x, y, k = (int(tok) for tok in text.split())
        return SquareMove(x, y, k)

    def format_move(self, move):
        return f"remove {move.k}x{move.k} at ({move.x}, {move.y})"

    def render_text(self, pos):
        if not pos.cells:
            return "(empty board)"
        xs = range(min(x for x, _ in pos.cells), max(x for x, _ in pos.cells) + 1)
        ys = range(min(y for _, y in pos.cells), max(y for _, y in pos.cells) + 1)
        lines = []
        for y in reversed(list(ys)):
            row = " ".join("#" if (x, y) in pos.cells else "." for x in xs)
            lines.append(f"y={y:>3}  {row}")
        return "\n".join(lines)


class RemoveEdgeAdapter(GameAdapter):
    id = "remove-an-edge"
    name = "Remove-an-Edge"
    move_help = "enter the two adjacent vertices, e.g. '0 1'"

    def schema(self):
        return {
            "type": "variants",
            "selector": "family",
            "variants": {
                "complete": {"fields": [{"name": "n", "type": "int", "min": 1, "max": 14, "default": 4}]},
                "star": {"fields": [{"name": "n", "type": "int", "min": 1, "max": 40, "default": 5}]},
                "path": {"fields": [{"name": "n", "type": "int", "min": 0, "max": 40, "default": 6}]},
                "cycle": {"fields": [{"name": "n", "type": "int", "min": 3, "max": 40, "default": 7}]},
                "custom": {
                    "fields": [
                        {"name": "n", "type": "int", "min": 1, "max": 24, "default": 4},
                        {"name": "edges", "type": "pairs"},
                    ]
                },
            },
        }

    def create(self, params):
        family = params.get("family")
        if family == "complete":
            return RaePosition(complete_graph(_int_param(params, "n", 1, 14)))
        if family == "star":
            return RaePosition(star_graph(_int_param(params, "n", 1, 40)))
        if family == "path":
            return RaePosition(path_graph(_int_param(params, "n", 0, 40)))
        if family == "cycle":
            return RaePosition(cycle_graph(_int_param(params, "n", 3, 40)))
        if family == "custom":
            n = _int_param(params, "n", 1, 24)
            edges = params.get("edges")
            if not isinstance(edges, (list, tuple)):
                raise ParamError("custom graphs need an 'edges' list")
            try:
                graph = SimpleGraph(n, [tuple(e) for e in edges])
            except (TypeError, ValueError) as exc:
                raise ParamError(str(exc)) from exc
            return RaePosition(graph)
        raise ParamError("family must be one of complete, star, path, cycle, custom")

    def position_json(self, pos):
        return {
            "n": pos.graph.n,
            "edges": [list(e) for e in sorted(pos.graph.edges)],
            "alive": [v for v in range(pos.graph.n) if pos.alive >> v & 1],
        }

    def move_to_json(self, move):
        return {"u": move[0], "v": move[1]}

    def move_from_json(self, payload):
        u, v = payload.get("u"), payload.get("v")
        for value in (u, v):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ParamError("move payload needs integer 'u' and 'v'")
        return (min(u, v), max(u, v))

    def parse_move_text(self, text):
        u, v = (int(tok) for tok in text.split())
        return (min(u, v), max(u, v))

    def format_move(self, move):
        return f"remove vertices {move[0]} and {move[1]}"

    def render_text(self, pos):
        alive = [v for v in range(pos.graph.n) if pos.alive >> v & 1]
        live_edges = sorted(
            (u, v)
            for u, v in pos.graph.edges
            if pos.alive >> u & 1 and pos.alive >> v & 1
        )
        return (
            f"alive vertices: {alive}\n"
            f"live edges: {live_edges if live_edges else '(none)'}"
        )


ADAPTERS: dict[str, GameAdapter] = {
    adapter.id: adapter
    for adapter in (
        ChocolateAdapter(),
        DemonAdapter(),
        SfpAdapter(),
        NoFactorAdapter(),
        DiamondAdapter(),
        RemoveSquareAdapter(),
        RemoveEdgeAdapter(),
    )
}


def get_adapter(game_id: str) -> GameAdapter:
    adapter = ADAPTERS.get(game_id)
    if adapter is None:
        raise ParamError(f"unknown game {game_id!r}")
    return adapter


def catalog() -> list[dict]:
    """The seven playable games with their parameter schemas."""
    return [
        {"id": adapter.id, "name": adapter.name, "params": adapter.schema(),
         "move_help": adapter.move_help}
        for adapter in ADAPTERS.values()
    ]
