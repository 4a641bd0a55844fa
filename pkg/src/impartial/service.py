"""JSON-over-HTTP play and analysis API.

Session lifecycle, legal-move listing, human move application, engine
replies, and position analysis, consumed by the web UI and usable from
any HTTP client.  Sessions live in memory with a TTL; an optional
append-only journal replays them across restarts.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import Body, FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .engine import GamePosition, NodeBudgetExceeded, Outcome, Solver
from .games import ParamError, TooLargeError, catalog, get_adapter

DEFAULT_TTL_SECONDS = 3600.0
DEFAULT_NODE_BUDGET = 2_000_000


@dataclass
class Session:
    id: str
    game: str
    params: dict
    position: GamePosition
    history: list = field(default_factory=list)
    next_mover: Optional[str] = "human"  # "human" | "engine" | None
    winner: Optional[str] = None
    touched: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def status(self) -> str:
        if self.winner is None:
            return "in_progress"
        return "human_won" if self.winner == "human" else "engine_won"


class SessionStore:
    """In-memory sessions with TTL purge and an optional move journal."""

    def __init__(self, ttl: float = DEFAULT_TTL_SECONDS, journal_path: Optional[Path] = None):
        self.ttl = ttl
        self.journal_path = Path(journal_path) if journal_path else None
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._lock:
            self._purge()
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._purge()
            session = self._sessions.get(session_id)
            if session is None:
                raise KeyError(session_id)
            session.touched = time.monotonic()
            return session

    def _purge(self) -> None:
        now = time.monotonic()
        stale = [
            sid
            for sid, session in self._sessions.items()
            if now - session.touched > self.ttl
        ]
        for sid in stale:
            del self._sessions[sid]

    # -- journal -------------------------------------------------------------

    def record(self, event: dict) -> None:
        if self.journal_path is None:
            return
        with self._lock:
            with self.journal_path.open("a") as handle:
                handle.write(json.dumps(event, sort_keys=True) + "\n")

    def replay_journal(self) -> int:
        """Rebuild sessions from the journal; returns how many were restored."""
        if self.journal_path is None or not self.journal_path.exists():
            return 0
        restored = {}
        for line in self.journal_path.read_text().splitlines():
            if not line.strip():
                continue
            event = json.loads(line)
            if event["event"] == "create":
                adapter = get_adapter(event["game"])
                session = Session(
                    id=event["id"],
                    game=event["game"],
                    params=event["params"],
                    position=adapter.create(event["params"]),
                )
                restored[session.id] = session
            elif event["event"] == "move":
                session = restored.get(event["id"])
                if session is None:
                    continue
                adapter = get_adapter(session.game)
                move = adapter.move_from_json(event["move"])
                _apply_move(session, adapter, move, event["mover"])
        with self._lock:
            self._sessions.update(restored)
        return len(restored)


def _apply_move(session: Session, adapter, move, mover: str) -> None:
    for candidate, child in session.position.successors():
        if candidate == move:
            session.position = child
            break
    else:
        raise ValueError(f"illegal move {move}")
    session.history.append({"mover": mover, "move": adapter.move_to_json(move)})
    if session.position.is_terminal():
        session.winner = mover  # normal play: the last mover wins
        session.next_mover = None
    else:
        session.next_mover = "engine" if mover == "human" else "human"


class CreateSessionBody(BaseModel):
    game: str
    params: dict = {}
    engine_first: bool = False


def _session_json(session: Session, adapter) -> dict:
    legal = (
        []
        if session.winner is not None
        else [adapter.move_to_json(m) for m, _ in session.position.successors()]
    )
    return {
        "id": session.id,
        "game": session.game,
        "params": session.params,
        "status": session.status,
        "winner": session.winner,
        "next_mover": session.next_mover,
        "position": adapter.position_json(session.position),
        "legal_moves": legal,
        "history": list(session.history),
    }


def create_app(
    static_dir: Optional[Path] = None,
    ttl: float = DEFAULT_TTL_SECONDS,
    journal_path: Optional[Path] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> FastAPI:
    app = FastAPI(title="impartial game service")
    store = SessionStore(ttl=ttl, journal_path=journal_path)
    store.replay_journal()
    solver = Solver(node_budget=node_budget)

    def error(status: int, message: str):
        return HTTPException(status_code=status, detail=message)

    @app.exception_handler(HTTPException)
    async def _http_error(request: Request, exc: HTTPException):
        return JSONResponse(
            status_code=exc.status_code,
            content={"code": exc.status_code, "message": str(exc.detail)},
        )

    def load_session(session_id: str) -> tuple[Session, object]:
        try:
            session = store.get(session_id)
        except KeyError:
            raise error(404, f"unknown session {session_id!r}")
        return session, get_adapter(session.game)

    def engine_reply(session: Session, adapter) -> Optional[dict]:
        try:
            move = solver.best_move(session.position)
        except NodeBudgetExceeded:
            raise error(422, "position too large for the engine to solve")
        _apply_move(session, adapter, move, "engine")
        store.record({"event": "move", "id": session.id, "mover": "engine",
                      "move": adapter.move_to_json(move)})
        return adapter.move_to_json(move)

    @app.get("/api/games")
    async def list_games():
        return {"games": catalog()}

    @app.post("/api/sessions", status_code=201)
    async def create_session(body: CreateSessionBody):
        try:
            adapter = get_adapter(body.game)
            position = adapter.create(body.params)
        except TooLargeError as exc:
            raise error(422, str(exc))
        except ParamError as exc:
            raise error(400, str(exc))
        except ValueError as exc:
            raise error(400, str(exc))
        session = Session(
            id=uuid.uuid4().hex,
            game=body.game,
            params=body.params,
            position=position,
        )
        if position.is_terminal():
            # nobody can move; the side to move immediately loses
            session.winner = "engine" if not body.engine_first else "human"
            session.next_mover = None
        store.add(session)
        store.record({"event": "create", "id": session.id, "game": session.game,
                      "params": session.params, "engine_first": body.engine_first})
        engine_move = None
        if body.engine_first and session.winner is None:
            with session.lock:
                engine_move = engine_reply(session, adapter)
        payload = _session_json(session, adapter)
        if engine_move is not None:
            payload["engine_move"] = engine_move
        return payload

    @app.get("/api/sessions/{session_id}")
    async def get_session(session_id: str):
        session, adapter = load_session(session_id)
        return _session_json(session, adapter)

    @app.post("/api/sessions/{session_id}/moves")
    async def human_move(session_id: str, payload: dict = Body(...)):
        session, adapter = load_session(session_id)
        with session.lock:
            if session.winner is not None:
                raise error(409, "session already finished")
            if session.next_mover != "human":
                raise error(409, "not the human's turn")
            try:
                move = adapter.move_from_json(payload)
            except ParamError as exc:
                raise error(422, str(exc))
            legal = [m for m, _ in session.position.successors()]
            if move not in legal:
                raise error(422, f"illegal move: {adapter.format_move(move)}")
            _apply_move(session, adapter, move, "human")
            store.record({"event": "move", "id": session.id, "mover": "human",
                          "move": adapter.move_to_json(move)})
        return _session_json(session, adapter)

    @app.post("/api/sessions/{session_id}/engine-move")
    async def engine_move(session_id: str):
        session, adapter = load_session(session_id)
        with session.lock:
            if session.winner is not None:
                raise error(409, "session already finished")
            if session.next_mover != "engine":
                raise error(409, "not the engine's turn")
            move_payload = engine_reply(session, adapter)
            left: Optional[str] = None
            if session.winner is None:
                try:
                    left = solver.outcome(session.position).value
                except NodeBudgetExceeded:
                    left = None
        body = _session_json(session, adapter)
        body["engine_move"] = move_payload
        body["left_outcome"] = left
        return body

    @app.get("/api/sessions/{session_id}/analysis")
    async def analysis(session_id: str):
        session, adapter = load_session(session_id)
        try:
            outcome = solver.outcome(session.position)
            grundy = (
                solver.grundy(session.position) if adapter.grundy_supported else None
            )
            moves = [
                {
                    "move": adapter.move_to_json(move),
                    "leaves": solver.outcome(child).value,
                }
                for move, child in session.position.successors()
            ]
        except NodeBudgetExceeded:
            raise error(422, "position too large to analyze")
        return {
            "outcome": outcome.value,
            "grundy": grundy,
            "moves": moves,
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
