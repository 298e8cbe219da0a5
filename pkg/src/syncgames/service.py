"""HTTP service for storing automata, analysing them and playing games.

Everything lives in memory.  Automata are content addressed: posting the
same description twice returns the same id.  Games hold a mutable session
plus an engine that fills in whichever side the human does not control.
``GET /games/{id}/events`` is a server-sent event stream that replays the
transcript from the first move and then follows the game live.

Build an application with :func:`create_app` and serve it with uvicorn
(``syncgames serve`` does exactly that).
"""

from __future__ import annotations

import hashlib
import json
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, StreamingResponse

from .analysis import AnalysisOptions, analyze
from .boards import Board, board_layout, compile_board, looks_like_board, parse_board, serialize_board
from .core import Dfa, parse_dfa, serialize_dfa, states_from_mask
from .errors import GameError, ParseError, SyncGamesError
from .games import (
    ALICE,
    BOB,
    RULES,
    TOKEN_CAP_STATES,
    WORD_LENGTH_CAP,
    Engine,
    GameSession,
    transcript_records,
)

HUMAN_ROLES = ("alice", "bob", "both")
SSE_KEEPALIVE_SECONDS = 15.0


@dataclass(frozen=True)
class ServiceOptions:
    """Behaviour knobs for one application instance."""

    analysis: AnalysisOptions = field(default_factory=AnalysisOptions)
    engine_token_cap_states: int = TOKEN_CAP_STATES
    sse_keepalive_seconds: float = SSE_KEEPALIVE_SECONDS


@dataclass
class AutomatonRecord:
    id: str
    dfa: Dfa
    kind: str  # "dfa" | "grid" | "track"
    text: str  # canonical serialization of the posted description
    layout: dict | None
    analysis: dict | None = None


@dataclass
class GameRecord:
    id: str
    automaton_id: str
    session: GameSession
    engine: Engine
    human_role: str
    lock: threading.Lock = field(default_factory=threading.Lock)
    changed: threading.Condition = field(default_factory=threading.Condition)

    def engine_plays(self, side: str) -> bool:
        return self.human_role != "both" and self.human_role != side


class ServiceState:
    """The in-memory stores behind one application."""

    def __init__(self, options: ServiceOptions):
        self.options = options
        self.automata: dict[str, AutomatonRecord] = {}
        self.games: dict[str, GameRecord] = {}
        self.store_lock = threading.Lock()


def _error(code: int, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=code, content={"error": {"message": message, **extra}})


def _parse_submission(text: str, name: str | None) -> tuple[Dfa, str, str, dict | None]:
    """(dfa, kind, canonical_text, layout) for a posted description."""
    if looks_like_board(text):
        board: Board = parse_board(text)
        canonical = serialize_board(board)
        layout = board_layout(board)
        dfa = compile_board(board, name=name)
        return dfa, layout["kind"], canonical, layout
    dfa = parse_dfa(text, name=name)
    return dfa, "dfa", serialize_dfa(dfa), None


def _automaton_summary(record: AutomatonRecord) -> dict:
    return {
        "id": record.id,
        "name": record.dfa.name,
        "kind": record.kind,
        "states": record.dfa.n,
        "alphabet": list(record.dfa.alphabet),
        "layout": record.layout,
    }


def _game_state(record: GameRecord) -> dict:
    session = record.session
    return {
        "id": record.id,
        "automaton_id": record.automaton_id,
        "rule": session.rule,
        "human_role": record.human_role,
        "status": session.status,
        "turn": session.turn,
        "tokens": list(session.token_states()),
        "alice_moves": session.alice_moves,
        "seq": len(session.history),
        "history": transcript_records(session),
    }


def _advance_engine(record: GameRecord) -> None:
    """Let the engine move while the game is ongoing and it is an
    engine-controlled side's turn.  Caller holds the game lock."""
    session = record.session
    while session.status == "ongoing" and record.engine_plays(session.turn):
        word = record.engine.move(session, session.turn)
        session.play(session.turn, word)
        with record.changed:
            record.changed.notify_all()


def _event_payload(record: GameRecord, seq: int) -> dict:
    session = record.session
    move = session.history[seq - 1]
    terminal = seq == len(session.history) and session.status != "ongoing"
    return {
        "seq": seq,
        "player": move.player,
        "word": session.dfa.word_to_str(move.word),
        "tokens_after": list(states_from_mask(move.tokens_after)),
        "status": session.status if terminal else "ongoing",
    }


def create_app(options: ServiceOptions | None = None) -> FastAPI:
    state = ServiceState(options or ServiceOptions())
    app = FastAPI(title="syncgames", docs_url=None, redoc_url=None)
    app.state.syncgames = state
    # the service holds no credentials and browser pages are served from
    # arbitrary origins, so cross-origin calls are simply allowed
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # -- automata ----------------------------------------------------------

    @app.post("/automata")
    def post_automaton(body: dict):
        text = body.get("text")
        if not isinstance(text, str) or not text.strip():
            return _error(400, "body must contain a nonempty 'text' field")
        name = body.get("name")
        if name is not None and not isinstance(name, str):
            return _error(400, "'name' must be a string")
        try:
            dfa, kind, canonical, layout = _parse_submission(text, name)
        except ParseError as exc:
            return _error(400, str(exc), line=exc.line, column=exc.column)
        except SyncGamesError as exc:
            return _error(400, str(exc))
        digest = hashlib.sha256(canonical.encode()).hexdigest()[:12]
        automaton_id = f"a-{digest}"
        with state.store_lock:
            record = state.automata.get(automaton_id)
            if record is None:
                record = AutomatonRecord(
                    id=automaton_id, dfa=dfa, kind=kind, text=canonical, layout=layout
                )
                state.automata[automaton_id] = record
        return _automaton_summary(record)

    @app.get("/automata/{automaton_id}")
    def get_automaton(automaton_id: str):
        record = state.automata.get(automaton_id)
        if record is None:
            return _error(404, f"no automaton {automaton_id!r}")
        summary = _automaton_summary(record)
        summary["text"] = record.text
        summary["transitions"] = [list(row) for row in record.dfa.delta]
        return summary

    @app.get("/automata/{automaton_id}/analysis")
    def get_analysis(automaton_id: str):
        record = state.automata.get(automaton_id)
        if record is None:
            return _error(404, f"no automaton {automaton_id!r}")
        if record.analysis is None:
            record.analysis = analyze(record.dfa, state.options.analysis)
        return record.analysis

    # -- games ---------------------------------------------------------------

    @app.post("/games")
    def post_game(body: dict):
        automaton_id = body.get("automaton_id")
        record = state.automata.get(automaton_id)
        if record is None:
            return _error(404, f"no automaton {automaton_id!r}")
        rule = body.get("rule", "normal")
        if rule not in RULES:
            return _error(400, f"rule must be one of {RULES}")
        human_role = body.get("human_role", "alice")
        if human_role not in HUMAN_ROLES:
            return _error(400, f"human_role must be one of {HUMAN_ROLES}")
        initial = body.get("initial_tokens")
        if initial is not None:
            if (
                not isinstance(initial, list)
                or not initial
                or not all(isinstance(q, int) and 0 <= q < record.dfa.n for q in initial)
            ):
                return _error(400, "initial_tokens must be a nonempty list of states")
        try:
            session = GameSession(record.dfa, rule=rule, initial=initial)
        except ValueError as exc:
            return _error(400, str(exc))
        engine = Engine(
            record.dfa, rule=rule, token_cap_states=state.options.engine_token_cap_states
        )
        game = GameRecord(
            id=f"g-{uuid.uuid4().hex[:12]}",
            automaton_id=record.id,
            session=session,
            engine=engine,
            human_role=human_role,
        )
        with game.lock:
            _advance_engine(game)
        with state.store_lock:
            state.games[game.id] = game
        return _game_state(game)

    @app.get("/games/{game_id}")
    def get_game(game_id: str):
        game = state.games.get(game_id)
        if game is None:
            return _error(404, f"no game {game_id!r}")
        return _game_state(game)

    @app.post("/games/{game_id}/move")
    def post_move(game_id: str, body: dict):
        game = state.games.get(game_id)
        if game is None:
            return _error(404, f"no game {game_id!r}")
        raw = body.get("word")
        if not isinstance(raw, str):
            return _error(400, "body must contain a 'word' string")
        if not game.lock.acquire(blocking=False):
            return _error(409, "another move for this game is being processed")
        try:
            session = game.session
            if session.status != "ongoing":
                return _error(409, "game is over", status=session.status)
            side = session.turn
            if game.engine_plays(side):
                return _error(409, f"it is the engine's turn ({side})")
            expected = body.get("seq")
            if expected is not None and expected != len(session.history):
                return _error(
                    409, "game advanced since this move was prepared", seq=len(session.history)
                )
            try:
                word = session.dfa.word_from_str(raw)
            except ValueError as exc:
                return _error(400, str(exc))
            if len(word) > WORD_LENGTH_CAP:
                return _error(400, f"words longer than {WORD_LENGTH_CAP} letters are rejected")
            try:
                session.play(side, word)
            except GameError as exc:
                return _error(409 if exc.reason in ("turn", "over") else 400, str(exc))
            with game.changed:
                game.changed.notify_all()
            _advance_engine(game)
        finally:
            game.lock.release()
        return _game_state(game)

    @app.get("/games/{game_id}/hint")
    def get_hint(game_id: str):
        game = state.games.get(game_id)
        if game is None:
            return _error(404, f"no game {game_id!r}")
        session = game.session
        if session.status != "ongoing":
            return _error(409, "game is over", status=session.status)
        word = game.engine.move(session, session.turn)
        return {
            "player": session.turn,
            "word": session.dfa.word_to_str(word),
            "seq": len(session.history),
        }

    # -- events ----------------------------------------------------------------

    @app.get("/games/{game_id}/events")
    def get_events(game_id: str, after: int = 0):
        game = state.games.get(game_id)
        if game is None:
            return _error(404, f"no game {game_id!r}")
        keepalive = state.options.sse_keepalive_seconds

        def frames():
            seq = max(0, after)
            while True:
                session = game.session
                while seq < len(session.history):
                    seq += 1
                    payload = _event_payload(game, seq)
                    yield f"id: {seq}\nevent: move\ndata: {json.dumps(payload)}\n\n"
                if session.status != "ongoing":
                    yield f"event: end\ndata: {json.dumps({'status': session.status})}\n\n"
                    return
                with game.changed:
                    if len(session.history) == seq and session.status == "ongoing":
                        notified = game.changed.wait(timeout=keepalive)
                        if not notified:
                            yield ": keepalive\n\n"

        return StreamingResponse(frames(), media_type="text/event-stream")

    return app
