"""HTTP wrapper around sessions for the browser UI and scripted clients.

Sessions live in memory; every finalized interaction is appended to a
per-session journal file (flushed before the response goes out), so a
restarted server rebuilds identical sessions, and the journals double as
eval-harness inputs.  The learner never sees goal states: goals flow only
through view payloads for the human.
"""

from __future__ import annotations

import os
import secrets
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .blocks import state_to_lists
from .curriculum import default_curriculum
from .session import (
    EmptyHistoryError,
    InteractionRecord,
    ProtocolError,
    Session,
    SessionConfig,
    average_scrolls,
    online_accuracy,
    record_to_dict,
    _dumps,
)

DEFAULT_PORT = 8711


class UtteranceBody(BaseModel):
    text: str


class SelectionBody(BaseModel):
    index: int


class _Managed:
    def __init__(self, session: Session, journal: Path | None):
        self.session = session
        self.lock = threading.Lock()
        self.journal = journal

    def append(self, record: InteractionRecord) -> None:
        if self.journal is None:
            return
        with self.journal.open("a") as fh:
            fh.write(_dumps(record_to_dict(record, self.session.session_id)) + "\n")
            fh.flush()
            os.fsync(fh.fileno())


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="shrdlurn game server")
    sessions: dict[str, _Managed] = {}
    root = Path(data_dir) if data_dir else None
    if root is not None:
        root.mkdir(parents=True, exist_ok=True)
        for path in sorted(root.glob("*.jsonl")):
            session = Session.import_log(path.read_text())
            managed = _Managed(session, path)
            session.on_record = managed.append
            sessions[session.session_id] = managed
    app.state.sessions = sessions

    def get(session_id: str) -> _Managed:
        managed = sessions.get(session_id)
        if managed is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return managed

    def view(session: Session) -> dict:
        body = {
            "session_id": session.session_id,
            "complete": session.complete,
            "level_index": session.level_index,
            "level_count": len(session.curriculum),
            "config": session.config.to_dict(),
        }
        if not session.complete:
            level = session.current_level
            body.update(
                level_id=level.id,
                current_state=state_to_lists(session.state),
                start_state=state_to_lists(level.start),
                goal_state=state_to_lists(level.goal),
            )
        return body

    def metrics(session: Session) -> dict:
        try:
            acc = online_accuracy(session.history)
            scrolls = average_scrolls(session.history)
        except EmptyHistoryError:
            return {"empty": True}
        per_level = []
        for level in session.curriculum:
            records = [r for r in session.history if r.labeled and r.level_id == level.id]
            if records:
                per_level.append(
                    {
                        "level_id": level.id,
                        "interactions": len(records),
                        "online_accuracy": online_accuracy(records),
                        "average_scrolls": average_scrolls(records),
                    }
                )
        return {
            "empty": False,
            "online_accuracy": acc,
            "average_scrolls": scrolls,
            "interactions": sum(1 for r in session.history if r.labeled),
            "per_level": per_level,
        }

    @app.post("/sessions")
    def create_session(overrides: dict | None = None):
        try:
            config = SessionConfig.from_dict(overrides or {})
        except (ValueError, TypeError) as err:
            raise HTTPException(status_code=422, detail=str(err))
        session_id = secrets.token_hex(16)
        journal = root / f"{session_id}.jsonl" if root is not None else None
        session = Session(config, default_curriculum(), session_id=session_id)
        managed = _Managed(session, journal)
        session.on_record = managed.append
        if journal is not None:
            journal.write_text(session.export_log())
        sessions[session_id] = managed
        return {"session_id": session_id, "view": view(session)}

    @app.post("/sessions/{session_id}/utterance")
    def post_utterance(session_id: str, body: UtteranceBody):
        managed = get(session_id)
        with managed.lock:
            try:
                candidates = managed.session.submit_utterance(body.text)
            except ProtocolError as err:
                raise HTTPException(status_code=409, detail=str(err))
            return {
                "utterance": body.text,
                "candidates": [
                    {
                        "state": state_to_lists(e.denotation),
                        "best_lf": e.best_lf.canonical,
                        "prob": e.max_prob,
                    }
                    for e in candidates
                ],
            }

    @app.post("/sessions/{session_id}/selection")
    def post_selection(session_id: str, body: SelectionBody):
        managed = get(session_id)
        with managed.lock:
            try:
                managed.session.select_candidate(body.index)
            except ProtocolError as err:
                raise HTTPException(status_code=409, detail=str(err))
            return {"view": view(managed.session), "metrics": metrics(managed.session)}

    @app.get("/sessions/{session_id}")
    def get_view(session_id: str):
        return view(get(session_id).session)

    @app.get("/sessions/{session_id}/metrics")
    def get_metrics(session_id: str):
        return metrics(get(session_id).session)

    @app.get("/sessions/{session_id}/log", response_class=PlainTextResponse)
    def get_log(session_id: str):
        return get(session_id).session.export_log()

    static_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def serve(port: int | None = None, data_dir: str | None = None) -> None:
    import uvicorn

    port = port or int(os.environ.get("SHRDLURN_PORT", DEFAULT_PORT))
    data_dir = data_dir or os.environ.get("SHRDLURN_DATA_DIR") or "shrdlurn-data"
    uvicorn.run(create_app(data_dir), host="0.0.0.0", port=port)
