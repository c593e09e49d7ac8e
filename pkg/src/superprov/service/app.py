"""HTTP service wrapping the provenance engine for remote UIs.

Sessions live in memory keyed by id; each one is guarded by a lock so
concurrent requests honor the engine's single-writer contract. Mutation
responses embed the fresh snapshot summary, so a client never polls.
"""
from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .. import analysis, layout, persistence, recovery
from ..core import Session
from ..embedding import SessionConfig, create_session
from ..errors import (
    DuplicateWidgetId,
    InvalidConfig,
    InvalidInitialValue,
    InvalidValue,
    InvalidViewport,
    InvalidWindow,
    MalformedLog,
    ParseError,
    ProvenanceError,
    ReentrancyError,
    SchemaError,
    SeqOutOfRange,
    UnknownKey,
    UnknownWidgetId,
)
from . import schemas
from .scent import DEFAULT_BINS, scent_bars_for

_ERROR_STATUS = {
    UnknownWidgetId: 404,
    DuplicateWidgetId: 409,
    ReentrancyError: 409,
    SeqOutOfRange: 400,
    InvalidValue: 400,
    InvalidInitialValue: 400,
    InvalidConfig: 400,
    InvalidWindow: 400,
    InvalidViewport: 400,
    UnknownKey: 400,
    ParseError: 400,
    SchemaError: 400,
    MalformedLog: 400,
}


@dataclass
class SessionEntry:
    session: Session
    config: SessionConfig
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self):
        self._entries: Dict[str, SessionEntry] = {}
        self._lock = threading.Lock()

    def add(self, session: Session, config: SessionConfig) -> str:
        session_id = uuid.uuid4().hex[:12]
        with self._lock:
            self._entries[session_id] = SessionEntry(session=session, config=config)
        return session_id

    def get(self, session_id: str) -> SessionEntry:
        with self._lock:
            entry = self._entries.get(session_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return entry

    def drop(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._entries:
                raise HTTPException(
                    status_code=404, detail=f"unknown session {session_id}"
                )
            del self._entries[session_id]

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._entries)


def _frontend_dir() -> Optional[Path]:
    override = os.environ.get("SUPERPROV_FRONTEND_DIR")
    if override:
        path = Path(override)
        return path if path.is_dir() else None
    path = Path(__file__).resolve().parents[3] / "frontend" / "dist"
    return path if path.is_dir() else None


def create_app() -> FastAPI:
    app = FastAPI(title="superprov", version="0.1.0")
    store = SessionStore()
    app.state.store = store

    @app.exception_handler(ProvenanceError)
    async def provenance_error(request: Request, exc: ProvenanceError):
        status = _ERROR_STATUS.get(type(exc), 400)
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    # -- session lifecycle --------------------------------------------------

    @app.post("/api/sessions", response_model=schemas.CreateSessionResponse)
    def create(config: Optional[schemas.SessionConfigModel] = None):
        config = config or schemas.SessionConfigModel()
        session_config = SessionConfig(
            palette=tuple(config.palette) if config.palette else None,
            coalescing_window_ms=config.coalescing_window_ms,
            a_min=config.a_min,
            a_max=config.a_max,
        )
        session = create_session(session_config)
        return schemas.CreateSessionResponse(session_id=store.add(session, session_config))

    @app.get("/api/sessions")
    def list_sessions():
        return {"sessions": store.ids()}

    @app.delete("/api/sessions/{session_id}", status_code=204)
    def delete(session_id: str):
        store.drop(session_id)
        return Response(status_code=204)

    @app.post("/api/sessions/import", response_model=schemas.CreateSessionResponse)
    def import_session(body: schemas.ImportSessionRequest):
        data = json.dumps(body.document).encode("utf-8")
        widgets, events = persistence.parse_session(data)
        session = recovery.build_session(widgets, events)
        session_config = SessionConfig()
        session.config = session_config
        return schemas.CreateSessionResponse(session_id=store.add(session, session_config))

    # -- registry and ingestion ---------------------------------------------

    @app.post("/api/sessions/{session_id}/widgets", response_model=schemas.WidgetModel)
    def register_widget(session_id: str, body: schemas.RegisterWidgetRequest):
        entry = store.get(session_id)
        with entry.lock:
            descriptor = entry.session.register_widget(
                body.id,
                body.kind,
                schemas.value_to_core(body.initial_value),
                label=body.label,
                domain=schemas.domain_to_core(body.domain),
            )
            return schemas.widget_from_core(descriptor, entry.session.palette)

    @app.post(
        "/api/sessions/{session_id}/events",
        response_model=schemas.RecordEventResponse,
    )
    def record_event(session_id: str, body: schemas.RecordEventRequest):
        entry = store.get(session_id)
        with entry.lock:
            seq = entry.session.record_interaction(
                body.widget_id,
                schemas.value_to_core(body.value),
                wall_time=body.wall_time,
            )
            snapshot = entry.session.snapshot()
        return schemas.RecordEventResponse(
            seq=seq,
            snapshot=schemas.snapshot_from_core(snapshot, entry.session.palette),
        )

    @app.get("/api/sessions/{session_id}/snapshot", response_model=schemas.SnapshotModel)
    def get_snapshot(session_id: str):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        return schemas.snapshot_from_core(snapshot, entry.session.palette)

    @app.get("/api/sessions/{session_id}/events")
    def list_events(session_id: str):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        return {"events": [persistence.event_to_json(e) for e in snapshot.events]}

    # -- navigation / restore ------------------------------------------------

    @app.post(
        "/api/sessions/{session_id}/navigate", response_model=schemas.NavigateResponse
    )
    def navigate(session_id: str, body: schemas.NavigateRequest):
        entry = store.get(session_id)
        with entry.lock:
            entry.session.dispatch_navigate(body.widget_id)
        return schemas.NavigateResponse(widget_id=body.widget_id)

    @app.post(
        "/api/sessions/{session_id}/restore", response_model=schemas.RestoreResponse
    )
    def restore(session_id: str, body: schemas.RestoreRequest):
        entry = store.get(session_id)
        with entry.lock:
            state = recovery.restore_to(
                entry.session, body.seq, wall_time=body.wall_time
            )
            snapshot = entry.session.snapshot()
        return schemas.RestoreResponse(
            state={
                widget_id: schemas.value_from_core(value)
                for widget_id, value in state.items()
            },
            snapshot=schemas.snapshot_from_core(snapshot, entry.session.palette),
        )

    # -- geometry -------------------------------------------------------------

    @app.get(
        "/api/sessions/{session_id}/layout/aggregate",
        response_model=schemas.AggregateLayoutResponse,
    )
    def aggregate_layout(
        session_id: str,
        width: float = Query(640.0),
        height: float = Query(480.0),
        a_min: Optional[float] = Query(None),
        a_max: Optional[float] = Query(None),
    ):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        boxes = layout.compute_aggregate_layout(
            snapshot,
            width,
            height,
            _first_set(a_min, entry.config.a_min, layout.DEFAULT_A_MIN),
            _first_set(a_max, entry.config.a_max, layout.DEFAULT_A_MAX),
            palette=entry.session.palette,
        )
        return schemas.aggregate_from_core(boxes)

    @app.get(
        "/api/sessions/{session_id}/layout/temporal",
        response_model=schemas.TemporalLayoutResponse,
    )
    def temporal_layout(session_id: str, mode: str = Query("sequence")):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        temporal = layout.compute_temporal_layout(
            snapshot, _layout_mode(mode), palette=entry.session.palette
        )
        return schemas.temporal_from_core(temporal)

    @app.get(
        "/api/sessions/{session_id}/widgets/{widget_id}/scent",
        response_model=schemas.ScentResponse,
    )
    def widget_scent(
        session_id: str,
        widget_id: str,
        orientation: str = Query(layout.HORIZONTAL),
        width: float = Query(160.0),
        height: float = Query(24.0),
        bins: int = Query(DEFAULT_BINS, ge=1, le=100),
    ):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        bars = scent_bars_for(
            snapshot,
            widget_id,
            orientation=orientation,
            width=width,
            height=height,
            bins=bins,
        )
        return schemas.ScentResponse(
            orientation=orientation,
            width=width,
            height=height,
            bars=[
                schemas.ScentBarModel(
                    key=b.key, offset=b.offset, length=b.length, color=b.color
                )
                for b in bars
            ],
        )

    # -- analysis and export ---------------------------------------------------

    @app.get("/api/sessions/{session_id}/report")
    def report(session_id: str):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        return persistence.report_to_json(analysis.audit_report(snapshot))

    @app.get("/api/sessions/{session_id}/bias", response_model=schemas.BiasResponse)
    def bias(session_id: str, window: int = Query(1)):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        matrix = analysis.co_interaction(snapshot, window)
        return schemas.BiasResponse(
            untouched=analysis.untouched_widgets(snapshot),
            ranking=analysis.usage_ranking(snapshot),
            window_k=window,
            pairs=[
                schemas.CoInteractionPairModel(a=a, b=b, count=count)
                for a, b, count in matrix.pairs()
            ],
        )

    @app.get("/api/sessions/{session_id}/export")
    def export(session_id: str, exported_at: Optional[int] = Query(None)):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        data = persistence.serialize_session(snapshot, exported_at=exported_at)
        return Response(
            content=data,
            media_type="application/json",
            headers={"Content-Disposition": 'attachment; filename="session.json"'},
        )

    @app.get("/api/sessions/{session_id}/svg/aggregate")
    def aggregate_svg(
        session_id: str,
        width: float = Query(640.0),
        height: float = Query(480.0),
    ):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        boxes = layout.compute_aggregate_layout(
            snapshot, width, height, palette=entry.session.palette
        )
        return Response(
            content=persistence.render_svg(boxes, width, height),
            media_type="image/svg+xml",
        )

    @app.get("/api/sessions/{session_id}/svg/temporal")
    def temporal_svg(
        session_id: str,
        mode: str = Query("sequence"),
        width: float = Query(960.0),
        height: float = Query(0.0),
    ):
        entry = store.get(session_id)
        with entry.lock:
            snapshot = entry.session.snapshot()
        temporal = layout.compute_temporal_layout(
            snapshot, _layout_mode(mode), palette=entry.session.palette
        )
        if height <= 0:
            height = max(temporal.total_rows, 1) * 28.0
        return Response(
            content=persistence.render_svg(temporal, width, height),
            media_type="image/svg+xml",
        )

    frontend = _frontend_dir()
    if frontend is not None:
        app.mount("/", StaticFiles(directory=frontend, html=True), name="frontend")

    return app


def _first_set(*values: Optional[float]) -> float:
    for value in values:
        if value is not None:
            return value
    raise ValueError("no value set")


def _layout_mode(mode: str) -> str:
    if mode in (layout.SEQUENCE_MODE, layout.WALL_CLOCK_MODE):
        return mode
    if mode == "wall-clock":
        return layout.WALL_CLOCK_MODE
    raise HTTPException(status_code=422, detail=f"unknown layout mode {mode!r}")


app = create_app()
