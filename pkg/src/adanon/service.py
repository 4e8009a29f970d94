"""HTTP service exposing the curve, recognition, anonymization, and edits.

Responses never carry original sensitive surfaces unless the request sets
``include_originals``; callers already hold their own input text, so the
default wire format only describes where changes happened.
"""

from __future__ import annotations

import threading
from typing import Literal

from fastapi import Depends, FastAPI, Header, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import AppConfig, build_engine
from .engine import AnonymizeResult, Engine, Mode, apply_user_edit
from .errors import AdanonError, BadIndexError, BadResponseError, EmptyInputError, TransportError
from .pseudonymizer import PseudonymSession
from .sessions import SessionStore


class PointModel(BaseModel):
    x: float
    y: float


class AnonymizeRequest(BaseModel):
    text: str
    mode: Literal["automatic", "privacy_only", "full", "dp"]
    point: PointModel | None = None
    epsilon: float | None = None
    session_id: str | None = None
    backend: Literal["rules", "llm"] = "rules"
    include_originals: bool = False
    dp_seed: int = 0


class RecognizeRequest(BaseModel):
    text: str
    backend: Literal["rules", "llm"] = "rules"
    include_originals: bool = False


class EditRequest(BaseModel):
    session_id: str
    region_index: int
    new_text: str


def _mode_from_request(req: AnonymizeRequest) -> Mode:
    if req.mode == "automatic":
        return Mode.automatic()
    if req.mode == "privacy_only":
        if req.point is None:
            raise HTTPException(400, detail="privacy_only mode needs a point with x")
        return Mode.privacy_only(req.point.x)
    if req.mode == "full":
        if req.point is None:
            raise HTTPException(400, detail="full mode needs a point")
        return Mode.full(req.point.x, req.point.y)
    if req.epsilon is None or not req.epsilon > 0:
        raise HTTPException(400, detail="dp mode needs epsilon > 0")
    return Mode.dp(req.epsilon)


def _result_payload(
    result: AnonymizeResult, session_id: str, include_originals: bool
) -> dict:
    doc = result.doc
    changes = []
    for i, region in enumerate(doc.changes):
        entry = {
            "start": region.start,
            "end": region.end,
            "replacement": region.replacement,
            "category": region.category,
            "type": region.type_name,
        }
        if include_originals:
            entry["original"] = doc.originals[i]
        changes.append(entry)
    snapped = None
    if result.plan is not None:
        snapped = {"x": result.plan.snapped_point.x, "y": result.plan.snapped_point.y}
    return {
        "output_text": doc.output_text,
        "changes": changes,
        "achieved": {"privacy": doc.achieved[0], "utility": doc.achieved[1]},
        "snapped_point": snapped,
        "warnings": list(doc.warnings),
        "session_id": session_id,
    }


class ServiceState:
    """Per-process session map and the last result per session (for edits)."""

    def __init__(self, engine: Engine, store: SessionStore | None):
        self.engine = engine
        self.store = store
        self.sessions: dict[str, PseudonymSession] = {}
        self.last_results: dict[str, tuple[bool, AnonymizeResult]] = {}
        self.lock = threading.Lock()

    def session(self, session_id: str) -> PseudonymSession:
        with self.lock:
            if session_id in self.sessions:
                return self.sessions[session_id]
        session = self.store.load(session_id) if self.store else PseudonymSession.new(session_id)
        with self.lock:
            return self.sessions.setdefault(session_id, session)

    def persist(self, session: PseudonymSession) -> None:
        if self.store:
            self.store.save(session)


def create_app(engine: Engine | None = None, config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig()
    engine = engine or build_engine(config)
    store = SessionStore(config.state_dir) if config.state_dir else None
    state = ServiceState(engine, store)
    app = FastAPI(title="adanon", docs_url=None, redoc_url=None)

    async def check_auth(authorization: str | None = Header(default=None)) -> None:
        if config.auth_token and authorization != f"Bearer {config.auth_token}":
            raise HTTPException(401, detail="missing or invalid bearer token")

    @app.exception_handler(RequestValidationError)
    async def on_validation(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "bad_request", "detail": str(exc)})

    @app.exception_handler(AdanonError)
    async def on_domain_error(_request: Request, exc: AdanonError):
        status = 400
        if isinstance(exc, (TransportError, BadResponseError)):
            status = 502
        code = type(exc).__name__.removesuffix("Error")
        return JSONResponse(status_code=status, content={"error": code, "detail": str(exc)})

    @app.exception_handler(ValueError)
    async def on_value_error(_request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"error": "bad_request", "detail": str(exc)})

    @app.get("/v1/curve", dependencies=[Depends(check_auth)])
    async def curve():
        return engine.frontier.to_json()

    @app.post("/v1/recognize", dependencies=[Depends(check_auth)])
    async def recognize(req: RecognizeRequest):
        if not req.text:
            raise EmptyInputError("text must not be empty")
        spans, warnings = engine.recognize(req.text, req.backend)
        items = []
        for span in spans:
            item = {
                "start": span.start,
                "end": span.end,
                "type": span.type_name,
                "category": span.category,
                "source": span.source.value,
            }
            if req.include_originals:
                item["surface"] = span.surface
            items.append(item)
        return {"spans": items, "warnings": list(warnings)}

    @app.post("/v1/anonymize", dependencies=[Depends(check_auth)])
    async def anonymize(req: AnonymizeRequest):
        mode = _mode_from_request(req)
        session_id = req.session_id or PseudonymSession.new().session_id
        session = state.session(session_id)
        result = engine.run(
            req.text, mode, backend=req.backend, session=session, dp_seed=req.dp_seed
        )
        state.persist(session)
        with state.lock:
            state.last_results[session_id] = (req.include_originals, result)
        return _result_payload(result, session_id, req.include_originals)

    @app.post("/v1/edit", dependencies=[Depends(check_auth)])
    async def edit(req: EditRequest):
        with state.lock:
            stored = state.last_results.get(req.session_id)
        if stored is None:
            raise HTTPException(404, detail=f"no anonymization result for session {req.session_id}")
        include_originals, result = stored
        try:
            updated = apply_user_edit(result, req.region_index, req.new_text)
        except BadIndexError as exc:
            raise HTTPException(400, detail=str(exc)) from exc
        with state.lock:
            state.last_results[req.session_id] = (include_originals, updated)
        return _result_payload(updated, req.session_id, include_originals)

    return app


def serve(port: int, config: AppConfig | None = None, host: str = "127.0.0.1") -> None:
    """Run the service until interrupted; raises ConfigError/BindError analogs."""
    import uvicorn

    app = create_app(config=config)
    uvicorn.run(app, host=host, port=port, log_level="warning")
