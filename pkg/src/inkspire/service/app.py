"""HTTP API over the session manager.

Routes (JSON unless noted):

    POST   /sessions                          {subject, concept}      -> session state
    GET    /sessions/{id}                                             -> session state
    GET    /sessions/{id}/export?images=base64                        -> full document
    POST   /sessions/{id}/strokes             {points, width}         -> {stroke_id, job_id}
    DELETE /sessions/{id}/strokes/{sid}                               -> state (erase)
    POST   /sessions/{id}/undo | /clear | /remix | /generate          -> state
    POST   /sessions/{id}/inspirations        {count?, refresh?}      -> inspiration set
    POST   /sessions/{id}/inspiration         {label}                 -> state
    PUT    /sessions/{id}/prompt              {text}                  -> state
    GET    /sessions/{id}/iterations/{k}/design|scaffold|control      -> PNG
    GET    /sessions/{id}/events                                      -> JSONL
    GET    /sessions/{id}/stats                                       -> log statistics
    GET    /sessions/{id}/updates                                     -> SSE stream

Errors: 404 unknown ids, 400 invariant violations, 502 backend failures
(body names the failing backend kind).
"""

from __future__ import annotations

import json
import queue as queue_mod
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse
from pydantic import BaseModel, Field

from ..analogy import ReplyParseError
from ..backends.base import BackendError
from ..session import InvalidStrokeError, SessionError, UnknownSessionError, UnknownStrokeError
from ..stats import events_to_jsonl
from .config import ServiceConfig
from .manager import SessionManager


class CreateSessionBody(BaseModel):
    subject: str
    concept: str
    canvas_width: int | None = None
    canvas_height: int | None = None


class StrokeBody(BaseModel):
    points: list[tuple[float, float]] = Field(min_length=1)
    width: float = 3.0


class InspirationsBody(BaseModel):
    count: int | None = None
    refresh: bool = False


class SelectInspirationBody(BaseModel):
    label: str


class PromptBody(BaseModel):
    text: str


def create_app(
    config: ServiceConfig | None = None,
    manager: SessionManager | None = None,
) -> FastAPI:
    manager = manager or SessionManager(config)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        manager.shutdown()

    app = FastAPI(title="inkspire", version="0.1.0", lifespan=lifespan)
    app.state.manager = manager
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _wrap(fn):
        try:
            return fn()
        except (UnknownSessionError, UnknownStrokeError) as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        except ReplyParseError as exc:
            # before ValueError: an unparseable LLM reply is a backend fault
            raise HTTPException(
                status_code=502,
                detail={"backend": "llm", "error": str(exc), "raw": exc.raw[:500]},
            ) from exc
        except (InvalidStrokeError, SessionError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except BackendError as exc:
            raise HTTPException(
                status_code=502, detail={"backend": exc.kind, "error": str(exc)}
            ) from exc

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        def run():
            canvas = None
            if body.canvas_width and body.canvas_height:
                canvas = (body.canvas_width, body.canvas_height)
            session = manager.create_session(body.subject, body.concept, canvas)
            return manager.state(session.id)

        return _wrap(run)

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        return _wrap(lambda: manager.state(session_id))

    @app.get("/sessions/{session_id}/export")
    def export_session(session_id: str, images: str = "none"):
        return _wrap(lambda: manager.export(session_id, embed_images=images == "base64"))

    @app.post("/sessions/{session_id}/strokes", status_code=201)
    def add_stroke(session_id: str, body: StrokeBody):
        def run():
            stroke, job = manager.add_stroke(session_id, body.points, body.width)
            return {"stroke_id": stroke.id, "job_id": job.job_id}

        return _wrap(run)

    @app.delete("/sessions/{session_id}/strokes/{stroke_id}")
    def erase_stroke(session_id: str, stroke_id: str):
        def run():
            manager.erase_stroke(session_id, stroke_id)
            return manager.state(session_id)

        return _wrap(run)

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        def run():
            manager.undo(session_id)
            return manager.state(session_id)

        return _wrap(run)

    @app.post("/sessions/{session_id}/clear")
    def clear(session_id: str):
        def run():
            manager.clear(session_id)
            return manager.state(session_id)

        return _wrap(run)

    @app.post("/sessions/{session_id}/remix")
    def remix(session_id: str):
        def run():
            seed, job = manager.remix(session_id)
            state = manager.state(session_id)
            state["job_id"] = job.job_id
            state["seed"] = seed
            return state

        return _wrap(run)

    @app.post("/sessions/{session_id}/generate")
    def generate(session_id: str):
        def run():
            job = manager.schedule_generation(session_id)
            return {"job_id": job.job_id}

        return _wrap(run)

    @app.post("/sessions/{session_id}/inspirations")
    def request_inspirations(session_id: str, body: InspirationsBody | None = None):
        def run():
            body_ = body or InspirationsBody()
            result = manager.request_inspirations(
                session_id, count=body_.count, refresh=body_.refresh
            )
            return {
                "subject": result.request.subject,
                "concept": result.request.concept,
                "items": [
                    {"label": i.label, "category": i.category, "parent": i.parent}
                    for i in result.items
                ],
                "warnings": result.warnings,
            }

        return _wrap(run)

    @app.post("/sessions/{session_id}/inspiration")
    def select_inspiration(session_id: str, body: SelectInspirationBody):
        def run():
            job = manager.select_inspiration(session_id, body.label)
            state = manager.state(session_id)
            state["job_id"] = job.job_id
            return state

        return _wrap(run)

    @app.put("/sessions/{session_id}/prompt")
    def set_prompt(session_id: str, body: PromptBody):
        def run():
            manager.set_prompt(session_id, body.text)
            return manager.state(session_id)

        return _wrap(run)

    @app.get("/sessions/{session_id}/iterations/{index}/{kind}")
    def iteration_image(session_id: str, index: int, kind: str):
        if kind not in ("design", "scaffold", "control"):
            raise HTTPException(status_code=404, detail=f"unknown image kind {kind!r}")

        def run():
            data = manager.iteration_image(session_id, index, kind)
            if data is None:
                raise HTTPException(
                    status_code=404,
                    detail=f"iteration {index} has no {kind} image (missing or failed)",
                )
            return Response(content=data, media_type="image/png")

        return _wrap(run)

    @app.get("/sessions/{session_id}/events")
    def events(session_id: str):
        def run():
            text = events_to_jsonl(manager.events(session_id))
            return Response(content=text, media_type="application/x-ndjson; charset=utf-8")

        return _wrap(run)

    @app.get("/sessions/{session_id}/stats")
    def stats(session_id: str):
        return _wrap(lambda: manager.stats(session_id).to_dict())

    @app.get("/sessions/{session_id}/updates")
    def updates(session_id: str, max_events: int | None = None):
        """Long-lived event stream of iteration completions (SSE)."""
        _wrap(lambda: manager.get(session_id))

        def stream():
            sub = manager.subscribe(session_id)
            sent = 0
            try:
                while max_events is None or sent < max_events:
                    try:
                        # short wait so disconnects and shutdown are noticed quickly
                        message = sub.get(timeout=2.0)
                    except queue_mod.Empty:
                        yield ": keep-alive\n\n"
                        continue
                    yield f"data: {json.dumps(message)}\n\n"
                    sent += 1
            finally:
                manager.unsubscribe(session_id, sub)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
