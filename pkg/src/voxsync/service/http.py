"""HTTP surface of the sync TTS service."""

from __future__ import annotations

import json
import re

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse, PlainTextResponse
from starlette.concurrency import run_in_threadpool

from .core import ServiceError, SynthesisRequest, SyncTtsService
from .storage import FilesystemStore, audio_relpath

_OBJECT_NAME = re.compile(r"^[0-9a-f]{16}\.wav$")


def error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse({"error": code, "message": message}, status_code=status)


def create_app(service: SyncTtsService) -> FastAPI:
    app = FastAPI(title="voxsync sync tts", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.service = service

    @app.post("/v1/tts/sync")
    async def synthesize(request: Request):
        try:
            body = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            return error_response(400, "bad_request", "body must be a JSON object")
        if not isinstance(body, dict):
            return error_response(400, "bad_request", "body must be a JSON object")
        text = body.get("text", "")
        voice = body.get("voice", "")
        if not isinstance(text, str) or not isinstance(voice, str):
            return error_response(400, "bad_request", "text and voice must be strings")
        req = SynthesisRequest(
            text=text, voice=voice, request_id=request.headers.get("x-request-id", "")
        )
        try:
            result = await run_in_threadpool(service.handle_synthesize, req)
        except ServiceError as exc:
            return error_response(exc.http_status, exc.code, str(exc))
        return JSONResponse(
            {
                "url": result.url,
                "cached": result.cached,
                "synthesis_ms": result.synthesis_ms,
                "audio_duration_ms": result.audio_duration_ms,
            },
            headers={"x-request-id": req.request_id} if req.request_id else {},
        )

    @app.get("/audio/{voice}/{name}")
    async def audio(voice: str, name: str):
        if voice not in service.voices:
            return error_response(404, "unknown_voice", f"voice {voice!r} is not registered")
        if not _OBJECT_NAME.match(name):
            return error_response(404, "not_found", "no such object")
        relpath = audio_relpath(voice, name[:16])
        store = service.store
        if isinstance(store, FilesystemStore):
            path = store.root / relpath
            if not path.is_file():
                return error_response(404, "not_found", "no such object")
            return FileResponse(path, media_type="audio/wav")
        if not store.exists(relpath):
            return error_response(404, "not_found", "no such object")
        return PlainTextResponse(store.get(relpath), media_type="audio/wav")

    @app.get("/healthz")
    async def healthz():
        return PlainTextResponse("ok\n")

    @app.get("/metrics")
    async def metrics():
        return PlainTextResponse(service.metrics.render())

    return app
