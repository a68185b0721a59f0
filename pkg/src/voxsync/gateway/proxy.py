"""The gateway app: api-key authentication, then path-prefix routing to the
sync TTS upstream. Request and response bodies are relayed unchanged; every
forwarded request carries an X-Request-Id (generated when absent)."""

from __future__ import annotations

import logging
import threading
import uuid
from contextlib import asynccontextmanager
from pathlib import Path

import httpx
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from starlette.staticfiles import StaticFiles

from .config import GatewayConfig, match_route
from .keystore import ALLOW, Keystore, KeystoreError, MISSING

log = logging.getLogger("voxsync.gateway")

CONNECT_TIMEOUT_S = 2.0
RESPONSE_TIMEOUT_S = 30.0

# Paths served by the gateway itself, without authentication.
_PUBLIC_PREFIXES = ("/healthz", "/demo")

_HOP_BY_HOP = {
    "connection", "keep-alive", "proxy-authenticate", "proxy-authorization",
    "te", "trailers", "transfer-encoding", "upgrade", "host",
    "content-length", "content-encoding",
}


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse({"error": code, "message": message}, status_code=status)


class GatewayState:
    def __init__(self, config: GatewayConfig):
        self.config = config
        self._keystore = Keystore.load(config.keystore)
        self._lock = threading.Lock()
        self.upstream_client: httpx.AsyncClient | None = None

    @property
    def keystore(self) -> Keystore:
        return self._keystore

    def reload_keystore(self) -> int:
        """Atomically swap in the keystore file's current contents."""
        fresh = Keystore.load(self.config.keystore)
        with self._lock:
            self._keystore = fresh
        log.info("keystore reloaded: %d records", len(fresh))
        return len(fresh)


def create_gateway_app(config: GatewayConfig) -> FastAPI:
    state = GatewayState(config)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        state.upstream_client = httpx.AsyncClient(
            timeout=httpx.Timeout(RESPONSE_TIMEOUT_S, connect=CONNECT_TIMEOUT_S),
            follow_redirects=False,
        )
        try:
            yield
        finally:
            await state.upstream_client.aclose()

    app = FastAPI(
        title="voxsync gateway", docs_url=None, redoc_url=None, openapi_url=None, lifespan=lifespan
    )
    app.state.gateway = state

    if config.demo_dir:
        app.mount("/demo", StaticFiles(directory=Path(config.demo_dir), html=True), name="demo")

    @app.get("/healthz")
    async def healthz():
        return Response("ok\n", media_type="text/plain")

    @app.post("/admin/reload-keys")
    async def reload_keys(request: Request):
        denied = _authenticate(request)
        if denied is not None:
            return denied
        try:
            count = state.reload_keystore()
        except (KeystoreError, OSError) as exc:
            return _error(400, "keystore_reload_failed", str(exc))
        return JSONResponse({"loaded": count})

    def _authenticate(request: Request) -> JSONResponse | None:
        """None when allowed; an error response otherwise."""
        presented = request.headers.get("x-api-key")
        if presented is None and request.url.path.startswith("/audio/"):
            # Browser audio elements cannot set headers; allow the query
            # parameter form for audio retrieval only.
            presented = request.query_params.get("api_key")
        status, label = state.keystore.check(presented)
        if status == ALLOW:
            log.info("allow label=%s path=%s", label, request.url.path)
            return None
        if status == MISSING:
            return _error(401, "unauthorized", "missing x-api-key header")
        return _error(403, "forbidden", "api key not recognized or disabled")

    @app.api_route("/{path:path}", methods=["GET", "POST", "PUT", "DELETE", "PATCH", "HEAD"])
    async def forward(request: Request, path: str):
        full_path = "/" + path
        if any(full_path == p or full_path.startswith(p + "/") for p in _PUBLIC_PREFIXES):
            return _error(404, "not_found", "no such path")  # public paths have own handlers
        denied = _authenticate(request)
        if denied is not None:
            return denied
        route = match_route(state.config.routes, full_path)
        if route is None:
            return _error(404, "no_route", f"no route for {full_path}")

        request_id = request.headers.get("x-request-id") or str(uuid.uuid4())
        headers = {
            name: value
            for name, value in request.headers.items()
            if name.lower() not in _HOP_BY_HOP
        }
        headers["x-request-id"] = request_id
        body = await request.body()
        url = route.upstream + full_path
        if request.url.query:
            url += "?" + request.url.query
        try:
            upstream_response = await state.upstream_client.request(
                request.method, url, content=body, headers=headers
            )
        except (httpx.ConnectError, httpx.ConnectTimeout) as exc:
            return _error(502, "upstream_unreachable", str(exc))
        except httpx.TimeoutException as exc:
            return _error(504, "upstream_timeout", str(exc))

        relay_headers = {
            name: value
            for name, value in upstream_response.headers.items()
            if name.lower() not in _HOP_BY_HOP
        }
        relay_headers["x-request-id"] = request_id
        return Response(
            content=upstream_response.content,
            status_code=upstream_response.status_code,
            headers=relay_headers,
        )

    return app
