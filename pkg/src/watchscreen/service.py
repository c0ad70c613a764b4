"""HTTP screening service.

``POST /screen`` takes a JSON :class:`ScreenRequest` and returns the same
result document the ``search`` subcommand prints; the in-service latency
is reported in the ``X-Screen-Latency-Ms`` header.  ``GET /health``
answers 503 until the index has finished loading.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Callable, Optional, Tuple

from .engine import Screener
from .filtering import FilterConfig

log = logging.getLogger(__name__)

LATENCY_HEADER = "X-Screen-Latency-Ms"


class BadRequest(ValueError):
    pass


@dataclass(frozen=True)
class ScreenRequest:
    text: str
    format: str = "text"
    k: Optional[int] = None
    sigma: Optional[float] = None
    weighted: Optional[bool] = None

    @classmethod
    def from_json(cls, body: bytes) -> "ScreenRequest":
        try:
            data = json.loads(body.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise BadRequest(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise BadRequest("request body must be a JSON object")
        unknown = set(data) - {"text", "format", "k", "sigma", "weighted"}
        if unknown:
            raise BadRequest(f"unknown fields: {sorted(unknown)}")
        text = data.get("text")
        if not isinstance(text, str):
            raise BadRequest("'text' must be a string")
        fmt = data.get("format", "text")
        if fmt not in ("mt", "text"):
            raise BadRequest("'format' must be 'mt' or 'text'")
        k, sigma, weighted = data.get("k"), data.get("sigma"), data.get("weighted")
        if k is not None and (isinstance(k, bool) or not isinstance(k, int)):
            raise BadRequest("'k' must be an integer")
        if sigma is not None and (isinstance(sigma, bool) or not isinstance(sigma, (int, float))):
            raise BadRequest("'sigma' must be a number")
        if weighted is not None and not isinstance(weighted, bool):
            raise BadRequest("'weighted' must be a boolean")
        try:
            FilterConfig(k=k if k is not None else 1, sigma=sigma if sigma is not None else 0.0)
        except ValueError as exc:
            raise BadRequest(str(exc)) from None
        return cls(text, fmt, k, sigma, weighted)


class ScreenService:
    """Holds the current screener; a reload swaps it in one assignment."""

    def __init__(self, screener: Optional[Screener] = None):
        self._screener = screener

    @property
    def ready(self) -> bool:
        return self._screener is not None

    def swap(self, screener: Screener) -> None:
        self._screener = screener

    def load_async(self, factory: Callable[[], Screener]) -> threading.Thread:
        def run():
            try:
                self.swap(factory())
                log.info("index loaded")
            except Exception:
                log.exception("index load failed")

        t = threading.Thread(target=run, name="index-loader", daemon=True)
        t.start()
        return t

    def health(self) -> Tuple[int, dict]:
        if not self.ready:
            return 503, {"status": "loading"}
        f = self._screener.forest
        return 200, {"status": "ready", "docs": f.n_docs, "shards": f.n_shards}

    def screen(self, body: bytes) -> Tuple[int, bytes, dict]:
        screener = self._screener
        if screener is None:
            return 503, _json({"error": "index not loaded"}), {}
        try:
            req = ScreenRequest.from_json(body)
            cfg = screener.config.override(req.k, req.sigma, req.weighted)
            result = screener.screen(req.text, req.format, cfg)
        except BadRequest as exc:
            return 400, _json({"error": str(exc)}), {}
        except ValueError as exc:
            # payload-level problems such as a malformed MT message
            return 400, _json({"error": str(exc)}), {}
        return 200, result.to_json().encode("utf-8"), {LATENCY_HEADER: f"{result.latency_ms:.3f}"}


def _json(obj) -> bytes:
    return json.dumps(obj, ensure_ascii=False).encode("utf-8")


def make_handler(service: ScreenService):
    class Handler(BaseHTTPRequestHandler):
        server_version = "watchscreen"

        def _send(self, status: int, body: bytes, headers: Optional[dict] = None):
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            for key, value in (headers or {}).items():
                self.send_header(key, value)
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            if self.path == "/health":
                status, payload = service.health()
                self._send(status, _json(payload))
            else:
                self._send(404, _json({"error": "not found"}))

        def do_POST(self):
            if self.path != "/screen":
                self._send(404, _json({"error": "not found"}))
                return
            length = int(self.headers.get("Content-Length") or 0)
            status, body, headers = service.screen(self.rfile.read(length))
            self._send(status, body, headers)

        def log_message(self, fmt, *args):
            log.debug("%s - %s", self.address_string(), fmt % args)

    return Handler


def make_server(service: ScreenService, host: str = "127.0.0.1", port: int = 8080) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), make_handler(service))
    server.daemon_threads = True
    return server
