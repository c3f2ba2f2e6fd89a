"""HTTP JSON service exposing the screening calculus.

Stateless compute, curve and geometry endpoints plus stateful what-if
sessions, all under ``/v1``.  Built on the standard library's threading
HTTP server: bodies are JSON, errors are
``{"error": {"code", "message"}}`` with 400 for validation problems,
404 for unknown sessions, 409 for conflicting certainties and 422 for
undefined posteriors and other computation failures.
"""

from __future__ import annotations

import json
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any
from urllib.parse import parse_qs, urlparse

from .errors import (
    ConflictingCertainty,
    ScreeningError,
    UndefinedPosterior,
    ValidationError,
)
from .geometry import sample_curves
from .scenario import (
    build_compute_report,
    build_geometry_report,
    parse_scenario,
)
from .screening import TestCharacteristics
from .sequence import TestResult
from .sessions import SessionStore, UnknownSession

_SESSION_PATH = re.compile(r"^/v1/sessions/([A-Za-z0-9_\-]+)(/.*)?$")


def _error_body(code: str, message: str) -> dict[str, Any]:
    return {"error": {"code": code, "message": message}}


def _status_for(exc: ScreeningError) -> int:
    if isinstance(exc, ValidationError):
        return 400
    if isinstance(exc, ConflictingCertainty):
        return 409
    if isinstance(exc, UndefinedPosterior):
        return 422
    return 422


def _parse_outcome_body(data: Any) -> tuple[str, TestResult]:
    if not isinstance(data, dict):
        raise ValidationError("request body must be a JSON object")
    if "test" not in data:
        raise ValidationError("test: required field is missing")
    if "result" not in data:
        raise ValidationError("result: required field is missing")
    try:
        result = TestResult(data["result"])
    except ValueError:
        raise ValidationError(
            f"result: expected 'positive' or 'negative', got {data['result']!r}"
        ) from None
    return str(data["test"]), result


def _query_float(params: dict[str, list[str]], key: str) -> float:
    if key not in params:
        raise ValidationError(f"{key}: required query parameter is missing")
    try:
        return float(params[key][0])
    except ValueError:
        raise ValidationError(f"{key}: expected a number, got {params[key][0]!r}") from None


class ScreeningRequestHandler(BaseHTTPRequestHandler):
    """Routes /v1 requests onto the library; one instance per request."""

    server_version = "seqscreen"
    protocol_version = "HTTP/1.1"

    @property
    def store(self) -> SessionStore:
        return self.server.store  # type: ignore[attr-defined]

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        if getattr(self.server, "verbose", False):
            super().log_message(format, *args)

    # -- plumbing ---------------------------------------------------------

    def _send_json(self, status: int, body: dict[str, Any]) -> None:
        payload = (json.dumps(body, indent=2) + "\n").encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _send_error_obj(self, status: int, code: str, message: str) -> None:
        self._send_json(status, _error_body(code, message))

    def _read_json(self) -> Any:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise ValidationError("request body is empty")
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ValidationError(f"invalid JSON body: {exc}") from exc

    def _dispatch(self, handler) -> None:
        try:
            handler()
        except UnknownSession as exc:
            self._send_error_obj(404, "UnknownSession", f"no session {exc.args[0]!r}")
        except ScreeningError as exc:
            self._send_error_obj(_status_for(exc), exc.code, exc.message)
        except ValueError as exc:
            self._send_error_obj(400, "ValidationError", str(exc))

    # -- verbs ------------------------------------------------------------

    def do_GET(self):  # noqa: N802 - stdlib naming
        self._dispatch(self._get)

    def do_POST(self):  # noqa: N802
        self._dispatch(self._post)

    def do_DELETE(self):  # noqa: N802
        self._dispatch(self._delete)

    def _get(self) -> None:
        url = urlparse(self.path)
        if url.path == "/v1/health":
            self._send_json(200, {"status": "ok"})
            return
        if url.path == "/v1/curves":
            params = parse_qs(url.query)
            test = TestCharacteristics(
                label="query",
                sensitivity=_query_float(params, "a"),
                specificity=_query_float(params, "b"),
            )
            n_points = int(_query_float(params, "n"))
            sample = sample_curves(test, n_points)
            self._send_json(
                200,
                {
                    "phi_values": list(sample.phi_values),
                    "ppv_values": list(sample.ppv_values),
                    "npv_values": list(sample.npv_values),
                },
            )
            return
        if url.path == "/v1/geometry":
            params = parse_qs(url.query)
            test = TestCharacteristics(
                label="query",
                sensitivity=_query_float(params, "a"),
                specificity=_query_float(params, "b"),
            )
            self._send_json(200, build_geometry_report(test))
            return
        match = _SESSION_PATH.match(url.path)
        if match and not match.group(2):
            session = self.store.get(match.group(1))
            self._send_json(200, session.view())
            return
        self._send_error_obj(404, "NotFound", f"no route for GET {url.path}")

    def _post(self) -> None:
        url = urlparse(self.path)
        if url.path == "/v1/compute":
            doc = parse_scenario(self._read_json())
            self._send_json(200, build_compute_report(doc))
            return
        if url.path == "/v1/sessions":
            doc = parse_scenario(self._read_json())
            session = self.store.create(doc)
            self._send_json(201, session.view())
            return
        match = _SESSION_PATH.match(url.path)
        if match:
            session_id, tail = match.group(1), match.group(2)
            if tail == "/outcomes":
                name, result = _parse_outcome_body(self._read_json())
                self._send_json(200, self.store.append_outcome(session_id, name, result))
                return
            if tail == "/whatif":
                name, result = _parse_outcome_body(self._read_json())
                self._send_json(200, self.store.whatif(session_id, name, result))
                return
        self._send_error_obj(404, "NotFound", f"no route for POST {url.path}")

    def _delete(self) -> None:
        url = urlparse(self.path)
        match = _SESSION_PATH.match(url.path)
        if match and match.group(2) == "/outcomes/last":
            self._send_json(200, self.store.undo_last(match.group(1)))
            return
        self._send_error_obj(404, "NotFound", f"no route for DELETE {url.path}")


def create_server(
    bind: str = "127.0.0.1",
    port: int = 8000,
    store: SessionStore | None = None,
) -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server; the chosen port is
    available as ``server.server_address`` when ``port`` is 0."""
    server = ThreadingHTTPServer((bind, port), ScreeningRequestHandler)
    server.store = store if store is not None else SessionStore()  # type: ignore[attr-defined]
    server.verbose = False  # type: ignore[attr-defined]
    return server


def serve(
    bind: str = "127.0.0.1",
    port: int = 8000,
    snapshot_path: str | None = None,
    verbose: bool = True,
) -> None:
    """Run the service until interrupted.

    When ``snapshot_path`` is given (usually via SEQSCREEN_SNAPSHOT), an
    existing journal is loaded on start and the session store is written
    back on shutdown.
    """
    store = SessionStore()
    if snapshot_path:
        try:
            count = store.load(snapshot_path)
            if verbose:
                print(f"restored {count} session(s) from {snapshot_path}")
        except FileNotFoundError:
            pass
    server = create_server(bind, port, store)
    server.verbose = verbose  # type: ignore[attr-defined]
    if verbose:
        host, actual_port = server.server_address[:2]
        print(f"listening on http://{host}:{actual_port}/v1/")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
        if snapshot_path:
            store.save(snapshot_path)
            if verbose:
                print(f"snapshot written to {snapshot_path}")
