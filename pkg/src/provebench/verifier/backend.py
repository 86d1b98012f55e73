"""Compiler backends: the abstract interface and the subprocess adapter.

A backend accepts one request and produces one response; it must be safe to
call from multiple scheduler workers at once.  The subprocess adapter runs
a single compiler process, so concurrent requests are serialized onto its
stdin; parallel throughput comes from backends that can multiplex, while
this adapter contributes correctness and the shared-environment saving.
"""

from __future__ import annotations

import json
import subprocess
import threading
from typing import IO

from .. import errors
from .protocol import BackendRequest, BackendResponse, Message, ProtocolError

# The native frame vocabulary of the compiler's own REPL.
REPL_NATIVE = "repl-native"
WIRE = "wire"


class BackendError(errors.ProvebenchError):
    """The backend failed to produce a response."""


class BackendTimeoutError(BackendError):
    """No response arrived within the caller's deadline."""


class BackendCrashError(BackendError):
    """The backend process died or closed its stream."""


class Backend:
    """Interface every backend implements."""

    def send(self, request: BackendRequest, timeout: float | None = None) -> BackendResponse:
        raise NotImplementedError

    def close(self) -> None:
        pass

    def __enter__(self) -> "Backend":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def _repl_native_frame(request: BackendRequest) -> dict:
    frame: dict = {"cmd": request.command_text}
    if request.parent_env is not None:
        frame["env"] = request.parent_env
    return frame


def _response_from_repl_native(request_id: str, raw: dict) -> BackendResponse:
    try:
        messages = tuple(
            Message(
                severity=m["severity"],
                line=int((m.get("pos") or {}).get("line", 0)),
                col=int((m.get("pos") or {}).get("column", 0)),
                data=m.get("data", ""),
            )
            for m in raw.get("messages", [])
        )
        goals = tuple(s.get("goal", "") for s in raw.get("sorries", []))
        return BackendResponse(
            request_id=request_id,
            env=int(raw["env"]),
            messages=messages,
            remaining_goals=goals,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"bad native frame: {raw!r}") from exc


class SubprocessBackend(Backend):
    """Adapter speaking line-delimited JSON to a compiler child process.

    ``dialect`` selects the frame vocabulary: WIRE uses this package's
    request/response frames verbatim; REPL_NATIVE translates to the
    compiler REPL's own {cmd, env} / {env, messages, sorries} frames and
    matches responses by order, since that protocol has no request ids.
    """

    def __init__(self, command: list[str], dialect: str = WIRE):
        if dialect not in (WIRE, REPL_NATIVE):
            raise ValueError(f"unknown dialect {dialect!r}")
        self.dialect = dialect
        try:
            self._process = subprocess.Popen(
                command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise BackendCrashError(f"could not start backend {command!r}: {exc}") from exc
        self._stdin: IO[str] = self._process.stdin
        self._stdout: IO[str] = self._process.stdout
        self._io_lock = threading.Lock()
        self._closed = False

    def send(self, request: BackendRequest, timeout: float | None = None) -> BackendResponse:
        if self._closed:
            raise BackendCrashError("backend is closed")
        frame = (
            request.to_wire() if self.dialect == WIRE else _repl_native_frame(request)
        )
        result: dict = {}
        done = threading.Event()

        def roundtrip() -> None:
            try:
                with self._io_lock:
                    self._stdin.write(json.dumps(frame) + "\n")
                    self._stdin.flush()
                    line = self._stdout.readline()
                if not line:
                    raise BackendCrashError("backend closed its output stream")
                result["raw"] = json.loads(line)
            except BaseException as exc:  # noqa: BLE001 - handed to the waiter
                result["error"] = exc
            finally:
                done.set()

        worker = threading.Thread(target=roundtrip, daemon=True)
        worker.start()
        if not done.wait(timeout):
            raise BackendTimeoutError(
                f"request {request.request_id} got no response within {timeout}s"
            )
        if "error" in result:
            error = result["error"]
            if isinstance(error, errors.ProvebenchError):
                raise error
            raise BackendCrashError(f"backend transport failure: {error}") from error
        raw = result["raw"]
        if self.dialect == WIRE:
            response = BackendResponse.from_wire(raw)
            if response.request_id != request.request_id:
                raise ProtocolError(
                    f"response for {response.request_id!r} while waiting on "
                    f"{request.request_id!r}"
                )
            return response
        return _response_from_repl_native(request.request_id, raw)

    def close(self) -> None:
        if self._closed:
            return
        self._closed = True
        try:
            self._process.stdin.close()
        except OSError:
            pass
        try:
            self._process.wait(timeout=5)
        except subprocess.TimeoutExpired:
            self._process.kill()
