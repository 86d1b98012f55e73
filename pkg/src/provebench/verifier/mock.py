"""Scripted in-process backend for tests and dry runs.

Responses are keyed by a hash of the command text, so a script written for
a batch replays identically whatever the pool size or arrival order.  The
default behavior for unscripted commands is a clean success, with a
remaining goal reported when the command carries a placeholder body, which
matches what a real compiler would say.
"""

from __future__ import annotations

import hashlib
import re
import threading
import time
from dataclasses import dataclass, field

from .backend import Backend, BackendCrashError, BackendTimeoutError
from .protocol import BackendRequest, BackendResponse, Message

_PLACEHOLDER_RE = re.compile(r"\bsorry\b")


def command_key(command_text: str) -> str:
    """Script key for a command: SHA-256 of its UTF-8 bytes."""
    return hashlib.sha256(command_text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ScriptedResponse:
    """What the mock should do when a scripted command arrives."""

    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()
    remaining_goals: tuple[str, ...] = ()
    delay: float = 0.0
    stall: bool = False
    crash: bool = False


@dataclass
class _Stats:
    init_count: int = 0
    request_count: int = 0
    in_flight: int = 0
    max_in_flight: int = 0
    parent_envs: list[int | None] = field(default_factory=list)


class ScriptedMockBackend(Backend):
    def __init__(self, script: dict[str, ScriptedResponse] | None = None):
        self.script = dict(script or {})
        self.stats = _Stats()
        self._lock = threading.Lock()
        self._env_counter = 0

    def add(self, command_text: str, response: ScriptedResponse) -> None:
        self.script[command_key(command_text)] = response

    def _next_env(self) -> int:
        self._env_counter += 1
        return self._env_counter

    def send(self, request: BackendRequest, timeout: float | None = None) -> BackendResponse:
        with self._lock:
            self.stats.request_count += 1
            self.stats.parent_envs.append(request.parent_env)
            if request.parent_env is None:
                self.stats.init_count += 1
            self.stats.in_flight += 1
            self.stats.max_in_flight = max(self.stats.max_in_flight, self.stats.in_flight)
            env = self._next_env()
        try:
            scripted = self.script.get(command_key(request.command_text))
            if scripted is None:
                return self._default_response(request, env)
            if scripted.stall:
                time.sleep(timeout if timeout is not None else 0.05)
                raise BackendTimeoutError(
                    f"request {request.request_id} got no response within {timeout}s"
                )
            if scripted.delay:
                time.sleep(scripted.delay)
            if scripted.crash:
                raise BackendCrashError("scripted backend crash")
            messages = tuple(
                Message(severity="error", line=1, col=1, data=text)
                for text in scripted.errors
            ) + tuple(
                Message(severity="warning", line=1, col=1, data=text)
                for text in scripted.warnings
            )
            return BackendResponse(
                request_id=request.request_id,
                env=env,
                messages=messages,
                remaining_goals=scripted.remaining_goals,
            )
        finally:
            with self._lock:
                self.stats.in_flight -= 1

    def _default_response(self, request: BackendRequest, env: int) -> BackendResponse:
        goals: tuple[str, ...] = ()
        if _PLACEHOLDER_RE.search(request.command_text):
            goals = ("⊢ True",)
        return BackendResponse(
            request_id=request.request_id, env=env, remaining_goals=goals
        )
