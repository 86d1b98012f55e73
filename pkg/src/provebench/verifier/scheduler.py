"""Batch verification against a shared root environment.

Opening a session runs the expensive initialization commands exactly once;
every task in every later batch forks from that environment instead of
paying the cold start again.  A bounded worker pool caps in-flight
requests, results come back in task order, and one task's timeout or crash
never takes the batch down.
"""

from __future__ import annotations

import enum
import itertools
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .. import errors
from ..leanparse import FormalStatement
from .backend import Backend, BackendError, BackendTimeoutError
from .protocol import BackendRequest, BackendResponse, Message


class TaskMode(enum.Enum):
    PROOF_CHECK = "ProofCheck"
    STATEMENT_CHECK = "StatementCheck"


class Verdict(enum.Enum):
    PROVED = "Proved"
    STATEMENT_OK = "StatementOk"
    COMPILE_ERROR = "CompileError"
    TIMEOUT = "Timeout"
    INCOMPLETE = "Incomplete"


@dataclass(frozen=True)
class VerifierConfig:
    root_init_commands: tuple[str, ...] = ("import Mathlib",)
    pool_size: int = 4
    per_task_timeout: float = 60.0
    root_init_timeout: float = 600.0

    def __post_init__(self):
        if self.pool_size < 1:
            raise ValueError("pool_size must be at least 1")
        if self.per_task_timeout <= 0:
            raise ValueError("per_task_timeout must be positive")


@dataclass(frozen=True)
class VerificationTask:
    task_id: str
    code: str
    mode: TaskMode = TaskMode.PROOF_CHECK


@dataclass(frozen=True)
class VerificationOutcome:
    task_id: str
    verdict: Verdict
    messages: tuple[Message, ...] = ()
    remaining_goals: tuple[str, ...] = ()
    wall_time: float = 0.0

    def to_record(self) -> dict:
        """Persistable form; excludes wall_time, which varies run to run."""
        return {
            "task_id": self.task_id,
            "verdict": self.verdict.value,
            "messages": [message.to_wire() for message in self.messages],
            "remaining_goals": list(self.remaining_goals),
        }


class RootInitError(errors.ProvebenchError):
    """Root initialization did not compile."""


class SessionClosedError(errors.ProvebenchError):
    """Batch submitted against a closed session."""


class BatchInProgressError(errors.ProvebenchError):
    """A session runs one batch at a time."""


class RootSession:
    def __init__(self, backend: Backend, env: int, config: VerifierConfig, init_seconds: float):
        self.backend = backend
        self.env = env
        self.config = config
        self.init_seconds = init_seconds
        self._closed = False
        self._batch_lock = threading.Lock()
        self._request_ids = itertools.count(1)

    @property
    def closed(self) -> bool:
        return self._closed

    def next_request_id(self) -> str:
        return f"req-{next(self._request_ids)}"

    def close(self) -> None:
        self._closed = True

    def __enter__(self) -> "RootSession":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def open_root_session(backend: Backend, config: VerifierConfig | None = None) -> RootSession:
    """Run the init commands once and return the shared session."""
    config = config or VerifierConfig()
    start = time.perf_counter()
    request = BackendRequest(
        request_id="root-init", command_text="\n".join(config.root_init_commands)
    )
    try:
        response = backend.send(request, timeout=config.root_init_timeout)
    except BackendError as exc:
        raise RootInitError(f"root initialization failed: {exc}") from exc
    if response.error_messages:
        details = "; ".join(m.data for m in response.error_messages)
        raise RootInitError(f"root initialization did not compile: {details}")
    return RootSession(backend, response.env, config, time.perf_counter() - start)


def _classify(response: BackendResponse, mode: TaskMode) -> tuple[Verdict, BackendResponse]:
    if response.error_messages:
        return Verdict.COMPILE_ERROR, response
    if mode is TaskMode.STATEMENT_CHECK:
        return Verdict.STATEMENT_OK, response
    placeholder_warned = any(
        m.severity == "warning" and "sorry" in m.data for m in response.messages
    )
    if response.remaining_goals or placeholder_warned:
        return Verdict.INCOMPLETE, response
    return Verdict.PROVED, response


def _run_task(session: RootSession, task: VerificationTask) -> VerificationOutcome:
    start = time.perf_counter()
    request = BackendRequest(
        request_id=session.next_request_id(),
        command_text=task.code,
        parent_env=session.env,
    )
    try:
        response = session.backend.send(request, timeout=session.config.per_task_timeout)
    except BackendTimeoutError:
        return VerificationOutcome(
            task_id=task.task_id,
            verdict=Verdict.TIMEOUT,
            wall_time=time.perf_counter() - start,
        )
    except BackendError as exc:
        fault = Message(severity="error", line=0, col=0, data=f"backend failure: {exc}")
        return VerificationOutcome(
            task_id=task.task_id,
            verdict=Verdict.COMPILE_ERROR,
            messages=(fault,),
            wall_time=time.perf_counter() - start,
        )
    verdict, response = _classify(response, task.mode)
    return VerificationOutcome(
        task_id=task.task_id,
        verdict=verdict,
        messages=response.messages,
        remaining_goals=response.remaining_goals,
        wall_time=time.perf_counter() - start,
    )


def verify_one(session: RootSession, task: VerificationTask) -> VerificationOutcome:
    """Verify a single task outside any batch; never blocks on the pool."""
    if session.closed:
        raise SessionClosedError("session is closed")
    return _run_task(session, task)


def verify_batch(
    session: RootSession, tasks: list[VerificationTask]
) -> list[VerificationOutcome]:
    """Verify ``tasks`` in parallel; outcomes line up with the input order."""
    if session.closed:
        raise SessionClosedError("session is closed")
    if not session._batch_lock.acquire(blocking=False):
        raise BatchInProgressError("another batch is already running on this session")
    try:
        if not tasks:
            return []
        with ThreadPoolExecutor(max_workers=session.config.pool_size) as pool:
            return list(pool.map(lambda task: _run_task(session, task), tasks))
    finally:
        session._batch_lock.release()


def statement_compiles(
    statement: FormalStatement, session: RootSession
) -> VerificationOutcome:
    """Check that a statement elaborates with a placeholder body."""
    task_id = statement.theorem_name
    if statement.problem_id:
        task_id = f"{statement.problem_id}:{statement.k}:{statement.n}"
    task = VerificationTask(
        task_id=task_id,
        code=statement.with_placeholder_body().render(),
        mode=TaskMode.STATEMENT_CHECK,
    )
    if session.closed:
        raise SessionClosedError("session is closed")
    return _run_task(session, task)
