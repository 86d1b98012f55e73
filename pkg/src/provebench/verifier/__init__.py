"""Parallel proof verification behind a shared compiler environment."""

from .backend import (
    REPL_NATIVE,
    WIRE,
    Backend,
    BackendCrashError,
    BackendError,
    BackendTimeoutError,
    SubprocessBackend,
)
from .mock import ScriptedMockBackend, ScriptedResponse, command_key
from .protocol import BackendRequest, BackendResponse, Message, ProtocolError, SEVERITIES
from .scheduler import (
    BatchInProgressError,
    RootInitError,
    RootSession,
    SessionClosedError,
    TaskMode,
    VerificationOutcome,
    VerificationTask,
    Verdict,
    VerifierConfig,
    open_root_session,
    statement_compiles,
    verify_batch,
    verify_one,
)

__all__ = [
    "Backend",
    "BackendCrashError",
    "BackendError",
    "BackendRequest",
    "BackendResponse",
    "BackendTimeoutError",
    "BatchInProgressError",
    "Message",
    "ProtocolError",
    "REPL_NATIVE",
    "RootInitError",
    "RootSession",
    "SEVERITIES",
    "ScriptedMockBackend",
    "ScriptedResponse",
    "SessionClosedError",
    "SubprocessBackend",
    "TaskMode",
    "VerificationOutcome",
    "VerificationTask",
    "Verdict",
    "VerifierConfig",
    "WIRE",
    "command_key",
    "open_root_session",
    "statement_compiles",
    "verify_batch",
    "verify_one",
]
